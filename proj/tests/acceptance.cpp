// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--expected-fail N]...
//
// Exit status is 0 when every criterion passes or fails only where listed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dlab/arith.hpp"
#include "dlab/bands.hpp"
#include "dlab/dickman.hpp"
#include "dlab/experiments.hpp"
#include "dlab/models.hpp"
#include "dlab/primes.hpp"

#ifndef DICKMAN_LAB_BIN
#error "DICKMAN_LAB_BIN must name the CLI binary"
#endif

using namespace dlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

Outcome exact_identity() {
  Outcome o;
  const auto all = subset_with_count(AllPrimes{}, 8);
  const auto r41 = subset_with_count(ResidueClass{4, 1}, 8);
  int checked = 0;
  for (const auto* s : {&all, &r41}) {
    for (unsigned k = 2; k <= 4; ++k) {
      for (std::size_t n = 1; n <= 8; ++n) {
        const auto r = identity_check(s->prefix(n), k);
        o.require(r.equal, fmt::format("{} N={} k={} unequal", describe(s->spec()), n, k));
        ++checked;
      }
    }
  }
  o.note(fmt::format("{} (A_N, k) pairs equal", checked));
  return o;
}

Outcome exact_pmf() {
  Outcome o;
  const auto all = subset_with_count(AllPrimes{}, 8);
  int checked = 0;
  for (unsigned k = 2; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (int id : {2, 3}) {
        const RandomIntegerModel m(std::make_shared<const PrimeSubset>(all), n,
                                   ExponentLaw::for_model(id, k));
        FactoredInteger c{std::vector<std::uint32_t>(n, 0)};
        Rational total = 0;
        for (;;) {
          total += model_pmf(m, c);
          std::size_t j = 0;
          while (j < n && c.exponents[j] + 1 == k) c.exponents[j++] = 0;
          if (j == n) break;
          ++c.exponents[j];
        }
        o.require(total == 1, fmt::format("model {} N={} k={} sums to {}", id, n, k,
                                          to_fraction_string(total)));
        ++checked;
      }
    }
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    const RandomIntegerModel m(std::make_shared<const PrimeSubset>(all), n, ExponentLaw::geometric());
    for (unsigned e = 0; e <= 12; ++e) {
      FactoredInteger c{std::vector<std::uint32_t>(n, 0)};
      Rational total = 0;
      for (;;) {
        total += model_pmf(m, c);
        std::size_t j = 0;
        while (j < n && c.exponents[j] == e) c.exponents[j++] = 0;
        if (j == n) break;
        ++c.exponents[j];
      }
      Rational expect = 1;
      for (auto p : m.primes()) {
        BigInt pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), e + 1);
        expect *= 1 - Rational(BigInt(1), pe);
      }
      o.require(total == expect, fmt::format("model 1 N={} E={} partial sum mismatch", n, e));
      ++checked;
    }
  }
  o.note(fmt::format("{} exact sums", checked));
  return o;
}

Outcome dickman_solver() {
  Outcome o;
  const auto s1 = solve_rho(1.0);
  double worst = 0;
  const auto rho = s1.rho_values();
  for (std::size_t i = 1000; i <= 2000; ++i)
    worst = std::max(worst, std::abs(rho[i] - (1.0 - std::log(s1.grid_x(i)))));
  o.require(worst < 1e-8, fmt::format("rho_1 vs 1 - ln x: {:.3g}", worst));
  o.note(fmt::format("max |rho_1 - (1 - ln x)| = {:.2g}", worst));
  for (double theta : {0.25, 0.5, 1.0}) {
    const auto s = theta == 1.0 ? s1 : solve_rho(theta);
    const double mass = gd_cdf(s, s.x_max());
    const double c1 = gd_cdf(s, 1.0);
    const double closed = std::exp(-kEulerGamma * theta) / std::tgamma(theta + 1.0);
    const double mean = gd_mean(s);
    o.require(std::abs(mass - 1) <= 1e-4, fmt::format("theta={} mass {}", theta, mass));
    o.require(std::abs(c1 - closed) <= 1e-6, fmt::format("theta={} cdf(1) {}", theta, c1));
    o.require(std::abs(mean - theta) <= 1e-3, fmt::format("theta={} mean {}", theta, mean));
    o.note(fmt::format("theta={}: |mass-1|={:.1g} |cdf(1)-closed|={:.1g} |mean-theta|={:.1g}", theta,
                       std::abs(mass - 1), std::abs(c1 - closed), std::abs(mean - theta)));
  }
  return o;
}

Outcome classical_mertens() {
  Outcome o;
  const auto all = subset_up_to(AllPrimes{}, 100'000);
  const std::vector<std::uint64_t> ns{100, 100'000};
  const auto rows = mertens_ratio_table(all, {MertensVariant::ClassicMertens}, ns);
  const auto& last = rows.back();
  o.require(last.relative_gap() < bands::kClassicMertensRel, "ratio outside 5% of e^gamma");
  o.require(last.gap < rows.front().gap, "gap did not shrink from 10^2");
  o.note(fmt::format("ratio(10^5)={:.5f} target={:.5f} rel gap {:.3f}% (10^2: {:.3f}%)", last.ratio,
                     last.target, 100 * last.relative_gap(), 100 * rows.front().relative_gap()));
  return o;
}

Outcome generalized_mertens() {
  Outcome o;
  const auto s = subset_up_to(ResidueClass{4, 1}, 1'000'000);
  const std::vector<std::uint64_t> ns{100, 1000, 10'000, 100'000, 1'000'000};
  const auto rows = mertens_ratio_table(s, {MertensVariant::Thm1i}, ns);
  const auto& last = rows.back();
  o.require(last.relative_gap() < bands::kSubsetMertensRel, "ratio outside 15%");
  std::string gaps;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    gaps += fmt::format("{}{:.2f}%", i ? " " : "", 100 * rows[i].relative_gap());
    if (i) o.require(rows[i].gap < rows[i - 1].gap, fmt::format("gap grew at N={}", rows[i].n));
  }
  o.note(fmt::format("ratio(10^6)={:.5f} target={:.5f}; rel gaps by decade: {}", last.ratio,
                     last.target, gaps));
  return o;
}

Outcome distributional() {
  Outcome o;
  const auto sol = solve_rho(1.0);
  const std::uint64_t seed = 1729;
  const std::size_t samples = 10'000;
  const auto all = subset_with_count(AllPrimes{}, 10'000);
  const auto shared = std::make_shared<const PrimeSubset>(all);
  auto ks = [&](std::size_t n, ExponentLaw law) {
    return ks_test(RandomIntegerModel(shared, n, law), sol, samples, seed).ks_statistic;
  };
  const double m1 = ks(10'000, ExponentLaw::geometric());
  const double m1_small = ks(100, ExponentLaw::geometric());
  const double m3 = ks(10'000, ExponentLaw::truncated_at(2));
  const double m3_small = ks(100, ExponentLaw::truncated_at(2));
  o.require(m1 < bands::kKsModel1, fmt::format("model 1 KS {:.4f} >= {}", m1, bands::kKsModel1));
  o.require(m3 < bands::kKsModel3, fmt::format("model 3 KS {:.4f} >= {}", m3, bands::kKsModel3));
  o.require(m1 < m1_small, "model 1 KS did not drop from N=10^2");
  o.require(m3 < m3_small, "model 3 KS did not drop from N=10^2");
  // Model 1 puts mass prod_{j <= N} (1 - 1/p_j) on I = 1, i.e. W = 0, which
  // the limit law does not; the KS distance cannot fall below it.
  double atom = 0;
  for (auto p : all.prefix(10'000)) atom += std::log1p(-1.0 / static_cast<double>(p));
  o.note(fmt::format("seed {}: model 1 KS {:.4f} (N=10^2: {:.4f}), P(W=0)={:.4f}; model 3 KS {:.4f} "
                     "(N=10^2: {:.4f})",
                     seed, m1, m1_small, std::exp(atom), m3, m3_small));
  return o;
}

Outcome williams_exponent() {
  Outcome o;
  const auto grid = williams_default_grid();
  for (auto [l, j] : {std::pair<std::uint64_t, std::uint64_t>{4, 1}, {3, 2}}) {
    const auto fit = williams_slope(l, j, grid);
    o.require(std::abs(fit.slope - 0.5) <= bands::kWilliamsAbs,
              fmt::format("({},{}) slope {:.4f}", l, j, fit.slope));
    o.note(fmt::format("({},{}) slope {:.4f}", l, j, fit.slope));
  }
  return o;
}

Outcome totient_sums() {
  Outcome o;
  const std::uint64_t n = 1'000'000;
  const auto k2 = totient_harmonic_ratio(n, 2);
  const auto comp = totient_harmonic_ratio(n, 2, TotientMode::AllTotient);
  const auto k3 = totient_harmonic_ratio(n, 3);
  for (const auto* r : {&k2, &comp, &k3})
    o.require(r->relative_gap() < bands::kTotientRel,
              fmt::format("ratio {:.4f} vs {:.4f}", r->ratio, r->target));
  o.note(fmt::format("k=2 {:.4f}/1; 1/phi {:.4f}/{:.4f}; k=3 {:.4f}/1", k2.ratio, comp.ratio,
                     comp.target, k3.ratio));
  return o;
}

Outcome bx_decomposition_exact() {
  Outcome o;
  const auto geo = ExponentLaw::geometric();
  int checked = 0;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    for (unsigned m = 0; m <= 50; ++m) {
      o.require(bx_product_pmf(geo, p, m) == exponent_pmf(geo, p, m),
                fmt::format("p={} m={} differs", p, m));
      ++checked;
    }
  }
  o.note(fmt::format("{} (p, m) cells equal", checked));
  return o;
}

Outcome reproducibility() {
  Outcome o;
  const std::vector<std::string> cmds{
      "sample --model 1 --n 1000 --samples 200 --seed 7",
      "sample --model 3 --k 2 --n 500 --samples 100 --bx --seed 7 --format json",
      "ks --model 2 --k 3 --n 2000 --samples 2000 --seed 42 --format json",
      "mertens ratio --subset residue:4:1 --n 100,1000,10000",
      "dickman table --theta 0.5 --xmax 4 --every 50",
      "phi-ratio --k 2 --n 1000,10000 --format json",
  };
  const auto dir = std::filesystem::temp_directory_path();
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    std::string outs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / fmt::format("dickman_lab_accept_{}_{}.out", i, rep);
      const auto line = fmt::format("\"{}\" {} --out \"{}\"", DICKMAN_LAB_BIN, cmds[i], path.string());
      const int rc = std::system(line.c_str());
      o.require(rc == 0, fmt::format("`{}` exited {}", cmds[i], rc));
      std::ifstream in(path, std::ios::binary);
      outs[rep].assign(std::istreambuf_iterator<char>(in), {});
      std::filesystem::remove(path);
    }
    o.require(!outs[0].empty() && outs[0] == outs[1], fmt::format("`{}` differs", cmds[i]));
  }
  o.note(fmt::format("{} invocations byte-identical", cmds.size()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expected-fail" && i + 1 < argc) {
      expected_fail.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--expected-fail N]...\n";
      return 1;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "exact identity", 10, exact_identity},
      {2, "exact pmf normalization", 10, exact_pmf},
      {3, "Dickman solver", 30, dickman_solver},
      {4, "classical Mertens", 60, classical_mertens},
      {5, "generalized Mertens, 1 mod 4", 300, generalized_mertens},
      {6, "KS against (1/theta) D_theta", 120, distributional},
      {7, "Williams exponent", 120, williams_exponent},
      {8, "totient harmonic sums", 120, totient_sums},
      {9, "B/X decomposition", 1, bx_decomposition_exact},
      {10, "CLI reproducibility", 60, reproducibility},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(fmt::format("exception: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, fmt::format("took {:.1f} s, budget {} s", secs, c.budget_s));
    const bool tolerated = !o.pass && expected_fail.count(c.id);
    if (!o.pass && !tolerated) ++unexpected;
    std::cout << fmt::format("{} {:>2} {} [{:.2f} s] {}{}\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                             secs, o.detail, tolerated ? " (expected failure)" : "");
    if (o.pass && expected_fail.count(c.id))
      std::cout << fmt::format("note: criterion {} was listed as an expected failure but passed\n", c.id);
  }
  std::cout.flush();
  return unexpected ? 1 : 0;
}
