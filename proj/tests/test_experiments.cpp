#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>
#include <numbers>
#include <vector>

#include "dlab/bands.hpp"
#include "dlab/errors.hpp"
#include "dlab/experiments.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {

mpq_class euler_product_oracle(const std::vector<std::uint64_t>& primes) {
  mpq_class r = 1;
  for (auto p : primes) r *= mpq_class(static_cast<unsigned long>(p), static_cast<unsigned long>(p - 1));
  r.canonicalize();
  return r;
}

// Direct lhs: every k-free n over `primes`, weight 1 / (n_{(k-1)-free} phi(n_{(k-1)-power})).
mpq_class identity_lhs_oracle(const std::vector<std::uint64_t>& primes, unsigned k) {
  std::vector<std::uint32_t> c(primes.size(), 0);
  mpq_class total = 0;
  do {
    mpz_class free = 1, power = 1;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      mpz_class pc;
      mpz_ui_pow_ui(pc.get_mpz_t(), static_cast<unsigned long>(primes[j]), c[j]);
      if (c[j] == k - 1) {
        power *= pc / primes[j] * (primes[j] - 1);  // phi(p^{k-1})
      } else {
        free *= pc;
      }
    }
    mpq_class term(mpz_class(1), free * power);
    term.canonicalize();
    total += term;
  } while (oracle::next_vector(c, k));
  return total;
}

double brute_ks(std::vector<double> xs, const std::function<double(double)>& cdf) {
  double d = 0;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) {
    std::size_t below = 0, at_or_below = 0;
    for (double y : xs) {
      below += y < x;
      at_or_below += y <= x;
    }
    d = std::max({d, std::abs(at_or_below / n - cdf(x)), std::abs(below / n - cdf(x))});
  }
  return d;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("identity examples") {
    const std::vector<std::uint64_t> two{2}, two_three{2, 3};
    auto r = identity_check(two, 2);
    CHECK(r.lhs == 2);
    CHECK(r.equal);
    r = identity_check(two_three, 2);
    CHECK(r.lhs == 3);
    CHECK(r.rhs == 3);
    CHECK(r.equal);
    const std::vector<std::uint64_t> five{2, 3, 5, 7, 11};
    r = identity_check(five, 3);
    CHECK(r.equal);
    CHECK(r.lhs == identity_lhs_oracle(five, 3));
  }

  TEST_CASE("identity holds on prefixes of all primes and of 1 mod 4") {
    const std::vector<std::uint64_t> all{2, 3, 5, 7, 11, 13, 17, 19};
    const std::vector<std::uint64_t> r41{5, 13, 17, 29, 37, 41, 53, 61};
    for (const auto* base : {&all, &r41}) {
      for (unsigned k = 2; k <= 4; ++k) {
        for (std::size_t n = 1; n <= 8; ++n) {
          if (std::pow(k, n) > 5000) continue;
          const std::vector<std::uint64_t> prefix(base->begin(), base->begin() + static_cast<long>(n));
          const auto r = identity_check(prefix, k);
          REQUIRE(r.equal);
          REQUIRE(r.rhs == euler_product_oracle(prefix));
          REQUIRE(r.lhs == identity_lhs_oracle(prefix, k));
        }
      }
    }
  }

  TEST_CASE("identity errors") {
    const auto primes = subset_with_count(AllPrimes{}, 30).prefix(24);
    CHECK_THROWS_AS(identity_check(primes, 2), resource_error);
    CHECK_THROWS_AS(identity_check(primes.first(3), 1), std::domain_error);
    CHECK_THROWS_AS(identity_check({}, 2), std::domain_error);
  }

  TEST_CASE("ks statistic against brute force") {
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(std::fmod(i * 0.618033988749895, 1.0) * 1.3);
    xs.push_back(0.5);
    xs.push_back(0.5);  // ties
    auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_statistic(xs, uniform) == doctest::Approx(brute_ks(xs, uniform)).epsilon(1e-12));
    CHECK(ks_statistic({0.0, 0.0}, [](double) { return 0.3; }) == doctest::Approx(0.7));
    CHECK_THROWS_AS(ks_statistic({}, uniform), std::domain_error);
  }

  TEST_CASE("ks_test preconditions and trend") {
    const auto sol1 = solve_rho(1.0);
    const auto half = RandomIntegerModel::make(ResidueClass{4, 1}, 100, ExponentLaw::geometric());
    CHECK_THROWS_AS(ks_test(half, sol1, 1000, 1), std::domain_error);
    const auto small = RandomIntegerModel::make(AllPrimes{}, 100, ExponentLaw::geometric());
    CHECK_THROWS_AS(ks_test(small, sol1, 999, 1), std::domain_error);

    const auto r = ks_test(small, sol1, 2000, 5);
    CHECK(r.model_id == 1);
    CHECK(r.n == 100);
    CHECK(r.sample_count == 2000);
    CHECK(r.seed == 5);
    CHECK(r.ks_statistic > 0.0);
    CHECK(r.ks_statistic <= 1.0);
    CHECK(ks_test(small, sol1, 2000, 5).ks_statistic == r.ks_statistic);
    for (int id : {1, 3}) {
      CAPTURE(id);
      const auto lo = RandomIntegerModel::make(AllPrimes{}, 100, ExponentLaw::for_model(id, 2));
      const auto hi = RandomIntegerModel::make(AllPrimes{}, 10'000, ExponentLaw::for_model(id, 2));
      CHECK(ks_test(hi, sol1, 10'000, 1729).ks_statistic <
            ks_test(lo, sol1, 10'000, 1729).ks_statistic);
    }
    CHECK(ks_test(RandomIntegerModel::make(AllPrimes{}, 1, ExponentLaw::geometric()), sol1, 1000, 1)
              .ks_statistic > 0.2);
  }

  TEST_CASE("scaled cdf") {
    const auto sol = solve_rho(0.5);
    CHECK(scaled_gd_cdf(sol, 2.0) == gd_cdf(sol, 1.0));
    CHECK(scaled_gd_cdf(sol, 1e9) == gd_cdf(sol, sol.x_max()));
  }

  TEST_CASE("classical Mertens") {
    const auto all = subset_up_to(AllPrimes{}, 100'000);
    const std::vector<std::uint64_t> ns{100, 1000, 10'000, 100'000};
    const auto rows = mertens_ratio_table(all, {MertensVariant::ClassicMertens}, ns);
    REQUIRE(rows.size() == 4);
    CHECK(rows.back().target == doctest::Approx(std::exp(oracle::euler_gamma())));
    CHECK(rows.back().relative_gap() < bands::kClassicMertensRel);
    CHECK(rows.back().gap < rows.front().gap);
    for (const auto& r : rows) {
      CHECK(r.gap >= 0);
      CHECK(r.ratio == doctest::Approx(r.lhs.value / r.rhs.value).epsilon(1e-12));
    }
    // Exact rows: lhs is the Euler product, rhs is H_N.
    mpq_class h = 0;
    for (unsigned n = 1; n <= 100; ++n) h += oracle::reciprocal(n);
    REQUIRE(rows.front().rhs.exact);
    CHECK(*rows.front().rhs.exact == h);
    CHECK(*rows.front().lhs.exact == euler_product_oracle(oracle::primes_up_to(100)));
  }

  TEST_CASE("generalized Mertens on 1 mod 4") {
    const auto s = subset_up_to(ResidueClass{4, 1}, 100'000);
    const std::vector<std::uint64_t> ns{100, 1000, 10'000, 100'000};
    const auto rows = mertens_ratio_table(s, {MertensVariant::Thm1i}, ns);
    CHECK(rows.back().target == doctest::Approx(1.18273).epsilon(1e-5));
    CHECK(rows.back().gap < rows.front().gap);
    CHECK(rows.back().relative_gap() < bands::kSubsetMertensRel);
    CHECK_THROWS_AS(mertens_ratio_table(s, {MertensVariant::ClassicMertens}, ns), std::domain_error);
  }

  TEST_CASE("trend holds for the k-dependent variants") {
    const auto all = subset_up_to(AllPrimes{}, 100'000);
    const std::vector<std::uint64_t> ns{100, 1000, 10'000, 100'000};
    for (auto v : {RatioVariant{MertensVariant::Thm1ii, 2}, RatioVariant{MertensVariant::Thm1ii, 3},
                   RatioVariant{MertensVariant::Thm3, 2}, RatioVariant{MertensVariant::Thm3, 3}}) {
      CAPTURE(static_cast<int>(v.kind));
      CAPTURE(v.k);
      const auto rows = mertens_ratio_table(all, v, ns, DenominatorCut::AtN, Exactness::Float);
      CHECK(rows.back().target == doctest::Approx(std::exp(kEulerGamma)));
      CHECK(rows.back().gap < rows.front().gap);
    }
    CHECK_THROWS_AS(mertens_ratio_table(all, {MertensVariant::Thm3, 1}, ns), std::domain_error);
  }

  TEST_CASE("cut conventions converge") {
    const auto s = subset_up_to(ResidueClass{4, 3}, 1'000'000);
    const std::vector<std::uint64_t> ns{100, 10'000, 1'000'000};
    const auto at_n = mertens_ratio_table(s, {MertensVariant::Thm1i}, ns, DenominatorCut::AtN,
                                          Exactness::Float);
    const auto at_p = mertens_ratio_table(s, {MertensVariant::Thm1i}, ns,
                                          DenominatorCut::AtLargestSubsetPrime, Exactness::Float);
    const double d0 = std::abs(at_n.front().ratio - at_p.front().ratio);
    const double d2 = std::abs(at_n.back().ratio - at_p.back().ratio);
    CHECK(d2 < d0);
  }

  TEST_CASE("exact and float rows agree") {
    const auto s = subset_up_to(ResidueClass{3, 1}, 20'000);
    const std::vector<std::uint64_t> ns{500, 20'000};
    for (auto v : {RatioVariant{MertensVariant::Thm1i}, RatioVariant{MertensVariant::Thm3, 2}}) {
      const auto ex = mertens_ratio_table(s, v, ns, DenominatorCut::AtN, Exactness::Exact);
      const auto fl = mertens_ratio_table(s, v, ns, DenominatorCut::AtN, Exactness::Float);
      for (std::size_t i = 0; i < ns.size(); ++i) {
        CHECK(ex[i].lhs.exact);
        CHECK_FALSE(fl[i].lhs.exact);
        CHECK(ex[i].ratio == doctest::Approx(fl[i].ratio).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("ratio table errors") {
    const auto s = subset_up_to(AllPrimes{}, 1000);
    const std::vector<std::uint64_t> bad{100, 50};
    CHECK_THROWS_AS(mertens_ratio_table(s, {}, bad), std::domain_error);
    const std::vector<std::uint64_t> too_far{10'000};
    CHECK_THROWS_AS(mertens_ratio_table(s, {}, too_far), std::domain_error);
    const auto r = subset_up_to(ResidueClass{4, 1}, 1000);
    const std::vector<std::uint64_t> tiny{3};
    CHECK_THROWS_AS(mertens_ratio_table(r, {}, tiny), std::domain_error);
  }

  TEST_CASE("Williams slopes") {
    const auto grid = williams_default_grid();
    CHECK(grid.front() == 100);
    CHECK(grid.back() == 1'000'000);
    for (auto [l, j, target] : {std::tuple<std::uint64_t, std::uint64_t, double>{4, 1, 0.5},
                                {3, 2, 0.5},
                                {1, 0, 1.0}}) {
      CAPTURE(l);
      const auto fit = williams_slope(l, j, grid);
      CHECK(fit.target == target);
      CHECK(std::abs(fit.slope - target) < bands::kWilliamsAbs);
      CHECK(fit.points.size() == grid.size());
    }
    const std::vector<std::uint64_t> short_list{100, 1000};
    CHECK_THROWS_AS(williams_slope(4, 1, short_list), std::domain_error);
    CHECK_THROWS_AS(williams_slope(4, 2, grid), std::domain_error);
    CHECK_THROWS_AS(williams_slope(0, 1, grid), std::domain_error);
  }

  TEST_CASE("Williams points against a direct product") {
    const std::vector<std::uint64_t> ns{100, 1000, 10'000};
    const auto fit = williams_slope(4, 3, ns);
    for (const auto& pt : fit.points) {
      double lp = 0;
      for (auto p : oracle::primes_up_to(pt.n))
        if (p % 4 == 3) lp -= std::log1p(-1.0 / static_cast<double>(p));
      CHECK(pt.log_product == doctest::Approx(lp).epsilon(1e-12));
      CHECK(pt.log_log_n == doctest::Approx(std::log(std::log(static_cast<double>(pt.n)))));
    }
  }

  TEST_CASE("totient harmonic sums") {
    CHECK(totient_harmonic_constant() ==
          doctest::Approx(315 * 1.2020569031595942 / (2 * std::pow(std::numbers::pi, 4))));
    CHECK(std::abs(totient_harmonic_constant() - 1.94) < 0.01);
    // Direct 1/phi(n) sum at small N.
    double direct = 0;
    for (std::uint64_t n = 1; n <= 300; ++n) direct += 1.0 / static_cast<double>(oracle::totient_by_count(n));
    const auto small = totient_harmonic_ratio(300, 2, TotientMode::AllTotient);
    CHECK(small.lhs.value == doctest::Approx(direct).epsilon(1e-12));
    CHECK(small.rhs.value == doctest::Approx(std::log(300.0)));

    const auto k2 = totient_harmonic_ratio(1'000'000, 2);
    CHECK(k2.relative_gap() < bands::kTotientRel);
    const auto k3 = totient_harmonic_ratio(1'000'000, 3);
    CHECK(k3.relative_gap() < bands::kTotientRel);
    const auto comp = totient_harmonic_ratio(1'000'000, 2, TotientMode::AllTotient);
    CHECK(comp.relative_gap() < bands::kTotientRel);

    CHECK_THROWS_AS(totient_harmonic_ratio(9, 2), std::domain_error);
    CHECK_THROWS_AS(totient_harmonic_ratio(100, 1), std::domain_error);
    CHECK_THROWS_AS(totient_harmonic_ratio(100, 2, TotientMode::AllTotient, ResidueClass{4, 1}),
                    std::domain_error);
  }

  TEST_CASE("corollary at fixed N") {
    const auto small = corollary_fixed_n_check(5, 2);
    REQUIRE(small.exact);
    CHECK(small.exact->equal);
    CHECK(small.exact->lhs == euler_product_oracle({2, 3, 5}));
    CHECK_FALSE(small.assessed);

    const auto ten = corollary_fixed_n_check(10, 3);
    REQUIRE(ten.exact);
    CHECK(ten.exact->equal);
    CHECK(ten.asymptotic.ratio > 0);

    const auto big = corollary_fixed_n_check(100'000, 2);
    CHECK(big.assessed);
    CHECK_FALSE(big.exact);
    CHECK(big.asymptotic.relative_gap() < bands::kFixedNRel);
  }
}
