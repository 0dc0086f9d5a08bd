#include "dlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "dlab/bands.hpp"
#include "dlab/errors.hpp"

namespace dlab {

namespace {

void check_increasing(std::span<const std::uint64_t> n_list) {
  if (n_list.empty()) throw std::domain_error("empty N list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw std::domain_error("N list must be strictly increasing");
}

bool use_exact(Exactness mode, std::uint64_t terms) {
  return mode == Exactness::Exact || (mode == Exactness::Auto && terms <= kExactTermLimit);
}

}  // namespace

ConvergenceRow make_row(std::uint64_t n, Quantity lhs, Quantity rhs, double target) {
  if (rhs.value == 0.0 && !(rhs.exact && *rhs.exact != 0))
    throw std::domain_error("convergence row with zero denominator");
  ConvergenceRow row;
  row.n = n;
  row.ratio = (lhs.exact && rhs.exact) ? to_double(*lhs.exact / *rhs.exact) : lhs.value / rhs.value;
  row.lhs = std::move(lhs);
  row.rhs = std::move(rhs);
  row.target = target;
  row.gap = std::abs(row.ratio - target);
  return row;
}

std::vector<ConvergenceRow> mertens_ratio_table(const PrimeSubset& subset, RatioVariant variant,
                                                std::span<const std::uint64_t> n_list,
                                                DenominatorCut cut, Exactness mode) {
  check_increasing(n_list);
  if (variant.kind == MertensVariant::ClassicMertens &&
      !std::holds_alternative<AllPrimes>(subset.spec()))
    throw std::domain_error("the classical Mertens ratio runs over all primes");
  if ((variant.kind == MertensVariant::Thm1ii || variant.kind == MertensVariant::Thm3) &&
      variant.k < 2)
    throw std::domain_error("k-dependent ratio needs k >= 2");
  if (!std::holds_alternative<ExplicitPrimes>(subset.spec()) &&
      n_list.back() > subset.table().limit())
    throw std::domain_error(fmt::format("N = {} beyond prime table limit {}", n_list.back(),
                                        subset.table().limit()));

  SumVariant sum_variant = PlainSum{};
  if (variant.kind == MertensVariant::Thm1ii) sum_variant = KFreeSum{variant.k};
  if (variant.kind == MertensVariant::Thm3) sum_variant = TotientWeightedSum{variant.k};

  const double target = mertens_constant(subset.theta());
  std::vector<ConvergenceRow> rows;
  for (const auto n : n_list) {
    const auto primes = subset.up_to(n);
    if (primes.empty())
      throw std::domain_error(fmt::format("subset {} has no primes <= {}", describe(subset.spec()), n));
    const std::uint64_t bound = cut == DenominatorCut::AtN ? n : primes.back();
    const bool exact = use_exact(mode, bound);

    Quantity lhs;
    if (exact) {
      lhs.exact = variant.kind == MertensVariant::Thm1ii ? euler_product_kfree(primes, variant.k)
                                                         : euler_product_full(primes);
      lhs.value = to_double(*lhs.exact);
    } else {
      lhs.value = variant.kind == MertensVariant::Thm1ii
                      ? euler_product_kfree_float(primes, variant.k)
                      : euler_product_full_float(primes);
    }

    auto sum = smooth_sum(subset.up_to(bound), bound, sum_variant,
                          exact ? Exactness::Exact : Exactness::Float);
    Quantity rhs{std::move(sum.exact), sum.approx};
    rows.push_back(make_row(n, std::move(lhs), std::move(rhs), target));
  }
  return rows;
}

IdentityResult identity_check(std::span<const std::uint64_t> primes, unsigned k) {
  if (k < 2) throw std::domain_error("identity_check needs k >= 2");
  if (primes.empty()) throw std::domain_error("identity_check needs a nonempty prime list");
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < primes.size(); ++j) {
    count *= k;
    if (count > bands::kIdentityEnumerationLimit)
      throw resource_error(fmt::format("{}^{} k-free integers exceed the enumeration limit {}", k,
                                       primes.size(), bands::kIdentityEnumerationLimit));
  }

  IdentityResult out;
  out.rhs = euler_product_full(primes);

  std::vector<BigInt> dens;
  dens.reserve(count);
  std::vector<std::uint32_t> exps(primes.size(), 0);
  for (;;) {
    dens.push_back(totient_weight_denominator(primes, exps, k));
    std::size_t j = 0;
    while (j < exps.size() && exps[j] + 1 == k) exps[j++] = 0;
    if (j == exps.size()) break;
    ++exps[j];
  }
  out.lhs = sum_reciprocals(dens);
  out.equal = out.lhs == out.rhs;
  return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("KS statistic of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double scaled_gd_cdf(const DickmanSolution& sol, double x) {
  return gd_cdf(sol, std::min(sol.theta() * x, sol.x_max()));
}

KSReport ks_test(const RandomIntegerModel& model, const DickmanSolution& sol,
                 std::size_t sample_count, std::uint64_t seed) {
  if (std::abs(sol.theta() - model.theta()) > 1e-12)
    throw std::domain_error(fmt::format("Dickman theta {} does not match subset density {}",
                                        sol.theta(), model.theta()));
  if (sample_count < 1000) throw std::domain_error("KS test needs at least 1000 samples");

  const ModelSampler sampler(model, seed);
  const double mean = sampler.expected_log();
  std::vector<double> w(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) w[i] = sampler.draw_log(i) / mean;

  KSReport report;
  report.model_id = model.model_id();
  report.theta = model.theta();
  report.n = model.size();
  report.sample_count = sample_count;
  report.seed = seed;
  report.ks_statistic = ks_statistic(std::move(w), [&](double x) { return scaled_gd_cdf(sol, x); });
  return report;
}

std::vector<std::uint64_t> williams_default_grid() {
  std::vector<std::uint64_t> grid;
  for (int i = 8; i <= 24; ++i)
    grid.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, i / 4.0))));
  return grid;
}

WilliamsFit williams_slope(std::uint64_t modulus, std::uint64_t residue,
                           std::span<const std::uint64_t> n_list) {
  check_increasing(n_list);
  if (modulus == 0) throw std::domain_error("modulus must be >= 1");
  if (modulus > 1 && (residue < 1 || residue >= modulus || std::gcd(modulus, residue) != 1))
    throw std::domain_error(fmt::format("residue {} mod {} is not a unit", residue, modulus));
  if (n_list.size() < 2 || n_list.front() < 3 ||
      static_cast<double>(n_list.back()) < 100.0 * static_cast<double>(n_list.front()))
    throw std::domain_error("Williams fit needs N >= 3 spanning at least two decades");

  const auto table = sieve_primes(n_list.back());
  WilliamsFit fit{modulus, residue, 0.0, 0.0, 1.0 / static_cast<double>(totient(modulus)), {}};

  CompensatedSum log_product;
  const auto primes = table.primes();
  std::size_t next = 0;
  for (const auto n : n_list) {
    for (; next < primes.size() && primes[next] <= n; ++next) {
      const auto p = primes[next];
      if (modulus == 1 || p % modulus == residue)
        log_product.add(-std::log1p(-1.0 / static_cast<double>(p)));
    }
    fit.points.push_back({n, std::log(std::log(static_cast<double>(n))), log_product.value()});
  }

  double mx = 0.0, my = 0.0;
  for (const auto& pt : fit.points) {
    mx += pt.log_log_n;
    my += pt.log_product;
  }
  mx /= static_cast<double>(fit.points.size());
  my /= static_cast<double>(fit.points.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& pt : fit.points) {
    sxy += (pt.log_log_n - mx) * (pt.log_product - my);
    sxx += (pt.log_log_n - mx) * (pt.log_log_n - mx);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double totient_harmonic_constant() {
  constexpr double zeta3 = 1.2020569031595942853997381615114;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return 315.0 * zeta3 / (2.0 * pi2 * pi2);
}

ConvergenceRow totient_harmonic_ratio(std::uint64_t n, unsigned k, TotientMode mode,
                                      const SubsetSpec& subset_spec, Exactness exactness) {
  if (n < 10) throw std::domain_error("totient harmonic ratio needs N >= 10");
  if (mode == TotientMode::KFreeWeighted && k < 2)
    throw std::domain_error("totient-weighted sum needs k >= 2");
  const bool all = std::holds_alternative<AllPrimes>(subset_spec);
  if (mode == TotientMode::AllTotient && !all)
    throw std::domain_error("the 1/phi(n) companion sum runs over all integers");

  const auto subset = subset_up_to(subset_spec, n);
  const auto primes = subset.up_to(n);
  const SumVariant variant = mode == TotientMode::AllTotient ? SumVariant{TotientSum{}}
                                                             : SumVariant{TotientWeightedSum{k}};
  auto sum = smooth_sum(primes, n, variant, exactness);
  Quantity lhs{std::move(sum.exact), sum.approx};

  if (all) {
    const double target = mode == TotientMode::AllTotient ? totient_harmonic_constant() : 1.0;
    return make_row(n, std::move(lhs), Quantity{std::nullopt, std::log(static_cast<double>(n))},
                    target);
  }
  auto plain = smooth_sum(primes, n, PlainSum{}, exactness);
  return make_row(n, std::move(lhs), Quantity{std::move(plain.exact), plain.approx}, 1.0);
}

FixedNCheck corollary_fixed_n_check(std::uint64_t n, unsigned k) {
  if (k < 2) throw std::domain_error("corollary check needs k >= 2");
  if (n < 2) throw std::domain_error("corollary check needs N >= 2");
  const auto table = sieve_primes(n);
  const auto primes = table.primes();

  FixedNCheck out;
  Quantity lhs;
  if (n <= kExactTermLimit) {
    lhs.exact = euler_product_full(primes);
    lhs.value = to_double(*lhs.exact);
  } else {
    lhs.value = euler_product_full_float(primes);
  }
  out.asymptotic = make_row(n, std::move(lhs), Quantity{std::nullopt, std::log(static_cast<double>(n))},
                            std::exp(kEulerGamma));
  out.assessed = n >= bands::kAsymptoticMinN;

  const double terms = std::pow(static_cast<double>(k), static_cast<double>(primes.size()));
  if (terms <= static_cast<double>(bands::kIdentityEnumerationLimit))
    out.exact = identity_check(primes, k);
  return out;
}

}  // namespace dlab
