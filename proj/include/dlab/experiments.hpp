#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dlab/arith.hpp"
#include "dlab/dickman.hpp"
#include "dlab/models.hpp"
#include "dlab/primes.hpp"
#include "dlab/rational.hpp"

namespace dlab {

/// A value with its exact form when one was computed.
struct Quantity {
  std::optional<Rational> exact;
  double value = 0.0;
};

/// One finite-N row of a limit check: ratio = lhs / rhs against `target`.
struct ConvergenceRow {
  std::uint64_t n = 0;
  Quantity lhs;
  Quantity rhs;
  double ratio = 0.0;
  double target = 0.0;
  double gap = 0.0;

  double relative_gap() const { return gap / target; }
};

ConvergenceRow make_row(std::uint64_t n, Quantity lhs, Quantity rhs, double target);

enum class MertensVariant {
  ClassicMertens,  // A = all primes, plain harmonic sums
  Thm1i,           // Euler product over A ∩ [N] / sum_{n <= N, A-smooth} 1/n
  Thm1ii,          // k-free analogue of both sides
  Thm3,            // Euler product / totient-weighted k-free sum
};

struct RatioVariant {
  MertensVariant kind = MertensVariant::Thm1i;
  unsigned k = 0;  // used by Thm1ii and Thm3
};

/// Where the denominator sum stops: at N itself or at the largest prime of
/// A not exceeding N. The two differ by o(1) in the ratio.
enum class DenominatorCut { AtN, AtLargestSubsetPrime };

/// One row per N; N is a magnitude bound, the numerator runs over the
/// primes of the subset up to N and is evaluated as a closed-form product.
std::vector<ConvergenceRow> mertens_ratio_table(const PrimeSubset& subset, RatioVariant variant,
                                                std::span<const std::uint64_t> n_list,
                                                DenominatorCut cut = DenominatorCut::AtN,
                                                Exactness mode = Exactness::Auto);

struct IdentityResult {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

/// Enumerates every k-free n supported on A_N and compares
/// sum 1/(n_{(k-1)-free} phi(n_{(k-1)-power})) with prod (1 - 1/p)^{-1}.
/// Throws resource_error when k^N exceeds the enumeration limit.
IdentityResult identity_check(std::span<const std::uint64_t> primes, unsigned k);

struct KSReport {
  int model_id = 0;
  double theta = 0.0;
  std::size_t n = 0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  double ks_statistic = 0.0;
};

/// sup_x |F_n(x) - F(x)| for the empirical CDF of `samples`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// CDF of (1/theta) D_theta, x -> gd_cdf(theta x), saturating at x_max.
double scaled_gd_cdf(const DickmanSolution& sol, double x);

KSReport ks_test(const RandomIntegerModel& model, const DickmanSolution& sol,
                 std::size_t sample_count, std::uint64_t seed);

struct WilliamsPoint {
  std::uint64_t n;
  double log_log_n;
  double log_product;
};

struct WilliamsFit {
  std::uint64_t modulus;
  std::uint64_t residue;
  double slope;
  double intercept;  // encodes the constant C(l, j); reported, not validated
  double target;     // 1 / phi(l)
  std::vector<WilliamsPoint> points;
};

/// Least-squares slope of log prod_{p <= N, p = j mod l} (1 - 1/p)^{-1}
/// against log log N. modulus 1 means all primes.
WilliamsFit williams_slope(std::uint64_t modulus, std::uint64_t residue,
                           std::span<const std::uint64_t> n_list);

/// Default N grid for the Williams fit: 10^2, 10^2.25, ..., 10^6.
std::vector<std::uint64_t> williams_default_grid();

enum class TotientMode {
  KFreeWeighted,  // sum'(k) 1/(n_{(k-1)-free} phi(n_{(k-1)-power})), target 1
  AllTotient,     // sum 1/phi(n), target zeta(2) zeta(3) / zeta(6)
};

/// zeta(2) zeta(3) / zeta(6) = 315 zeta(3) / (2 pi^4).
double totient_harmonic_constant();

/// For A = all primes the denominator is log N; for other subsets it is the
/// A-smooth harmonic sum up to N.
ConvergenceRow totient_harmonic_ratio(std::uint64_t n, unsigned k,
                                      TotientMode mode = TotientMode::KFreeWeighted,
                                      const SubsetSpec& subset = AllPrimes{},
                                      Exactness exactness = Exactness::Auto);

struct FixedNCheck {
  /// prod_{p <= N} (1 - 1/p)^{-1} / log N against e^gamma.
  ConvergenceRow asymptotic;
  /// Whether N is large enough for the band to apply.
  bool assessed = false;
  /// Exact equality leg, present when k^{pi(N)} is within the enumeration limit.
  std::optional<IdentityResult> exact;
};

FixedNCheck corollary_fixed_n_check(std::uint64_t n, unsigned k);

}  // namespace dlab
