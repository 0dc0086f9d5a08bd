#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dlab/primes.hpp"
#include "dlab/rational.hpp"
#include "dlab/rng.hpp"

namespace dlab {

enum class LawKind {
  Geometric,           // T: P(T = m) = (1 - 1/p) p^{-m}, m >= 0
  ConditionedBelowK,   // U: T conditioned on T < k
  TruncatedAtKMinus1,  // V: min(T, k - 1)
};

/// Per-prime exponent distribution.
struct ExponentLaw {
  LawKind kind = LawKind::Geometric;
  unsigned k = 0;  // >= 2 for the bounded laws

  static ExponentLaw geometric() { return {LawKind::Geometric, 0}; }
  static ExponentLaw conditioned_below(unsigned k);
  static ExponentLaw truncated_at(unsigned k);
  /// 1, 2 or 3 for T, U, V respectively.
  static ExponentLaw for_model(int model_id, unsigned k);

  int model_id() const;
  /// Largest exponent in the support, if finite.
  std::optional<unsigned> max_exponent() const;
};

Rational exponent_pmf(const ExponentLaw& law, std::uint64_t p, unsigned m);
Rational exponent_mean(const ExponentLaw& law, std::uint64_t p);
double exponent_pmf_float(const ExponentLaw& law, std::uint64_t p, unsigned m);
double exponent_mean_float(const ExponentLaw& law, std::uint64_t p);

/// Exponent vector c_1..c_N over A_N; the integer is prod p_j^{c_j}.
struct FactoredInteger {
  std::vector<std::uint32_t> exponents;

  BigInt value(std::span<const std::uint64_t> primes) const;
  double log_value(std::span<const std::uint64_t> primes) const;
  bool operator==(const FactoredInteger&) const = default;
};

/// I_{N;A,id} = prod_{j <= N} p_{j;A}^{E_j} with E_j drawn from `law`.
class RandomIntegerModel {
 public:
  RandomIntegerModel(std::shared_ptr<const PrimeSubset> subset, std::size_t n, ExponentLaw law);

  /// Builds the subset with enough primes for `n`.
  static RandomIntegerModel make(const SubsetSpec& spec, std::size_t n, ExponentLaw law);

  const PrimeSubset& subset() const { return *subset_; }
  std::size_t size() const { return n_; }
  const ExponentLaw& law() const { return law_; }
  int model_id() const { return law_.model_id(); }
  double theta() const { return subset_->theta(); }
  /// A_N.
  std::span<const std::uint64_t> primes() const { return subset_->prefix(n_); }

 private:
  std::shared_ptr<const PrimeSubset> subset_;
  std::size_t n_;
  ExponentLaw law_;
};

/// Closed-form P(I = n): (1/n) prod (1 - 1/p) for model 1,
/// (1/n) prod (1 + ... + p^{1-k})^{-1} for model 2, and
/// prod (1 - 1/p) / (n_{(k-1)-free} phi(n_{(k-1)-power})) for model 3.
/// Throws std::domain_error outside the support.
Rational model_pmf(const RandomIntegerModel& model, const FactoredInteger& n);

/// E log I = sum_j E[E_j] log p_j.
double expected_log(const RandomIntegerModel& model);

/// log I / E log I.
double normalized_log(const RandomIntegerModel& model, const FactoredInteger& sample);

// --- Bernoulli-product decomposition: E_j log p_j  =dist=  B_j X_j --------

/// q_j = P(B_j = 1).
Rational bx_success_probability(const ExponentLaw& law, std::uint64_t p);
/// P(X_j = m log p), m >= 1.
Rational bx_value_pmf(const ExponentLaw& law, std::uint64_t p, unsigned m);
/// P(B_j X_j = m log p), m >= 0.
Rational bx_product_pmf(const ExponentLaw& law, std::uint64_t p, unsigned m);
/// mu_j = E X_j.
double bx_mean(const ExponentLaw& law, std::uint64_t p);

struct BXDecomposition {
  std::vector<double> q;
  std::vector<double> mu;
};

BXDecomposition bx_decomposition(const RandomIntegerModel& model);

/// Seeded sampler. Coordinate j of draw i depends only on (seed, i, j), by
/// inverse CDF per coordinate.
class ModelSampler {
 public:
  ModelSampler(const RandomIntegerModel& model, std::uint64_t seed);

  FactoredInteger draw(std::uint64_t index) const;
  /// log of draw(index) without materializing the exponent vector.
  double draw_log(std::uint64_t index) const;
  /// One draw of sum_j B_j X_j, from an independent stream.
  double draw_log_bx(std::uint64_t index) const;
  double expected_log() const { return expected_log_; }

 private:
  unsigned exponent(std::uint64_t index, std::size_t j) const;

  RandomIntegerModel model_;
  CounterRng rng_;
  CounterRng bx_rng_;
  std::vector<double> log_p_;
  std::vector<double> inv_p_;
  // Bounded laws: cumulative P(E <= m), m = 0..k-1, row-major per prime.
  std::vector<double> cum_;
  // P(X <= m log p), m = 1..k-1 for the bounded laws' X.
  std::vector<double> bx_cum_;
  std::vector<double> bx_q_;
  unsigned width_ = 0;
  double expected_log_ = 0.0;
};

std::vector<FactoredInteger> sample(const RandomIntegerModel& model, std::uint64_t seed,
                                    std::size_t count);
std::vector<double> sample_log_bx(const RandomIntegerModel& model, std::uint64_t seed,
                                  std::size_t count);

}  // namespace dlab
