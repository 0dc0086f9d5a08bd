#include "dlab/models.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dlab/arith.hpp"

namespace dlab {

namespace {

BigInt pow_big(std::uint64_t p, unsigned e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), to_bigint(p).get_mpz_t(), e);
  return out;
}

/// 1 / p^e as an exact rational.
Rational inv_pow(std::uint64_t p, unsigned e) { return make_rational(BigInt(1), pow_big(p, e)); }

void check_bounded(const ExponentLaw& law, unsigned m) {
  if (const auto top = law.max_exponent(); top && m > *top)
    throw std::domain_error(
        fmt::format("exponent {} outside support 0..{} of model {}", m, *top, law.model_id()));
}

void check_prime(std::uint64_t p) {
  if (p < 2) throw std::domain_error(fmt::format("{} is not a prime", p));
}

}  // namespace

ExponentLaw ExponentLaw::conditioned_below(unsigned k) {
  if (k < 2) throw std::domain_error("conditioned exponent law needs k >= 2");
  return {LawKind::ConditionedBelowK, k};
}

ExponentLaw ExponentLaw::truncated_at(unsigned k) {
  if (k < 2) throw std::domain_error("truncated exponent law needs k >= 2");
  return {LawKind::TruncatedAtKMinus1, k};
}

ExponentLaw ExponentLaw::for_model(int model_id, unsigned k) {
  switch (model_id) {
    case 1: return geometric();
    case 2: return conditioned_below(k);
    case 3: return truncated_at(k);
  }
  throw std::domain_error(fmt::format("model id {} not in {{1, 2, 3}}", model_id));
}

int ExponentLaw::model_id() const {
  switch (kind) {
    case LawKind::Geometric: return 1;
    case LawKind::ConditionedBelowK: return 2;
    case LawKind::TruncatedAtKMinus1: return 3;
  }
  return 0;
}

std::optional<unsigned> ExponentLaw::max_exponent() const {
  if (kind == LawKind::Geometric) return std::nullopt;
  return k - 1;
}

Rational exponent_pmf(const ExponentLaw& law, std::uint64_t p, unsigned m) {
  check_prime(p);
  check_bounded(law, m);
  const Rational keep = make_rational(p - 1, p);  // 1 - 1/p
  switch (law.kind) {
    case LawKind::Geometric:
      return keep * inv_pow(p, m);
    case LawKind::ConditionedBelowK:
      return keep / (1 - inv_pow(p, law.k)) * inv_pow(p, m);
    case LawKind::TruncatedAtKMinus1:
      return m + 1 == law.k ? inv_pow(p, law.k - 1) : keep * inv_pow(p, m);
  }
  return Rational(0);
}

Rational exponent_mean(const ExponentLaw& law, std::uint64_t p) {
  check_prime(p);
  if (law.kind == LawKind::Geometric) return make_rational(1, p - 1);
  Rational mean(0);
  for (unsigned m = 1; m < law.k; ++m) mean += m * exponent_pmf(law, p, m);
  return mean;
}

double exponent_pmf_float(const ExponentLaw& law, std::uint64_t p, unsigned m) {
  check_bounded(law, m);
  const double x = 1.0 / static_cast<double>(p);
  const double xm = std::pow(x, m);
  switch (law.kind) {
    case LawKind::Geometric:
      return (1.0 - x) * xm;
    case LawKind::ConditionedBelowK:
      return (1.0 - x) / (1.0 - std::pow(x, law.k)) * xm;
    case LawKind::TruncatedAtKMinus1:
      return m + 1 == law.k ? xm : (1.0 - x) * xm;
  }
  return 0.0;
}

double exponent_mean_float(const ExponentLaw& law, std::uint64_t p) {
  if (law.kind == LawKind::Geometric) return 1.0 / static_cast<double>(p - 1);
  double mean = 0.0;
  for (unsigned m = 1; m < law.k; ++m) mean += m * exponent_pmf_float(law, p, m);
  return mean;
}

BigInt FactoredInteger::value(std::span<const std::uint64_t> primes) const {
  if (primes.size() != exponents.size())
    throw std::domain_error("exponent vector length does not match the prime list");
  BigInt n(1);
  for (std::size_t j = 0; j < primes.size(); ++j)
    if (exponents[j]) n *= pow_big(primes[j], exponents[j]);
  return n;
}

double FactoredInteger::log_value(std::span<const std::uint64_t> primes) const {
  if (primes.size() != exponents.size())
    throw std::domain_error("exponent vector length does not match the prime list");
  double acc = 0.0;
  for (std::size_t j = 0; j < primes.size(); ++j)
    if (exponents[j]) acc += exponents[j] * std::log(static_cast<double>(primes[j]));
  return acc;
}

RandomIntegerModel::RandomIntegerModel(std::shared_ptr<const PrimeSubset> subset, std::size_t n,
                                       ExponentLaw law)
    : subset_(std::move(subset)), n_(n), law_(law) {
  if (!subset_) throw std::domain_error("model needs a prime subset");
  if (n_ == 0) throw std::domain_error("model needs N >= 1");
  if (n_ > subset_->size())
    throw std::out_of_range(
        fmt::format("model needs {} primes, subset materializes {}", n_, subset_->size()));
  if (law_.kind != LawKind::Geometric && law_.k < 2)
    throw std::domain_error("bounded exponent law needs k >= 2");
}

RandomIntegerModel RandomIntegerModel::make(const SubsetSpec& spec, std::size_t n,
                                            ExponentLaw law) {
  return RandomIntegerModel(std::make_shared<const PrimeSubset>(subset_with_count(spec, n)), n,
                            law);
}

Rational model_pmf(const RandomIntegerModel& model, const FactoredInteger& n) {
  const auto primes = model.primes();
  if (n.exponents.size() != primes.size())
    throw std::domain_error(fmt::format("exponent vector has length {}, model N = {}",
                                        n.exponents.size(), primes.size()));
  const auto& law = model.law();
  for (auto c : n.exponents) check_bounded(law, c);

  std::vector<BigInt> keep_num, keep_den;
  for (auto p : primes) {
    keep_num.push_back(to_bigint(p - 1));
    keep_den.push_back(to_bigint(p));
  }
  const Rational keep = make_rational(product_tree(keep_num), product_tree(keep_den));

  switch (law.kind) {
    case LawKind::Geometric:
      return keep / Rational(n.value(primes));
    case LawKind::ConditionedBelowK: {
      // (1 + 1/p + ... + p^{1-k})^{-1} = (p - 1) p^{k-1} / (p^k - 1)
      std::vector<BigInt> num, den;
      for (auto p : primes) {
        const BigInt pk1 = pow_big(p, law.k - 1);
        num.push_back(pk1 * (p - 1));
        den.push_back(pk1 * p - 1);
      }
      return make_rational(product_tree(num), product_tree(den)) / Rational(n.value(primes));
    }
    case LawKind::TruncatedAtKMinus1: {
      return keep / Rational(totient_weight_denominator(primes, n.exponents, law.k));
    }
  }
  return Rational(0);
}

double expected_log(const RandomIntegerModel& model) {
  CompensatedSum acc;
  for (auto p : model.primes())
    acc.add(exponent_mean_float(model.law(), p) * std::log(static_cast<double>(p)));
  return acc.value();
}

double normalized_log(const RandomIntegerModel& model, const FactoredInteger& sample) {
  const double mean = expected_log(model);
  if (!(mean > 0.0)) throw std::domain_error("expected log is not positive");
  return sample.log_value(model.primes()) / mean;
}

Rational bx_success_probability(const ExponentLaw& law, std::uint64_t p) {
  check_prime(p);
  if (law.kind == LawKind::ConditionedBelowK) {
    const Rational xk = inv_pow(p, law.k);
    return (make_rational(1, p) - xk) / (1 - xk);
  }
  return make_rational(1, p);
}

Rational bx_value_pmf(const ExponentLaw& law, std::uint64_t p, unsigned m) {
  check_prime(p);
  if (m == 0) throw std::domain_error("X takes values m log p with m >= 1");
  check_bounded(law, m);
  const Rational keep = make_rational(p - 1, p);
  switch (law.kind) {
    case LawKind::Geometric:
      return keep * inv_pow(p, m - 1);
    case LawKind::ConditionedBelowK:
      return keep / (1 - inv_pow(p, law.k - 1)) * inv_pow(p, m - 1);
    case LawKind::TruncatedAtKMinus1:
      return m + 1 == law.k ? inv_pow(p, law.k - 2) : keep * inv_pow(p, m - 1);
  }
  return Rational(0);
}

Rational bx_product_pmf(const ExponentLaw& law, std::uint64_t p, unsigned m) {
  const Rational q = bx_success_probability(law, p);
  if (m == 0) return 1 - q;
  return q * bx_value_pmf(law, p, m);
}

double bx_mean(const ExponentLaw& law, std::uint64_t p) {
  const double log_p = std::log(static_cast<double>(p));
  const double pd = static_cast<double>(p);
  if (law.kind == LawKind::Geometric) return pd / (pd - 1.0) * log_p;
  double mean = 0.0;
  for (unsigned m = 1; m < law.k; ++m) mean += m * to_double(bx_value_pmf(law, p, m));
  return mean * log_p;
}

BXDecomposition bx_decomposition(const RandomIntegerModel& model) {
  BXDecomposition out;
  for (auto p : model.primes()) {
    out.q.push_back(to_double(bx_success_probability(model.law(), p)));
    out.mu.push_back(bx_mean(model.law(), p));
  }
  return out;
}

ModelSampler::ModelSampler(const RandomIntegerModel& model, std::uint64_t seed)
    : model_(model), rng_(seed), bx_rng_(seed ^ 0xb7e151628aed2a6bULL) {
  const auto primes = model_.primes();
  const auto& law = model_.law();
  log_p_.reserve(primes.size());
  inv_p_.reserve(primes.size());
  for (auto p : primes) {
    log_p_.push_back(std::log(static_cast<double>(p)));
    inv_p_.push_back(1.0 / static_cast<double>(p));
    bx_q_.push_back(to_double(bx_success_probability(law, p)));
  }
  if (law.kind != LawKind::Geometric) {
    width_ = law.k;
    cum_.reserve(primes.size() * width_);
    bx_cum_.reserve(primes.size() * width_);
    for (auto p : primes) {
      Rational acc(0), bx_acc(0);
      for (unsigned m = 0; m < law.k; ++m) {
        acc += exponent_pmf(law, p, m);
        cum_.push_back(m + 1 == law.k ? 1.0 : to_double(acc));
        // bx_cum_[m] = P(X <= m log p); slot 0 unused.
        if (m > 0) bx_acc += bx_value_pmf(law, p, m);
        bx_cum_.push_back(m + 1 == law.k ? 1.0 : to_double(bx_acc));
      }
    }
  }
  expected_log_ = dlab::expected_log(model_);
}

unsigned ModelSampler::exponent(std::uint64_t index, std::size_t j) const {
  const double u = rng_.uniform(index, j);
  if (width_ == 0) {
    if (u > inv_p_[j]) return 0;
    return static_cast<unsigned>(std::floor(-std::log(u) / log_p_[j]));
  }
  const double* cum = &cum_[j * width_];
  unsigned m = 0;
  while (u > cum[m]) ++m;
  return m;
}

FactoredInteger ModelSampler::draw(std::uint64_t index) const {
  FactoredInteger out;
  out.exponents.resize(log_p_.size());
  for (std::size_t j = 0; j < log_p_.size(); ++j) out.exponents[j] = exponent(index, j);
  return out;
}

double ModelSampler::draw_log(std::uint64_t index) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < log_p_.size(); ++j)
    if (const unsigned c = exponent(index, j)) acc += c * log_p_[j];
  return acc;
}

double ModelSampler::draw_log_bx(std::uint64_t index) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < log_p_.size(); ++j) {
    if (bx_rng_.uniform(index, 2 * j) > bx_q_[j]) continue;
    const double v = bx_rng_.uniform(index, 2 * j + 1);
    unsigned m = 1;
    if (width_ == 0) {
      if (v <= inv_p_[j]) m += static_cast<unsigned>(std::floor(-std::log(v) / log_p_[j]));
    } else {
      const double* cum = &bx_cum_[j * width_];
      while (v > cum[m]) ++m;
    }
    acc += m * log_p_[j];
  }
  return acc;
}

std::vector<FactoredInteger> sample(const RandomIntegerModel& model, std::uint64_t seed,
                                    std::size_t count) {
  if (count == 0) throw std::domain_error("sample count must be >= 1");
  const ModelSampler sampler(model, seed);
  std::vector<FactoredInteger> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.draw(i));
  return out;
}

std::vector<double> sample_log_bx(const RandomIntegerModel& model, std::uint64_t seed,
                                  std::size_t count) {
  if (count == 0) throw std::domain_error("sample count must be >= 1");
  const ModelSampler sampler(model, seed);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.draw_log_bx(i));
  return out;
}

}  // namespace dlab
