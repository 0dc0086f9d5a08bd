#include "dlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dlab {

namespace {

// Trial-division factorization as (prime, exponent) pairs.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned c = 0;
    while (n % d == 0) {
      n /= d;
      ++c;
    }
    out.emplace_back(d, c);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

void check_prime_list(std::span<const std::uint64_t> primes) {
  if (primes.empty()) throw std::domain_error("empty prime list");
  std::vector<std::uint64_t> sorted(primes.begin(), primes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::domain_error("prime list contains duplicates");
  for (auto p : sorted)
    if (!is_prime_trial(p)) throw std::domain_error(fmt::format("{} is not prime", p));
}

void check_sorted_primes(std::span<const std::uint64_t> primes) {
  if (!std::is_sorted(primes.begin(), primes.end()))
    throw std::domain_error("prime list must be sorted ascending");
}

}  // namespace

bool is_k_free(std::uint64_t n, unsigned k) {
  if (k < 2) throw std::domain_error("is_k_free: k must be >= 2");
  if (n == 0) throw std::domain_error("is_k_free: n must be >= 1");
  for (const auto& [p, c] : factorize(n))
    if (c >= k) return false;
  return true;
}

KDecomposition k_decompose(std::uint64_t n, unsigned k) {
  if (n == 0) throw std::domain_error("k_decompose: n must be >= 1");
  if (k < 1) throw std::domain_error("k_decompose: k must be >= 1");
  KDecomposition out{n, k, 1, 1};
  for (const auto& [p, c] : factorize(n)) {
    out.free_part *= ipow(p, c % k);
    out.power_part *= ipow(p, k * (c / k));
  }
  return out;
}

std::uint64_t totient(std::uint64_t n) {
  if (n == 0) throw std::domain_error("totient: n must be >= 1");
  std::uint64_t result = n;
  for (const auto& [p, c] : factorize(n)) result = result / p * (p - 1);
  return result;
}

BigInt totient_weight_denominator(std::span<const std::uint64_t> primes,
                                  std::span<const std::uint32_t> exponents, unsigned k) {
  if (k < 2) throw std::domain_error("totient weight needs k >= 2");
  if (primes.size() != exponents.size())
    throw std::domain_error("exponent vector length does not match the prime list");
  const unsigned r = k - 1;
  BigInt out(1);
  for (std::size_t j = 0; j < primes.size(); ++j) {
    const BigInt p = to_bigint(primes[j]);
    BigInt t;
    // free part p^{c mod r}
    mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), exponents[j] % r);
    out *= t;
    // phi of the power part p^e, e = r floor(c / r)
    const unsigned e = r * (exponents[j] / r);
    if (e > 0) {
      mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), e - 1);
      out *= t * (p - 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> enumerate_smooth(std::span<const std::uint64_t> primes,
                                            std::uint64_t bound,
                                            std::optional<unsigned> k_restrict) {
  if (bound == 0) throw std::domain_error("enumerate_smooth: bound must be >= 1");
  if (k_restrict && *k_restrict < 2) throw std::domain_error("enumerate_smooth: k must be >= 2");
  check_sorted_primes(primes);
  std::vector<std::uint64_t> out;
  const unsigned max_exp = k_restrict ? *k_restrict - 1 : 0;
  for_each_smooth(
      primes, bound, max_exp, [](std::uint64_t, unsigned) { return std::uint64_t{1}; },
      [&](std::uint64_t n, std::uint64_t) { out.push_back(n); });
  std::sort(out.begin(), out.end());
  return out;
}

Rational euler_product_full(std::span<const std::uint64_t> primes) {
  check_prime_list(primes);
  std::vector<BigInt> num, den;
  num.reserve(primes.size());
  den.reserve(primes.size());
  for (auto p : primes) {
    num.push_back(to_bigint(p));
    den.push_back(to_bigint(p - 1));
  }
  return make_rational(product_tree(num), product_tree(den));
}

Rational euler_product_kfree(std::span<const std::uint64_t> primes, unsigned k) {
  if (k < 2) throw std::domain_error("euler_product_kfree: k must be >= 2");
  check_prime_list(primes);
  // 1 + 1/p + ... + 1/p^{k-1} = (p^k - 1) / ((p - 1) p^{k-1})
  std::vector<BigInt> num, den;
  for (auto p : primes) {
    BigInt pk;
    mpz_pow_ui(pk.get_mpz_t(), to_bigint(p).get_mpz_t(), k - 1);
    den.push_back(pk * (p - 1));
    num.push_back(pk * p - 1);
  }
  return make_rational(product_tree(num), product_tree(den));
}

double euler_product_full_float(std::span<const std::uint64_t> primes) {
  CompensatedSum log_sum;
  for (auto p : primes) log_sum.add(-std::log1p(-1.0 / static_cast<double>(p)));
  return std::exp(log_sum.value());
}

double euler_product_kfree_float(std::span<const std::uint64_t> primes, unsigned k) {
  if (k < 2) throw std::domain_error("euler_product_kfree: k must be >= 2");
  CompensatedSum log_sum;
  for (auto p : primes) {
    const double x = 1.0 / static_cast<double>(p);
    // log((1 - x^k) / (1 - x))
    log_sum.add(std::log1p(-std::pow(x, static_cast<double>(k))) - std::log1p(-x));
  }
  return std::exp(log_sum.value());
}

namespace {

struct LocalRule {
  unsigned max_exponent;  // 0 = unbounded
  // Weight denominator of p^c.
  std::uint64_t (*den)(std::uint64_t p, unsigned c, unsigned k);
  unsigned k;
};

LocalRule rule_for(const SumVariant& v) {
  struct {
    LocalRule operator()(const PlainSum&) const {
      return {0, [](std::uint64_t p, unsigned c, unsigned) { return ipow(p, c); }, 0};
    }
    LocalRule operator()(const KFreeSum& s) const {
      if (s.k < 2) throw std::domain_error("k-free sum needs k >= 2");
      return {s.k - 1, [](std::uint64_t p, unsigned c, unsigned) { return ipow(p, c); }, s.k};
    }
    LocalRule operator()(const TotientWeightedSum& s) const {
      if (s.k < 2) throw std::domain_error("totient-weighted sum needs k >= 2");
      // Exponents stay below k, so p^c splits as free (c < k-1) or as a pure
      // (k-1)-th power (c = k-1) whose totient is p^{k-2}(p-1).
      return {s.k - 1,
              [](std::uint64_t p, unsigned c, unsigned k) {
                return c + 1 == k ? ipow(p, c - 1) * (p - 1) : ipow(p, c);
              },
              s.k};
    }
    LocalRule operator()(const TotientSum&) const {
      return {0, [](std::uint64_t p, unsigned c, unsigned) { return ipow(p, c - 1) * (p - 1); },
              0};
    }
  } visitor;
  return std::visit(visitor, v);
}

}  // namespace

SmoothSum smooth_sum(std::span<const std::uint64_t> primes, std::uint64_t bound,
                     const SumVariant& variant, Exactness mode) {
  if (bound == 0) throw std::domain_error("smooth sum bound must be >= 1");
  check_sorted_primes(primes);
  const auto rule = rule_for(variant);
  auto local = [&](std::uint64_t p, unsigned c) { return rule.den(p, c, rule.k); };

  const bool exact =
      mode == Exactness::Exact || (mode == Exactness::Auto && bound <= kExactTermLimit);

  SmoothSum out{std::nullopt, 0.0, 0};
  if (exact) {
    std::vector<std::uint64_t> dens;
    for_each_smooth(primes, bound, rule.max_exponent, local,
                    [&](std::uint64_t, std::uint64_t den) { dens.push_back(den); });
    out.terms = dens.size();
    out.exact = sum_reciprocals(dens);
    out.approx = to_double(*out.exact);
  } else {
    CompensatedSum acc;
    for_each_smooth(primes, bound, rule.max_exponent, local,
                    [&](std::uint64_t, std::uint64_t den) {
                      acc.add(1.0 / static_cast<double>(den));
                      ++out.terms;
                    });
    out.approx = acc.value();
  }
  return out;
}

namespace {

void check_coverage(const PrimeSubset& subset, std::uint64_t bound) {
  if (!std::holds_alternative<ExplicitPrimes>(subset.spec()) && bound > subset.table().limit())
    throw std::domain_error(fmt::format("bound {} exceeds prime table limit {}", bound,
                                        subset.table().limit()));
}

}  // namespace

Rational harmonic_sum_smooth(const PrimeSubset& subset, std::uint64_t bound,
                             const SumVariant& variant) {
  check_coverage(subset, bound);
  return *smooth_sum(subset.up_to(bound), bound, variant, Exactness::Exact).exact;
}

double harmonic_sum_smooth_float(const PrimeSubset& subset, std::uint64_t bound,
                                 const SumVariant& variant) {
  check_coverage(subset, bound);
  return smooth_sum(subset.up_to(bound), bound, variant, Exactness::Float).approx;
}

}  // namespace dlab
