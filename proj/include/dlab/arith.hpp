#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dlab/primes.hpp"
#include "dlab/rational.hpp"

namespace dlab {

bool is_k_free(std::uint64_t n, unsigned k);

/// n = free_part * power_part with free_part k-free and power_part a perfect
/// k-th power. For k = 1 the free part is 1.
struct KDecomposition {
  std::uint64_t n;
  unsigned k;
  std::uint64_t free_part;
  std::uint64_t power_part;
};

KDecomposition k_decompose(std::uint64_t n, unsigned k);

std::uint64_t totient(std::uint64_t n);

/// For n = prod primes[j]^{exponents[j]}: n_{(k-1)-free} * phi(n_{(k-1)-power}),
/// the reciprocal weight of n in the totient-weighted k-free sums. k >= 2.
BigInt totient_weight_denominator(std::span<const std::uint64_t> primes,
                                  std::span<const std::uint32_t> exponents, unsigned k);

/// Calls visit(n, weight_denominator) for every n <= bound whose prime
/// factors all lie in `primes` (sorted ascending), with every exponent at
/// most `max_exponent` (0 means unbounded). Order is depth-first, not sorted.
/// `local(p, c)` gives the multiplicative weight denominator contributed by
/// p^c; the visitor receives the product of those over the factorization.
template <typename LocalWeight, typename Visitor>
void for_each_smooth(std::span<const std::uint64_t> primes, std::uint64_t bound,
                     unsigned max_exponent, LocalWeight&& local, Visitor&& visit);

/// Sorted list of n <= bound supported on `primes`; k-free only when
/// k_restrict is set. Always contains 1. Throws std::domain_error for bound 0.
std::vector<std::uint64_t> enumerate_smooth(std::span<const std::uint64_t> primes,
                                            std::uint64_t bound,
                                            std::optional<unsigned> k_restrict = std::nullopt);

/// prod (1 - 1/p)^{-1}, i.e. the sum of 1/n over all n supported on the list.
Rational euler_product_full(std::span<const std::uint64_t> primes);
/// prod (1 + 1/p + ... + 1/p^{k-1}), the k-free analogue.
Rational euler_product_kfree(std::span<const std::uint64_t> primes, unsigned k);

/// Floating versions for lists too long for exact products.
double euler_product_full_float(std::span<const std::uint64_t> primes);
double euler_product_kfree_float(std::span<const std::uint64_t> primes, unsigned k);

struct PlainSum {};
struct KFreeSum {
  unsigned k;
};
/// Sum over k-free n of 1 / (n_{(k-1)-free} * phi(n_{(k-1)-power})).
struct TotientWeightedSum {
  unsigned k;
};
/// Sum of 1/phi(n) over all n (no k-free restriction).
struct TotientSum {};

using SumVariant = std::variant<PlainSum, KFreeSum, TotientWeightedSum, TotientSum>;

struct SmoothSum {
  std::optional<Rational> exact;
  double approx;
  std::uint64_t terms;
};

enum class Exactness { Auto, Exact, Float };

/// Terms at or below which Exactness::Auto sums exactly.
inline constexpr std::uint64_t kExactTermLimit = 100'000;

SmoothSum smooth_sum(std::span<const std::uint64_t> primes, std::uint64_t bound,
                     const SumVariant& variant, Exactness mode = Exactness::Auto);

/// Exact sum of the variant's weights over n <= bound supported on the
/// subset's primes.
Rational harmonic_sum_smooth(const PrimeSubset& subset, std::uint64_t bound,
                             const SumVariant& variant);

/// Same sum in compensated floating point.
double harmonic_sum_smooth_float(const PrimeSubset& subset, std::uint64_t bound,
                                 const SumVariant& variant);

// ---------------------------------------------------------------------------

namespace detail {

template <typename LocalWeight, typename Visitor>
void smooth_dfs(std::span<const std::uint64_t> primes, std::size_t start, std::uint64_t n,
                std::uint64_t den, std::uint64_t bound, unsigned max_exponent,
                LocalWeight& local, Visitor& visit) {
  visit(n, den);
  for (std::size_t i = start; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (p > bound / n) break;
    std::uint64_t m = n * p;
    for (unsigned c = 1;; ++c) {
      smooth_dfs(primes, i + 1, m, den * local(p, c), bound, max_exponent, local, visit);
      if (max_exponent != 0 && c == max_exponent) break;
      if (p > bound / m) break;
      m *= p;
    }
  }
}

}  // namespace detail

template <typename LocalWeight, typename Visitor>
void for_each_smooth(std::span<const std::uint64_t> primes, std::uint64_t bound,
                     unsigned max_exponent, LocalWeight&& local, Visitor&& visit) {
  if (bound == 0) return;
  detail::smooth_dfs(primes, 0, 1, 1, bound, max_exponent, local, visit);
}

}  // namespace dlab
