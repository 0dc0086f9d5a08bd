#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dlab {

/// All primes up to `limit`, strictly increasing.
class PrimeTable {
 public:
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  /// Number of primes <= n; n must not exceed limit().
  std::size_t count_up_to(std::uint64_t n) const;
  bool contains(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

/// Segmented odd-only sieve of Eratosthenes. Throws std::domain_error for
/// limit < 2.
PrimeTable sieve_primes(std::uint64_t limit);

/// Deterministic trial-division primality test.
bool is_prime_trial(std::uint64_t n);

struct AllPrimes {};

/// Primes congruent to `residue` modulo `modulus`.
struct ResidueClass {
  std::uint64_t modulus;
  std::uint64_t residue;
};

/// A caller-supplied finite list of primes. `theta` is a declared density:
/// checks built on an explicit subset are only as meaningful as that claim.
struct ExplicitPrimes {
  std::vector<std::uint64_t> primes;
  double theta;
};

using SubsetSpec = std::variant<AllPrimes, ResidueClass, ExplicitPrimes>;

std::string describe(const SubsetSpec& spec);

/// An ordered prime subset A with its density theta in the primes.
/// Immutable; indexing via nth() is 1-based.
class PrimeSubset {
 public:
  PrimeSubset(std::shared_ptr<const PrimeTable> table, SubsetSpec spec,
              std::vector<std::uint64_t> primes, double theta);

  const SubsetSpec& spec() const { return spec_; }
  const PrimeTable& table() const { return *table_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  double theta() const { return theta_; }

  /// p_{j;A}; throws std::out_of_range when j is 0 or past the end.
  std::uint64_t nth(std::size_t j) const;
  /// The first n elements, A_n.
  std::span<const std::uint64_t> prefix(std::size_t n) const;
  /// Elements <= bound.
  std::span<const std::uint64_t> up_to(std::uint64_t bound) const;

 private:
  std::shared_ptr<const PrimeTable> table_;
  SubsetSpec spec_;
  std::vector<std::uint64_t> primes_;
  double theta_;
};

PrimeSubset build_subset(std::shared_ptr<const PrimeTable> table, SubsetSpec spec);

/// |A ∩ [N]| / |P ∩ [N]|.
double empirical_density(const PrimeSubset& subset, std::uint64_t n);

std::uint64_t nth_prime(const PrimeSubset& subset, std::size_t j);

/// Builds a subset whose backing table reaches at least `bound`.
PrimeSubset subset_up_to(const SubsetSpec& spec, std::uint64_t bound);

/// Builds a subset with at least `count` materialized elements, growing the
/// sieve limit as needed. Explicit subsets are returned as given and must
/// already hold `count` primes.
PrimeSubset subset_with_count(const SubsetSpec& spec, std::size_t count);

}  // namespace dlab
