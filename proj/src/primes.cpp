#include "dlab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "dlab/arith.hpp"

namespace dlab {

namespace {

constexpr std::size_t kSegmentBytes = 1 << 15;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::size_t PrimeTable::count_up_to(std::uint64_t n) const {
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

bool PrimeTable::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");

  const std::uint64_t root = isqrt(limit);

  // Base primes up to sqrt(limit) by a plain sieve.
  std::vector<std::uint8_t> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t m = i * i; m <= root; m += 2 * i) small[m] = 0;
  }

  std::vector<std::uint64_t> primes{2};
  if (limit >= 3) {
    const auto estimate = static_cast<std::size_t>(
        1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit)));
    primes.reserve(estimate + 16);
  }

  // Segment i covers odd numbers lo, lo+2, ..., one byte each.
  std::vector<std::uint8_t> segment(kSegmentBytes);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t b = 0; b < base.size(); ++b) next[b] = base[b] * base[b];

  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSegmentBytes) {
    const std::uint64_t hi = std::min(limit, lo + 2 * kSegmentBytes - 1);
    const std::size_t len = static_cast<std::size_t>((hi - lo) / 2 + 1);
    std::fill_n(segment.begin(), len, std::uint8_t{1});
    for (std::size_t b = 0; b < base.size(); ++b) {
      const std::uint64_t p = base[b];
      std::uint64_t m = next[b];
      for (; m <= hi; m += 2 * p) segment[(m - lo) / 2] = 0;
      next[b] = m;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (segment[i]) primes.push_back(lo + 2 * i);
  }
  return PrimeTable(limit, std::move(primes));
}

std::string describe(const SubsetSpec& spec) {
  struct {
    std::string operator()(const AllPrimes&) const { return "all"; }
    std::string operator()(const ResidueClass& r) const {
      return fmt::format("residue:{}:{}", r.modulus, r.residue);
    }
    std::string operator()(const ExplicitPrimes& e) const {
      return fmt::format("explicit[{}]", e.primes.size());
    }
  } visitor;
  return std::visit(visitor, spec);
}

PrimeSubset::PrimeSubset(std::shared_ptr<const PrimeTable> table, SubsetSpec spec,
                         std::vector<std::uint64_t> primes, double theta)
    : table_(std::move(table)), spec_(std::move(spec)), primes_(std::move(primes)),
      theta_(theta) {
  if (!(theta_ > 0.0 && theta_ <= 1.0))
    throw std::domain_error("prime subset density must lie in (0, 1]");
}

std::uint64_t PrimeSubset::nth(std::size_t j) const {
  if (j == 0 || j > primes_.size())
    throw std::out_of_range(fmt::format("subset index {} outside [1, {}]", j, primes_.size()));
  return primes_[j - 1];
}

std::span<const std::uint64_t> PrimeSubset::prefix(std::size_t n) const {
  if (n > primes_.size())
    throw std::out_of_range(
        fmt::format("subset prefix of length {} requested, {} materialized", n, primes_.size()));
  return std::span<const std::uint64_t>(primes_).first(n);
}

std::span<const std::uint64_t> PrimeSubset::up_to(std::uint64_t bound) const {
  const auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

PrimeSubset build_subset(std::shared_ptr<const PrimeTable> table, SubsetSpec spec) {
  if (!table) throw std::domain_error("build_subset: missing prime table");
  const auto all = table->primes();

  if (std::holds_alternative<AllPrimes>(spec)) {
    std::vector<std::uint64_t> primes(all.begin(), all.end());
    return PrimeSubset(std::move(table), spec, std::move(primes), 1.0);
  }

  if (const auto* r = std::get_if<ResidueClass>(&spec)) {
    if (r->modulus < 2 || r->residue < 1 || r->residue >= r->modulus)
      throw std::domain_error("residue class needs modulus >= 2 and 1 <= residue < modulus");
    if (std::gcd(r->modulus, r->residue) != 1)
      throw std::domain_error(fmt::format("gcd({}, {}) != 1: no density for this residue class",
                                          r->residue, r->modulus));
    std::vector<std::uint64_t> primes;
    std::copy_if(all.begin(), all.end(), std::back_inserter(primes),
                 [&](std::uint64_t p) { return p % r->modulus == r->residue; });
    const double theta = 1.0 / static_cast<double>(totient(r->modulus));
    return PrimeSubset(std::move(table), spec, std::move(primes), theta);
  }

  const auto& e = std::get<ExplicitPrimes>(spec);
  std::vector<std::uint64_t> primes = e.primes;
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw std::domain_error("explicit subset contains duplicate primes");
  for (auto p : primes) {
    if (p > table->limit())
      throw std::domain_error(fmt::format("explicit prime {} exceeds table limit {}", p,
                                          table->limit()));
    if (!table->contains(p)) throw std::domain_error(fmt::format("{} is not prime", p));
  }
  return PrimeSubset(std::move(table), spec, std::move(primes), e.theta);
}

double empirical_density(const PrimeSubset& subset, std::uint64_t n) {
  if (n > subset.table().limit())
    throw std::domain_error(fmt::format("density at {} beyond table limit {}", n,
                                        subset.table().limit()));
  const auto total = subset.table().count_up_to(n);
  if (total == 0) throw std::domain_error("no primes <= N");
  return static_cast<double>(subset.up_to(n).size()) / static_cast<double>(total);
}

std::uint64_t nth_prime(const PrimeSubset& subset, std::size_t j) { return subset.nth(j); }

PrimeSubset subset_up_to(const SubsetSpec& spec, std::uint64_t bound) {
  std::uint64_t limit = std::max<std::uint64_t>(bound, 2);
  if (const auto* e = std::get_if<ExplicitPrimes>(&spec))
    for (auto p : e->primes) limit = std::max(limit, p);
  return build_subset(std::make_shared<const PrimeTable>(sieve_primes(limit)), spec);
}

PrimeSubset subset_with_count(const SubsetSpec& spec, std::size_t count) {
  if (std::holds_alternative<ExplicitPrimes>(spec)) {
    auto subset = subset_up_to(spec, 2);
    if (subset.size() < count)
      throw std::out_of_range(fmt::format("explicit subset has {} primes, {} requested",
                                          subset.size(), count));
    return subset;
  }
  double density = 1.0;
  if (const auto* r = std::get_if<ResidueClass>(&spec))
    density = 1.0 / static_cast<double>(totient(std::max<std::uint64_t>(r->modulus, 1)));
  const double n = static_cast<double>(std::max<std::size_t>(count, 6));
  // p_n < n (log n + log log n) for n >= 6, widened by the density.
  auto limit = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n))) / density) + 64;
  for (;;) {
    auto subset = subset_up_to(spec, limit);
    if (subset.size() >= count) return subset;
    limit *= 2;
  }
}

}  // namespace dlab
