#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <gmpxx.h>

namespace dlab {

/// Exact rational with arbitrary-precision numerator and denominator.
/// GMP keeps mpq_class values canonical (den > 0, gcd = 1) after every
/// arithmetic operation; `make_rational` canonicalizes explicitly.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(std::uint64_t num, std::uint64_t den);

BigInt to_bigint(std::uint64_t v);

/// "num/den", always with an explicit denominator ("3/1").
std::string to_fraction_string(const Rational& r);

/// Nearest double; correct for operands with millions of digits.
double to_double(const Rational& r);

/// Product of all values via a balanced product tree.
BigInt product_tree(std::span<const BigInt> values);

/// Exact sum of 1/d over `dens` by binary splitting; canonicalized once.
/// Every entry must be nonzero.
Rational sum_reciprocals(std::span<const std::uint64_t> dens);
Rational sum_reciprocals(std::span<const BigInt> dens);

/// Neumaier-compensated floating summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace dlab
