#include "dlab/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dlab {

BigInt to_bigint(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  return make_rational(to_bigint(num), to_bigint(den));
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) {
  // mpq_get_d truncates; scale through exponents so huge operands still
  // produce a correctly scaled result.
  long num_exp = 0;
  long den_exp = 0;
  const double num = mpz_get_d_2exp(&num_exp, r.get_num_mpz_t());
  const double den = mpz_get_d_2exp(&den_exp, r.get_den_mpz_t());
  if (num == 0.0) return 0.0;
  if (num_exp < 1000 && den_exp < 1000) return r.get_d();
  return std::ldexp(num / den, static_cast<int>(num_exp - den_exp));
}

namespace {

BigInt product_range(std::span<const BigInt> v) {
  if (v.empty()) return BigInt(1);
  if (v.size() == 1) return v[0];
  const auto mid = v.size() / 2;
  return product_range(v.first(mid)) * product_range(v.subspan(mid));
}

// Returns (P, Q) with sum of reciprocals = P / Q, uncanonicalized.
std::pair<BigInt, BigInt> reciprocal_split(std::span<const std::uint64_t> d) {
  if (d.size() == 1) return {BigInt(1), to_bigint(d[0])};
  const auto mid = d.size() / 2;
  auto [p1, q1] = reciprocal_split(d.first(mid));
  auto [p2, q2] = reciprocal_split(d.subspan(mid));
  return {p1 * q2 + p2 * q1, q1 * q2};
}

std::pair<BigInt, BigInt> reciprocal_split(std::span<const BigInt> d) {
  if (d.size() == 1) return {BigInt(1), d[0]};
  const auto mid = d.size() / 2;
  auto [p1, q1] = reciprocal_split(d.first(mid));
  auto [p2, q2] = reciprocal_split(d.subspan(mid));
  return {p1 * q2 + p2 * q1, q1 * q2};
}

}  // namespace

BigInt product_tree(std::span<const BigInt> values) { return product_range(values); }

Rational sum_reciprocals(std::span<const std::uint64_t> dens) {
  if (dens.empty()) return Rational(0);
  for (auto d : dens)
    if (d == 0) throw std::domain_error("reciprocal of zero");
  auto [p, q] = reciprocal_split(dens);
  return make_rational(p, q);
}

Rational sum_reciprocals(std::span<const BigInt> dens) {
  if (dens.empty()) return Rational(0);
  for (const auto& d : dens)
    if (d == 0) throw std::domain_error("reciprocal of zero");
  auto [p, q] = reciprocal_split(dens);
  return make_rational(p, q);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    carry_ += (sum_ - t) + x;
  else
    carry_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace dlab
