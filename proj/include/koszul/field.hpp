#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace koszul {

/// The coefficient field: the rationals (characteristic 0) or GF(p).
///
/// Every quantity the library reports is the dimension of a kernel or
/// cokernel of a matrix with entries in the prime field, so working over
/// QQ or GF(p) gives the same answers as over their algebraic closures.
class FieldSpec {
 public:
  FieldSpec() = default;
  /// Throws InputError unless `characteristic` is 0 or a prime below 2^31.
  explicit FieldSpec(std::uint32_t characteristic);

  static FieldSpec rationals() { return FieldSpec{}; }

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }
  std::string name() const;

  /// Reduces an integer into the canonical representative of the field.
  mpq_class reduce(const mpz_class& v) const;
  mpq_class reduce(long long v) const;
  /// Canonical representative of an arbitrary rational: lowest terms over QQ,
  /// the residue in [0, p) otherwise. Throws std::domain_error when the
  /// denominator vanishes mod p.
  mpq_class normalize(const mpq_class& v) const;

  friend bool operator==(FieldSpec, FieldSpec) = default;

 private:
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues are kept as integers in [0, p).
class Scalar {
 public:
  explicit Scalar(FieldSpec field) : field_(field) {}
  Scalar(FieldSpec field, long long v);
  Scalar(FieldSpec field, const mpq_class& v);

  FieldSpec field() const noexcept { return field_; }
  const mpq_class& value() const noexcept { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  /// Throws std::domain_error on division by zero.
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;

  FieldSpec field_;
  mpq_class value_{0};
};

/// Inverse of a nonzero residue modulo a prime p < 2^31.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Binomial coefficient C(n, k) as an exact integer; zero outside 0 <= k <= n.
mpz_class binomial(long long n, long long k);

}  // namespace koszul
