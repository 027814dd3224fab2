#include "koszul/field.hpp"

#include <stdexcept>

#include "koszul/errors.hpp"

namespace koszul {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint32_t characteristic) : p_(characteristic) {
  if (p_ != 0 && (!is_prime(p_) || p_ >= (1u << 31))) {
    throw InputError("characteristic must be 0 or a prime below 2^31, got " +
                     std::to_string(p_));
  }
}

std::string FieldSpec::name() const {
  return is_rational() ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

mpq_class FieldSpec::reduce(const mpz_class& v) const {
  if (is_rational()) return mpq_class(v);
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return mpq_class(r);
}

mpq_class FieldSpec::reduce(long long v) const {
  if (is_rational()) return mpq_class(mpz_class(static_cast<long>(v)));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return mpq_class(static_cast<unsigned long>(r));
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("residue is not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

mpz_class binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

mpq_class FieldSpec::normalize(const mpq_class& v) const {
  const FieldSpec f = *this;
  if (f.is_rational()) {
    mpq_class c = v;
    c.canonicalize();
    return c;
  }
  const std::uint32_t p = f.characteristic();
  mpz_class num;
  mpz_fdiv_r_ui(num.get_mpz_t(), v.get_num_mpz_t(), p);
  mpz_class den;
  mpz_fdiv_r_ui(den.get_mpz_t(), v.get_den_mpz_t(), p);
  if (den == 0) throw std::domain_error("denominator vanishes in " + f.name());
  const std::uint64_t n = num.get_ui();
  const std::uint64_t d_inv = inverse_mod(static_cast<std::uint32_t>(den.get_ui()), p);
  return mpq_class(static_cast<unsigned long>((n * d_inv) % p));
}

Scalar::Scalar(FieldSpec field, long long v) : field_(field), value_(field.reduce(v)) {}

Scalar::Scalar(FieldSpec field, const mpq_class& v)
    : field_(field), value_(field.normalize(v)) {}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw InputError("mixed fields: " + field_.name() + " and " + o.field_.name());
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  return Scalar(field_, mpq_class(value_ + o.value_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  return Scalar(field_, mpq_class(value_ - o.value_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  return Scalar(field_, mpq_class(value_ * o.value_));
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same_field(o);
  return *this * o.inverse();
}

Scalar Scalar::operator-() const { return Scalar(field_, mpq_class(-value_)); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (field_.is_rational()) return Scalar(field_, mpq_class(1 / value_));
  return Scalar(field_, static_cast<long long>(inverse_mod(
                            static_cast<std::uint32_t>(value_.get_num().get_ui()),
                            field_.characteristic())));
}

bool Scalar::operator==(const Scalar& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

std::string Scalar::to_string() const { return value_.get_str(); }

}  // namespace koszul
