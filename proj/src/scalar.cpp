#include "hochbv/scalar.hpp"

#include <utility>

#include "hochbv/errors.hpp"

namespace hochbv {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 31) || !is_prime(p))
    throw MalformedInput("field modulus must be a prime below 2^31, got " +
                         std::to_string(p));
  return {Kind::Prime, static_cast<std::uint32_t>(p)};
}

std::string Field::name() const {
  return is_rational() ? "Q" : "F_" + std::to_string(modulus);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("division by zero in prime field");
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

Scalar Scalar::from_integer(const Field& f, long v) {
  if (f.is_rational()) return Scalar(v);
  long m = v % static_cast<long>(f.modulus);
  if (m < 0) m += f.modulus;
  return residue(f.modulus, static_cast<std::uint64_t>(m));
}

Scalar Scalar::from_rational(const Field& f, const mpq_class& q) {
  if (f.is_rational()) return Scalar(q);
  mpz_class p = f.modulus;
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0)
    throw MalformedInput("denominator of " + q.get_str() +
                         " is not invertible mod " + std::to_string(f.modulus));
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return residue(f.modulus, std::uint64_t{n} * inverse_mod(d, f.modulus));
}

Scalar Scalar::parse(const Field& f, std::string_view text) {
  std::string s(text);
  if (s.empty()) throw MalformedInput("empty scalar");
  mpq_class q;
  if (q.set_str(s, 10) != 0 || s.find_first_of("+ ") != std::string::npos)
    throw MalformedInput("not an exact scalar: '" + s + "'");
  if (q.get_den() == 0) throw MalformedInput("zero denominator: '" + s + "'");
  q.canonicalize();
  return from_rational(f, q);
}

void Scalar::check_same_field(const Scalar& o) const {
  if (p_ != o.p_)
    throw FieldMismatch("field mismatch: " + field().name() + " vs " +
                        o.field().name());
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ == 0)
    s.q_ = -q_;
  else if (r_ != 0)
    s.r_ = p_ - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (p_ == 0) {
    q_ += o.q_;
  } else {
    std::uint64_t v = std::uint64_t{r_} + o.r_;
    r_ = static_cast<std::uint32_t>(v >= p_ ? v - p_ : v);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (p_ == 0) {
    q_ -= o.q_;
  } else {
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + (p_ - o.r_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (p_ == 0)
    q_ *= o.q_;
  else
    r_ = static_cast<std::uint32_t>(std::uint64_t{r_} * o.r_ % p_);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar s = *this;
  if (p_ == 0)
    s.q_ = 1 / q_;
  else
    s.r_ = inverse_mod(r_, p_);
  return s;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

std::string Scalar::to_string() const {
  return p_ == 0 ? q_.get_str() : std::to_string(r_);
}

}  // namespace hochbv
