#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hochbv {

/// The ground field: ℚ or F_p.
struct Field {
  enum class Kind : std::uint8_t { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint32_t modulus = 0;  // 0 for ℚ

  static Field rationals() { return {}; }
  /// Throws MalformedInput unless p is a prime that fits in 31 bits.
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return kind == Kind::Rational; }
  bool operator==(const Field&) const = default;
  std::string name() const;
};

/// Exact field element tagged with its field.
///
/// Rationals are kept canonical by GMP (lowest terms, positive
/// denominator); prime-field residues live in [0, p).
class Scalar {
 public:
  Scalar() = default;  // rational zero
  explicit Scalar(long v) : q_(v) {}
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Scalar zero(const Field& f) { return from_integer(f, 0); }
  static Scalar one(const Field& f) { return from_integer(f, 1); }
  static Scalar from_integer(const Field& f, long v);
  /// Maps a rational into f; throws MalformedInput if the denominator is
  /// not invertible mod p.
  static Scalar from_rational(const Field& f, const mpq_class& q);
  static Scalar residue(std::uint32_t p, std::uint64_t r) {
    Scalar s;
    s.p_ = p;
    s.r_ = static_cast<std::uint32_t>(r % p);
    return s;
  }
  /// Parses "p/q", "p", or a decimal residue for prime fields.
  static Scalar parse(const Field& f, std::string_view text);

  Field field() const noexcept {
    return p_ == 0 ? Field::rationals() : Field{Field::Kind::Prime, p_};
  }
  bool is_zero() const noexcept { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const noexcept { return p_ == 0 ? q_ == 1 : r_ == 1; }

  const mpq_class& rational() const noexcept { return q_; }
  std::uint32_t residue_value() const noexcept { return r_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  /// Equality across different fields is false, never an error.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && (a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_);
  }

  /// "p/q" in lowest terms ("p" when q = 1); residues as decimals.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;

  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
  mpq_class q_;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);
bool is_prime(std::uint64_t n);

}  // namespace hochbv
