#pragma once
// Exact scalars: arbitrary-precision rationals or residues mod a prime.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace depth2 {

/// The ground field: either Q or F_p for a prime p < 2^31.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field(); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  bool is_prime() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }

  /// "Q" or "F_p".
  std::string name() const;

  friend bool operator==(Field, Field) = default;

 private:
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

class Scalar {
 public:
  Scalar() : Scalar(Field::rationals(), 0) {}
  Scalar(Field f, long value);
  /// Reduces mod p for prime fields; throws if the denominator vanishes mod p.
  Scalar(Field f, const mpq_class& value);
  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  /// Accepts "n", "n/d" (optionally signed). Throws std::invalid_argument.
  static Scalar parse(Field f, std::string_view text);
  static Scalar from_residue(Field f, std::uint32_t residue);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws std::domain_error on division by zero.
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Canonical "num/den" encoding; residues print as "r/1" with 0 <= r < p.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& o) const;

  Field field_;
  std::variant<mpq_class, std::uint32_t> value_;
};

}  // namespace depth2
