#include "depth2/field.hpp"

#include <cctype>
#include <stdexcept>

namespace depth2 {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_number(p)) {
    throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                " is not a prime below 2^31");
  }
  return Field(p);
}

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

namespace {

std::uint32_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar::Scalar(Field f, long value) : field_(f) {
  if (f.is_rational()) {
    value_ = mpq_class(value);
  } else {
    const long p = f.characteristic();
    long r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(Field f, const mpq_class& value) : field_(f) {
  if (f.is_rational()) {
    value_ = value;
    std::get<mpq_class>(value_).canonicalize();
    return;
  }
  const std::uint32_t p = f.characteristic();
  const std::uint32_t den = reduce(value.get_den(), p);
  if (den == 0) {
    throw std::invalid_argument("denominator vanishes in " + f.name());
  }
  const std::uint64_t num = reduce(value.get_num(), p);
  value_ = static_cast<std::uint32_t>(num * inverse_mod(den, p) % p);
}

Scalar Scalar::from_residue(Field f, std::uint32_t residue) {
  Scalar s(f, 0);
  if (f.is_rational()) {
    s.value_ = mpq_class(residue);
  } else {
    s.value_ = residue % f.characteristic();
  }
  return s;
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  mpq_class q;
  try {
    // gmp accepts "n" and "n/d"; reject a leading '+' or stray spaces there too.
    for (char c : s) {
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
        throw std::invalid_argument("");
      }
    }
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("");
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed scalar \"" + s + "\"");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  q.canonicalize();
  return Scalar(f, q);
}

bool Scalar::is_zero() const {
  if (field_.is_rational()) return sgn(rational()) == 0;
  return residue() == 0;
}

bool Scalar::is_one() const {
  if (field_.is_rational()) return rational() == 1;
  return residue() == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) throw std::invalid_argument("scalar field mismatch");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational()) {
    std::get<mpq_class>(r.value_) = -rational();
  } else if (residue() != 0) {
    std::get<std::uint32_t>(r.value_) = field_.characteristic() - residue();
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) += o.rational();
  } else {
    const std::uint64_t s = std::uint64_t{residue()} + o.residue();
    value_ = static_cast<std::uint32_t>(s % field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) *= o.rational();
  } else {
    const std::uint64_t s = std::uint64_t{residue()} * o.residue();
    value_ = static_cast<std::uint32_t>(s % field_.characteristic());
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (field_.is_rational()) return Scalar(field_, mpq_class(1) / rational());
  return from_residue(field_, inverse_mod(residue(), field_.characteristic()));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.field_.is_rational()) return a.rational() == b.rational();
  return a.residue() == b.residue();
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) {
    return rational().get_num().get_str() + "/" + rational().get_den().get_str();
  }
  return std::to_string(residue()) + "/1";
}

}  // namespace depth2
