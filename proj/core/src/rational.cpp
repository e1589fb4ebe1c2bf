#include "mudra/rational.hpp"

#include <cctype>
#include <ostream>

#include "mudra/error.hpp"

namespace mudra {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s.front() == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw StructuralError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                                : text.substr(slash + 1);
  // Denominators carry no sign; "-" belongs to the numerator only.
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-') {
    throw InputError("", "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("", "zero denominator in '" + std::string(text) + "'");
  Rational r;
  r.value_ = mpq_class(n, d);
  r.value_.canonicalize();
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return numerator();
  return numerator() + "/" + denominator();
}

std::size_t Rational::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(numerator());
  const std::size_t h2 = std::hash<std::string>{}(denominator());
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw StructuralError("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace mudra
