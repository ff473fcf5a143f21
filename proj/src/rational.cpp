#include "prelie/rational.hpp"

#include <cctype>

#include "prelie/errors.hpp"

namespace prelie {

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw parse_error("empty rational", 0);
  std::size_t i = 0;
  auto scan_int = [&](const char* what) {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) throw parse_error(std::string("expected ") + what, i);
    return std::string(text.substr(start, i - start));
  };
  std::string num = scan_int("numerator");
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = scan_int("denominator");
  }
  if (i != text.size()) throw parse_error("trailing characters in rational", i);
  mpq_class v(num + "/" + den);
  if (v.get_den() == 0) throw parse_error("zero denominator", 0);
  v.canonicalize();
  return Rational(v);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

const Rational& Rational::one() {
  static const Rational r(1);
  return r;
}

Rational Rational::pow2(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  mpq_class v(1, p);
  v.canonicalize();
  return Rational(v);
}

}  // namespace prelie
