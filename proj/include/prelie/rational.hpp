#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace prelie {

// Exact rational coefficient, always kept in lowest terms with a
// positive denominator. Thin wrapper over GMP's mpq_class so that
// parsing and printing use the "num/den" form everywhere.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long num, unsigned long den) : v_(num, den) { v_.canonicalize(); }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}

  // Accepts "3", "-3", "5/6", "-5/6".
  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }

  // 2^k for k possibly negative.
  static Rational pow2(long k);

  // Shared constant: avoids a GMP allocation per use in hot loops.
  static const Rational& one();

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  // "num" when the denominator is 1, otherwise "num/den".
  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

}  // namespace prelie
