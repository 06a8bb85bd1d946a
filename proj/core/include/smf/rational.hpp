#ifndef SMF_RATIONAL_HPP
#define SMF_RATIONAL_HPP

#include <string>

#include "smf/bigint.hpp"

namespace smf {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt num, BigInt den);
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  /// Parses "p" or "p/q".
  static Rational from_string(const std::string& s);

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_negative() const noexcept { return num_.is_negative(); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational inverse() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  /// "p" when the denominator is 1, else "p/q".
  std::string to_string() const;

private:
  BigInt num_, den_;
  void normalize();
};

}  // namespace smf

#endif
