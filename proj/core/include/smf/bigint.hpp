#ifndef SMF_BIGINT_HPP
#define SMF_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace smf {

/// Arbitrary-precision signed integer, sign-magnitude with base 2^32 limbs.
/// Small and exact; sized for coefficient arithmetic, not for crypto.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design, mirrors int literals
  static BigInt from_string(const std::string& s);

  bool is_zero() const noexcept { return sign_ == 0; }
  bool is_negative() const noexcept { return sign_ < 0; }
  int signum() const noexcept { return sign_; }

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt operator-() const;

  /// Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  static BigInt gcd(const BigInt& a, const BigInt& b);
  BigInt abs() const;

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  std::string to_string() const;

  /// Value as long long; caller must know it fits (used by tests and ranks).
  long long to_ll() const;

private:
  int sign_ = 0;                 // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian, no leading zeros

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static void divmod_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b,
                         std::vector<std::uint32_t>& q,
                         std::vector<std::uint32_t>& r);
};

}  // namespace smf

#endif
