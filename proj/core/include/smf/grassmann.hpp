#ifndef SMF_GRASSMANN_HPP
#define SMF_GRASSMANN_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smf/rational.hpp"

namespace smf {

enum class Parity { even, odd, mixed };

/// Element of the finite Grassmann algebra over Q on generators tau_1..tau_L.
/// Terms are kept sorted by generator mask with no zero coefficients, so
/// equality is structural. L is fixed per element; operations on elements
/// with different L are rejected rather than promoted.
class GrassmannElement {
public:
  GrassmannElement() = default;
  explicit GrassmannElement(int num_generators) : L_(num_generators) {}

  static GrassmannElement zero(int L) { return GrassmannElement(L); }
  static GrassmannElement scalar(int L, Rational c);
  static GrassmannElement one(int L) { return scalar(L, Rational(1)); }
  /// tau_i, generators numbered 1..L.
  static GrassmannElement generator(int L, int i);
  /// Coefficient times the product of the generators in `mask` (ascending).
  static GrassmannElement monomial(int L, std::uint32_t mask, Rational c);

  int num_generators() const noexcept { return L_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::vector<std::pair<std::uint32_t, Rational>>& terms() const noexcept {
    return terms_;
  }
  Rational coefficient(std::uint32_t mask) const;

  Rational body() const { return coefficient(0); }
  GrassmannElement soul() const;
  bool body_invertible() const { return !body().is_zero(); }

  Parity parity() const;
  bool is_homogeneous(Parity p) const {
    return is_zero() || parity() == p;
  }
  /// Negates the odd-degree part.
  GrassmannElement grade_involution() const;

  friend GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  GrassmannElement operator-() const;
  GrassmannElement& operator+=(const GrassmannElement& o) { return *this = *this + o; }
  GrassmannElement& operator-=(const GrassmannElement& o) { return *this = *this - o; }
  GrassmannElement& operator*=(const GrassmannElement& o) { return *this = *this * o; }
  friend GrassmannElement operator*(const Rational& c, const GrassmannElement& a);

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return a.L_ == b.L_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const GrassmannElement& a, const GrassmannElement& b) {
    return !(a == b);
  }

  /// Exact inverse; requires a nonzero body. Works for parity-inhomogeneous
  /// elements, which show up mid-computation during series division.
  GrassmannElement inverse() const;

  /// Left derivative with respect to tau_i.
  GrassmannElement derive(int i) const;

  /// Human-readable form like "1 - 1/2 t1 t2"; used by the text renderer.
  std::string to_string() const;

private:
  int L_ = 0;
  std::vector<std::pair<std::uint32_t, Rational>> terms_;  // sorted by mask

  void add_term(std::uint32_t mask, const Rational& c);
  void require_same_context(const GrassmannElement& o, const char* op) const;
};

/// exp of an element with zero body (finite sum by nilpotency).
GrassmannElement exp_nilpotent(const GrassmannElement& a);

/// Sign of moving each generator of `right` past the larger generators of
/// `left`, i.e. the Koszul sign of concatenating two sorted monomials.
int reorder_sign(std::uint32_t left, std::uint32_t right);

}  // namespace smf

#endif
