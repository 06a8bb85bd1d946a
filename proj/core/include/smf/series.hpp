#ifndef SMF_SERIES_HPP
#define SMF_SERIES_HPP

#include <utility>
#include <vector>

#include "smf/grassmann.hpp"

namespace smf {

/// Truncated super Laurent series sum_k (a_k + b_k theta) z^k on a 1|1 disk.
/// Coefficients below k_min are identically zero; coefficients above k_max
/// are unknown, never assumed zero. Every operation shrinks the window to
/// what it can actually guarantee.
class SuperLaurentSeries {
public:
  SuperLaurentSeries() = default;
  /// Zero series on the window [k_min, k_max].
  SuperLaurentSeries(int L, int k_min, int k_max);

  static SuperLaurentSeries constant(int L, const GrassmannElement& c, int k_max);
  static SuperLaurentSeries theta(int L, int k_max);
  /// (a + b theta) z^k on a window [k, k_max].
  static SuperLaurentSeries monomial(int L, int k, const GrassmannElement& a,
                                     const GrassmannElement& b, int k_max);

  int num_generators() const noexcept { return L_; }
  int k_min() const noexcept { return kmin_; }
  int k_max() const noexcept { return kmax_; }
  bool window_empty() const noexcept { return kmin_ > kmax_; }
  bool in_window(int k) const noexcept { return k >= kmin_ && k <= kmax_; }

  const GrassmannElement& a(int k) const;
  const GrassmannElement& b(int k) const;
  void set(int k, GrassmannElement a, GrassmannElement b);

  bool is_zero_on_window() const;
  /// True when every a_k is even and every b_k odd (an even superfunction).
  bool is_even_function() const;
  bool is_odd_function() const;

  /// Restricts to the intersection with [lo, hi].
  SuperLaurentSeries truncated(int lo, int hi) const;

  friend SuperLaurentSeries operator+(const SuperLaurentSeries& x,
                                      const SuperLaurentSeries& y);
  friend SuperLaurentSeries operator-(const SuperLaurentSeries& x,
                                      const SuperLaurentSeries& y);
  friend SuperLaurentSeries operator*(const SuperLaurentSeries& x,
                                      const SuperLaurentSeries& y);
  /// Division by a series whose even part has a body-invertible lowest
  /// coefficient after factoring out its z-order.
  friend SuperLaurentSeries operator/(const SuperLaurentSeries& x,
                                      const SuperLaurentSeries& y);
  SuperLaurentSeries operator-() const;

  friend SuperLaurentSeries operator*(const GrassmannElement& c,
                                      const SuperLaurentSeries& x);

  SuperLaurentSeries inverse() const;
  SuperLaurentSeries derivative_z() const;
  /// Applies the grade involution to every coefficient.
  SuperLaurentSeries grade_involution() const;
  /// Multiplies by theta on the left: (a + b theta) -> gi(a) theta-part.
  SuperLaurentSeries theta_mul_left() const;
  /// z^shift * this.
  SuperLaurentSeries shifted(int shift) const;
  /// Integer power; negative powers go through inverse().
  SuperLaurentSeries pow(int e) const;

  /// Exact equality of windows and coefficients.
  friend bool operator==(const SuperLaurentSeries& x, const SuperLaurentSeries& y);

private:
  int L_ = 0;
  int kmin_ = 0, kmax_ = -1;
  std::vector<std::pair<GrassmannElement, GrassmannElement>> c_;

  void require_same_context(const SuperLaurentSeries& o) const;
};

}  // namespace smf

#endif
