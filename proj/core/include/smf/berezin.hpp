#ifndef SMF_BEREZIN_HPP
#define SMF_BEREZIN_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "smf/grassmann.hpp"
#include "smf/rational.hpp"

namespace smf {

/// Polynomial superfunction on R^{m|n}: rational-coefficient polynomials in
/// even variables x_1..x_m and odd generators xi_1..xi_n.
class PolySuperFunction {
public:
  using Key = std::pair<std::vector<int>, std::uint32_t>;  // exponents, odd mask

  PolySuperFunction() = default;
  PolySuperFunction(int m, int n) : m_(m), n_(n) {}

  static PolySuperFunction constant(int m, int n, const Rational& c);
  static PolySuperFunction even_variable(int m, int n, int i);  // x_i, 1-based
  static PolySuperFunction odd_variable(int m, int n, int j);   // xi_j, 1-based

  int even_vars() const noexcept { return m_; }
  int odd_vars() const noexcept { return n_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Key, Rational>& terms() const noexcept { return terms_; }
  void set_term(std::vector<int> exps, std::uint32_t mask, const Rational& c);

  Parity parity() const;

  friend PolySuperFunction operator+(const PolySuperFunction& a,
                                     const PolySuperFunction& b);
  friend PolySuperFunction operator-(const PolySuperFunction& a,
                                     const PolySuperFunction& b);
  friend PolySuperFunction operator*(const PolySuperFunction& a,
                                     const PolySuperFunction& b);
  PolySuperFunction operator-() const;
  PolySuperFunction& operator+=(const PolySuperFunction& o) {
    return *this = *this + o;
  }
  PolySuperFunction& operator*=(const PolySuperFunction& o) {
    return *this = *this * o;
  }
  friend bool operator==(const PolySuperFunction& a, const PolySuperFunction& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  PolySuperFunction derive_even(int i) const;      // d/dx_i
  PolySuperFunction derive_odd_left(int j) const;  // left d/dxi_j

  /// Substitutes x_i -> even_images[i], xi_j -> odd_images[j].
  PolySuperFunction compose(const std::vector<PolySuperFunction>& even_images,
                            const std::vector<PolySuperFunction>& odd_images) const;

  /// Multiplicative inverse when the pure-even part is an invertible scalar;
  /// exists because everything else is nilpotent.
  PolySuperFunction inverse() const;

private:
  int m_ = 0, n_ = 0;
  std::map<Key, Rational> terms_;

  void add_term(const Key& k, const Rational& c);
};

/// Product of closed rational intervals, one per even variable.
using Box = std::vector<std::pair<Rational, Rational>>;

/// Coordinate change on R^{m|n}: even targets get even superfunctions, odd
/// targets odd ones.
struct PolyChange {
  int m = 0, n = 0;
  std::vector<PolySuperFunction> even_images;
  std::vector<PolySuperFunction> odd_images;
};

/// Berezin integral over the box: strips the top odd coefficient with left
/// derivatives d/dxi_n ... d/dxi_1 applied innermost-first, then integrates
/// the remaining polynomial exactly.
Rational berezin_integral(const PolySuperFunction& f, const Box& box);

/// Berezinian of the super Jacobian of the change, as a superfunction.
PolySuperFunction jacobian_berezinian(const PolyChange& c);

}  // namespace smf

#endif
