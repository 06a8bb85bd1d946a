#include "smf/series.hpp"

#include <algorithm>

#include "smf/errors.hpp"

namespace smf {

SuperLaurentSeries::SuperLaurentSeries(int L, int k_min, int k_max)
    : L_(L), kmin_(k_min), kmax_(k_max) {
  if (k_min <= k_max)
    c_.assign(static_cast<std::size_t>(k_max - k_min + 1),
              {GrassmannElement::zero(L), GrassmannElement::zero(L)});
}

SuperLaurentSeries SuperLaurentSeries::constant(int L, const GrassmannElement& c,
                                                int k_max) {
  SuperLaurentSeries s(L, 0, k_max);
  s.set(0, c, GrassmannElement::zero(L));
  return s;
}

SuperLaurentSeries SuperLaurentSeries::theta(int L, int k_max) {
  SuperLaurentSeries s(L, 0, k_max);
  s.set(0, GrassmannElement::zero(L), GrassmannElement::one(L));
  return s;
}

SuperLaurentSeries SuperLaurentSeries::monomial(int L, int k,
                                                const GrassmannElement& a,
                                                const GrassmannElement& b,
                                                int k_max) {
  SuperLaurentSeries s(L, k, k_max);
  s.set(k, a, b);
  return s;
}

const GrassmannElement& SuperLaurentSeries::a(int k) const {
  if (!in_window(k)) throw insufficient_precision_error("coefficient outside window");
  return c_[static_cast<std::size_t>(k - kmin_)].first;
}

const GrassmannElement& SuperLaurentSeries::b(int k) const {
  if (!in_window(k)) throw insufficient_precision_error("coefficient outside window");
  return c_[static_cast<std::size_t>(k - kmin_)].second;
}

void SuperLaurentSeries::set(int k, GrassmannElement a, GrassmannElement b) {
  if (!in_window(k)) throw insufficient_precision_error("coefficient outside window");
  if (a.num_generators() != L_ || b.num_generators() != L_)
    throw invalid_operand_error("series coefficient with mismatched L");
  c_[static_cast<std::size_t>(k - kmin_)] = {std::move(a), std::move(b)};
}

bool SuperLaurentSeries::is_zero_on_window() const {
  for (const auto& [a, b] : c_)
    if (!a.is_zero() || !b.is_zero()) return false;
  return true;
}

bool SuperLaurentSeries::is_even_function() const {
  for (const auto& [a, b] : c_) {
    if (!a.is_homogeneous(Parity::even)) return false;
    if (!b.is_homogeneous(Parity::odd)) return false;
  }
  return true;
}

bool SuperLaurentSeries::is_odd_function() const {
  for (const auto& [a, b] : c_) {
    if (!a.is_homogeneous(Parity::odd)) return false;
    if (!b.is_homogeneous(Parity::even)) return false;
  }
  return true;
}

SuperLaurentSeries SuperLaurentSeries::truncated(int lo, int hi) const {
  int nlo = std::max(lo, kmin_);
  int nhi = std::min(hi, kmax_);
  if (nlo > nhi) throw empty_window_error("truncation leaves an empty window");
  SuperLaurentSeries s(L_, nlo, nhi);
  for (int k = nlo; k <= nhi; ++k)
    s.c_[static_cast<std::size_t>(k - nlo)] = c_[static_cast<std::size_t>(k - kmin_)];
  return s;
}

void SuperLaurentSeries::require_same_context(const SuperLaurentSeries& o) const {
  if (L_ != o.L_)
    throw invalid_operand_error("series arithmetic with mismatched L");
}

SuperLaurentSeries operator+(const SuperLaurentSeries& x, const SuperLaurentSeries& y) {
  x.require_same_context(y);
  int lo = std::min(x.kmin_, y.kmin_);
  int hi = std::min(x.kmax_, y.kmax_);
  if (lo > hi) throw empty_window_error("sum has an empty window");
  SuperLaurentSeries r(x.L_, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    GrassmannElement a = GrassmannElement::zero(x.L_);
    GrassmannElement b = GrassmannElement::zero(x.L_);
    if (x.in_window(k)) {
      a += x.a(k);
      b += x.b(k);
    }
    if (y.in_window(k)) {
      a += y.a(k);
      b += y.b(k);
    }
    r.set(k, std::move(a), std::move(b));
  }
  return r;
}

SuperLaurentSeries SuperLaurentSeries::operator-() const {
  SuperLaurentSeries r = *this;
  for (auto& [a, b] : r.c_) {
    a = -a;
    b = -b;
  }
  return r;
}

SuperLaurentSeries operator-(const SuperLaurentSeries& x, const SuperLaurentSeries& y) {
  return x + (-y);
}

SuperLaurentSeries operator*(const SuperLaurentSeries& x, const SuperLaurentSeries& y) {
  x.require_same_context(y);
  // (A + B theta)(A' + B' theta) = A A' + (A B' + B gi(A')) theta
  int lo = x.kmin_ + y.kmin_;
  int hi = std::min(x.kmax_ + y.kmin_, x.kmin_ + y.kmax_);
  if (lo > hi) throw empty_window_error("product has an empty window");
  SuperLaurentSeries r(x.L_, lo, hi);
  for (int i = x.kmin_; i <= x.kmax_; ++i) {
    for (int j = y.kmin_; j <= y.kmax_; ++j) {
      int k = i + j;
      if (k < lo || k > hi) continue;
      const GrassmannElement& xa = x.a(i);
      const GrassmannElement& xb = x.b(i);
      const GrassmannElement& ya = y.a(j);
      const GrassmannElement& yb = y.b(j);
      GrassmannElement a = r.a(k) + xa * ya;
      GrassmannElement b = r.b(k) + xa * yb + xb * ya.grade_involution();
      r.set(k, std::move(a), std::move(b));
    }
  }
  return r;
}

SuperLaurentSeries operator*(const GrassmannElement& c, const SuperLaurentSeries& x) {
  SuperLaurentSeries r = x;
  for (auto& [a, b] : r.c_) {
    a = c * a;
    b = c * b;
  }
  return r;
}

SuperLaurentSeries SuperLaurentSeries::grade_involution() const {
  SuperLaurentSeries r = *this;
  for (auto& [a, b] : r.c_) {
    a = a.grade_involution();
    b = b.grade_involution();
  }
  return r;
}

SuperLaurentSeries SuperLaurentSeries::theta_mul_left() const {
  // theta * (a + b theta) = gi(a) theta
  SuperLaurentSeries r(L_, kmin_, kmax_);
  for (int k = kmin_; k <= kmax_; ++k)
    r.set(k, GrassmannElement::zero(L_), a(k).grade_involution());
  return r;
}

SuperLaurentSeries SuperLaurentSeries::shifted(int shift) const {
  SuperLaurentSeries r = *this;
  r.kmin_ += shift;
  r.kmax_ += shift;
  return r;
}

SuperLaurentSeries SuperLaurentSeries::derivative_z() const {
  if (window_empty()) throw empty_window_error("derivative of an empty window");
  // d/dz of c_k z^k is known for k-1 whenever c_k is known; the top slot of
  // the window is lost unless k_max+1 would multiply to zero, which we cannot
  // know, so the window shrinks by one at the top.
  SuperLaurentSeries r(L_, kmin_ - 1, kmax_ - 1);
  for (int k = kmin_; k <= kmax_; ++k) {
    Rational f(k);
    r.set(k - 1, f * a(k), f * b(k));
  }
  return r;
}

SuperLaurentSeries SuperLaurentSeries::inverse() const {
  // Factor z^v with v the first index carrying a nonzero even coefficient;
  // everything below v must vanish identically (including b parts).
  if (window_empty()) throw empty_window_error("inverse of an empty window");
  int v = kmin_;
  while (v <= kmax_ && a(v).is_zero() && b(v).is_zero()) ++v;
  if (v > kmax_) throw division_by_non_unit_error("series is zero on its window");
  if (!a(v).body_invertible())
    throw division_by_non_unit_error(
        "lowest even coefficient has no invertible body");
  const int w = kmax_ - v;  // relative precision
  // u = z^-v * this, unit series on [0, w]; invert by leading-coefficient
  // division and a z-graded Neumann series.
  GrassmannElement c0 = a(v);
  GrassmannElement d0 = b(v);
  GrassmannElement c0_inv = c0.inverse();
  // Leading 1|1 coefficient inverse: (c0 + d0 th)^-1 = c0inv - c0inv d0 gi(c0inv) th
  GrassmannElement lead_a = c0_inv;
  GrassmannElement lead_b = -(c0_inv * d0 * c0_inv.grade_involution());
  SuperLaurentSeries lead(L_, 0, w);
  lead.set(0, lead_a, lead_b);
  // n = lead * u - 1, supported on [1, w]
  SuperLaurentSeries u(L_, 0, w);
  for (int k = 0; k <= w; ++k)
    u.set(k, a(v + k), b(v + k));
  SuperLaurentSeries n = lead * u;
  n.set(0, GrassmannElement::zero(L_), GrassmannElement::zero(L_));
  SuperLaurentSeries acc(L_, 0, w);
  acc.set(0, GrassmannElement::one(L_), GrassmannElement::zero(L_));
  SuperLaurentSeries pow = -n;
  while (!pow.is_zero_on_window()) {
    acc = acc + pow;
    pow = pow * (-n);
    if (pow.k_min() > w) break;
  }
  // u^-1 = acc * lead; this^-1 = z^-v u^-1
  return (acc * lead).shifted(-v);
}

SuperLaurentSeries operator/(const SuperLaurentSeries& x, const SuperLaurentSeries& y) {
  return x * y.inverse();
}

SuperLaurentSeries SuperLaurentSeries::pow(int e) const {
  if (e == 0) {
    SuperLaurentSeries r(L_, 0, kmax_ - kmin_);
    r.set(0, GrassmannElement::one(L_), GrassmannElement::zero(L_));
    return r;
  }
  SuperLaurentSeries base = e > 0 ? *this : inverse();
  int n = e > 0 ? e : -e;
  SuperLaurentSeries acc = base;
  for (int i = 1; i < n; ++i) acc = acc * base;
  return acc;
}

bool operator==(const SuperLaurentSeries& x, const SuperLaurentSeries& y) {
  return x.L_ == y.L_ && x.kmin_ == y.kmin_ && x.kmax_ == y.kmax_ && x.c_ == y.c_;
}

}  // namespace smf
