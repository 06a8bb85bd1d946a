#include "smf/berezin.hpp"

#include <bit>

#include "smf/errors.hpp"

namespace smf {

PolySuperFunction PolySuperFunction::constant(int m, int n, const Rational& c) {
  PolySuperFunction f(m, n);
  if (!c.is_zero()) f.terms_[{std::vector<int>(m, 0), 0u}] = c;
  return f;
}

PolySuperFunction PolySuperFunction::even_variable(int m, int n, int i) {
  if (i < 1 || i > m) throw invalid_operand_error("even variable index out of range");
  PolySuperFunction f(m, n);
  std::vector<int> e(m, 0);
  e[i - 1] = 1;
  f.terms_[{std::move(e), 0u}] = Rational(1);
  return f;
}

PolySuperFunction PolySuperFunction::odd_variable(int m, int n, int j) {
  if (j < 1 || j > n) throw invalid_operand_error("odd variable index out of range");
  PolySuperFunction f(m, n);
  f.terms_[{std::vector<int>(m, 0), 1u << (j - 1)}] = Rational(1);
  return f;
}

void PolySuperFunction::set_term(std::vector<int> exps, std::uint32_t mask,
                                 const Rational& c) {
  if (static_cast<int>(exps.size()) != m_)
    throw invalid_operand_error("exponent vector length does not match m");
  if (n_ < 32 && (mask >> n_) != 0)
    throw invalid_operand_error("odd index beyond n");
  Key k{std::move(exps), mask};
  if (c.is_zero())
    terms_.erase(k);
  else
    terms_[k] = c;
}

void PolySuperFunction::add_term(const Key& k, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Parity PolySuperFunction::parity() const {
  bool even = false, odd = false;
  for (const auto& [k, c] : terms_)
    (std::popcount(k.second) % 2 == 0 ? even : odd) = true;
  if (even && odd) return Parity::mixed;
  return odd ? Parity::odd : Parity::even;
}

PolySuperFunction operator+(const PolySuperFunction& a, const PolySuperFunction& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_)
    throw invalid_operand_error("superfunction arithmetic with mismatched (m, n)");
  PolySuperFunction r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

PolySuperFunction PolySuperFunction::operator-() const {
  PolySuperFunction r(m_, n_);
  for (const auto& [k, c] : terms_) r.terms_[k] = -c;
  return r;
}

PolySuperFunction operator-(const PolySuperFunction& a, const PolySuperFunction& b) {
  return a + (-b);
}

PolySuperFunction operator*(const PolySuperFunction& a, const PolySuperFunction& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_)
    throw invalid_operand_error("superfunction arithmetic with mismatched (m, n)");
  PolySuperFunction r(a.m_, a.n_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      if (ka.second & kb.second) continue;
      std::vector<int> e = ka.first;
      for (int i = 0; i < a.m_; ++i) e[i] += kb.first[i];
      Rational c = ca * cb;
      if (reorder_sign(ka.second, kb.second) < 0) c = -c;
      r.add_term({std::move(e), ka.second | kb.second}, c);
    }
  }
  return r;
}

PolySuperFunction PolySuperFunction::derive_even(int i) const {
  if (i < 1 || i > m_) throw invalid_operand_error("even derivative index out of range");
  PolySuperFunction r(m_, n_);
  for (const auto& [k, c] : terms_) {
    int e = k.first[i - 1];
    if (e == 0) continue;
    std::vector<int> exps = k.first;
    exps[i - 1] = e - 1;
    r.add_term({std::move(exps), k.second}, Rational(e) * c);
  }
  return r;
}

PolySuperFunction PolySuperFunction::derive_odd_left(int j) const {
  if (j < 1 || j > n_) throw invalid_operand_error("odd derivative index out of range");
  std::uint32_t bit = 1u << (j - 1);
  PolySuperFunction r(m_, n_);
  for (const auto& [k, c] : terms_) {
    if (!(k.second & bit)) continue;
    int below = std::popcount(k.second & (bit - 1));
    r.add_term({k.first, k.second & ~bit}, below % 2 ? -c : c);
  }
  return r;
}

PolySuperFunction PolySuperFunction::compose(
    const std::vector<PolySuperFunction>& even_images,
    const std::vector<PolySuperFunction>& odd_images) const {
  if (static_cast<int>(even_images.size()) != m_ ||
      static_cast<int>(odd_images.size()) != n_)
    throw invalid_operand_error("compose image count does not match (m, n)");
  int tm = 0, tn = 0;
  if (!even_images.empty()) {
    tm = even_images[0].even_vars();
    tn = even_images[0].odd_vars();
  } else if (!odd_images.empty()) {
    tm = odd_images[0].even_vars();
    tn = odd_images[0].odd_vars();
  }
  PolySuperFunction r(tm, tn);
  for (const auto& [k, c] : terms_) {
    PolySuperFunction term = PolySuperFunction::constant(tm, tn, c);
    for (int i = 0; i < m_; ++i)
      for (int e = 0; e < k.first[i]; ++e) term *= even_images[i];
    // Odd factors in ascending generator order, matching the monomial layout.
    for (int j = 0; j < n_; ++j)
      if (k.second & (1u << j)) term *= odd_images[j];
    r += term;
  }
  return r;
}

PolySuperFunction PolySuperFunction::inverse() const {
  // Invertible iff the pure scalar part is a nonzero constant and every
  // other term carries odd content (and is therefore nilpotent); terms of
  // positive x-degree with no xi's are not nilpotent and are rejected.
  Rational c0(0);
  PolySuperFunction rest(m_, n_);
  for (const auto& [k, c] : terms_) {
    bool scalar = k.second == 0;
    for (int e : k.first) scalar = scalar && e == 0;
    if (scalar)
      c0 = c;
    else
      rest.terms_[k] = c;
  }
  if (c0.is_zero())
    throw not_invertible_error("superfunction has no constant scalar part");
  for (const auto& [k, c] : rest.terms_)
    if (k.second == 0)
      throw not_invertible_error(
          "superfunction inverse needs a nilpotent non-constant part");
  PolySuperFunction c0inv = constant(m_, n_, c0.inverse());
  PolySuperFunction t = -(rest * c0inv);
  PolySuperFunction acc = constant(m_, n_, Rational(1));
  PolySuperFunction pow = t;
  while (!pow.is_zero()) {
    acc += pow;
    pow *= t;
  }
  return acc * c0inv;
}

Rational berezin_integral(const PolySuperFunction& f, const Box& box) {
  if (static_cast<int>(box.size()) != f.even_vars())
    throw invalid_operand_error("box dimension does not match m");
  for (const auto& [lo, hi] : box)
    if (hi < lo) throw invalid_operand_error("box interval with hi < lo");
  // d/dxi_1 first, then up to d/dxi_n.
  PolySuperFunction top = f;
  for (int j = 1; j <= f.odd_vars(); ++j) top = top.derive_odd_left(j);
  Rational total(0);
  for (const auto& [k, c] : top.terms()) {
    Rational piece = c;
    for (int i = 0; i < f.even_vars(); ++i) {
      int e = k.first[i];
      // integral of x^e over [lo, hi]
      Rational lo_pow(1), hi_pow(1);
      for (int t = 0; t < e + 1; ++t) {
        lo_pow *= box[i].first;
        hi_pow *= box[i].second;
      }
      piece *= (hi_pow - lo_pow) * Rational(1, e + 1);
    }
    total += piece;
  }
  return total;
}

PolySuperFunction jacobian_berezinian(const PolyChange& c) {
  const int m = c.m, n = c.n;
  if (static_cast<int>(c.even_images.size()) != m ||
      static_cast<int>(c.odd_images.size()) != n)
    throw invalid_operand_error("change image count does not match (m, n)");
  for (const auto& y : c.even_images)
    if (!y.is_zero() && y.parity() != Parity::even)
      throw invalid_operand_error("even target image must be even");
  for (const auto& z : c.odd_images)
    if (!z.is_zero() && z.parity() != Parity::odd)
      throw invalid_operand_error("odd target image must be odd");

  using mat = std::vector<std::vector<PolySuperFunction>>;
  mat a(m, std::vector<PolySuperFunction>(m)), b(m, std::vector<PolySuperFunction>(n));
  mat cc(n, std::vector<PolySuperFunction>(m)), d(n, std::vector<PolySuperFunction>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = c.even_images[i].derive_even(j + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = c.even_images[i].derive_odd_left(j + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) cc[i][j] = c.odd_images[i].derive_even(j + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = c.odd_images[i].derive_odd_left(j + 1);

  auto det = [&](const mat& x) {
    // cofactor expansion; sizes here are small
    auto rec = [&](auto&& self, const mat& v) -> PolySuperFunction {
      const std::size_t k = v.size();
      if (k == 0) return PolySuperFunction::constant(m, n, Rational(1));
      if (k == 1) return v[0][0];
      PolySuperFunction acc(m, n);
      for (std::size_t j = 0; j < k; ++j) {
        if (v[0][j].is_zero()) continue;
        mat minor(k - 1);
        for (std::size_t i = 1; i < k; ++i)
          for (std::size_t t = 0; t < k; ++t)
            if (t != j) minor[i - 1].push_back(v[i][t]);
        PolySuperFunction term = v[0][j] * self(self, minor);
        acc = (j % 2) ? acc - term : acc + term;
      }
      return acc;
    };
    return rec(rec, x);
  };

  PolySuperFunction det_d = det(d);
  PolySuperFunction det_d_inv;
  try {
    det_d_inv = det_d.inverse();
  } catch (const not_invertible_error&) {
    throw non_invertible_jacobian_error(
        "det of the odd-odd Jacobian block is not invertible");
  }

  // Schur complement A - B D^-1 C.
  mat dinv(n, std::vector<PolySuperFunction>(n));
  if (n > 0) {
    // adjugate * det^-1; cofactor-based, exact
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mat minor(n - 1);
        for (int r = 0; r < n; ++r) {
          if (r == j) continue;
          for (int t = 0; t < n; ++t)
            if (t != i) minor[r < j ? r : r - 1].push_back(d[r][t]);
        }
        PolySuperFunction cof = det(minor) * det_d_inv;
        dinv[i][j] = ((i + j) % 2) ? -cof : cof;
      }
  }
  mat schur = a;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      PolySuperFunction corr(m, n);
      for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u) corr += b[i][t] * dinv[t][u] * cc[u][j];
      schur[i][j] = schur[i][j] - corr;
    }
  return det(schur) * det_d_inv;
}

}  // namespace smf
