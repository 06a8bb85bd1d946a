#include "smf/grassmann.hpp"

#include <bit>

#include "smf/errors.hpp"

namespace smf {

GrassmannElement GrassmannElement::scalar(int L, Rational c) {
  GrassmannElement r(L);
  if (!c.is_zero()) r.terms_.emplace_back(0u, std::move(c));
  return r;
}

GrassmannElement GrassmannElement::generator(int L, int i) {
  if (i < 1 || i > L)
    throw invalid_operand_error("generator index out of range 1..L");
  GrassmannElement r(L);
  r.terms_.emplace_back(1u << (i - 1), Rational(1));
  return r;
}

GrassmannElement GrassmannElement::monomial(int L, std::uint32_t mask, Rational c) {
  if (L > 32 || (L < 32 && (mask >> L) != 0))
    throw invalid_operand_error("monomial uses generators beyond L");
  GrassmannElement r(L);
  if (!c.is_zero()) r.terms_.emplace_back(mask, std::move(c));
  return r;
}

Rational GrassmannElement::coefficient(std::uint32_t mask) const {
  for (const auto& [m, c] : terms_) {
    if (m == mask) return c;
    if (m > mask) break;
  }
  return Rational(0);
}

GrassmannElement GrassmannElement::soul() const {
  GrassmannElement r(L_);
  for (const auto& t : terms_)
    if (t.first != 0) r.terms_.push_back(t);
  return r;
}

Parity GrassmannElement::parity() const {
  bool even = false, odd = false;
  for (const auto& [m, c] : terms_) {
    (std::popcount(m) % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return Parity::mixed;
  return odd ? Parity::odd : Parity::even;
}

GrassmannElement GrassmannElement::grade_involution() const {
  GrassmannElement r(L_);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_)
    r.terms_.emplace_back(m, std::popcount(m) % 2 ? -c : c);
  return r;
}

void GrassmannElement::require_same_context(const GrassmannElement& o,
                                            const char* op) const {
  if (L_ != o.L_)
    throw invalid_operand_error(std::string(op) + " on elements with different L");
}

void GrassmannElement::add_term(std::uint32_t mask, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.begin();
  while (it != terms_.end() && it->first < mask) ++it;
  if (it != terms_.end() && it->first == mask) {
    Rational s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = std::move(s);
  } else {
    terms_.insert(it, {mask, c});
  }
}

GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b) {
  a.require_same_context(b, "add");
  GrassmannElement r(a.L_);
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
      r.terms_.push_back(*ia++);
    } else if (ia == a.terms_.end() || ib->first < ia->first) {
      r.terms_.push_back(*ib++);
    } else {
      Rational s = ia->second + ib->second;
      if (!s.is_zero()) r.terms_.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    }
  }
  return r;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement r(L_);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
  return r;
}

GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b) {
  return a + (-b);
}

int reorder_sign(std::uint32_t left, std::uint32_t right) {
  // Inversions between sorted monomials: pairs (i in left, j in right), i > j.
  int inversions = 0;
  std::uint32_t r = right;
  while (r) {
    int j = std::countr_zero(r);
    r &= r - 1;
    inversions += std::popcount(left >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  a.require_same_context(b, "mul");
  GrassmannElement r(a.L_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma & mb) continue;  // a repeated generator kills the term
      Rational c = ca * cb;
      if (reorder_sign(ma, mb) < 0) c = -c;
      r.add_term(ma | mb, c);
    }
  }
  return r;
}

GrassmannElement operator*(const Rational& c, const GrassmannElement& a) {
  GrassmannElement r(a.num_generators());
  if (c.is_zero()) return r;
  return GrassmannElement::scalar(a.num_generators(), c) * a;
}

GrassmannElement GrassmannElement::inverse() const {
  Rational b = body();
  if (b.is_zero()) throw not_invertible_error("element has zero body");
  // 1/(b + s) = b^-1 sum_k (-s/b)^k, a finite sum since the soul is nilpotent.
  GrassmannElement binv = scalar(L_, b.inverse());
  GrassmannElement t = -(soul() * binv);  // -s/b
  GrassmannElement acc = one(L_);
  GrassmannElement pow = t;
  while (!pow.is_zero()) {
    acc += pow;
    pow *= t;
  }
  return acc * binv;
}

GrassmannElement GrassmannElement::derive(int i) const {
  if (i < 1 || i > L_)
    throw invalid_operand_error("derivative generator index out of range");
  std::uint32_t bit = 1u << (i - 1);
  GrassmannElement r(L_);
  for (const auto& [m, c] : terms_) {
    if (!(m & bit)) continue;
    // Move tau_i to the front: one sign per smaller generator present.
    int below = std::popcount(m & (bit - 1));
    r.add_term(m & ~bit, below % 2 ? -c : c);
  }
  return r;
}

GrassmannElement exp_nilpotent(const GrassmannElement& a) {
  if (!a.body().is_zero())
    throw not_nilpotent_error("exp requires a zero-body element");
  GrassmannElement acc = GrassmannElement::one(a.num_generators());
  GrassmannElement pow = a;
  long long k = 1;
  Rational factorial_inv(1);
  while (!pow.is_zero()) {
    factorial_inv = factorial_inv * Rational(1, k);
    acc += factorial_inv * pow;
    pow *= a;
    ++k;
  }
  return acc;
}

std::string GrassmannElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    if (first) {
      if (coeff.is_negative()) {
        out += "-";
        coeff = -coeff;
      }
    } else {
      out += coeff.is_negative() ? " - " : " + ";
      if (coeff.is_negative()) coeff = -coeff;
    }
    first = false;
    std::string mono;
    for (int i = 0; i < L_; ++i)
      if (m & (1u << i)) mono += " t" + std::to_string(i + 1);
    if (mono.empty()) {
      out += coeff.to_string();
    } else {
      if (!(coeff == Rational(1))) out += coeff.to_string();
      out += mono[0] == ' ' && (coeff == Rational(1)) ? mono.substr(1) : mono;
    }
  }
  return out;
}

}  // namespace smf
