#include "smf/supermatrix.hpp"

#include "smf/errors.hpp"

namespace smf {

namespace {

int mat_L(const ge_mat& m) {
  for (const auto& row : m)
    for (const auto& v : row) return v.num_generators();
  return 0;
}

ge_mat ge_mat_sub(const ge_mat& a, const ge_mat& b) {
  ge_mat r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

bool ge_mat_is_zero(const ge_mat& m) {
  for (const auto& row : m)
    for (const auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

std::vector<std::vector<Rational>> body_of(const ge_mat& m) {
  std::vector<std::vector<Rational>> b(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    b[i].reserve(m[i].size());
    for (const auto& v : m[i]) b[i].push_back(v.body());
  }
  return b;
}

Rational rational_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    Rational inv = m[col][col].inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i][col].is_zero()) continue;
      Rational f = m[i][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
    }
  }
  return det;
}

// Gauss-Jordan over Q; caller guarantees the determinant is nonzero.
std::vector<std::vector<Rational>> rational_inverse(
    std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw not_invertible_error("singular rational matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational pinv = m[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * pinv;
      inv[col][j] = inv[col][j] * pinv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col].is_zero()) continue;
      Rational f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = m[i][j] - f * m[col][j];
        inv[i][j] = inv[i][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

ge_mat ge_mat_mul(const ge_mat& a, const ge_mat& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  int L = mat_L(a);
  if (L == 0) L = mat_L(b);
  ge_mat r(n, std::vector<GrassmannElement>(m, GrassmannElement::zero(L)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

GrassmannElement det_division_free(const ge_mat& m) {
  const std::size_t n = m.size();
  int L = mat_L(m);
  if (n == 0) return GrassmannElement::one(L);
  if (n == 1) return m[0][0];
  // Bird's scheme: X_{k+1} = mu(X_k) * M with mu keeping the strict upper
  // triangle and writing -(sum of lower diagonal entries) on the diagonal.
  auto mu = [&](const ge_mat& x) {
    ge_mat out(n, std::vector<GrassmannElement>(n, GrassmannElement::zero(L)));
    GrassmannElement tail = GrassmannElement::zero(L);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) out[i][j] = x[i][j];
      out[i][i] = -tail;
      tail += x[i][i];
    }
    return out;
  };
  ge_mat x = m;
  for (std::size_t k = 0; k + 1 < n; ++k) x = ge_mat_mul(mu(x), m);
  GrassmannElement det = x[0][0];
  if (n % 2 == 0) det = -det;
  return det;
}

GrassmannElement det_cofactor(const ge_mat& m) {
  const std::size_t n = m.size();
  int L = mat_L(m);
  if (n == 0) return GrassmannElement::one(L);
  if (n == 1) return m[0][0];
  GrassmannElement det = GrassmannElement::zero(L);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    ge_mat minor(n - 1, std::vector<GrassmannElement>());
    for (std::size_t i = 1; i < n; ++i) {
      minor[i - 1].reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) minor[i - 1].push_back(m[i][c]);
    }
    GrassmannElement term = m[0][j] * det_cofactor(minor);
    det += (j % 2) ? -term : term;
  }
  return det;
}

Rational body_det(const ge_mat& m) { return rational_det(body_of(m)); }

ge_mat even_mat_inverse(const ge_mat& m, int L) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  auto body = body_of(m);
  if (rational_det(body).is_zero())
    throw not_invertible_error("even matrix has singular body");
  auto binv_q = rational_inverse(body);
  ge_mat binv(n, std::vector<GrassmannElement>(n, GrassmannElement::zero(L)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      binv[i][j] = GrassmannElement::scalar(L, binv_q[i][j]);
  // m = B + N with N soul-valued: m^-1 = (sum (-B^-1 N)^k) B^-1.
  ge_mat bm(n, std::vector<GrassmannElement>(n, GrassmannElement::zero(L)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      bm[i][j] = GrassmannElement::scalar(L, body[i][j]);
  ge_mat nil = ge_mat_sub(m, bm);
  ge_mat t = ge_mat_mul(binv, nil);
  for (auto& row : t)
    for (auto& v : row) v = -v;
  ge_mat acc(n, std::vector<GrassmannElement>(n, GrassmannElement::zero(L)));
  for (std::size_t i = 0; i < n; ++i) acc[i][i] = GrassmannElement::one(L);
  ge_mat pow = t;
  while (!ge_mat_is_zero(pow)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc[i][j] += pow[i][j];
    pow = ge_mat_mul(pow, t);
  }
  return ge_mat_mul(acc, binv);
}

SuperMatrix::SuperMatrix(BlockShape shape, int L, MatrixParity parity)
    : shape_(shape), L_(L), parity_(parity),
      e_(shape.rows(), std::vector<GrassmannElement>(
                           shape.cols(), GrassmannElement::zero(L))) {}

SuperMatrix::SuperMatrix(BlockShape shape, int L, MatrixParity parity, ge_mat entries)
    : shape_(shape), L_(L), parity_(parity), e_(std::move(entries)) {
  if (static_cast<int>(e_.size()) != shape_.rows())
    throw invalid_shape_error("entry grid row count does not match shape");
  for (const auto& row : e_)
    if (static_cast<int>(row.size()) != shape_.cols())
      throw invalid_shape_error("entry grid column count does not match shape");
  validate_all();
}

void SuperMatrix::validate_entry(int i, int j, const GrassmannElement& v) const {
  if (v.num_generators() != L_)
    throw invalid_operand_error("matrix entry with mismatched L");
  if (parity_ == MatrixParity::none || v.is_zero()) return;
  bool diag = (i < shape_.p) == (j < shape_.r);
  Parity want;
  if (parity_ == MatrixParity::even)
    want = diag ? Parity::even : Parity::odd;
  else
    want = diag ? Parity::odd : Parity::even;
  if (v.parity() != want)
    throw not_even_error("entry parity violates declared block structure");
}

void SuperMatrix::validate_all() const {
  for (int i = 0; i < shape_.rows(); ++i)
    for (int j = 0; j < shape_.cols(); ++j) validate_entry(i, j, e_[i][j]);
}

void SuperMatrix::set(int i, int j, GrassmannElement v) {
  validate_entry(i, j, v);
  e_[i][j] = std::move(v);
}

SuperMatrix SuperMatrix::identity(int p, int q, int L) {
  SuperMatrix r(BlockShape{p, q, p, q}, L, MatrixParity::even);
  for (int i = 0; i < p + q; ++i) r.e_[i][i] = GrassmannElement::one(L);
  return r;
}

ge_mat SuperMatrix::block_a() const {
  ge_mat b(shape_.p, std::vector<GrassmannElement>());
  for (int i = 0; i < shape_.p; ++i)
    b[i].assign(e_[i].begin(), e_[i].begin() + shape_.r);
  return b;
}

ge_mat SuperMatrix::block_b() const {
  ge_mat b(shape_.p, std::vector<GrassmannElement>());
  for (int i = 0; i < shape_.p; ++i)
    b[i].assign(e_[i].begin() + shape_.r, e_[i].end());
  return b;
}

ge_mat SuperMatrix::block_c() const {
  ge_mat b(shape_.q, std::vector<GrassmannElement>());
  for (int i = 0; i < shape_.q; ++i)
    b[i].assign(e_[shape_.p + i].begin(), e_[shape_.p + i].begin() + shape_.r);
  return b;
}

ge_mat SuperMatrix::block_d() const {
  ge_mat b(shape_.q, std::vector<GrassmannElement>());
  for (int i = 0; i < shape_.q; ++i)
    b[i].assign(e_[shape_.p + i].begin() + shape_.r, e_[shape_.p + i].end());
  return b;
}

SuperMatrix operator*(const SuperMatrix& x, const SuperMatrix& y) {
  if (x.shape_.r != y.shape_.p || x.shape_.s != y.shape_.q)
    throw invalid_shape_error("matrix product with mismatched inner shape");
  if (x.L_ != y.L_)
    throw invalid_operand_error("matrix product with mismatched L");
  MatrixParity parity = MatrixParity::none;
  if (x.parity_ != MatrixParity::none && y.parity_ != MatrixParity::none)
    parity = (x.parity_ == y.parity_) ? MatrixParity::even : MatrixParity::odd;
  BlockShape shape{x.shape_.p, x.shape_.q, y.shape_.r, y.shape_.s};
  return SuperMatrix(shape, x.L_, parity, ge_mat_mul(x.e_, y.e_));
}

SuperMatrix operator+(const SuperMatrix& x, const SuperMatrix& y) {
  if (!(x.shape_ == y.shape_))
    throw invalid_shape_error("matrix sum with mismatched shape");
  if (x.L_ != y.L_) throw invalid_operand_error("matrix sum with mismatched L");
  ge_mat e = x.e_;
  for (int i = 0; i < x.shape_.rows(); ++i)
    for (int j = 0; j < x.shape_.cols(); ++j) e[i][j] += y.e_[i][j];
  MatrixParity parity =
      x.parity_ == y.parity_ ? x.parity_ : MatrixParity::none;
  return SuperMatrix(x.shape_, x.L_, parity, std::move(e));
}

SuperMatrix SuperMatrix::supertranspose() const {
  // Entry-level form of the block formula: even parts of B pass through to
  // the new lower-left, odd parts pick up a minus sign; C is the mirror case.
  BlockShape shape{shape_.r, shape_.s, shape_.p, shape_.q};
  SuperMatrix r(shape, L_, parity_);
  for (int i = 0; i < shape_.rows(); ++i) {
    for (int j = 0; j < shape_.cols(); ++j) {
      const GrassmannElement& v = e_[i][j];
      if (v.is_zero()) continue;
      bool row_even = i < shape_.p;
      bool col_even = j < shape_.r;
      GrassmannElement out(L_);
      if (row_even == col_even) {
        out = v;
      } else if (row_even) {  // B block -> lower-left with involution sign
        out = v.grade_involution();
      } else {  // C block -> upper-right, negated involution
        out = -v.grade_involution();
      }
      r.e_[j][i] = out;
    }
  }
  return r;
}

GrassmannElement SuperMatrix::supertrace() const {
  if (!shape_.square())
    throw invalid_shape_error("supertrace of a non-square matrix");
  GrassmannElement tr(L_);
  for (int i = 0; i < shape_.p; ++i) tr += e_[i][i];
  for (int i = shape_.p; i < shape_.rows(); ++i) tr -= e_[i][i];
  return tr;
}

GrassmannElement SuperMatrix::berezinian(BerRoute route) const {
  if (!shape_.square())
    throw invalid_shape_error("Berezinian of a non-square matrix");
  if (parity_ != MatrixParity::even)
    throw not_even_error("Berezinian is defined for even matrices only");
  auto via_d = [&]() {
    ge_mat d = block_d();
    if (shape_.q > 0 && body_det(d).is_zero())
      throw non_invertible_block_error("block D has singular body");
    ge_mat schur = block_a();
    if (shape_.q > 0 && shape_.p > 0) {
      ge_mat corr = ge_mat_mul(ge_mat_mul(block_b(), even_mat_inverse(d, L_)),
                               block_c());
      schur = ge_mat_sub(schur, corr);
    }
    GrassmannElement det_d = det_division_free(d);
    return det_division_free(schur) * det_d.inverse();
  };
  auto via_a = [&]() {
    ge_mat a = block_a();
    if (shape_.p > 0 && body_det(a).is_zero())
      throw non_invertible_block_error("block A has singular body");
    ge_mat schur = block_d();
    if (shape_.p > 0 && shape_.q > 0) {
      ge_mat corr = ge_mat_mul(ge_mat_mul(block_c(), even_mat_inverse(a, L_)),
                               block_b());
      schur = ge_mat_sub(schur, corr);
    }
    GrassmannElement det_schur = det_division_free(schur);
    if (!det_schur.body_invertible())
      throw non_invertible_block_error("Schur complement of A has singular body");
    return det_division_free(a) * det_schur.inverse();
  };
  switch (route) {
    case BerRoute::via_d:
      return via_d();
    case BerRoute::via_a:
      return via_a();
    case BerRoute::both: {
      GrassmannElement d = via_d();
      GrassmannElement a = via_a();
      if (!(d == a))
        throw kernel_error("RouteMismatch",
                           "the two Berezinian factorizations disagree");
      return d;
    }
  }
  throw invalid_operand_error("unknown Berezinian route");
}

SuperMatrix SuperMatrix::inverse() const {
  if (!shape_.square())
    throw invalid_shape_error("inverse of a non-square matrix");
  if (parity_ != MatrixParity::even)
    throw not_even_error("inverse implemented for even matrices");
  const int p = shape_.p, q = shape_.q;
  ge_mat a = block_a(), b = block_b(), c = block_c(), d = block_d();
  if (p > 0 && body_det(a).is_zero())
    throw non_invertible_block_error("block A has singular body");
  if (q > 0 && body_det(d).is_zero())
    throw non_invertible_block_error("block D has singular body");
  // Invert the triangular factorization (I BD^-1; 0 I)(S 0; 0 D)(I 0; D^-1C I).
  ge_mat dinv = even_mat_inverse(d, L_);
  ge_mat s = a;
  if (p > 0 && q > 0) s = ge_mat_sub(a, ge_mat_mul(ge_mat_mul(b, dinv), c));
  ge_mat sinv = even_mat_inverse(s, L_);
  SuperMatrix r(BlockShape{p, q, p, q}, L_, MatrixParity::even);
  // top-left: S^-1 ; top-right: -S^-1 B D^-1
  // bottom-left: -D^-1 C S^-1 ; bottom-right: D^-1 + D^-1 C S^-1 B D^-1
  ge_mat tr_blk, bl_blk, br_corr;
  if (p > 0 && q > 0) {
    tr_blk = ge_mat_mul(ge_mat_mul(sinv, b), dinv);
    bl_blk = ge_mat_mul(ge_mat_mul(dinv, c), sinv);
    br_corr = ge_mat_mul(ge_mat_mul(bl_blk, b), dinv);
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) r.e_[i][j] = sinv[i][j];
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) r.e_[i][p + j] = -tr_blk[i][j];
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < p; ++j) r.e_[p + i][j] = -bl_blk[i][j];
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      r.e_[p + i][p + j] = dinv[i][j];
      if (p > 0) r.e_[p + i][p + j] += br_corr[i][j];
    }
  return r;
}

SuperMatrix SuperMatrix::exp_nilpotent() const {
  if (!shape_.square())
    throw invalid_shape_error("exp of a non-square matrix");
  if (parity_ != MatrixParity::even)
    throw not_even_error("exp implemented for even matrices");
  for (const auto& row : e_)
    for (const auto& v : row)
      if (!v.body().is_zero())
        throw not_nilpotent_error("matrix entry with nonzero body");
  SuperMatrix acc = identity(shape_.p, shape_.q, L_);
  ge_mat pow = e_;
  long long k = 1;
  Rational factorial_inv(1);
  while (!ge_mat_is_zero(pow)) {
    factorial_inv = factorial_inv * Rational(1, k);
    for (int i = 0; i < shape_.rows(); ++i)
      for (int j = 0; j < shape_.cols(); ++j)
        acc.e_[i][j] += factorial_inv * pow[i][j];
    pow = ge_mat_mul(pow, e_);
    ++k;
  }
  return acc;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  return a.shape_ == b.shape_ && a.L_ == b.L_ && a.e_ == b.e_;
}

}  // namespace smf
