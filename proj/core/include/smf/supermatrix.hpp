#ifndef SMF_SUPERMATRIX_HPP
#define SMF_SUPERMATRIX_HPP

#include <string>
#include <vector>

#include "smf/grassmann.hpp"

namespace smf {

/// Plain dense matrix of Grassmann elements; the working type for block
/// manipulation. Indexed [row][col].
using ge_mat = std::vector<std::vector<GrassmannElement>>;

ge_mat ge_mat_mul(const ge_mat& a, const ge_mat& b);

/// Determinant over the (commutative) even subring by Bird's division-free
/// scheme. Valid over any commutative ring, in particular one with zero
/// divisors where fraction-free elimination is not.
GrassmannElement det_division_free(const ge_mat& m);

/// Reference determinant by first-row cofactor expansion; test oracle for
/// small sizes.
GrassmannElement det_cofactor(const ge_mat& m);

/// Inverse of a matrix of even elements whose body determinant is nonzero:
/// rational body inverse plus a terminating Neumann series on the soul part.
ge_mat even_mat_inverse(const ge_mat& m, int L);

/// det of the rational body of m; used for invertibility checks.
Rational body_det(const ge_mat& m);

struct BlockShape {
  int p = 0, q = 0;  // row split
  int r = 0, s = 0;  // column split
  int rows() const noexcept { return p + q; }
  int cols() const noexcept { return r + s; }
  bool square() const noexcept { return p == r && q == s; }
  friend bool operator==(const BlockShape& a, const BlockShape& b) {
    return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s;
  }
};

enum class MatrixParity { even, odd, none };

enum class BerRoute { via_d, via_a, both };

/// Block supermatrix over a Grassmann algebra. With declared parity `even`
/// the diagonal blocks must hold even-homogeneous entries and the
/// off-diagonal blocks odd ones; `odd` is the reverse; `none` is unchecked.
class SuperMatrix {
public:
  SuperMatrix(BlockShape shape, int L, MatrixParity parity);
  SuperMatrix(BlockShape shape, int L, MatrixParity parity, ge_mat entries);

  static SuperMatrix identity(int p, int q, int L);

  const BlockShape& shape() const noexcept { return shape_; }
  int num_generators() const noexcept { return L_; }
  MatrixParity declared_parity() const noexcept { return parity_; }

  const GrassmannElement& at(int i, int j) const { return e_[i][j]; }
  void set(int i, int j, GrassmannElement v);
  const ge_mat& entries() const noexcept { return e_; }

  /// Blocks of the standard form (A B; C D).
  ge_mat block_a() const;
  ge_mat block_b() const;
  ge_mat block_c() const;
  ge_mat block_d() const;

  friend SuperMatrix operator*(const SuperMatrix& x, const SuperMatrix& y);
  friend SuperMatrix operator+(const SuperMatrix& x, const SuperMatrix& y);

  SuperMatrix supertranspose() const;
  GrassmannElement supertrace() const;
  GrassmannElement berezinian(BerRoute route = BerRoute::both) const;
  SuperMatrix inverse() const;
  /// exp of a matrix all of whose entries have zero body.
  SuperMatrix exp_nilpotent() const;

  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

private:
  BlockShape shape_;
  int L_;
  MatrixParity parity_;
  ge_mat e_;

  void validate_entry(int i, int j, const GrassmannElement& v) const;
  void validate_all() const;
};

}  // namespace smf

#endif
