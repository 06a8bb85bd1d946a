#ifndef SMF_RANKS_HPP
#define SMF_RANKS_HPP

namespace smf {

struct SuperDim {
  long long even = 0;
  long long odd = 0;
  long long sdim() const noexcept { return even - odd; }
  friend bool operator==(const SuperDim& a, const SuperDim& b) {
    return a.even == b.even && a.odd == b.odd;
  }
};

/// Euler characteristic of an invertible sheaf of degree deg_l on a genus-g
/// supercurve whose odd ideal sheaf has degree deg_j.
SuperDim rr_supercurve(long long deg_l, long long g, long long deg_j);
long long rr_supercurve_schi(long long deg_j);

/// Same on a SUSY curve, where the ideal sheaf is a spin structure.
SuperDim rr_susy(long long deg_l, long long g);
long long rr_susy_schi(long long g);

/// Rank of R^i pi_* omega^j on a genus-g family with n_r Ramond punctures,
/// i in {0, 1} and j in {-2, -1, 0, 1}; requires n_r even and n_r > 6g - 6.
SuperDim ramond_rank_table(long long g, long long n_r, int i, int j);

/// Dimension of the moduli space of genus-g surfaces with n_ns Neveu-Schwarz
/// and n_r Ramond punctures.
SuperDim moduli_dim(long long g, long long n_ns, long long n_r);

}  // namespace smf

#endif
