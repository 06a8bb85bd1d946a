#ifndef SMF_MUMFORD_HPP
#define SMF_MUMFORD_HPP

#include <string>
#include <utility>
#include <vector>

#include "smf/series.hpp"
#include "smf/supermatrix.hpp"

namespace smf {

/// Leading expansion (c0 + c1 theta + O(z)) of a section at one puncture.
struct LocalExpansion {
  GrassmannElement c0, c1;
};

using ExpansionTable = std::vector<std::vector<LocalExpansion>>;  // [row][puncture]

/// Left inverse A of a tall matrix M with A * M = I, built from a row subset
/// whose body minor is invertible over Q. An empty `given_rows` selects the
/// lexicographically first valid subset; otherwise the caller's subset is
/// used (0-based row indices). On return `rows_used`, when non-null, holds
/// the chosen subset.
SuperMatrix left_inverse(const SuperMatrix& m,
                         const std::vector<int>& given_rows = {},
                         std::vector<int>* rows_used = nullptr);

struct LeftInversePolicy {
  std::vector<int> rows_a;  // empty -> lex_first
  std::vector<int> rows_b;  // Ramond only
};

/// Per-puncture expansion data for the Ramond pipeline on a genus-g family
/// with n_r Ramond punctures. Table row counts: phi g, xi r-1, sigma r,
/// tau r-g, eta r, psi r with r = n_r/2 - g + 1; each row holds one
/// expansion per divisor point of t'.
struct RamondLocalData {
  int genus = 2;
  int n_r = 8;
  int num_generators = 2;  // L
  std::vector<SuperLaurentSeries> t_series;  // local factor of t' ~ z f(z|theta)
  ExpansionTable phi, xi, sigma, tau, eta, psi;

  int r() const { return n_r / 2 - genus + 1; }
};

void validate_ramond_data(const RamondLocalData& d);

struct RamondMatrices {
  SuperMatrix a_prime, b_prime;  // residue pairings, (2r) x r and (2r) x g
  SuperMatrix a_left, b_left;    // chosen left inverses
  SuperMatrix m0, m_minus_half, m_minus_one;
  std::vector<int> rows_a, rows_b;

  RamondMatrices(int L, int r, int g);
};

RamondMatrices build_ramond_matrices(const RamondLocalData& d,
                                     const LeftInversePolicy& policy = {});

struct MumfordResult {
  GrassmannElement scalar;
  std::string generator_label;
  std::vector<std::pair<std::string, GrassmannElement>> berezinians;
  std::string input_digest;
};

MumfordResult mumford_ramond(const RamondLocalData& d,
                             const LeftInversePolicy& policy = {});

/// Per-point data for the Neveu-Schwarz pipeline over the odd-spin component.
/// Table row counts at the g-1 divisor points: phi g-1, chi g-1, psi g-2,
/// sigma g-1, rho g-2; alpha/beta are n_ns x n_ns at the NS punctures.
struct NSLocalData {
  int genus = 2;
  int num_generators = 2;
  int n_ns = 0;
  ExpansionTable phi, chi, psi, sigma, rho;
  std::vector<LocalExpansion> xi;  // optional, per divisor point
  GrassmannElement m3_distinguished_entry;
  ExpansionTable alpha, beta;                       // punctured case
  std::vector<LocalExpansion> tau_leading;          // (a_k, b_k) per puncture
};

void validate_ns_data(const NSLocalData& d);

struct NSMatrices {
  SuperMatrix a1;     // (g-1) x (2g-2) restriction data as displayed
  SuperMatrix b1t;    // chosen left inverse of a1^t
  SuperMatrix m1, m2, m3;
  SuperMatrix m_prime;  // (2 n_ns) x (2 n_ns); 0x0 when n_ns = 0
  std::vector<int> rows;

  NSMatrices(int L, int g, int n_ns);
};

NSMatrices build_ns_matrices(const NSLocalData& d,
                             const LeftInversePolicy& policy = {});

MumfordResult mumford_ns(const NSLocalData& d,
                         const LeftInversePolicy& policy = {});
MumfordResult mumford_ns_punctured(const NSLocalData& d,
                                   const LeftInversePolicy& policy = {});

/// Stable digest of the input tables; scalars from different section data
/// must not be compared, so results carry this fingerprint.
std::string ramond_data_digest(const RamondLocalData& d);
std::string ns_data_digest(const NSLocalData& d);

}  // namespace smf

#endif
