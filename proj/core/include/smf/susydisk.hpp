#ifndef SMF_SUSYDISK_HPP
#define SMF_SUSYDISK_HPP

#include "smf/series.hpp"
#include "smf/supermatrix.hpp"

namespace smf {

enum class DiskModel { ns, ramond };

/// Local coordinate change z' = z_image(z, theta), theta' = theta_image(z, theta)
/// on a 1|1 disk. z_image must be an even superfunction and theta_image odd;
/// in the Ramond model the puncture divisor z = 0 is preserved, so the body
/// of z_image's constant term vanishes.
struct DiskChange {
  DiskModel model = DiskModel::ns;
  SuperLaurentSeries z_image;
  SuperLaurentSeries theta_image;
};

void validate_disk_change(const DiskChange& c);

/// f(z|theta) [dz|dtheta]^weight.
struct BerSection {
  int weight = 1;
  SuperLaurentSeries f;
};

/// One-form written as varpi * w_coeff + dtheta * dtheta_coeff with the
/// coefficients to the right of the basis forms, varpi = dz - theta dtheta.
struct SuperOneForm {
  SuperLaurentSeries w_coeff;
  SuperLaurentSeries dtheta_coeff;
};

/// Superconformal generator: D = d/dtheta + theta d/dz for the NS model and
/// D* = d/dtheta + z theta d/dz for the Ramond model (left odd derivative).
SuperLaurentSeries d_theta(const SuperLaurentSeries& f, DiskModel model);

/// Residue of a weight-1 section: the theta coefficient at z^-1.
GrassmannElement residue(const BerSection& s);

struct SuperconformalCheck {
  bool ok = false;
  SuperLaurentSeries residual;  // witness
};

/// NS: vanishing of D(z') - theta' * D(theta').
/// Ramond: the varpi*-proportionality identity of the two coordinate systems.
SuperconformalCheck is_superconformal(const DiskChange& c);

/// Substitutes the change into f: f(z_image, theta_image).
SuperLaurentSeries compose_with_change(const SuperLaurentSeries& f,
                                       const DiskChange& c);

/// 1|1 super Jacobian of the change as a (1|1)x(1|1) series-valued Berezinian.
SuperLaurentSeries change_berezinian(const DiskChange& c);

/// Pullback of f * [dz'|dtheta']^j along the change: (f o c) * Ber(J_c)^j.
BerSection transform_section(const BerSection& s, const DiskChange& c);

/// alpha(f [dz|dtheta]) = dtheta * f + varpi * D(f).
SuperOneForm alpha_map(const BerSection& s);

/// Natural projection of one-forms to weight-1 sections; kills varpi exactly
/// and inverts alpha on its image.
BerSection project_oneform(const SuperOneForm& w);

/// d(h) = varpi * dh/dz + dtheta * D(h).
SuperOneForm exterior_derivative(const SuperLaurentSeries& h);

/// Ramond coordinate change supplied as the four component series of
/// z' = f(x) + lambda(x) theta, theta' = psi(x) + g(x) theta. Each series is
/// a function of x alone (zero theta parts).
struct RamondChangeData {
  SuperLaurentSeries f;
  SuperLaurentSeries g;
  SuperLaurentSeries lambda;
  SuperLaurentSeries psi;
};

DiskChange make_ramond_change(const RamondChangeData& d);

struct RamondAuditReport {
  bool superconformal = false;
  SuperLaurentSeries sc_residual;
  bool lambda_identity = false;        // lambda = f g psi on the window
  bool g_squared_identity = false;     // f g^2 = x f' - x f psi psi'
  bool g0_squared_one = false;         // g(0)^2 = 1
  bool lambda_prime_psi_zero = false;  // lambda'(0) psi(0) = 0
  SuperMatrix change_matrix;           // on the basis {1, x | theta, x theta}
  GrassmannElement ber_a;
  bool ber_a_one = false;

  explicit RamondAuditReport(int L)
      : change_matrix(BlockShape{2, 2, 2, 2}, L, MatrixParity::even),
        ber_a(GrassmannElement::zero(L)) {}

  bool pass() const {
    return superconformal && lambda_identity && g_squared_identity &&
           g0_squared_one && lambda_prime_psi_zero && ber_a_one;
  }
};

/// Checks the Ramond superconformality constraints and the Berezinian of the
/// induced change of basis on functions modulo x^2 near the puncture.
RamondAuditReport ramond_change_audit(const RamondChangeData& d);

/// Berezinian of multiplication by g0 + g1*alpha on the free rank-1|1 module
/// with basis {1, alpha}; identically 1 for invertible g0.
GrassmannElement norm_triviality_check(const GrassmannElement& g0,
                                       const GrassmannElement& g1);

}  // namespace smf

#endif
