#include "smf/susydisk.hpp"

#include <algorithm>

#include "smf/errors.hpp"

namespace smf {

namespace {

// A-part of a series as a series with no theta component, and vice versa.
SuperLaurentSeries a_part(const SuperLaurentSeries& s) {
  SuperLaurentSeries r(s.num_generators(), s.k_min(), s.k_max());
  for (int k = s.k_min(); k <= s.k_max(); ++k)
    r.set(k, s.a(k), GrassmannElement::zero(s.num_generators()));
  return r;
}

SuperLaurentSeries b_part(const SuperLaurentSeries& s) {
  SuperLaurentSeries r(s.num_generators(), s.k_min(), s.k_max());
  for (int k = s.k_min(); k <= s.k_max(); ++k)
    r.set(k, s.b(k), GrassmannElement::zero(s.num_generators()));
  return r;
}

SuperLaurentSeries coeff_times_theta(const SuperLaurentSeries& coeff) {
  // coeff(z) * theta: the b slot stores the left coefficient directly.
  SuperLaurentSeries r(coeff.num_generators(), coeff.k_min(), coeff.k_max());
  for (int k = coeff.k_min(); k <= coeff.k_max(); ++k)
    r.set(k, GrassmannElement::zero(coeff.num_generators()), coeff.a(k));
  return r;
}

SuperLaurentSeries z_theta_series(int L, int k_max) {
  // z * theta
  SuperLaurentSeries r(L, 1, std::max(1, k_max));
  r.set(1, GrassmannElement::zero(L), GrassmannElement::one(L));
  return r;
}

}  // namespace

void validate_disk_change(const DiskChange& c) {
  if (c.z_image.num_generators() != c.theta_image.num_generators())
    throw invalid_operand_error("disk change components with mismatched L");
  if (!c.z_image.is_even_function())
    throw invalid_operand_error("z_image must be an even superfunction");
  if (!c.theta_image.is_odd_function())
    throw invalid_operand_error("theta_image must be an odd superfunction");
  if (c.model == DiskModel::ramond) {
    if (c.z_image.k_max() < 0)
      throw insufficient_precision_error("Ramond change needs the z^0 slot");
    if (c.z_image.in_window(0) && !c.z_image.a(0).body().is_zero())
      throw invalid_operand_error(
          "Ramond change must preserve the puncture divisor z = 0");
  }
}

SuperLaurentSeries d_theta(const SuperLaurentSeries& f, DiskModel model) {
  const int L = f.num_generators();
  // D(a + b theta) = gi(b) + gi(a') theta, with an extra factor z for Ramond.
  SuperLaurentSeries da = f.derivative_z();
  SuperLaurentSeries theta_part =
      model == DiskModel::ns ? da : da.shifted(1);  // z * da for Ramond
  int lo = std::min(f.k_min(), theta_part.k_min());
  int hi = std::min(f.k_max(), theta_part.k_max());
  if (lo > hi) throw empty_window_error("derivative window is empty");
  SuperLaurentSeries r(L, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    GrassmannElement a = f.in_window(k) ? f.b(k).grade_involution()
                                        : GrassmannElement::zero(L);
    GrassmannElement b = theta_part.in_window(k)
                             ? theta_part.a(k).grade_involution()
                             : GrassmannElement::zero(L);
    r.set(k, std::move(a), std::move(b));
  }
  return r;
}

GrassmannElement residue(const BerSection& s) {
  if (s.weight != 1)
    throw wrong_weight_error("residue is defined for weight-1 sections");
  if (!s.f.in_window(-1))
    throw insufficient_precision_error("window does not cover z^-1");
  return s.f.b(-1);
}

SuperconformalCheck is_superconformal(const DiskChange& c) {
  validate_disk_change(c);
  SuperconformalCheck out;
  if (c.model == DiskModel::ns) {
    // D(z') - theta' * D(theta')
    SuperLaurentSeries dz = d_theta(c.z_image, DiskModel::ns);
    SuperLaurentSeries dt = d_theta(c.theta_image, DiskModel::ns);
    out.residual = dz - c.theta_image * dt;
  } else {
    // Displayed proportionality condition for varpi*: the right theta
    // derivative of q is its b part.
    const SuperLaurentSeries& zi = c.z_image;
    const SuperLaurentSeries& ti = c.theta_image;
    SuperLaurentSeries zt = zi * ti;
    SuperLaurentSeries rhs = b_part(zi) - zt * b_part(ti);
    SuperLaurentSeries xtheta =
        z_theta_series(zi.num_generators(),
                       std::max(zi.k_max(), ti.k_max()) + 1);
    SuperLaurentSeries lhs_factor = zi.derivative_z() - zt * ti.derivative_z();
    out.residual = rhs + (lhs_factor * xtheta);
  }
  out.ok = out.residual.is_zero_on_window();
  return out;
}

SuperLaurentSeries compose_with_change(const SuperLaurentSeries& f,
                                       const DiskChange& c) {
  validate_disk_change(c);
  const int L = f.num_generators();
  if (L != c.z_image.num_generators())
    throw invalid_operand_error("composition with mismatched L");
  const SuperLaurentSeries za = a_part(c.z_image);
  const SuperLaurentSeries zb = b_part(c.z_image);
  // Order of the even image; poles and window bookkeeping need it positive.
  int v = za.k_min();
  while (v <= za.k_max() && za.a(v).is_zero()) ++v;
  if (v > za.k_max() || v < 1)
    throw division_by_non_unit_error(
        "composition needs z_image of positive order");
  // Coefficients of f above its window are unknown and would enter at order
  // (k_max + 1) v, so everything from there on is unknown.
  const int cap_hi = (f.k_max() + 1) * v - 1;
  bool have_term = false;
  SuperLaurentSeries acc;
  bool zb_zero = zb.is_zero_on_window();
  for (int k = f.k_min(); k <= f.k_max(); ++k) {
    const GrassmannElement& alpha = f.a(k);
    const GrassmannElement& beta = f.b(k);
    if (alpha.is_zero() && beta.is_zero()) continue;
    // (a + b theta)^k = a^k + k a^{k-1} b theta; a has even coefficients.
    SuperLaurentSeries zpow = za.pow(k);
    if (!zb_zero && k != 0) {
      SuperLaurentSeries corr =
          GrassmannElement::scalar(L, Rational(k)) * (za.pow(k - 1) * zb);
      zpow = zpow + coeff_times_theta(a_part(corr));
    }
    SuperLaurentSeries term = alpha * zpow;
    if (!beta.is_zero()) term = term + (beta * c.theta_image) * zpow;
    acc = have_term ? acc + term : term;
    have_term = true;
  }
  if (!have_term) return SuperLaurentSeries(L, f.k_min() * v, cap_hi);
  if (acc.k_min() > cap_hi)
    throw insufficient_precision_error("composition window is empty");
  return acc.truncated(acc.k_min(), cap_hi);
}

SuperLaurentSeries change_berezinian(const DiskChange& c) {
  validate_disk_change(c);
  // The pullback of one-forms has matrix columns d(z_image), d(theta_image)
  // written on the ordered basis (dtheta | dz) with coefficients on the
  // right; its Berezinian is the reciprocal of the factor relating the
  // Berezinian generators, so invert it. For superconformal changes the
  // result agrees with D_theta(theta_image).
  const SuperLaurentSeries& zi = c.z_image;
  const SuperLaurentSeries& ti = c.theta_image;
  SuperLaurentSeries dz_f = zi.derivative_z();
  SuperLaurentSeries dth_f = b_part(zi).grade_involution();
  SuperLaurentSeries dz_g = ti.derivative_z();
  SuperLaurentSeries dth_g = b_part(ti).grade_involution();
  SuperLaurentSeries dz_f_inv = dz_f.inverse();
  SuperLaurentSeries schur = dth_g - dth_f * dz_f_inv * dz_g;
  return dz_f * schur.inverse();
}

BerSection transform_section(const BerSection& s, const DiskChange& c) {
  SuperconformalCheck check = is_superconformal(c);
  if (!check.ok)
    throw not_superconformal_error("section transport needs a superconformal change");
  SuperLaurentSeries pulled = compose_with_change(s.f, c);
  SuperLaurentSeries factor = change_berezinian(c).pow(s.weight);
  return BerSection{s.weight, pulled * factor};
}

SuperOneForm alpha_map(const BerSection& s) {
  if (s.weight != 1)
    throw wrong_weight_error("alpha acts on weight-1 sections");
  return SuperOneForm{d_theta(s.f, DiskModel::ns), s.f};
}

BerSection project_oneform(const SuperOneForm& w) {
  // Rewrite varpi*A + dtheta*B in the (dz, dtheta) basis: varpi = dz - theta
  // dtheta puts dtheta*(B - theta*A); the displayed projection then sends
  // dz*P + dtheta*Q to (Q + gi(P) theta)[dz|dtheta], and the two theta*A
  // contributions cancel exactly.
  const SuperLaurentSeries& p = w.w_coeff;
  SuperLaurentSeries q = w.dtheta_coeff - w.w_coeff.theta_mul_left();
  int L = p.num_generators();
  int lo = std::min(p.k_min(), q.k_min());
  int hi = std::min(p.k_max(), q.k_max());
  if (lo > hi) throw empty_window_error("projection window is empty");
  SuperLaurentSeries r(L, lo, hi);
  for (int k = lo; k <= hi; ++k) {
    GrassmannElement a = q.in_window(k) ? q.a(k) : GrassmannElement::zero(L);
    GrassmannElement b = q.in_window(k) ? q.b(k) : GrassmannElement::zero(L);
    if (p.in_window(k)) b += p.a(k).grade_involution();
    r.set(k, std::move(a), std::move(b));
  }
  return BerSection{1, r};
}

SuperOneForm exterior_derivative(const SuperLaurentSeries& h) {
  return SuperOneForm{h.derivative_z(), d_theta(h, DiskModel::ns)};
}

DiskChange make_ramond_change(const RamondChangeData& d) {
  auto check_pure = [](const SuperLaurentSeries& s, const char* what) {
    for (int k = s.k_min(); k <= s.k_max(); ++k)
      if (!s.b(k).is_zero())
        throw invalid_operand_error(std::string(what) +
                                    " must be a series in x alone");
  };
  check_pure(d.f, "f");
  check_pure(d.g, "g");
  check_pure(d.lambda, "lambda");
  check_pure(d.psi, "psi");
  DiskChange c;
  c.model = DiskModel::ramond;
  c.z_image = d.f + coeff_times_theta(d.lambda);
  c.theta_image = d.psi + coeff_times_theta(d.g);
  validate_disk_change(c);
  return c;
}

RamondAuditReport ramond_change_audit(const RamondChangeData& d) {
  const int L = d.f.num_generators();
  RamondAuditReport report(L);
  DiskChange c = make_ramond_change(d);
  SuperconformalCheck check = is_superconformal(c);
  report.superconformal = check.ok;
  report.sc_residual = check.residual;
  if (!check.ok) return report;

  // lambda = f g psi to the common window
  SuperLaurentSeries lam_diff = d.lambda - d.f * d.g * d.psi;
  report.lambda_identity = lam_diff.is_zero_on_window();

  // f g^2 = x f' - x f psi psi'  (the g^2 identity cleared of 1/f)
  SuperLaurentSeries x = SuperLaurentSeries::monomial(
      L, 1, GrassmannElement::one(L), GrassmannElement::zero(L),
      std::max(d.f.k_max(), d.g.k_max()) + 1);
  SuperLaurentSeries lhs = d.f * d.g * d.g;
  SuperLaurentSeries rhs =
      x * d.f.derivative_z() - x * d.f * d.psi * d.psi.derivative_z();
  report.g_squared_identity = (lhs - rhs).is_zero_on_window();

  for (const SuperLaurentSeries* s : {&d.f, &d.g, &d.lambda, &d.psi})
    if (s->k_max() < 1)
      throw insufficient_precision_error(
          "audit needs all series known through order x^1");
  auto coeff_or_zero = [&](const SuperLaurentSeries& s, int k) {
    return s.in_window(k) ? s.a(k) : GrassmannElement::zero(L);
  };
  auto at0 = [&](const SuperLaurentSeries& s) { return coeff_or_zero(s, 0); };
  auto deriv_at0 = [&](const SuperLaurentSeries& s) { return coeff_or_zero(s, 1); };
  GrassmannElement g0 = at0(d.g);
  GrassmannElement gp0 = deriv_at0(d.g);
  GrassmannElement fp0 = deriv_at0(d.f);
  GrassmannElement lp0 = deriv_at0(d.lambda);
  GrassmannElement psi0 = at0(d.psi);
  GrassmannElement psip0 = deriv_at0(d.psi);

  report.g0_squared_one = (g0 * g0 == GrassmannElement::one(L));
  report.lambda_prime_psi_zero = (lp0 * psi0).is_zero();

  // Change of basis on {1, x | theta, x theta} modulo x^2 and the square of
  // the divisor; columns are the images of {1, z | zeta, z zeta}.
  ge_mat a(4, std::vector<GrassmannElement>(4, GrassmannElement::zero(L)));
  a[0][0] = GrassmannElement::one(L);
  a[1][1] = fp0;
  a[0][2] = psi0;
  a[1][2] = psip0;
  a[2][2] = g0;
  a[3][2] = gp0;
  a[3][1] = lp0;
  a[1][3] = fp0 * psi0;
  a[3][3] = fp0 * g0;
  report.change_matrix =
      SuperMatrix(BlockShape{2, 2, 2, 2}, L, MatrixParity::even, std::move(a));
  report.ber_a = report.change_matrix.berezinian(BerRoute::both);
  report.ber_a_one = (report.ber_a == GrassmannElement::one(L));
  return report;
}

GrassmannElement norm_triviality_check(const GrassmannElement& g0,
                                       const GrassmannElement& g1) {
  const int L = g0.num_generators();
  if (g1.num_generators() != L)
    throw invalid_operand_error("norm check operands with mismatched L");
  if (!g0.body_invertible())
    throw not_invertible_error("g0 must have an invertible body");
  ge_mat m(2, std::vector<GrassmannElement>(2, GrassmannElement::zero(L)));
  m[0][0] = g0;
  m[1][0] = g1;
  m[1][1] = g0;
  SuperMatrix mg(BlockShape{1, 1, 1, 1}, L, MatrixParity::even, std::move(m));
  return mg.berezinian(BerRoute::both);
}

}  // namespace smf
