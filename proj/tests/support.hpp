#ifndef SMF_TESTS_SUPPORT_HPP
#define SMF_TESTS_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "smf/grassmann.hpp"
#include "smf/mumford.hpp"
#include "smf/series.hpp"
#include "smf/supermatrix.hpp"
#include "smf/susydisk.hpp"

namespace smf::testing {

// splitmix64; fixed seeds keep every test run byte-identical.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational(int max_abs = 5) {
    long long num = range(-max_abs, max_abs);
    long long den = range(1, 3);
    return Rational(num, den);
  }
  Rational nonzero_rational(int max_abs = 5) {
    Rational r = rational(max_abs);
    while (r.is_zero()) r = rational(max_abs);
    return r;
  }
};

inline GrassmannElement random_homogeneous(Rng& rng, int L, Parity parity,
                                           int density = 2) {
  GrassmannElement v(L);
  for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
    bool even = __builtin_popcount(mask) % 2 == 0;
    if ((parity == Parity::even) != even) continue;
    if (rng.range(0, density) != 0) continue;
    v += GrassmannElement::monomial(L, mask, rng.rational());
  }
  return v;
}

inline GrassmannElement random_element(Rng& rng, int L) {
  return random_homogeneous(rng, L, Parity::even) +
         random_homogeneous(rng, L, Parity::odd);
}

inline GrassmannElement random_even_unit(Rng& rng, int L) {
  GrassmannElement v = random_homogeneous(rng, L, Parity::even);
  return v - GrassmannElement::scalar(L, v.body()) +
         GrassmannElement::scalar(L, rng.nonzero_rational());
}

inline GrassmannElement random_soul(Rng& rng, int L) {
  GrassmannElement v = random_element(rng, L);
  return v - GrassmannElement::scalar(L, v.body());
}

/// Random even supermatrix of shape (p|q) square whose diagonal blocks have
/// invertible bodies.
inline SuperMatrix random_even_invertible(Rng& rng, int p, int q, int L) {
  while (true) {
    SuperMatrix m(BlockShape{p, q, p, q}, L, MatrixParity::none);
    for (int i = 0; i < p + q; ++i)
      for (int j = 0; j < p + q; ++j) {
        bool diag = (i < p) == (j < p);
        m.set(i, j, diag ? random_homogeneous(rng, L, Parity::even)
                         : random_homogeneous(rng, L, Parity::odd));
      }
    bool ok = true;
    if (p > 0) ok = ok && !body_det(m.block_a()).is_zero();
    if (q > 0) ok = ok && !body_det(m.block_d()).is_zero();
    if (!ok) continue;
    return SuperMatrix(m.shape(), L, MatrixParity::even, m.entries());
  }
}

inline SuperMatrix random_nilpotent_even(Rng& rng, int p, int q, int L) {
  SuperMatrix m(BlockShape{p, q, p, q}, L, MatrixParity::none);
  for (int i = 0; i < p + q; ++i)
    for (int j = 0; j < p + q; ++j) {
      bool diag = (i < p) == (j < p);
      GrassmannElement v = diag ? random_homogeneous(rng, L, Parity::even)
                                : random_homogeneous(rng, L, Parity::odd);
      m.set(i, j, v - GrassmannElement::scalar(L, v.body()));
    }
  return SuperMatrix(m.shape(), L, MatrixParity::even, m.entries());
}

inline SuperLaurentSeries random_series(Rng& rng, int L, int k_min, int k_max) {
  SuperLaurentSeries s(L, k_min, k_max);
  for (int k = k_min; k <= k_max; ++k)
    s.set(k, random_element(rng, L), random_element(rng, L));
  return s;
}

/// Random superconformal NS disk change z' = a + b theta, theta' = c + d theta
/// with d a unit, a' = d^2 - c c', b = -c d; z' maps the puncture to itself.
inline DiskChange random_ns_superconformal(Rng& rng, int L, int width) {
  SuperLaurentSeries c(L, 0, width), d(L, 0, width);
  for (int k = 0; k <= width; ++k) {
    c.set(k, random_homogeneous(rng, L, Parity::odd), GrassmannElement::zero(L));
    d.set(k, random_homogeneous(rng, L, Parity::even), GrassmannElement::zero(L));
  }
  d.set(0, d.a(0) - GrassmannElement::scalar(L, d.a(0).body()) +
               GrassmannElement::scalar(L, rng.nonzero_rational(3)),
        GrassmannElement::zero(L));
  SuperLaurentSeries rate = d * d - c * c.derivative_z();
  SuperLaurentSeries a(L, 0, rate.k_max() + 1);
  for (int k = 0; k <= rate.k_max(); ++k)
    a.set(k + 1, Rational(1, k + 1) * rate.a(k), GrassmannElement::zero(L));
  SuperLaurentSeries b = -(c * d);
  DiskChange change;
  change.model = DiskModel::ns;
  int hi = std::min(a.k_max(), b.k_max());
  SuperLaurentSeries z_image(L, 0, hi);
  for (int k = 0; k <= hi; ++k)
    z_image.set(k, a.a(k), b.in_window(k) ? b.a(k) : GrassmannElement::zero(L));
  change.z_image = z_image;
  SuperLaurentSeries theta_image(L, 0, std::min(c.k_max(), d.k_max()));
  for (int k = 0; k <= theta_image.k_max(); ++k)
    theta_image.set(k, c.a(k), d.a(k));
  change.theta_image = theta_image;
  return change;
}

/// Ramond change family z = f + f g psi theta, zeta = psi + g theta with
/// g^2 = (x/f) f' - x psi psi' solved as an exact series square root.
inline RamondChangeData random_ramond_superconformal(Rng& rng, int L, int width) {
  // f = x * u with u a unit, u(0) = 1 so g(0)^2 = 1 solves with g(0) = +-1.
  SuperLaurentSeries u(L, 0, width);
  u.set(0, GrassmannElement::one(L), GrassmannElement::zero(L));
  for (int k = 1; k <= width; ++k)
    u.set(k, random_homogeneous(rng, L, Parity::even), GrassmannElement::zero(L));
  SuperLaurentSeries f = u.shifted(1);  // x * u(x)
  SuperLaurentSeries psi(L, 0, width);
  for (int k = 0; k <= width; ++k)
    psi.set(k, random_homogeneous(rng, L, Parity::odd), GrassmannElement::zero(L));
  // g^2 = f'/u - x psi psi' = 1 + (series with zero constant term)
  SuperLaurentSeries x = SuperLaurentSeries::monomial(
      L, 1, GrassmannElement::one(L), GrassmannElement::zero(L), width + 1);
  SuperLaurentSeries gsq = f.derivative_z() / u - x * psi * psi.derivative_z();
  // Square root by the binomial series: g = sum binom(1/2, m) s^m, s = gsq - 1.
  SuperLaurentSeries s = gsq - SuperLaurentSeries::constant(L, GrassmannElement::one(L),
                                                            gsq.k_max());
  SuperLaurentSeries g = SuperLaurentSeries::constant(L, GrassmannElement::one(L),
                                                      s.k_max());
  SuperLaurentSeries pow = s;
  Rational binom(1);
  for (int m = 1; m <= s.k_max() + 1; ++m) {
    binom = binom * Rational(3 - 2 * m, 2 * m);  // binom(1/2, m)/binom(1/2, m-1)
    g = g + GrassmannElement::scalar(L, binom) * pow;
    if (m <= s.k_max()) pow = pow * s;
  }
  if (rng.range(0, 1) == 0) g = -g;
  RamondChangeData data;
  data.f = f;
  data.g = g.truncated(0, width);
  data.psi = psi;
  data.lambda = (f * data.g * psi).truncated(0, width);
  data.f = f.truncated(0, width);
  return data;
}

/// Identity-aligned Ramond fixture: every pipeline matrix is a permutation
/// with Berezinian one.
inline RamondLocalData identity_ramond_fixture(int genus, int n_r, int L) {
  RamondLocalData d;
  d.genus = genus;
  d.n_r = n_r;
  d.num_generators = L;
  const int r = d.r();
  auto zero = GrassmannElement::zero(L);
  auto one = GrassmannElement::one(L);
  SuperLaurentSeries f(L, 0, 1);
  f.set(0, one, zero);
  d.t_series.assign(static_cast<std::size_t>(r), f);
  auto table = [&](int rows, int cols) {
    return ExpansionTable(static_cast<std::size_t>(rows),
                          std::vector<LocalExpansion>(
                              static_cast<std::size_t>(cols),
                              LocalExpansion{zero, zero}));
  };
  d.phi = table(genus, r);
  d.xi = table(r - 1, r);
  d.sigma = table(r, r);
  d.tau = table(r - genus, r);
  d.eta = table(r, r);
  d.psi = table(r, r);
  for (int j = 0; j < genus; ++j) d.phi[j][j].c1 = one;
  for (int j = 0; j + 1 < r; ++j) d.xi[j][j + 1].c1 = one;
  for (int j = 0; j < r; ++j) d.sigma[j][j].c1 = one;
  for (int j = 0; j + genus < r; ++j) d.tau[j][genus + j].c0 = one;
  for (int j = 0; j < r; ++j) d.eta[j][j].c0 = one;
  for (int j = 0; j < r; ++j) d.psi[j][j].c1 = one;
  return d;
}

/// Identity-aligned NS fixture; n_ns may be zero.
inline NSLocalData identity_ns_fixture(int genus, int n_ns, int L) {
  NSLocalData d;
  d.genus = genus;
  d.n_ns = n_ns;
  d.num_generators = L;
  const int pts = genus - 1;
  auto zero = GrassmannElement::zero(L);
  auto one = GrassmannElement::one(L);
  auto table = [&](int rows, int cols) {
    return ExpansionTable(static_cast<std::size_t>(rows),
                          std::vector<LocalExpansion>(
                              static_cast<std::size_t>(cols),
                              LocalExpansion{zero, zero}));
  };
  d.phi = table(pts, pts);
  d.chi = table(pts, pts);
  d.psi = table(pts - 1, pts);
  d.sigma = table(pts, pts);
  d.rho = table(pts - 1, pts);
  for (int j = 0; j < pts; ++j) d.phi[j][j].c1 = one;
  for (int j = 0; j < pts; ++j) d.chi[j][j].c0 = one;
  for (int j = 0; j + 1 < pts; ++j) d.psi[j][j].c1 = one;
  for (int j = 0; j < pts; ++j) d.sigma[j][j].c1 = one;
  for (int j = 0; j + 1 < pts; ++j) d.rho[j][j + 1].c0 = one;
  d.m3_distinguished_entry =
      (genus % 2 == 0) ? one : GrassmannElement::scalar(L, Rational(-1));
  d.alpha = table(n_ns, n_ns);
  d.beta = table(n_ns, n_ns);
  for (int j = 0; j < n_ns; ++j) d.alpha[j][j].c1 = one;
  for (int j = 0; j < n_ns; ++j) d.beta[j][j].c0 = one;
  d.tau_leading.assign(static_cast<std::size_t>(n_ns), LocalExpansion{zero, one});
  return d;
}

inline void perturb_table(Rng& rng, ExpansionTable& t, Parity c0_parity,
                          bool body_noise) {
  Parity c1_parity = c0_parity == Parity::even ? Parity::odd : Parity::even;
  for (auto& row : t)
    for (auto& e : row) {
      int L = e.c0.num_generators();
      GrassmannElement d0 = random_homogeneous(rng, L, c0_parity);
      GrassmannElement d1 = random_homogeneous(rng, L, c1_parity);
      if (!body_noise) {
        d0 = d0 - GrassmannElement::scalar(L, d0.body());
        d1 = d1 - GrassmannElement::scalar(L, d1.body());
      }
      e.c0 += d0;
      e.c1 += d1;
    }
}

/// Generic Ramond fixture built as identity plus random parity-respecting
/// noise; callers retry with another seed when a pipeline degenerates.
inline RamondLocalData random_ramond_fixture(Rng& rng, int genus, int n_r, int L) {
  RamondLocalData d = identity_ramond_fixture(genus, n_r, L);
  perturb_table(rng, d.phi, Parity::odd, true);
  perturb_table(rng, d.xi, Parity::odd, true);
  perturb_table(rng, d.sigma, Parity::odd, true);
  perturb_table(rng, d.tau, Parity::even, true);
  perturb_table(rng, d.eta, Parity::even, true);
  perturb_table(rng, d.psi, Parity::odd, true);
  for (auto& f : d.t_series) {
    f.set(0, random_even_unit(rng, L), random_homogeneous(rng, L, Parity::odd));
    f.set(1, random_homogeneous(rng, L, Parity::even),
          random_homogeneous(rng, L, Parity::odd));
  }
  return d;
}

inline NSLocalData random_ns_fixture(Rng& rng, int genus, int n_ns, int L) {
  NSLocalData d = identity_ns_fixture(genus, n_ns, L);
  perturb_table(rng, d.phi, Parity::odd, true);
  perturb_table(rng, d.chi, Parity::even, true);
  perturb_table(rng, d.psi, Parity::odd, true);
  perturb_table(rng, d.sigma, Parity::odd, true);
  perturb_table(rng, d.rho, Parity::even, true);
  perturb_table(rng, d.alpha, Parity::odd, true);
  perturb_table(rng, d.beta, Parity::even, true);
  d.m3_distinguished_entry += random_even_unit(rng, L);
  if (!d.m3_distinguished_entry.body_invertible())
    d.m3_distinguished_entry += GrassmannElement::one(L);
  return d;
}

/// Ramond fixture (g = 2, n_R = 8, three divisor points) whose tables obey
/// the residue-theorem constraints exactly: with the weighted pairing
/// P(u, v) = sum_k u_k v_k / T'(p_k) over the points {0, 1, -1}, the
/// restriction vectors of M0 and M_{-1/2} land in the kernels of the
/// residue pairings. That is what makes every left-inverse choice differ by
/// unipotent row or column operations, so the pipeline scalar cannot move.
inline RamondLocalData residue_exact_ramond_fixture(Rng& rng, int L = 2) {
  RamondLocalData d;
  d.genus = 2;
  d.n_r = 8;
  d.num_generators = L;
  const int r = d.r();  // 3
  const std::vector<Rational> points{Rational(0), Rational(1), Rational(-1)};
  // T(x) = x(x-1)(x+1): T'(p_k) = (-1, 2, 2)
  for (int k = 0; k < r; ++k) {
    Rational f0(1), f1(0);
    for (int j = 0; j < r; ++j) {
      if (j == k) continue;
      Rational dkj = points[static_cast<std::size_t>(k)] - points[static_cast<std::size_t>(j)];
      f1 = f1 * dkj + f0;
      f0 = f0 * dkj;
    }
    SuperLaurentSeries f(L, 0, 1);
    f.set(0, GrassmannElement::scalar(L, f0), GrassmannElement::zero(L));
    f.set(1, GrassmannElement::scalar(L, f1), GrassmannElement::zero(L));
    d.t_series.push_back(f);
  }
  // P-orthogonality data, hard-wired for the three points:
  //   e = (1,1,1); e-perp = span{(1,2,0), (1,0,2)}
  //   V_B = span{(1,1,0), (0,1,1)}; V_B-perp = span{(1,2,-2)}
  const std::vector<std::vector<Rational>> e_perp{{1, 2, 0}, {1, 0, 2}};
  const std::vector<std::vector<Rational>> v_b{{1, 1, 0}, {0, 1, 1}};
  const std::vector<Rational> u_b{1, 2, -2};
  auto combo_row = [&](const std::vector<std::vector<Rational>>& basis,
                       Parity parity) {
    std::vector<GrassmannElement> row(static_cast<std::size_t>(r),
                                      GrassmannElement::zero(L));
    for (const auto& vec : basis) {
      GrassmannElement coeff = random_homogeneous(rng, L, parity, 1);
      for (int k = 0; k < r; ++k)
        row[static_cast<std::size_t>(k)] += vec[static_cast<std::size_t>(k)] * coeff;
    }
    return row;
  };
  auto scaled_row = [&](const std::vector<Rational>& vec, GrassmannElement coeff) {
    std::vector<GrassmannElement> row;
    for (int k = 0; k < r; ++k) row.push_back(vec[static_cast<std::size_t>(k)] * coeff);
    return row;
  };
  auto put = [&](ExpansionTable& t, std::vector<GrassmannElement> c0,
                 std::vector<GrassmannElement> c1) {
    std::vector<LocalExpansion> row;
    for (int k = 0; k < r; ++k)
      row.push_back(LocalExpansion{c0[static_cast<std::size_t>(k)],
                                   c1[static_cast<std::size_t>(k)]});
    t.push_back(std::move(row));
  };
  std::vector<Rational> ones{1, 1, 1};
  for (int i = 0; i + 1 < r; ++i)  // xi: c0 along e, c1 in e-perp
    put(d.xi, scaled_row(ones, random_homogeneous(rng, L, Parity::odd, 1)),
        combo_row(e_perp, Parity::even));
  for (int j = 0; j < d.genus; ++j)  // phi: c0 = 0, c1 in V_B
    put(d.phi,
        std::vector<GrassmannElement>(static_cast<std::size_t>(r),
                                      GrassmannElement::zero(L)),
        combo_row(v_b, Parity::even));
  for (int i = 0; i + d.genus < r; ++i)  // tau: c0 along V_B-perp with a body
    put(d.tau, scaled_row(u_b, random_even_unit(rng, L)), [&] {
      std::vector<GrassmannElement> free_c1;
      for (int k = 0; k < r; ++k)
        free_c1.push_back(random_homogeneous(rng, L, Parity::odd, 1));
      return free_c1;
    }());
  for (int j = 0; j < r; ++j)  // sigma: c0 along V_B-perp, c1 free
    put(d.sigma, scaled_row(u_b, random_homogeneous(rng, L, Parity::odd, 1)), [&] {
      std::vector<GrassmannElement> free_c1;
      for (int k = 0; k < r; ++k)
        free_c1.push_back(random_homogeneous(rng, L, Parity::even, 1));
      return free_c1;
    }());
  auto free_table = [&](int rows, Parity c0_parity) {
    Parity c1_parity = c0_parity == Parity::even ? Parity::odd : Parity::even;
    ExpansionTable t;
    for (int i = 0; i < rows; ++i) {
      std::vector<LocalExpansion> row;
      for (int k = 0; k < r; ++k)
        row.push_back(LocalExpansion{random_homogeneous(rng, L, c0_parity, 1),
                                     random_homogeneous(rng, L, c1_parity, 1)});
      t.push_back(std::move(row));
    }
    return t;
  };
  d.eta = free_table(r, Parity::even);
  d.psi = free_table(r, Parity::odd);
  return d;
}

/// All row subsets of a tall matrix whose body minor is invertible, in
/// lexicographic order (the first one is what the lex policy picks).
inline std::vector<std::vector<int>> valid_row_subsets(const SuperMatrix& tall) {
  const int n = tall.shape().rows();
  const int k = tall.shape().cols();
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    ge_mat sub;
    for (int i : idx) sub.push_back(tall.entries()[static_cast<std::size_t>(i)]);
    if (!body_det(sub).is_zero()) out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// Rescales the fixture data at one divisor point as induced by the
/// superconformal change z -> lambda^2 z, theta -> lambda theta there.
inline RamondLocalData recoordinatize_ramond(const RamondLocalData& in, int puncture,
                                             const Rational& lambda) {
  RamondLocalData d = in;
  const int L = d.num_generators;
  auto pow = [&](int e) {
    Rational r(1);
    Rational base = e >= 0 ? lambda : lambda.inverse();
    int n = e >= 0 ? e : -e;
    for (int i = 0; i < n; ++i) r *= base;
    return GrassmannElement::scalar(L, r);
  };
  auto scale_table = [&](ExpansionTable& t, int weight) {
    for (auto& row : t) {
      row[static_cast<std::size_t>(puncture)].c0 =
          pow(-weight) * row[static_cast<std::size_t>(puncture)].c0;
      row[static_cast<std::size_t>(puncture)].c1 =
          pow(-weight - 1) * row[static_cast<std::size_t>(puncture)].c1;
    }
  };
  scale_table(d.phi, 1);
  scale_table(d.xi, 0);
  scale_table(d.sigma, -1);
  scale_table(d.tau, -1);
  scale_table(d.eta, -2);
  scale_table(d.psi, -2);
  SuperLaurentSeries& f = d.t_series[static_cast<std::size_t>(puncture)];
  SuperLaurentSeries nf(L, f.k_min(), f.k_max());
  for (int m = f.k_min(); m <= f.k_max(); ++m)
    nf.set(m, pow(-2 * m - 1) * f.a(m), pow(-2 * m - 2) * f.b(m));
  f = nf;
  return d;
}

}  // namespace smf::testing

#endif
