#include "smf/mumford.hpp"

#include <algorithm>

#include "smf/errors.hpp"
#include "smf/susydisk.hpp"

namespace smf {

namespace {

// FNV-1a over a running string; enough to fingerprint fixture tables.
struct Digest {
  std::uint64_t h = 1469598103934665603ull;
  void feed(const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    feed_byte(0x1f);
  }
  void feed_byte(unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = h;
    for (int i = 15; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = digits[v & 0xf];
      v >>= 4;
    }
    return out;
  }
};

void feed_element(Digest& d, const GrassmannElement& v) {
  for (const auto& [mask, c] : v.terms()) {
    d.feed(std::to_string(mask));
    d.feed(c.to_string());
  }
  d.feed_byte(0x1e);
}

void feed_table(Digest& d, const ExpansionTable& t) {
  for (const auto& row : t) {
    for (const auto& e : row) {
      feed_element(d, e.c0);
      feed_element(d, e.c1);
    }
    d.feed_byte(0x1d);
  }
  d.feed_byte(0x1c);
}

void feed_series(Digest& d, const SuperLaurentSeries& s) {
  d.feed(std::to_string(s.k_min()));
  d.feed(std::to_string(s.k_max()));
  for (int k = s.k_min(); k <= s.k_max(); ++k) {
    feed_element(d, s.a(k));
    feed_element(d, s.b(k));
  }
  d.feed_byte(0x1c);
}

void check_table(const ExpansionTable& t, std::size_t rows, std::size_t cols,
                 Parity c0_parity, const char* name) {
  if (t.size() != rows)
    throw invalid_operand_error(std::string(name) + " table has wrong row count");
  Parity c1_parity = c0_parity == Parity::even ? Parity::odd : Parity::even;
  for (const auto& row : t) {
    if (row.size() != cols)
      throw invalid_operand_error(std::string(name) +
                                  " table has wrong puncture count");
    for (const auto& e : row) {
      if (!e.c0.is_homogeneous(c0_parity) || !e.c1.is_homogeneous(c1_parity))
        throw invalid_operand_error(std::string(name) +
                                    " table entry violates the parity tags");
    }
  }
}

// Residue of (c0 + c1 theta + O(z)) / (z f) at the puncture, by series
// division; f is the local factor of the vanishing section.
GrassmannElement pair_residue(const LocalExpansion& e,
                              const SuperLaurentSeries& f, bool times_theta) {
  const int L = f.num_generators();
  SuperLaurentSeries h(L, 0, 0);
  if (times_theta) {
    // (c0 + c1 theta) theta = c0 theta
    h.set(0, GrassmannElement::zero(L), e.c0);
  } else {
    h.set(0, e.c0, e.c1);
  }
  SuperLaurentSeries t_local = f.shifted(1);  // z f
  return residue(BerSection{1, h / t_local});
}

std::vector<int> first_valid_subset(const SuperMatrix& m) {
  const int n = m.shape().rows();
  const int k = m.shape().cols();
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  auto body_ok = [&](const std::vector<int>& rows) {
    ge_mat sub(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) sub[static_cast<std::size_t>(i)] = m.entries()[rows[static_cast<std::size_t>(i)]];
    return !body_det(sub).is_zero();
  };
  while (true) {
    if (body_ok(idx)) return idx;
    // next k-combination of 0..n-1 in lexicographic order
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) throw no_invertible_minor_error("no row subset has an invertible body minor");
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

SuperMatrix left_inverse(const SuperMatrix& m, const std::vector<int>& given_rows,
                         std::vector<int>* rows_used) {
  const int n = m.shape().rows();
  const int k = m.shape().cols();
  if (n < k) throw invalid_shape_error("left inverse needs a tall matrix");
  std::vector<int> rows;
  if (given_rows.empty()) {
    rows = first_valid_subset(m);
  } else {
    rows = given_rows;
    std::sort(rows.begin(), rows.end());
    if (static_cast<int>(rows.size()) != k)
      throw no_invertible_minor_error("row subset size must match column count");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] < 0 || rows[i] >= n)
        throw no_invertible_minor_error("row index out of range");
      if (i > 0 && rows[i] == rows[i - 1])
        throw no_invertible_minor_error("duplicate row index");
    }
  }
  ge_mat minor(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    minor[static_cast<std::size_t>(i)] = m.entries()[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
  if (body_det(minor).is_zero())
    throw no_invertible_minor_error("selected rows have a singular body minor");
  ge_mat inv = even_mat_inverse(minor, m.num_generators());
  // Scatter the inverse into the selected columns; zero elsewhere.
  BlockShape shape{m.shape().r, m.shape().s, m.shape().p, m.shape().q};
  SuperMatrix a(shape, m.num_generators(), MatrixParity::none);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      a.set(i, rows[static_cast<std::size_t>(j)], inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  if (rows_used) *rows_used = rows;
  return a;
}

void validate_ramond_data(const RamondLocalData& d) {
  if (d.genus < 2) throw precondition_violated_error("Ramond data needs genus >= 2");
  if (d.n_r % 2 != 0) throw odd_ramond_count_error("n_R must be even");
  if (d.n_r <= 6 * d.genus - 6)
    throw precondition_violated_error("Ramond data needs n_R > 6g - 6");
  const std::size_t r = static_cast<std::size_t>(d.r());
  const std::size_t g = static_cast<std::size_t>(d.genus);
  if (d.t_series.size() != r)
    throw invalid_operand_error("one local series per divisor point required");
  for (const auto& f : d.t_series) {
    if (f.num_generators() != d.num_generators)
      throw invalid_operand_error("t_series with mismatched L");
    if (f.k_min() > 0 || f.k_max() < 1)
      throw insufficient_precision_error("t_series window must cover [0, 1]");
    if (!f.is_even_function())
      throw invalid_operand_error("t_series must be an even superfunction");
    if (!f.a(0).body_invertible())
      throw invalid_operand_error("t_series leading coefficient must be a unit");
  }
  check_table(d.phi, g, r, Parity::odd, "phi");
  check_table(d.xi, r - 1, r, Parity::odd, "xi");
  check_table(d.sigma, r, r, Parity::odd, "sigma");
  check_table(d.tau, r - g, r, Parity::even, "tau");
  check_table(d.eta, r, r, Parity::even, "eta");
  check_table(d.psi, r, r, Parity::odd, "psi");
}

RamondMatrices::RamondMatrices(int L, int r, int g)
    : a_prime(BlockShape{r, r, 1, r - 1}, L, MatrixParity::none),
      b_prime(BlockShape{r, r, g, 0}, L, MatrixParity::none),
      a_left(BlockShape{1, r - 1, r, r}, L, MatrixParity::none),
      b_left(BlockShape{g, 0, r, r}, L, MatrixParity::none),
      m0(BlockShape{r, r, r, r}, L, MatrixParity::even),
      m_minus_half(BlockShape{r, r, r, r}, L, MatrixParity::even),
      m_minus_one(BlockShape{r, r, r, r}, L, MatrixParity::even) {}

RamondMatrices build_ramond_matrices(const RamondLocalData& d,
                                     const LeftInversePolicy& policy) {
  validate_ramond_data(d);
  const int L = d.num_generators;
  const int r = d.r();
  const int g = d.genus;
  RamondMatrices out(L, r, g);

  const LocalExpansion one_exp{GrassmannElement::one(L), GrassmannElement::zero(L)};
  for (int k = 0; k < r; ++k) {
    const SuperLaurentSeries& f = d.t_series[static_cast<std::size_t>(k)];
    out.a_prime.set(k, 0, pair_residue(one_exp, f, false));
    out.a_prime.set(r + k, 0, pair_residue(one_exp, f, true));
    for (int j = 0; j + 1 < r; ++j) {
      const LocalExpansion& xi = d.xi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.a_prime.set(k, 1 + j, pair_residue(xi, f, false));
      out.a_prime.set(r + k, 1 + j, pair_residue(xi, f, true));
    }
    for (int j = 0; j < g; ++j) {
      const LocalExpansion& phi = d.phi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.b_prime.set(k, j, pair_residue(phi, f, false));
      out.b_prime.set(r + k, j, pair_residue(phi, f, true));
    }
  }
  out.a_left = left_inverse(out.a_prime, policy.rows_a, &out.rows_a);
  out.b_left = left_inverse(out.b_prime, policy.rows_b, &out.rows_b);

  // M0 columns: [1|_T, lifted xi duals, xi restrictions, lifted 1 dual].
  for (int k = 0; k < r; ++k) out.m0.set(k, 0, GrassmannElement::one(L));
  for (int i = 0; i < 2 * r; ++i) {
    for (int j = 1; j < r; ++j) out.m0.set(i, j, out.a_left.at(j, i));
    out.m0.set(i, 2 * r - 1, out.a_left.at(0, i));
  }
  for (int k = 0; k < r; ++k)
    for (int j = 0; j + 1 < r; ++j) {
      const LocalExpansion& xi = d.xi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m0.set(k, r + j, xi.c0);
      out.m0.set(r + k, r + j, xi.c1);
    }

  // M_{-1/2} rows: [tau sections, lifted phi duals, sigma sections], columns
  // split into the plain and theta coordinate halves.
  for (int i = 0; i + g < r; ++i)
    for (int k = 0; k < r; ++k) {
      const LocalExpansion& tau = d.tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      out.m_minus_half.set(i, k, tau.c0);
      out.m_minus_half.set(i, r + k, tau.c1);
    }
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < 2 * r; ++k)
      out.m_minus_half.set(r - g + i, k, out.b_left.at(i, k));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      const LocalExpansion& sig = d.sigma[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m_minus_half.set(r + j, k, sig.c0);
      out.m_minus_half.set(r + j, r + k, sig.c1);
    }

  // M_{-1} rows: [eta sections, psi sections].
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      const LocalExpansion& eta = d.eta[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      const LocalExpansion& psi = d.psi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m_minus_one.set(j, k, eta.c0);
      out.m_minus_one.set(j, r + k, eta.c1);
      out.m_minus_one.set(r + j, k, psi.c0);
      out.m_minus_one.set(r + j, r + k, psi.c1);
    }
  return out;
}

std::string ramond_data_digest(const RamondLocalData& d) {
  Digest dig;
  dig.feed("ramond");
  dig.feed(std::to_string(d.genus));
  dig.feed(std::to_string(d.n_r));
  dig.feed(std::to_string(d.num_generators));
  for (const auto& s : d.t_series) feed_series(dig, s);
  for (const auto* t : {&d.phi, &d.xi, &d.sigma, &d.tau, &d.eta, &d.psi})
    feed_table(dig, *t);
  return dig.hex();
}

namespace {
// With both factorization routes enforced, a Berezinian that exists is
// automatically body-invertible; a failing block therefore means the
// configuration is degenerate for the pipeline.
GrassmannElement pipeline_ber(const SuperMatrix& m, const char* name) {
  try {
    return m.berezinian(BerRoute::both);
  } catch (const non_invertible_block_error& e) {
    throw degenerate_configuration_error(std::string("Ber ") + name +
                                         " is undefined: " + e.what());
  }
}
}  // namespace

MumfordResult mumford_ramond(const RamondLocalData& d,
                             const LeftInversePolicy& policy) {
  RamondMatrices m = build_ramond_matrices(d, policy);
  GrassmannElement ber0 = pipeline_ber(m.m0, "M0");
  GrassmannElement ber_half = pipeline_ber(m.m_minus_half, "M-1/2");
  GrassmannElement ber_one = pipeline_ber(m.m_minus_one, "M-1");
  if (!ber_half.body_invertible())
    throw degenerate_configuration_error("Ber M_{-1/2} has zero body");
  if (!ber_one.body_invertible())
    throw degenerate_configuration_error("Ber M_{-1} has zero body");
  MumfordResult res;
  res.scalar = ber0 * ber0 * ber_one.inverse() * ber_half.inverse();
  res.generator_label = "d_{-1} d_{1/2}^{-5}";
  res.berezinians = {{"M0", ber0}, {"M-1/2", ber_half}, {"M-1", ber_one}};
  res.input_digest = ramond_data_digest(d);
  return res;
}

void validate_ns_data(const NSLocalData& d) {
  if (d.genus < 2) throw precondition_violated_error("NS data needs genus >= 2");
  if (d.n_ns < 0) throw precondition_violated_error("negative puncture count");
  const std::size_t pts = static_cast<std::size_t>(d.genus - 1);
  const std::size_t n = static_cast<std::size_t>(d.n_ns);
  check_table(d.phi, pts, pts, Parity::odd, "phi");
  check_table(d.chi, pts, pts, Parity::even, "chi");
  check_table(d.psi, pts - 1, pts, Parity::odd, "psi");
  check_table(d.sigma, pts, pts, Parity::odd, "sigma");
  check_table(d.rho, pts - 1, pts, Parity::even, "rho");
  if (!d.xi.empty() && d.xi.size() != pts)
    throw invalid_operand_error("xi data must cover every divisor point");
  for (const auto& e : d.xi)
    if (!e.c0.is_homogeneous(Parity::odd) || !e.c1.is_homogeneous(Parity::even))
      throw invalid_operand_error("xi entry violates the parity tags");
  if (!d.m3_distinguished_entry.is_homogeneous(Parity::even))
    throw invalid_operand_error("the distinguished M3 entry must be even");
  check_table(d.alpha, n, n, Parity::odd, "alpha");
  check_table(d.beta, n, n, Parity::even, "beta");
  if (d.n_ns > 0 && d.tau_leading.size() != n)
    throw invalid_operand_error("tau leading data must cover every puncture");
  for (const auto& e : d.tau_leading)
    if (!e.c0.is_homogeneous(Parity::odd) || !e.c1.is_homogeneous(Parity::even))
      throw invalid_operand_error("tau leading data violates the parity tags");
}

NSMatrices::NSMatrices(int L, int g, int n_ns)
    : a1(BlockShape{g - 1, 0, g - 1, g - 1}, L, MatrixParity::none),
      b1t(BlockShape{g - 1, 0, g - 1, g - 1}, L, MatrixParity::none),
      m1(BlockShape{g - 1, g - 1, g - 1, g - 1}, L, MatrixParity::even),
      m2(BlockShape{g - 1, g - 1, g - 1, g - 1}, L, MatrixParity::even),
      m3(BlockShape{g - 1, g - 1, g - 1, g - 1}, L, MatrixParity::even),
      m_prime(BlockShape{n_ns, n_ns, n_ns, n_ns}, L, MatrixParity::even) {}

NSMatrices build_ns_matrices(const NSLocalData& d, const LeftInversePolicy& policy) {
  validate_ns_data(d);
  const int L = d.num_generators;
  const int g = d.genus;
  const int pts = g - 1;
  NSMatrices out(L, g, d.n_ns);

  // A1 as displayed: row j = [phi_j plain slots | phi_j theta slots].
  for (int j = 0; j < pts; ++j)
    for (int k = 0; k < pts; ++k) {
      const LocalExpansion& e = d.phi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.a1.set(j, k, e.c0);
      out.a1.set(j, pts + k, e.c1);
    }
  // Left inverse of A1^t (a plain entry transpose; only the body pattern
  // matters for row selection and the product contract fixes the values).
  SuperMatrix a1t(BlockShape{pts, pts, pts, 0}, L, MatrixParity::none);
  for (int j = 0; j < pts; ++j)
    for (int k = 0; k < 2 * pts; ++k) a1t.set(k, j, out.a1.at(j, k));
  out.b1t = left_inverse(a1t, policy.rows_a, &out.rows);

  // M1 rows are the plain/theta coordinate halves; columns are the lifted
  // duals followed by the phi restrictions.
  for (int k = 0; k < pts; ++k)
    for (int i = 0; i < pts; ++i) {
      out.m1.set(k, i, out.b1t.at(i, pts + k));
      out.m1.set(pts + k, i, out.b1t.at(i, k));
      out.m1.set(k, pts + i, d.phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].c0);
      out.m1.set(pts + k, pts + i, d.phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].c1);
    }

  // M2 columns: [chi sections | psi sections, distinguished lift].
  for (int k = 0; k < pts; ++k) {
    for (int j = 0; j < pts; ++j) {
      const LocalExpansion& e = d.chi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m2.set(k, j, e.c0);
      out.m2.set(pts + k, j, e.c1);
    }
    for (int j = 0; j + 1 < pts; ++j) {
      const LocalExpansion& e = d.psi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m2.set(k, pts + j, e.c0);
      out.m2.set(pts + k, pts + j, e.c1);
    }
  }
  out.m2.set(2 * pts - 1, 2 * pts - 1, GrassmannElement::one(L));

  // M3 columns: [rho sections, distinguished lift | sigma sections].
  for (int k = 0; k < pts; ++k) {
    for (int j = 0; j + 1 < pts; ++j) {
      const LocalExpansion& e = d.rho[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m3.set(k, j, e.c0);
      out.m3.set(pts + k, j, e.c1);
    }
    for (int j = 0; j < pts; ++j) {
      const LocalExpansion& e = d.sigma[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m3.set(k, pts + j, e.c0);
      out.m3.set(pts + k, pts + j, e.c1);
    }
  }
  out.m3.set(0, pts - 1, d.m3_distinguished_entry);

  // M' columns: [alpha | beta]; rows are the theta/plain coordinate halves.
  const int n = d.n_ns;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const LocalExpansion& a = d.alpha[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      const LocalExpansion& b = d.beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out.m_prime.set(k, j, a.c1);
      out.m_prime.set(n + k, j, a.c0);
      out.m_prime.set(k, n + j, b.c1);
      out.m_prime.set(n + k, n + j, b.c0);
    }
  return out;
}

std::string ns_data_digest(const NSLocalData& d) {
  Digest dig;
  dig.feed("ns");
  dig.feed(std::to_string(d.genus));
  dig.feed(std::to_string(d.num_generators));
  dig.feed(std::to_string(d.n_ns));
  for (const auto* t : {&d.phi, &d.chi, &d.psi, &d.sigma, &d.rho, &d.alpha, &d.beta})
    feed_table(dig, *t);
  for (const auto& e : d.xi) {
    feed_element(dig, e.c0);
    feed_element(dig, e.c1);
  }
  feed_element(dig, d.m3_distinguished_entry);
  for (const auto& e : d.tau_leading) {
    feed_element(dig, e.c0);
    feed_element(dig, e.c1);
  }
  return dig.hex();
}

MumfordResult mumford_ns(const NSLocalData& d, const LeftInversePolicy& policy) {
  NSMatrices m = build_ns_matrices(d, policy);
  GrassmannElement ber1 = pipeline_ber(m.m1, "M1");
  GrassmannElement ber2 = pipeline_ber(m.m2, "M2");
  GrassmannElement ber3 = pipeline_ber(m.m3, "M3");
  if (!ber1.body_invertible())
    throw degenerate_configuration_error("Ber M1 has zero body");
  GrassmannElement ber1_inv = ber1.inverse();
  MumfordResult res;
  res.scalar = ber3 * ber2 * ber1_inv * ber1_inv;
  res.generator_label = "d_{3/2} d_{1/2}^{-5}";
  res.berezinians = {{"M1", ber1}, {"M2", ber2}, {"M3", ber3}};
  res.input_digest = ns_data_digest(d);
  return res;
}

MumfordResult mumford_ns_punctured(const NSLocalData& d,
                                   const LeftInversePolicy& policy) {
  if (d.n_ns < 1)
    throw no_punctures_error("punctured pipeline needs at least one NS puncture");
  NSMatrices m = build_ns_matrices(d, policy);
  GrassmannElement ber1 = pipeline_ber(m.m1, "M1");
  GrassmannElement ber2 = pipeline_ber(m.m2, "M2");
  GrassmannElement ber3 = pipeline_ber(m.m3, "M3");
  GrassmannElement ber_p = pipeline_ber(m.m_prime, "M'");
  if (!ber1.body_invertible())
    throw degenerate_configuration_error("Ber M1 has zero body");
  if (!ber_p.body_invertible())
    throw degenerate_configuration_error("Ber M' has zero body");
  GrassmannElement ber1_inv = ber1.inverse();
  MumfordResult res;
  res.scalar = ber3 * ber2 * ber1_inv * ber1_inv * ber_p.inverse();
  res.generator_label = "d^N_{3/2} (delta^N_{3/2})^{-1} d_{1/2}^{-5}";
  res.berezinians = {
      {"M1", ber1}, {"M2", ber2}, {"M3", ber3}, {"M'", ber_p}};
  res.input_digest = ns_data_digest(d);
  return res;
}

}  // namespace smf

