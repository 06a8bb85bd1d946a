#include "smf/json_io.hpp"

#include <sstream>

#include "smf/errors.hpp"

namespace smf {

namespace {

std::string mask_to_key(std::uint32_t mask) {
  std::string key;
  for (int i = 0; i < 32; ++i) {
    if (!(mask & (1u << i))) continue;
    if (!key.empty()) key += ' ';
    key += std::to_string(i + 1);
  }
  return key;
}

std::uint32_t key_to_mask(const std::string& key, int L) {
  std::uint32_t mask = 0;
  std::istringstream in(key);
  int id;
  int last = 0;
  while (in >> id) {
    if (id < 1 || id > L) throw parse_error("generator id outside 1..L: " + key);
    if (id <= last) throw parse_error("generator ids must be strictly increasing");
    last = id;
    mask |= 1u << (id - 1);
  }
  if (!in.eof()) throw parse_error("malformed generator key: " + key);
  return mask;
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw parse_error(std::string("missing field '") + field + "'");
  return *it;
}

int require_int(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number_integer()) throw parse_error(std::string(field) + " must be an integer");
  return v.get<int>();
}

LocalExpansion expansion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw parse_error("expansion entry must be a [c0, c1] pair");
  return LocalExpansion{grassmann_from_json(j[0]), grassmann_from_json(j[1])};
}

json to_json(const LocalExpansion& e) {
  return json::array({to_json(e.c0), to_json(e.c1)});
}

ExpansionTable table_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw parse_error(std::string(name) + " must be an array");
  ExpansionTable t;
  for (const auto& row : j) {
    if (!row.is_array()) throw parse_error(std::string(name) + " rows must be arrays");
    std::vector<LocalExpansion> r;
    for (const auto& e : row) r.push_back(expansion_from_json(e));
    t.push_back(std::move(r));
  }
  return t;
}

json table_to_json(const ExpansionTable& t) {
  json rows = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw parse_error("rational must be a string like \"p/q\"");
  return Rational::from_string(j.get<std::string>());
}

json to_json(const GrassmannElement& v) {
  json terms = json::object();
  for (const auto& [mask, c] : v.terms()) terms[mask_to_key(mask)] = c.to_string();
  return json{{"L", v.num_generators()}, {"terms", std::move(terms)}};
}

GrassmannElement grassmann_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("Grassmann element must be an object");
  int L = require_int(j, "L");
  if (L < 0 || L > 32) throw parse_error("L must be in 0..32");
  GrassmannElement v(L);
  auto it = j.find("terms");
  if (it == j.end()) return v;
  if (!it->is_object()) throw parse_error("terms must be an object");
  for (const auto& [key, val] : it->items()) {
    Rational c = rational_from_json(val);
    v += GrassmannElement::monomial(L, key_to_mask(key, L), c);
  }
  return v;
}

json to_json(const SuperMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.shape().rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.shape().cols(); ++j) row.push_back(to_json(m.at(i, j)));
    entries.push_back(std::move(row));
  }
  const char* parity = "none";
  if (m.declared_parity() == MatrixParity::even) parity = "even";
  if (m.declared_parity() == MatrixParity::odd) parity = "odd";
  return json{{"shape",
               {{"rows", {m.shape().p, m.shape().q}},
                {"cols", {m.shape().r, m.shape().s}}}},
              {"parity", parity},
              {"entries", std::move(entries)}};
}

SuperMatrix supermatrix_from_json(const json& j) {
  const json& shape = require(j, "shape");
  const json& rows = require(shape, "rows");
  const json& cols = require(shape, "cols");
  if (!rows.is_array() || rows.size() != 2 || !cols.is_array() || cols.size() != 2)
    throw parse_error("shape must give [p, q] rows and [r, s] cols");
  BlockShape s{rows[0].get<int>(), rows[1].get<int>(), cols[0].get<int>(),
               cols[1].get<int>()};
  if (s.p < 0 || s.q < 0 || s.r < 0 || s.s < 0)
    throw parse_error("negative block sizes");
  MatrixParity parity = MatrixParity::none;
  if (j.contains("parity")) {
    std::string p = j["parity"].get<std::string>();
    if (p == "even")
      parity = MatrixParity::even;
    else if (p == "odd")
      parity = MatrixParity::odd;
    else if (p != "none")
      throw parse_error("parity must be even, odd or none");
  }
  const json& entries = require(j, "entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != s.rows())
    throw parse_error("entry grid does not match the declared shape");
  ge_mat e;
  int L = -1;
  for (const auto& row : entries) {
    if (!row.is_array() || static_cast<int>(row.size()) != s.cols())
      throw parse_error("entry grid does not match the declared shape");
    std::vector<GrassmannElement> r;
    for (const auto& v : row) {
      r.push_back(grassmann_from_json(v));
      if (L < 0) L = r.back().num_generators();
    }
    e.push_back(std::move(r));
  }
  if (L < 0) L = 0;
  return SuperMatrix(s, L, parity, std::move(e));
}

json to_json(const PolySuperFunction& f) {
  json terms = json::object();
  for (const auto& [key, c] : f.terms()) {
    std::string k;
    for (int i = 0; i < f.even_vars(); ++i) {
      if (i) k += ' ';
      k += std::to_string(key.first[static_cast<std::size_t>(i)]);
    }
    k += '|';
    k += mask_to_key(key.second);
    terms[k] = c.to_string();
  }
  return json{{"m", f.even_vars()}, {"n", f.odd_vars()}, {"terms", std::move(terms)}};
}

PolySuperFunction polysuper_from_json(const json& j) {
  int m = require_int(j, "m");
  int n = require_int(j, "n");
  if (m < 0 || n < 0 || n > 32) throw parse_error("bad superfunction dimensions");
  PolySuperFunction f(m, n);
  auto it = j.find("terms");
  if (it == j.end()) return f;
  for (const auto& [key, val] : it->items()) {
    std::string exps = key;
    std::string odd;
    std::size_t bar = key.find('|');
    if (bar != std::string::npos) {
      exps = key.substr(0, bar);
      odd = key.substr(bar + 1);
    }
    std::vector<int> e;
    std::istringstream in(exps);
    int x;
    while (in >> x) {
      if (x < 0) throw parse_error("negative exponent");
      e.push_back(x);
    }
    if (static_cast<int>(e.size()) != m)
      throw parse_error("exponent vector length must equal m: " + key);
    f.set_term(std::move(e), key_to_mask(odd, n), rational_from_json(val));
  }
  return f;
}

json to_json(const Box& b) {
  json out = json::array();
  for (const auto& [lo, hi] : b)
    out.push_back(json::array({lo.to_string(), hi.to_string()}));
  return out;
}

Box box_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("box must be an array of intervals");
  Box b;
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2)
      throw parse_error("box interval must be [lo, hi]");
    b.emplace_back(rational_from_json(iv[0]), rational_from_json(iv[1]));
  }
  return b;
}

json to_json(const SuperLaurentSeries& s) {
  json coeffs = json::object();
  for (int k = s.k_min(); k <= s.k_max(); ++k)
    coeffs[std::to_string(k)] = json::array({to_json(s.a(k)), to_json(s.b(k))});
  return json{{"L", s.num_generators()},
              {"k_min", s.k_min()},
              {"k_max", s.k_max()},
              {"coeffs", std::move(coeffs)}};
}

SuperLaurentSeries series_from_json(const json& j) {
  int kmin = require_int(j, "k_min");
  int kmax = require_int(j, "k_max");
  if (kmin > kmax) throw parse_error("series with k_min > k_max");
  int L = -1;
  if (j.contains("L")) L = j["L"].get<int>();
  const json& coeffs = require(j, "coeffs");
  if (!coeffs.is_object()) throw parse_error("coeffs must be an object");
  if (L < 0) {
    for (const auto& [key, val] : coeffs.items()) {
      (void)key;
      if (val.is_array() && !val.empty()) {
        L = require_int(val[0], "L");
        break;
      }
    }
  }
  if (L < 0) throw parse_error("series needs an L field or a coefficient");
  SuperLaurentSeries s(L, kmin, kmax);
  for (const auto& [key, val] : coeffs.items()) {
    int k;
    try {
      k = std::stoi(key);
    } catch (...) {
      throw parse_error("coefficient key must be an integer: " + key);
    }
    if (k < kmin || k > kmax)
      throw parse_error("coefficient key outside the window: " + key);
    if (!val.is_array() || val.size() != 2)
      throw parse_error("coefficient must be an [a, b] pair");
    s.set(k, grassmann_from_json(val[0]), grassmann_from_json(val[1]));
  }
  return s;
}

json to_json(const DiskChange& c) {
  return json{{"model", c.model == DiskModel::ns ? "NS" : "Ramond"},
              {"z_image", to_json(c.z_image)},
              {"theta_image", to_json(c.theta_image)}};
}

DiskChange disk_change_from_json(const json& j) {
  DiskChange c;
  std::string model = require(j, "model").get<std::string>();
  if (model == "NS")
    c.model = DiskModel::ns;
  else if (model == "Ramond")
    c.model = DiskModel::ramond;
  else
    throw parse_error("model must be NS or Ramond");
  c.z_image = series_from_json(require(j, "z_image"));
  c.theta_image = series_from_json(require(j, "theta_image"));
  validate_disk_change(c);
  return c;
}

json to_json(const BerSection& s) {
  return json{{"weight", s.weight}, {"series", to_json(s.f)}};
}

BerSection section_from_json(const json& j) {
  return BerSection{require_int(j, "weight"), series_from_json(require(j, "series"))};
}

RamondChangeData ramond_change_from_json(const json& j) {
  RamondChangeData d;
  d.f = series_from_json(require(j, "f"));
  d.g = series_from_json(require(j, "g"));
  d.lambda = series_from_json(require(j, "lambda"));
  d.psi = series_from_json(require(j, "psi"));
  return d;
}

json to_json(const RamondAuditReport& r) {
  return json{{"superconformal", r.superconformal},
              {"sc_residual", to_json(r.sc_residual)},
              {"lambda_identity", r.lambda_identity},
              {"g_squared_identity", r.g_squared_identity},
              {"g0_squared_one", r.g0_squared_one},
              {"lambda_prime_psi_zero", r.lambda_prime_psi_zero},
              {"change_matrix", to_json(r.change_matrix)},
              {"ber_A", to_json(r.ber_a)},
              {"ber_A_one", r.ber_a_one},
              {"pass", r.pass()}};
}

RamondLocalData ramond_data_from_json(const json& j) {
  RamondLocalData d;
  d.genus = require_int(j, "genus");
  d.n_r = require_int(j, "n_r");
  d.num_generators = require_int(j, "L");
  const json& ts = require(j, "t_series");
  if (!ts.is_array()) throw parse_error("t_series must be an array");
  for (const auto& s : ts) d.t_series.push_back(series_from_json(s));
  d.phi = table_from_json(require(j, "phi"), "phi");
  d.xi = table_from_json(require(j, "xi"), "xi");
  d.sigma = table_from_json(require(j, "sigma"), "sigma");
  d.tau = table_from_json(require(j, "tau"), "tau");
  d.eta = table_from_json(require(j, "eta"), "eta");
  d.psi = table_from_json(require(j, "psi"), "psi");
  validate_ramond_data(d);
  return d;
}

json to_json(const RamondLocalData& d) {
  json ts = json::array();
  for (const auto& s : d.t_series) ts.push_back(to_json(s));
  return json{{"genus", d.genus},     {"n_r", d.n_r},
              {"L", d.num_generators}, {"t_series", std::move(ts)},
              {"phi", table_to_json(d.phi)},   {"xi", table_to_json(d.xi)},
              {"sigma", table_to_json(d.sigma)}, {"tau", table_to_json(d.tau)},
              {"eta", table_to_json(d.eta)},   {"psi", table_to_json(d.psi)}};
}

NSLocalData ns_data_from_json(const json& j) {
  NSLocalData d;
  d.genus = require_int(j, "genus");
  d.num_generators = require_int(j, "L");
  d.n_ns = j.contains("n_ns") ? require_int(j, "n_ns") : 0;
  d.phi = table_from_json(require(j, "phi"), "phi");
  d.chi = table_from_json(require(j, "chi"), "chi");
  d.psi = table_from_json(require(j, "psi"), "psi");
  d.sigma = table_from_json(require(j, "sigma"), "sigma");
  d.rho = table_from_json(require(j, "rho"), "rho");
  if (j.contains("xi"))
    for (const auto& e : j["xi"]) d.xi.push_back(expansion_from_json(e));
  d.m3_distinguished_entry = grassmann_from_json(require(j, "m3_distinguished_entry"));
  if (j.contains("alpha")) d.alpha = table_from_json(j["alpha"], "alpha");
  if (j.contains("beta")) d.beta = table_from_json(j["beta"], "beta");
  if (j.contains("tau_leading"))
    for (const auto& e : j["tau_leading"]) d.tau_leading.push_back(expansion_from_json(e));
  validate_ns_data(d);
  return d;
}

json to_json(const NSLocalData& d) {
  json xi = json::array();
  for (const auto& e : d.xi) xi.push_back(to_json(e));
  json tau = json::array();
  for (const auto& e : d.tau_leading) tau.push_back(to_json(e));
  return json{{"genus", d.genus},
              {"L", d.num_generators},
              {"n_ns", d.n_ns},
              {"phi", table_to_json(d.phi)},
              {"chi", table_to_json(d.chi)},
              {"psi", table_to_json(d.psi)},
              {"sigma", table_to_json(d.sigma)},
              {"rho", table_to_json(d.rho)},
              {"xi", std::move(xi)},
              {"m3_distinguished_entry", to_json(d.m3_distinguished_entry)},
              {"alpha", table_to_json(d.alpha)},
              {"beta", table_to_json(d.beta)},
              {"tau_leading", std::move(tau)}};
}

json to_json(const MumfordResult& r) {
  json bers = json::object();
  for (const auto& [name, v] : r.berezinians) bers[name] = to_json(v);
  return json{{"scalar", to_json(r.scalar)},
              {"generator", r.generator_label},
              {"ber", std::move(bers)},
              {"input_digest", r.input_digest}};
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace smf
