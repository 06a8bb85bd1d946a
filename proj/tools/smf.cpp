// smf: command-line front end for the exact supercommutative algebra kernel.
// Every verb reads JSON, runs one library operation and prints the result as
// JSON (or a flat text rendering). Exit codes: 0 success, 1 bad input or
// parse failure, 2 typed kernel error (reported as machine-readable JSON).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "smf/errors.hpp"
#include "smf/json_io.hpp"
#include "smf/ranks.hpp"

namespace {

using smf::json;

json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw smf::parse_error("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw smf::parse_error(std::string("invalid JSON: ") + e.what());
  }
  return j;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const json& j, const std::string& mode) {
  if (mode == "json") {
    std::cout << smf::canonical_dump(j);
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows)
    std::cout << k << std::string(width - k.size(), ' ') << " = " << v << "\n";
}

smf::LeftInversePolicy parse_left_inverse(const std::string& flag) {
  smf::LeftInversePolicy policy;
  if (flag.empty() || flag == "lex") return policy;
  if (flag.rfind("rows=", 0) != 0)
    throw smf::parse_error("--left-inverse expects 'lex' or 'rows=...'");
  std::string body = flag.substr(5);
  std::string first = body, second;
  std::size_t semi = body.find(':');
  if (semi != std::string::npos) {
    first = body.substr(0, semi);
    second = body.substr(semi + 1);
  }
  auto parse_list = [](const std::string& s) {
    std::vector<int> rows;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      int v = std::stoi(tok);
      if (v < 1) throw smf::parse_error("row indices are 1-based");
      rows.push_back(v - 1);
    }
    return rows;
  };
  policy.rows_a = parse_list(first);
  policy.rows_b = parse_list(second);
  return policy;
}

smf::SuperLaurentSeries maybe_truncate(const smf::SuperLaurentSeries& s,
                                       int precision) {
  if (precision < 0 || s.k_max() <= precision) return s;
  return s.truncated(s.k_min(), precision);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact supercommutative algebra and super Mumford form kernel"};
  app.require_subcommand(1);

  std::string input_path;
  std::string output_mode = "json";
  std::string route = "both";
  std::string left_inverse_flag = "lex";
  int precision = -1;
  long long arg_g = 2, arg_nr = 0, arg_nns = 0;
  int arg_i = 0, arg_j = 0;

  auto add_io = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input)
      cmd->add_option("-i,--input", input_path, "input JSON file")->required();
    cmd->add_option("--output", output_mode, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* ber = app.add_subcommand("ber", "Berezinian of an even supermatrix");
  add_io(ber);
  ber->add_option("--route", route, "viaD, viaA or both")
      ->check(CLI::IsMember({"viaD", "viaA", "both"}));

  CLI::App* strace = app.add_subcommand("strace", "supertrace of a square supermatrix");
  add_io(strace);
  CLI::App* stranspose = app.add_subcommand("stranspose", "supertranspose");
  add_io(stranspose);
  CLI::App* sexp = app.add_subcommand("sexp", "exp of a nilpotent-entry matrix");
  add_io(sexp);

  CLI::App* bint = app.add_subcommand("berezin-int",
                                      "Berezin integral of a superfunction over a box");
  add_io(bint);

  CLI::App* res = app.add_subcommand("residue", "residue of a weight-1 section");
  add_io(res);

  CLI::App* checksc = app.add_subcommand("check-sc", "superconformality check");
  add_io(checksc);
  checksc->add_option("--precision", precision, "truncate series to this order");

  CLI::App* audit = app.add_subcommand("ramond-audit",
                                       "Ramond coordinate change constraint audit");
  add_io(audit);
  audit->add_option("--precision", precision, "truncate series to this order");

  CLI::App* mr = app.add_subcommand("mumford-ramond", "Ramond Mumford form scalar");
  add_io(mr);
  mr->add_option("--left-inverse", left_inverse_flag,
                 "lex or rows=i,j,...:k,l,... (1-based; second list for B')");
  CLI::App* mn = app.add_subcommand("mumford-ns", "NS Mumford form scalar");
  add_io(mn);
  mn->add_option("--left-inverse", left_inverse_flag, "lex or rows=i,j,...");
  CLI::App* mnp = app.add_subcommand("mumford-ns-punctured",
                                     "punctured NS Mumford form scalar");
  add_io(mnp);
  mnp->add_option("--left-inverse", left_inverse_flag, "lex or rows=i,j,...");

  std::string chi_mode;
  long long arg_degl = 0, arg_degj = 0;
  CLI::App* ranks = app.add_subcommand(
      "ranks", "rank table entries and Euler characteristics");
  add_io(ranks, false);
  ranks->add_option("--g", arg_g, "genus")->required();
  ranks->add_option("--nR", arg_nr, "number of Ramond punctures");
  ranks->add_option("--i", arg_i, "cohomology degree, 0 or 1");
  ranks->add_option("--j", arg_j, "power of the Berezinian sheaf");
  ranks->add_option("--chi", chi_mode,
                    "Euler characteristic instead of a table entry")
      ->check(CLI::IsMember({"supercurve", "susy"}));
  ranks->add_option("--degL", arg_degl, "degree of the sheaf (with --chi)");
  ranks->add_option("--degJ", arg_degj, "degree of the odd ideal (supercurve)");

  CLI::App* mdim = app.add_subcommand("moduli-dim", "moduli space dimension");
  add_io(mdim, false);
  mdim->add_option("--g", arg_g, "genus")->required();
  mdim->add_option("--nNS", arg_nns, "number of NS punctures");
  mdim->add_option("--nR", arg_nr, "number of Ramond punctures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (ber->parsed()) {
      smf::SuperMatrix m = smf::supermatrix_from_json(load_input(input_path));
      smf::BerRoute r = smf::BerRoute::both;
      if (route == "viaD") r = smf::BerRoute::via_d;
      if (route == "viaA") r = smf::BerRoute::via_a;
      emit(json{{"ber", smf::to_json(m.berezinian(r))}}, output_mode);
    } else if (strace->parsed()) {
      smf::SuperMatrix m = smf::supermatrix_from_json(load_input(input_path));
      emit(json{{"str", smf::to_json(m.supertrace())}}, output_mode);
    } else if (stranspose->parsed()) {
      smf::SuperMatrix m = smf::supermatrix_from_json(load_input(input_path));
      emit(json{{"matrix", smf::to_json(m.supertranspose())}}, output_mode);
    } else if (sexp->parsed()) {
      smf::SuperMatrix m = smf::supermatrix_from_json(load_input(input_path));
      emit(json{{"exp", smf::to_json(m.exp_nilpotent())}}, output_mode);
    } else if (bint->parsed()) {
      json in = load_input(input_path);
      smf::PolySuperFunction f = smf::polysuper_from_json(in.at("f"));
      smf::Box box = smf::box_from_json(in.at("box"));
      emit(json{{"integral", smf::berezin_integral(f, box).to_string()}},
           output_mode);
    } else if (res->parsed()) {
      smf::BerSection s = smf::section_from_json(load_input(input_path));
      emit(json{{"residue", smf::to_json(smf::residue(s))}}, output_mode);
    } else if (checksc->parsed()) {
      smf::DiskChange c = smf::disk_change_from_json(load_input(input_path));
      c.z_image = maybe_truncate(c.z_image, precision);
      c.theta_image = maybe_truncate(c.theta_image, precision);
      smf::SuperconformalCheck chk = smf::is_superconformal(c);
      emit(json{{"superconformal", chk.ok},
                {"witness", smf::to_json(chk.residual)}},
           output_mode);
    } else if (audit->parsed()) {
      smf::RamondChangeData d = smf::ramond_change_from_json(load_input(input_path));
      d.f = maybe_truncate(d.f, precision);
      d.g = maybe_truncate(d.g, precision);
      d.lambda = maybe_truncate(d.lambda, precision);
      d.psi = maybe_truncate(d.psi, precision);
      emit(smf::to_json(smf::ramond_change_audit(d)), output_mode);
    } else if (mr->parsed()) {
      smf::RamondLocalData d = smf::ramond_data_from_json(load_input(input_path));
      emit(smf::to_json(smf::mumford_ramond(d, parse_left_inverse(left_inverse_flag))),
           output_mode);
    } else if (mn->parsed()) {
      smf::NSLocalData d = smf::ns_data_from_json(load_input(input_path));
      emit(smf::to_json(smf::mumford_ns(d, parse_left_inverse(left_inverse_flag))),
           output_mode);
    } else if (mnp->parsed()) {
      smf::NSLocalData d = smf::ns_data_from_json(load_input(input_path));
      emit(smf::to_json(
               smf::mumford_ns_punctured(d, parse_left_inverse(left_inverse_flag))),
           output_mode);
    } else if (ranks->parsed()) {
      smf::SuperDim dim{};
      if (chi_mode == "supercurve") {
        dim = smf::rr_supercurve(arg_degl, arg_g, arg_degj);
      } else if (chi_mode == "susy") {
        dim = smf::rr_susy(arg_degl, arg_g);
      } else {
        dim = smf::ramond_rank_table(arg_g, arg_nr, arg_i, arg_j);
      }
      emit(json{{"even", dim.even}, {"odd", dim.odd}}, output_mode);
    } else if (mdim->parsed()) {
      smf::SuperDim dim = smf::moduli_dim(arg_g, arg_nns, arg_nr);
      emit(json{{"even", dim.even}, {"odd", dim.odd}}, output_mode);
    }
  } catch (const smf::parse_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const smf::kernel_error& e) {
    std::string detail = e.what();
    std::string prefix = e.name() + ": ";
    if (detail.rfind(prefix, 0) == 0) detail = detail.substr(prefix.size());
    std::cout << smf::canonical_dump(json{{"error", e.name()}, {"detail", detail}});
    return 2;
  }
  return 0;
}
