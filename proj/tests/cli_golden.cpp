// Golden-output harness for the command line tool: every verb runs twice and
// must produce byte-identical output that matches the checked-in golden file.
// Set SMF_UPDATE_GOLDEN=1 to rewrite the goldens after an intentional change.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Case {
  std::string name;
  std::string args;  // after the binary path; {F} expands to the fixture dir
  int expect_exit = 0;
};

struct RunResult {
  std::string output;
  int exit_code = -1;
};

RunResult run(const std::string& command) {
  RunResult r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string expand(std::string s, const std::string& fixtures) {
  std::size_t pos;
  while ((pos = s.find("{F}")) != std::string::npos) s.replace(pos, 3, fixtures);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: cli_golden <smf-binary> <fixtures-dir> <golden-dir>\n";
    return 2;
  }
  const std::string binary = argv[1];
  const std::string fixtures = argv[2];
  const std::string golden_dir = argv[3];
  const bool update = std::getenv("SMF_UPDATE_GOLDEN") != nullptr;

  const std::vector<Case> cases = {
      {"ber", "ber -i {F}/ber_matrix.json --route both"},
      {"ber_viaA", "ber -i {F}/ber_matrix.json --route viaA"},
      {"strace", "strace -i {F}/strace_matrix.json"},
      {"stranspose", "stranspose -i {F}/strace_matrix.json"},
      {"sexp", "sexp -i {F}/sexp_matrix.json"},
      {"berezin_int", "berezin-int -i {F}/berezin_int.json"},
      {"residue", "residue -i {F}/residue_section.json"},
      {"check_sc", "check-sc -i {F}/check_sc_ns.json"},
      {"check_sc_text", "check-sc -i {F}/check_sc_ns.json --output text"},
      {"ramond_audit", "ramond-audit -i {F}/ramond_audit.json"},
      {"mumford_ramond", "mumford-ramond -i {F}/mumford_ramond_identity.json"},
      {"mumford_ramond_rows",
       "mumford-ramond -i {F}/mumford_ramond_identity.json "
       "--left-inverse rows=2,3,4:1,2"},
      {"mumford_ns", "mumford-ns -i {F}/mumford_ns_identity_g3.json"},
      {"mumford_ns_punctured",
       "mumford-ns-punctured -i {F}/mumford_ns_punctured_n1.json"},
      {"ranks", "ranks --g 2 --nR 8 --i 0 --j -2"},
      {"ranks_text", "ranks --g 2 --nR 8 --i 0 --j -2 --output text"},
      {"ranks_chi_supercurve", "ranks --chi supercurve --degL 0 --g 2 --degJ 1"},
      {"ranks_chi_susy", "ranks --chi susy --degL 3 --g 2"},
      {"moduli_dim", "moduli-dim --g 2 --nNS 0 --nR 0"},
      {"error_typed", "ber -i {F}/ber_degenerate.json", 2},
      {"error_parse", "ber -i {F}/not_json.json", 1},
  };

  int failures = 0;
  for (const Case& c : cases) {
    const std::string cmd = binary + " " + expand(c.args, fixtures);
    RunResult first = run(cmd);
    RunResult second = run(cmd);
    bool ok = true;
    if (first.exit_code != c.expect_exit || second.exit_code != c.expect_exit) {
      std::cout << "[FAIL] " << c.name << ": exit code " << first.exit_code
                << ", expected " << c.expect_exit << "\n";
      ok = false;
    }
    if (ok && first.output != second.output) {
      std::cout << "[FAIL] " << c.name << ": two runs differ\n";
      ok = false;
    }
    const std::string golden_path = golden_dir + "/" + c.name + ".golden";
    if (ok && update) {
      std::ofstream out(golden_path, std::ios::binary);
      out << first.output;
    }
    if (ok && !update) {
      std::string want = read_file(golden_path);
      if (want != first.output) {
        std::cout << "[FAIL] " << c.name << ": output differs from golden\n";
        std::cout << "--- got ---\n" << first.output << "--- want ---\n" << want;
        ok = false;
      }
    }
    if (ok) std::cout << "[PASS] " << c.name << "\n";
    failures += ok ? 0 : 1;
  }
  return failures;
}
