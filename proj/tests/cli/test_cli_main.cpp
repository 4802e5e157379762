// CLI integration checks: exit codes, config handling, output shape.
// Usage: test_cli <path-to-symflow>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_scratch;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    std::cout << "FAIL  " << what << "\n";
    ++g_failures;
  } else {
    std::cout << "PASS  " << what << "\n";
  }
}

int run(const std::string& args) {
  const std::string command = g_cli + " " + args + " > " + (g_scratch / "stdout.txt").string() +
                              " 2> " + (g_scratch / "stderr.txt").string();
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_config(const fs::path& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-symflow>\n";
    return 2;
  }
  g_cli = argv[1];
  g_scratch = fs::temp_directory_path() / "symflow_cli_test";
  fs::create_directories(g_scratch);

  expect(run("") == 1, "no subcommand exits 1");
  expect(run("--definitely-not-a-flag") == 1, "unknown flag exits 1 with usage");
  expect(run("frobnicate") == 1, "unknown subcommand exits 1");

  expect(run("verify --d 3 --seed 7") == 0, "verify passes all invariant suites");

  // Certificate example: negative eigenvalue expected, still exit 0.
  const fs::path cert_path = g_scratch / "cert.json";
  expect(run("cpcheck --delta 0.4 --m -0.5 --out " + cert_path.string()) == 0,
         "cpcheck counterexample exits 0");
  {
    nlohmann::json cert;
    std::ifstream in(cert_path);
    in >> cert;
    expect(cert["verdicts"]["after_positive"].get<bool>() == false,
           "certificate records after_positive = false");
    expect(cert["verdicts"]["before_positive"].get<bool>() == true,
           "certificate records before_positive = true");
    expect(cert.contains("before_eigs") && cert.contains("after_eigs") &&
               cert.contains("formula_residuals"),
           "certificate carries spectra and residuals");
  }

  // qnd emits the requested number of rows and the agreement column holds.
  const fs::path curve = g_scratch / "curve.csv";
  expect(run("qnd --g 1 --b 10 --theta-max 20 --samples 50 --out " + curve.string()) == 0,
         "qnd run exits 0");
  {
    const auto lines = lines_of(curve);
    expect(lines.size() == 2 + 50, "qnd CSV has header lines plus 50 rows");
    expect(!lines.empty() && lines.front().rfind("# config:", 0) == 0,
           "CSV embeds the resolved config header");
    expect(lines.size() > 1 && lines[1] ==
               "theta,I_quadrature,I_closed,I_highT_approx,tau_semigroup,regime_ok",
           "qnd CSV column names");
  }

  // Determinism: identical seeds give byte-identical files.
  const fs::path run_a = g_scratch / "run.csv";
  expect(run("symmap --d 3 --seed 9 --schedule to_antisymmetric --out " + run_a.string()) == 0,
         "symmap run exits 0");
  const std::string first = read_file(run_a);
  expect(run("symmap --d 3 --seed 9 --schedule to_antisymmetric --out " + run_a.string()) == 0,
         "symmap rerun exits 0");
  expect(first == read_file(run_a) && !first.empty(), "identical seeds give identical bytes");

  // Config file: minimal config with defaults filled, unknown key rejection,
  // flag-over-file precedence recorded in the header.
  const fs::path config = g_scratch / "config.json";
  write_config(config, R"({"subcommand":"verify","d":2,"seed":1})");
  expect(run("verify --config " + config.string()) == 0, "minimal config fills defaults");

  write_config(config, R"({"subcommand":"qnd","g":1.0,"what_is_this":5})");
  expect(run("qnd --config " + config.string()) == 1, "unknown config key exits 1");
  expect(read_file(g_scratch / "stderr.txt").find("what_is_this") != std::string::npos,
         "error names the offending key");

  write_config(config, R"({"subcommand":"verify","d":-3})");
  expect(run("verify --config " + config.string()) == 1, "negative dimension exits 1");
  expect(read_file(g_scratch / "stderr.txt").find("d") != std::string::npos,
         "error names the d flag");

  const fs::path override_out = g_scratch / "override.csv";
  write_config(config, R"({"subcommand":"qnd","g":1.0,"b":5.0,"samples":3,"out":")" +
                           (g_scratch / "ignored.csv").string() + R"("})");
  expect(run("qnd --config " + config.string() + " --out " + override_out.string()) == 0,
         "flag override run exits 0");
  {
    const auto lines = lines_of(override_out);
    expect(!lines.empty() && lines.front().find("\"overrides\":[\"out\"]") != std::string::npos,
           "override is recorded in the provenance header");
  }

  // Scatter CSV columns per the interface.
  const fs::path scatter = g_scratch / "scatter.csv";
  expect(run("scatter --spin-s 0.5 --epsilon -1 --out " + scatter.string()) == 0,
         "scatter run exits 0");
  {
    const auto lines = lines_of(scatter);
    expect(lines.size() > 1 &&
               lines[1] == "t,P_env,P_standard_boson,P_standard_fermion,tau,m_t",
           "scatter CSV column names");
  }

  fs::remove_all(g_scratch);
  std::cout << (g_failures == 0 ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return g_failures == 0 ? 0 : 1;
}
