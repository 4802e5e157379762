// symflow: batch front-end for the two-particle symmetrization library.
// Subcommands: verify | evolve-semigroup | evolve-master | qnd | symmap |
// scatter | cpcheck | sweep. Every emitter embeds the resolved configuration
// as a JSON header line so runs are reproducible and diffable.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "symflow/cpcheck.hpp"
#include "symflow/decoherence.hpp"
#include "symflow/io.hpp"
#include "symflow/pairspace.hpp"
#include "symflow/qnd.hpp"
#include "symflow/scattering.hpp"
#include "symflow/states.hpp"
#include "symflow/symmap.hpp"
#include "symflow/verify.hpp"

namespace {

using symflow::Complex;
using symflow::ComplexMatrix;
using symflow::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitContract = 2;

struct ConfigOverlay {
  Json file;                          // raw config file content (empty if none)
  std::vector<std::string> overrides; // keys where a flag beat the file value
};

// Applies config-file values to options the user did not pass on the command
// line; records the keys where the command line wins. Unknown keys are
// rejected by name.
ConfigOverlay apply_config_file(CLI::App* cmd, const std::string& path) {
  ConfigOverlay overlay;
  if (path.empty()) return overlay;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("config", "cannot open config file " + path);
  try {
    in >> overlay.file;
  } catch (const std::exception& err) {
    throw CLI::ValidationError("config", std::string("config parse error: ") + err.what());
  }

  for (const auto& [key, value] : overlay.file.items()) {
    if (key == "subcommand") {
      if (value.get<std::string>() != cmd->get_name()) {
        throw CLI::ValidationError(
            "config", "config subcommand '" + value.get<std::string>() +
                          "' does not match '" + cmd->get_name() + "'");
      }
      continue;
    }
    CLI::Option* option = nullptr;
    try {
      option = cmd->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw CLI::ValidationError("config", "unknown key \"" + key + "\"");
    }
    if (option->count() > 0) {
      overlay.overrides.push_back(key);
      continue;  // command line wins
    }
    std::vector<std::string> words;
    if (value.is_array()) {
      for (const auto& item : value) {
        words.push_back(item.is_string() ? item.get<std::string>() : item.dump());
      }
    } else if (value.is_string()) {
      words.push_back(value.get<std::string>());
    } else {
      words.push_back(value.dump());
    }
    option->add_result(words);
    option->run_callback();
  }
  return overlay;
}

Json base_provenance(const std::string& subcommand, const ConfigOverlay& overlay) {
  Json j;
  j["subcommand"] = subcommand;
  if (!overlay.overrides.empty()) j["overrides"] = overlay.overrides;
  return j;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * k / (n - 1));
  return out;
}

std::vector<std::pair<int, int>> parse_elements(const std::string& spec, int dim) {
  std::vector<std::pair<int, int>> pairs;
  if (spec.empty()) return pairs;
  std::stringstream stream(spec);
  std::string chunk;
  while (std::getline(stream, chunk, ';')) {
    const auto comma = chunk.find(',');
    if (comma == std::string::npos) {
      throw CLI::ValidationError("elements", "expected \"i,j\" pairs separated by ';'");
    }
    const int i = std::stoi(chunk.substr(0, comma));
    const int j = std::stoi(chunk.substr(comma + 1));
    if (i < 0 || j < 0 || i >= dim || j >= dim) {
      throw CLI::ValidationError("elements", "index pair out of range");
    }
    pairs.emplace_back(i, j);
  }
  return pairs;
}

int worker_count() {
  const char* env = std::getenv("SYMFLOW_THREADS");
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (env != nullptr) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) n = std::min(n, static_cast<unsigned>(parsed));
  }
  return static_cast<int>(n);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  int d = 3;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyOptions& opt) {
  const auto results = symflow::verify::run_all(opt.d, opt.seed);
  for (const auto& result : results) {
    std::cout << (result.passed ? "PASS" : "FAIL") << "  " << result.name << ": " << result.detail
              << "\n";
  }
  return symflow::verify::all_passed(results) ? kExitOk : kExitContract;
}

// ---------------------------------------------------------------------------
// trajectory emission shared by evolve-semigroup and evolve-master

int emit_trajectory(const std::vector<symflow::decoherence::TrajectorySample>& samples,
                    const symflow::pairspace::PairBasis& basis,
                    const std::vector<std::pair<int, int>>& elements, const Json& provenance,
                    const std::string& out_path) {
  const ComplexMatrix p = symflow::pairspace::build_permutation(basis);
  std::vector<std::string> columns{"t", "trace", "symmetricity", "min_eigenvalue"};
  for (const auto& [i, j] : elements) {
    columns.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
    columns.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
  }
  symflow::io::CsvWriter csv(out_path, provenance, columns);

  bool contract_ok = true;
  for (const auto& sample : samples) {
    std::vector<double> row;
    row.push_back(sample.t);
    const double trace = sample.rho.trace().real();
    row.push_back(trace);
    row.push_back(symflow::states::symmetricity(sample.rho, p));
    const double min_eig =
        symflow::min_eigenvalue(0.5 * (sample.rho + sample.rho.adjoint().eval()));
    row.push_back(min_eig);
    for (const auto& [i, j] : elements) {
      row.push_back(sample.rho(i, j).real());
      row.push_back(sample.rho(i, j).imag());
    }
    csv.write_row(row);
    if (min_eig < -1e-8 || std::abs(trace - samples.front().rho.trace().real()) > 1e-9) {
      contract_ok = false;
    }
  }
  if (!contract_ok) {
    std::cerr << "numerical contract violated: trace drift or negative eigenvalue in trajectory\n";
    return kExitContract;
  }
  return kExitOk;
}

struct SemigroupOptions {
  int d = 2;
  std::uint64_t seed = 1;
  std::string kind = "generic";
  double tau_max = 3.0;
  int samples = 31;
  std::string elements;
  std::string out = "semigroup.csv";
};

int run_evolve_semigroup(const SemigroupOptions& opt, const ConfigOverlay& overlay) {
  const symflow::pairspace::PairBasis basis(opt.d);
  const auto rho0 =
      symflow::states::random_density(opt.seed, opt.d, symflow::states::density_kind_from_string(opt.kind));
  const ComplexMatrix p = symflow::pairspace::build_permutation(basis);

  std::vector<symflow::decoherence::TrajectorySample> samples;
  for (double tau : linspace(0.0, opt.tau_max, opt.samples)) {
    samples.push_back({tau, symflow::decoherence::apply_semigroup_symmetrizer(rho0.matrix(), tau, p)});
  }

  Json provenance = base_provenance("evolve-semigroup", overlay);
  provenance["d"] = opt.d;
  provenance["seed"] = opt.seed;
  provenance["kind"] = opt.kind;
  provenance["tau_max"] = opt.tau_max;
  provenance["samples"] = opt.samples;
  provenance["elements"] = opt.elements;
  provenance["out"] = opt.out;
  return emit_trajectory(samples, basis, parse_elements(opt.elements, basis.pair_dim()),
                         provenance, opt.out);
}

struct MasterOptions {
  int d = 2;
  std::uint64_t seed = 1;
  std::string kind = "generic";
  double gamma = 0.5;
  double dt = 0.01;
  double t_max = 1.0;
  int stride = 10;
  std::string hamiltonian = "none";  // none | ladder
  std::string elements;
  std::string out = "master.csv";
};

int run_evolve_master(const MasterOptions& opt, const ConfigOverlay& overlay) {
  const symflow::pairspace::PairBasis basis(opt.d);
  const auto rho0 =
      symflow::states::random_density(opt.seed, opt.d, symflow::states::density_kind_from_string(opt.kind));

  symflow::decoherence::EvolutionParams params;
  params.gamma = opt.gamma;
  params.dt = opt.dt;
  params.t_max = opt.t_max;
  params.sample_stride = opt.stride;
  if (opt.hamiltonian == "ladder") {
    // Balanced two-particle lift of the one-particle ladder E_i = i.
    ComplexMatrix h = ComplexMatrix::Zero(basis.pair_dim(), basis.pair_dim());
    for (int i = 0; i < opt.d; ++i) {
      for (int j = 0; j < opt.d; ++j) {
        h(basis.product_index(i, j), basis.product_index(i, j)) = static_cast<double>(i + j);
      }
    }
    params.hamiltonian = h;
  } else if (opt.hamiltonian != "none") {
    throw CLI::ValidationError("hamiltonian", "expected 'none' or 'ladder'");
  }

  const auto samples = symflow::decoherence::integrate_master_equation(rho0, params, basis);

  Json provenance = base_provenance("evolve-master", overlay);
  provenance["d"] = opt.d;
  provenance["seed"] = opt.seed;
  provenance["kind"] = opt.kind;
  provenance["gamma"] = opt.gamma;
  provenance["dt"] = opt.dt;
  provenance["t_max"] = opt.t_max;
  provenance["stride"] = opt.stride;
  provenance["hamiltonian"] = opt.hamiltonian;
  provenance["elements"] = opt.elements;
  provenance["out"] = opt.out;
  return emit_trajectory(samples, basis, parse_elements(opt.elements, basis.pair_dim()),
                         provenance, opt.out);
}

// ---------------------------------------------------------------------------
// qnd

struct QndOptions {
  double g = 1.0;
  double b = 10.0;
  double theta_max = 20.0;
  int samples = 50;
  std::string out = "qnd.csv";
};

struct QndRow {
  double theta, quadrature, closed, high_t, tau;
  bool regime_ok;
};

QndRow qnd_row(const symflow::qnd::SpectralModel& model, double theta) {
  QndRow row{};
  row.theta = theta;
  row.quadrature = symflow::qnd::decoherence_exponent_quadrature(model, theta);
  row.closed = symflow::qnd::decoherence_exponent_closed(model, theta);
  row.high_t = symflow::qnd::decoherence_exponent_high_temperature(model, theta);
  const auto semigroup = symflow::qnd::decoherence_exponent_semigroup(model, theta);
  row.tau = semigroup.tau;
  row.regime_ok = semigroup.regime_ok;
  return row;
}

int run_qnd(const QndOptions& opt, const ConfigOverlay& overlay) {
  const symflow::qnd::SpectralModel model{opt.g, opt.b, symflow::qnd::CutoffKind::Exponential};
  model.validate();

  Json provenance = base_provenance("qnd", overlay);
  provenance["g"] = opt.g;
  provenance["b"] = opt.b;
  provenance["theta_max"] = opt.theta_max;
  provenance["samples"] = opt.samples;
  provenance["out"] = opt.out;

  symflow::io::CsvWriter csv(opt.out, provenance,
                             {"theta", "I_quadrature", "I_closed", "I_highT_approx",
                              "tau_semigroup", "regime_ok"});
  bool contract_ok = true;
  for (double theta : linspace(0.0, opt.theta_max, opt.samples)) {
    const QndRow row = qnd_row(model, theta);
    csv.write_row_raw({symflow::io::format_sci(row.theta), symflow::io::format_sci(row.quadrature),
                       symflow::io::format_sci(row.closed), symflow::io::format_sci(row.high_t),
                       symflow::io::format_sci(row.tau), row.regime_ok ? "1" : "0"});
    if (std::abs(row.quadrature - row.closed) > 1e-5 * std::max(1.0, std::abs(row.closed))) {
      contract_ok = false;
    }
  }
  if (!contract_ok) {
    std::cerr << "numerical contract violated: quadrature/closed disagreement above 1e-5\n";
    return kExitContract;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// symmap

struct SymmapOptions {
  int d = 2;
  std::uint64_t seed = 1;
  std::string schedule = "to_antisymmetric";
  double kappa = 1.0;
  double t_max = 4.0;
  int samples = 41;
  std::string out = "symmap.csv";
};

int run_symmap(const SymmapOptions& opt, const ConfigOverlay& overlay) {
  const symflow::pairspace::PairBasis basis(opt.d);
  const auto sigma = symflow::states::random_density(opt.seed, opt.d, symflow::states::DensityKind::Paos);
  const auto schedule = symflow::symmap::builtin_schedule(
      symflow::symmap::schedule_kind_from_string(opt.schedule), opt.kappa);

  const auto report = symflow::symmap::entropy_trajectory(
      sigma, schedule, linspace(0.0, opt.t_max, opt.samples), basis);

  Json provenance = base_provenance("symmap", overlay);
  provenance["d"] = opt.d;
  provenance["seed"] = opt.seed;
  provenance["schedule"] = opt.schedule;
  provenance["kappa"] = opt.kappa;
  provenance["t_max"] = opt.t_max;
  provenance["samples"] = opt.samples;
  provenance["out"] = opt.out;
  if (!report.note.empty()) provenance["note"] = report.note;

  symflow::io::CsvWriter csv(opt.out, provenance,
                             {"t", "m_t", "symmetricity_measured", "trace", "renyi_entropy",
                              "entropy_bound_rhs", "min_eigenvalue"});
  bool contract_ok = true;
  for (const auto& s : report.samples) {
    csv.write_row({s.t, s.m_t, s.symmetricity_measured, s.trace, s.renyi, s.entropy_bound_rhs,
                   s.min_eigenvalue});
    if (std::abs(s.symmetricity_measured - s.m_t) > 1e-9 || s.min_eigenvalue < -1e-9) {
      contract_ok = false;
    }
  }
  if (!contract_ok) {
    std::cerr << "numerical contract violated: symmetricity drift or negative eigenvalue\n";
    return kExitContract;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scatter

struct ScatterOptions {
  double spin_s = 0.5;
  int epsilon = -1;
  double f_n_re = 0.12, f_n_im = 0.08;
  double f_mn_re = -0.06, f_mn_im = 0.10;
  std::string schedule = "to_antisymmetric";
  double kappa = 1.0;
  double tau_rate = 1.0;
  double t_max = 8.0;
  int samples = 33;
  std::string out = "scatter.csv";
};

int run_scatter(const ScatterOptions& opt, const ConfigOverlay& overlay) {
  const auto schedule = symflow::symmap::builtin_schedule(
      symflow::symmap::schedule_kind_from_string(opt.schedule), opt.kappa);
  symflow::scattering::CollisionConfig config{
      opt.spin_s,
      opt.epsilon,
      Complex(opt.f_n_re, opt.f_n_im),
      Complex(opt.f_mn_re, opt.f_mn_im),
      schedule,
      symflow::scattering::linear_tau(opt.tau_rate)};
  config.validate();

  symflow::scattering::CollisionConfig boson = config;
  boson.epsilon = 1;
  symflow::scattering::CollisionConfig fermion = config;
  fermion.epsilon = -1;
  const double p_boson = symflow::scattering::standard_probability(boson);
  const double p_fermion = symflow::scattering::standard_probability(fermion);

  Json provenance = base_provenance("scatter", overlay);
  provenance["spin_s"] = opt.spin_s;
  provenance["epsilon"] = opt.epsilon;
  provenance["f_n"] = {opt.f_n_re, opt.f_n_im};
  provenance["f_mn"] = {opt.f_mn_re, opt.f_mn_im};
  provenance["schedule"] = opt.schedule;
  provenance["kappa"] = opt.kappa;
  provenance["tau_rate"] = opt.tau_rate;
  provenance["t_max"] = opt.t_max;
  provenance["samples"] = opt.samples;
  provenance["out"] = opt.out;

  symflow::io::CsvWriter csv(
      opt.out, provenance,
      {"t", "P_env", "P_standard_boson", "P_standard_fermion", "tau", "m_t"});
  for (double t : linspace(0.0, opt.t_max, opt.samples)) {
    csv.write_row({t, symflow::scattering::environment_probability(config, t), p_boson, p_fermion,
                   config.tau_of_t(t), schedule.m(t)});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cpcheck

struct CpcheckOptions {
  double delta = 0.4;
  double m = -0.5;
  bool scan = false;
  std::string delta_grid = "0.05:0.45:9";
  std::string m_grid = "-0.5:0.5:11";
  std::string out;
};

std::vector<double> parse_grid(const std::string& spec, const std::string& name) {
  // "lo:hi:count" inclusive linear grid.
  const auto first = spec.find(':');
  const auto second = spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw CLI::ValidationError(name, "expected \"lo:hi:count\"");
  }
  const double lo = std::stod(spec.substr(0, first));
  const double hi = std::stod(spec.substr(first + 1, second - first - 1));
  const int count = std::stoi(spec.substr(second + 1));
  if (count < 1) throw CLI::ValidationError(name, "count must be >= 1");
  return linspace(lo, hi, count);
}

int run_cpcheck(const CpcheckOptions& opt, const ConfigOverlay& overlay) {
  Json provenance = base_provenance("cpcheck", overlay);
  provenance["delta"] = opt.delta;
  provenance["m"] = opt.m;
  provenance["scan"] = opt.scan;

  if (opt.scan) {
    provenance["delta_grid"] = opt.delta_grid;
    provenance["m_grid"] = opt.m_grid;
    const std::string out = opt.out.empty() ? "cpcheck_scan.csv" : opt.out;
    provenance["out"] = out;
    const auto cells = symflow::cpcheck::scan(parse_grid(opt.delta_grid, "delta_grid"),
                                              parse_grid(opt.m_grid, "m_grid"));
    symflow::io::CsvWriter csv(out, provenance,
                               {"delta", "m", "before_positive", "after_positive",
                                "predicted_negative", "prediction_mismatch", "min_after_eig"});
    for (const auto& cell : cells) {
      csv.write_row_raw({symflow::io::format_sci(cell.delta), symflow::io::format_sci(cell.m),
                         cell.before_positive ? "1" : "0", cell.after_positive ? "1" : "0",
                         cell.predicted_negative ? "1" : "0",
                         cell.prediction_mismatch ? "1" : "0",
                         symflow::io::format_sci(cell.min_after_eig)});
    }
    return kExitOk;
  }

  const auto cert = symflow::cpcheck::certify(symflow::cpcheck::build_witness(opt.delta, opt.m));
  Json j = symflow::io::certificate_to_json(cert);
  j["config"] = provenance;
  if (opt.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw CLI::ValidationError("out", "cannot open " + opt.out);
    file << j.dump(2) << "\n";
  }
  const bool contract_ok = cert.before_formula_residual <= 1e-10 &&
                           cert.after_formula_residual <= 1e-10 &&
                           (opt.delta >= 0.5 || cert.before_positive);
  if (!contract_ok) {
    std::cerr << "numerical contract violated: certificate residuals or positivity\n";
    return kExitContract;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string task = "qnd";
  std::string g_grid = "0.5:1.5:3";
  std::string b_grid = "1:100:4";
  std::string theta_grid = "0.5:50:8";
  std::string delta_grid = "0.05:0.45:9";
  std::string m_grid = "-0.5:0.5:11";
  std::string out = "sweep.csv";
};

int run_sweep(const SweepOptions& opt, const ConfigOverlay& overlay) {
  Json provenance = base_provenance("sweep", overlay);
  provenance["task"] = opt.task;
  provenance["out"] = opt.out;

  if (opt.task == "qnd") {
    provenance["g_grid"] = opt.g_grid;
    provenance["b_grid"] = opt.b_grid;
    provenance["theta_grid"] = opt.theta_grid;
    const auto gs = parse_grid(opt.g_grid, "g_grid");
    const auto bs = parse_grid(opt.b_grid, "b_grid");
    const auto thetas = parse_grid(opt.theta_grid, "theta_grid");

    struct Cell {
      double g, b;
      QndRow row;
    };
    std::vector<Cell> cells(gs.size() * bs.size() * thetas.size());
    std::vector<std::size_t> indices(cells.size());
    for (std::size_t k = 0; k < indices.size(); ++k) indices[k] = k;

    const int workers = worker_count();
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
      while (true) {
        const std::size_t k = cursor.fetch_add(1);
        if (k >= cells.size()) break;
        const std::size_t it = k % thetas.size();
        const std::size_t ib = (k / thetas.size()) % bs.size();
        const std::size_t ig = k / (thetas.size() * bs.size());
        const symflow::qnd::SpectralModel model{gs[ig], bs[ib],
                                                symflow::qnd::CutoffKind::Exponential};
        cells[k] = {gs[ig], bs[ib], qnd_row(model, thetas[it])};
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();

    // Merged in parameter order regardless of completion order.
    symflow::io::CsvWriter csv(opt.out, provenance,
                               {"g", "b", "theta", "I_quadrature", "I_closed", "I_highT_approx",
                                "tau_semigroup", "regime_ok"});
    for (const auto& cell : cells) {
      csv.write_row_raw({symflow::io::format_sci(cell.g), symflow::io::format_sci(cell.b),
                         symflow::io::format_sci(cell.row.theta),
                         symflow::io::format_sci(cell.row.quadrature),
                         symflow::io::format_sci(cell.row.closed),
                         symflow::io::format_sci(cell.row.high_t),
                         symflow::io::format_sci(cell.row.tau), cell.row.regime_ok ? "1" : "0"});
    }
    return kExitOk;
  }

  if (opt.task == "cpcheck") {
    provenance["delta_grid"] = opt.delta_grid;
    provenance["m_grid"] = opt.m_grid;
    const auto cells = symflow::cpcheck::scan(parse_grid(opt.delta_grid, "delta_grid"),
                                              parse_grid(opt.m_grid, "m_grid"));
    symflow::io::CsvWriter csv(opt.out, provenance,
                               {"delta", "m", "before_positive", "after_positive",
                                "predicted_negative", "prediction_mismatch", "min_after_eig"});
    for (const auto& cell : cells) {
      csv.write_row_raw({symflow::io::format_sci(cell.delta), symflow::io::format_sci(cell.m),
                         cell.before_positive ? "1" : "0", cell.after_positive ? "1" : "0",
                         cell.predicted_negative ? "1" : "0",
                         cell.prediction_mismatch ? "1" : "0",
                         symflow::io::format_sci(cell.min_after_eig)});
    }
    return kExitOk;
  }

  throw CLI::ValidationError("task", "expected 'qnd' or 'cpcheck'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-particle symmetrization workbench"};
  app.require_subcommand(1);

  VerifyOptions verify_opt;
  SemigroupOptions semigroup_opt;
  MasterOptions master_opt;
  QndOptions qnd_opt;
  SymmapOptions symmap_opt;
  ScatterOptions scatter_opt;
  CpcheckOptions cpcheck_opt;
  SweepOptions sweep_opt;
  std::string config_path;

  auto* verify_cmd = app.add_subcommand("verify", "run the cross-module invariant suites");
  verify_cmd->add_option("--d", verify_opt.d, "one-particle dimension")->check(CLI::Range(2, 16));
  verify_cmd->add_option("--seed", verify_opt.seed, "random seed");
  verify_cmd->add_option("--config", config_path, "JSON config file");

  auto* semigroup_cmd =
      app.add_subcommand("evolve-semigroup", "closed-form symmetrization channel trajectory");
  semigroup_cmd->add_option("--d", semigroup_opt.d)->check(CLI::Range(2, 16));
  semigroup_cmd->add_option("--seed", semigroup_opt.seed);
  semigroup_cmd->add_option("--kind", semigroup_opt.kind,
                            "initial state kind (generic|state_symmetric|state_antisymmetric|"
                            "perfectly_asymmetric|paos)");
  semigroup_cmd->add_option("--tau-max", semigroup_opt.tau_max)->check(CLI::NonNegativeNumber);
  semigroup_cmd->add_option("--samples", semigroup_opt.samples)->check(CLI::Range(1, 100000));
  semigroup_cmd->add_option("--elements", semigroup_opt.elements, "matrix entries, e.g. \"0,3;1,2\"");
  semigroup_cmd->add_option("--out", semigroup_opt.out);
  semigroup_cmd->add_option("--config", config_path);

  auto* master_cmd = app.add_subcommand("evolve-master", "fixed-step RK4 master-equation trajectory");
  master_cmd->add_option("--d", master_opt.d)->check(CLI::Range(2, 16));
  master_cmd->add_option("--seed", master_opt.seed);
  master_cmd->add_option("--kind", master_opt.kind);
  master_cmd->add_option("--gamma", master_opt.gamma)->check(CLI::NonNegativeNumber);
  master_cmd->add_option("--dt", master_opt.dt)->check(CLI::PositiveNumber);
  master_cmd->add_option("--t-max", master_opt.t_max)->check(CLI::NonNegativeNumber);
  master_cmd->add_option("--stride", master_opt.stride)->check(CLI::Range(1, 1000000));
  master_cmd->add_option("--hamiltonian", master_opt.hamiltonian, "none | ladder");
  master_cmd->add_option("--elements", master_opt.elements);
  master_cmd->add_option("--out", master_opt.out);
  master_cmd->add_option("--config", config_path);

  auto* qnd_cmd = app.add_subcommand("qnd", "bath decoherence exponent curves");
  qnd_cmd->add_option("--g", qnd_opt.g)->check(CLI::PositiveNumber);
  qnd_cmd->add_option("--b", qnd_opt.b)->check(CLI::PositiveNumber);
  qnd_cmd->add_option("--theta-max", qnd_opt.theta_max)->check(CLI::PositiveNumber);
  qnd_cmd->add_option("--samples", qnd_opt.samples)->check(CLI::Range(1, 100000));
  qnd_cmd->add_option("--out", qnd_opt.out);
  qnd_cmd->add_option("--config", config_path);

  auto* symmap_cmd = app.add_subcommand("symmap", "operator-sum symmetrization trajectory");
  symmap_cmd->add_option("--d", symmap_opt.d)->check(CLI::Range(2, 16));
  symmap_cmd->add_option("--seed", symmap_opt.seed);
  symmap_cmd->add_option("--schedule", symmap_opt.schedule,
                         "to_antisymmetric|to_symmetric|identity|perpendicular");
  symmap_cmd->add_option("--kappa", symmap_opt.kappa)->check(CLI::PositiveNumber);
  symmap_cmd->add_option("--t-max", symmap_opt.t_max)->check(CLI::NonNegativeNumber);
  symmap_cmd->add_option("--samples", symmap_opt.samples)->check(CLI::Range(1, 100000));
  symmap_cmd->add_option("--out", symmap_opt.out);
  symmap_cmd->add_option("--config", config_path);

  auto* scatter_cmd = app.add_subcommand("scatter", "collision probability curves");
  scatter_cmd->add_option("--spin-s", scatter_opt.spin_s)->check(CLI::NonNegativeNumber);
  scatter_cmd->add_option("--epsilon", scatter_opt.epsilon)->check(CLI::IsMember({-1, 1}));
  scatter_cmd->add_option("--f-n-re", scatter_opt.f_n_re);
  scatter_cmd->add_option("--f-n-im", scatter_opt.f_n_im);
  scatter_cmd->add_option("--f-mn-re", scatter_opt.f_mn_re);
  scatter_cmd->add_option("--f-mn-im", scatter_opt.f_mn_im);
  scatter_cmd->add_option("--schedule", scatter_opt.schedule);
  scatter_cmd->add_option("--kappa", scatter_opt.kappa)->check(CLI::PositiveNumber);
  scatter_cmd->add_option("--tau-rate", scatter_opt.tau_rate)->check(CLI::NonNegativeNumber);
  scatter_cmd->add_option("--t-max", scatter_opt.t_max)->check(CLI::NonNegativeNumber);
  scatter_cmd->add_option("--samples", scatter_opt.samples)->check(CLI::Range(1, 100000));
  scatter_cmd->add_option("--out", scatter_opt.out);
  scatter_cmd->add_option("--config", config_path);

  auto* cpcheck_cmd = app.add_subcommand("cpcheck", "two-positivity witness certificate");
  cpcheck_cmd->add_option("--delta", cpcheck_opt.delta)->check(CLI::PositiveNumber);
  cpcheck_cmd->add_option("--m", cpcheck_opt.m)->check(CLI::Range(-0.5, 0.5));
  cpcheck_cmd->add_flag("--scan", cpcheck_opt.scan, "grid scan instead of a single certificate");
  cpcheck_cmd->add_option("--delta-grid", cpcheck_opt.delta_grid, "lo:hi:count");
  cpcheck_cmd->add_option("--m-grid", cpcheck_opt.m_grid, "lo:hi:count");
  cpcheck_cmd->add_option("--out", cpcheck_opt.out, "certificate JSON or scan CSV path");
  cpcheck_cmd->add_option("--config", config_path);

  auto* sweep_cmd = app.add_subcommand("sweep", "parallel parameter sweeps, merged deterministically");
  sweep_cmd->add_option("--task", sweep_opt.task, "qnd | cpcheck");
  sweep_cmd->add_option("--g-grid", sweep_opt.g_grid, "lo:hi:count");
  sweep_cmd->add_option("--b-grid", sweep_opt.b_grid, "lo:hi:count");
  sweep_cmd->add_option("--theta-grid", sweep_opt.theta_grid, "lo:hi:count");
  sweep_cmd->add_option("--delta-grid", sweep_opt.delta_grid, "lo:hi:count");
  sweep_cmd->add_option("--m-grid", sweep_opt.m_grid, "lo:hi:count");
  sweep_cmd->add_option("--out", sweep_opt.out);
  sweep_cmd->add_option("--config", config_path);

  try {
    app.parse(argc, argv);
    CLI::App* active = app.get_subcommands().front();
    const ConfigOverlay overlay = apply_config_file(active, config_path);

    if (active == verify_cmd) return run_verify(verify_opt);
    if (active == semigroup_cmd) return run_evolve_semigroup(semigroup_opt, overlay);
    if (active == master_cmd) return run_evolve_master(master_opt, overlay);
    if (active == qnd_cmd) return run_qnd(qnd_opt, overlay);
    if (active == symmap_cmd) return run_symmap(symmap_opt, overlay);
    if (active == scatter_cmd) return run_scatter(scatter_opt, overlay);
    if (active == cpcheck_cmd) return run_cpcheck(cpcheck_opt, overlay);
    if (active == sweep_cmd) return run_sweep(sweep_opt, overlay);
    return kExitValidation;
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitOk : kExitValidation;
  } catch (const std::invalid_argument& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitContract;
  }
}
