// _symflow: python bindings for the main operations. Matrices cross the
// boundary as complex numpy arrays; schedules are referred to by kind and
// kappa so the python surface stays value-oriented.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symflow/cpcheck.hpp"
#include "symflow/decoherence.hpp"
#include "symflow/pairspace.hpp"
#include "symflow/qnd.hpp"
#include "symflow/scattering.hpp"
#include "symflow/states.hpp"
#include "symflow/symmap.hpp"
#include "symflow/verify.hpp"

namespace py = pybind11;
using namespace symflow;

namespace {

pairspace::PairBasis basis_for(const ComplexMatrix& m) {
  const auto dim = m.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (static_cast<Eigen::Index>(d) * d != dim) {
    throw std::invalid_argument("matrix dimension must be a perfect square d^2");
  }
  return pairspace::PairBasis(d);
}

states::DensityOperator wrap_density(const ComplexMatrix& m) {
  const auto basis = basis_for(m);
  return states::DensityOperator(m, basis);
}

symmap::Schedule make_schedule(const std::string& kind, double kappa) {
  return symmap::builtin_schedule(symmap::schedule_kind_from_string(kind), kappa);
}

}  // namespace

PYBIND11_MODULE(_symflow, m) {
  m.doc() = "Environment-induced symmetrization of two identical particles: "
            "exchange algebra, decoherence channels, operator-sum maps, "
            "collision probabilities and the two-positivity witness.";

  // ---- pair space -------------------------------------------------------
  m.def("permutation", [](int d) { return pairspace::build_permutation(pairspace::PairBasis(d)); },
        py::arg("d"), "Exchange operator on the product basis (d^2 x d^2).");
  m.def("symmetrizer", [](int d) { return pairspace::build_symmetrizer(pairspace::PairBasis(d)); },
        py::arg("d"));
  m.def("antisymmetrizer",
        [](int d) { return pairspace::build_antisymmetrizer(pairspace::PairBasis(d)); },
        py::arg("d"));
  m.def("sym_eigenbasis", [](int d) { return pairspace::sym_eigenbasis(pairspace::PairBasis(d)); },
        py::arg("d"));
  m.def("asym_eigenbasis",
        [](int d) { return pairspace::asym_eigenbasis(pairspace::PairBasis(d)); }, py::arg("d"));
  m.def("decompose_ket",
        [](const Ket& psi, int d) {
          const auto parts = pairspace::decompose_ket(psi, pairspace::PairBasis(d));
          return py::make_tuple(parts.symmetric, parts.antisymmetric);
        },
        py::arg("psi"), py::arg("d"));

  // ---- states -----------------------------------------------------------
  m.def("symmetricity",
        [](const ComplexMatrix& rho) {
          return states::symmetricity(rho, pairspace::build_permutation(basis_for(rho)));
        },
        py::arg("rho"), "Tr(P rho)/Tr(rho).");
  m.def("classify",
        [](const ComplexMatrix& rho) {
          const auto basis = basis_for(rho);
          const auto report = states::classify(states::DensityOperator(rho, basis), basis);
          py::dict out;
          out["class"] = states::to_string(report.cls);
          out["symmetricity"] = report.symmetricity;
          out["residual_state_symmetric"] = report.residual_state_symmetric;
          out["residual_state_antisymmetric"] = report.residual_state_antisymmetric;
          out["residual_operator_symmetric"] = report.residual_operator_symmetric;
          return out;
        },
        py::arg("rho"));
  m.def("operator_symmetrize",
        [](const ComplexMatrix& o) {
          return states::operator_symmetrize(o, pairspace::build_permutation(basis_for(o)));
        },
        py::arg("o"));
  m.def("operator_antisymmetrize",
        [](const ComplexMatrix& o) {
          return states::operator_antisymmetrize(o, pairspace::build_permutation(basis_for(o)));
        },
        py::arg("o"));
  m.def("random_density",
        [](std::uint64_t seed, int d, const std::string& kind) {
          return states::random_density(seed, d, states::density_kind_from_string(kind)).matrix();
        },
        py::arg("seed"), py::arg("d"), py::arg("kind") = "generic");
  m.def("split_paos",
        [](const ComplexMatrix& rho) {
          const auto basis = basis_for(rho);
          const auto split = states::split_paos(states::DensityOperator(rho, basis), basis);
          return py::make_tuple(split.antisymmetric.matrix(), split.symmetric.matrix());
        },
        py::arg("rho"), "Equal-weight (rho_A, rho_S) split of a paos state.");

  // ---- decoherence ------------------------------------------------------
  m.def("semigroup_symmetrize",
        [](const ComplexMatrix& rho, double tau) {
          return decoherence::apply_semigroup_symmetrizer(
              rho, tau, pairspace::build_permutation(basis_for(rho)));
        },
        py::arg("rho"), py::arg("tau"));
  m.def("formal_antisymmetrize",
        [](const ComplexMatrix& o, double tau) {
          return decoherence::apply_formal_antisymmetrizer(
              o, tau, pairspace::build_permutation(basis_for(o)));
        },
        py::arg("o"), py::arg("tau"));
  m.def("gaussian_unitary_average",
        [](const ComplexMatrix& rho, double tau, int nodes, double half_width) {
          const auto result = decoherence::gaussian_unitary_average(
              rho, tau, pairspace::build_permutation(basis_for(rho)), {nodes, half_width});
          return py::make_tuple(result.matrix, result.estimated_error);
        },
        py::arg("rho"), py::arg("tau"), py::arg("nodes") = 401, py::arg("half_width") = 8.0);
  m.def("integrate_master_equation",
        [](const ComplexMatrix& rho0, double gamma, double dt, double t_max, int stride,
           std::optional<ComplexMatrix> hamiltonian) {
          const auto basis = basis_for(rho0);
          decoherence::EvolutionParams params;
          params.gamma = gamma;
          params.dt = dt;
          params.t_max = t_max;
          params.sample_stride = stride;
          if (hamiltonian) params.hamiltonian = *hamiltonian;
          const auto samples = decoherence::integrate_master_equation(
              states::DensityOperator(rho0, basis), params, basis);
          py::list out;
          for (const auto& sample : samples) out.append(py::make_tuple(sample.t, sample.rho));
          return out;
        },
        py::arg("rho0"), py::arg("gamma"), py::arg("dt") = 1e-3, py::arg("t_max") = 1.0,
        py::arg("stride") = 1, py::arg("hamiltonian") = std::nullopt);

  // ---- bath exponent ----------------------------------------------------
  m.def("bath_exponent_quadrature",
        [](double g, double b, double theta) {
          return qnd::decoherence_exponent_quadrature({g, b, qnd::CutoffKind::Exponential}, theta);
        },
        py::arg("g"), py::arg("b"), py::arg("theta"));
  m.def("bath_exponent_closed",
        [](double g, double b, double theta) {
          return qnd::decoherence_exponent_closed({g, b, qnd::CutoffKind::Exponential}, theta);
        },
        py::arg("g"), py::arg("b"), py::arg("theta"));
  m.def("bath_exponent_high_temperature",
        [](double g, double b, double theta) {
          return qnd::decoherence_exponent_high_temperature({g, b, qnd::CutoffKind::Exponential},
                                                            theta);
        },
        py::arg("g"), py::arg("b"), py::arg("theta"));
  m.def("semigroup_tau",
        [](double g, double b, double theta) { return qnd::semigroup_tau({g, b}, theta); },
        py::arg("g"), py::arg("b"), py::arg("theta"), "2 pi g theta / b.");
  m.def("weierstrass_product", &qnd::weierstrass_product, py::arg("x"), py::arg("n_terms"),
        py::arg("tail_corrected") = true);

  // ---- operator-sum maps --------------------------------------------------
  m.def("schedule_coefficients",
        [](const std::string& kind, double kappa, double t) {
          const auto schedule = make_schedule(kind, kappa);
          return py::make_tuple(schedule.a(t), schedule.s(t));
        },
        py::arg("kind"), py::arg("kappa"), py::arg("t"));
  m.def("schedule_m",
        [](const std::string& kind, double kappa, double t) {
          return make_schedule(kind, kappa).m(t);
        },
        py::arg("kind"), py::arg("kappa"), py::arg("t"));
  m.def("apply_map",
        [](const ComplexMatrix& sigma, const std::string& kind, double kappa, double t) {
          const auto basis = basis_for(sigma);
          return symmap::apply_map(states::DensityOperator(sigma, basis),
                                   make_schedule(kind, kappa), t, basis)
              .matrix();
        },
        py::arg("sigma"), py::arg("kind"), py::arg("kappa"), py::arg("t"));
  m.def("apply_map_noncp",
        [](const ComplexMatrix& sigma, const std::string& kind, double kappa, double t) {
          const auto basis = basis_for(sigma);
          return symmap::apply_map_noncp(states::DensityOperator(sigma, basis),
                                         make_schedule(kind, kappa), t, basis)
              .matrix();
        },
        py::arg("sigma"), py::arg("kind"), py::arg("kappa"), py::arg("t"));
  m.def("renyi_entropy",
        [](const ComplexMatrix& rho) { return symmap::renyi_entropy(wrap_density(rho)); },
        py::arg("rho"), "Collision entropy -ln Tr rho^2.");

  // ---- scattering ---------------------------------------------------------
  m.def("standard_probability",
        [](double spin_s, int epsilon, Complex f_n, Complex f_mn) {
          scattering::CollisionConfig config{spin_s, epsilon, f_n, f_mn,
                                             make_schedule("identity", 1.0),
                                             scattering::linear_tau(1.0)};
          return scattering::standard_probability(config);
        },
        py::arg("spin_s"), py::arg("epsilon"), py::arg("f_n"), py::arg("f_mn"));
  m.def("environment_probability",
        [](double spin_s, int epsilon, Complex f_n, Complex f_mn, const std::string& kind,
           double kappa, double tau_rate, double t) {
          scattering::CollisionConfig config{spin_s, epsilon, f_n, f_mn,
                                             make_schedule(kind, kappa),
                                             scattering::linear_tau(tau_rate)};
          return scattering::environment_probability(config, t);
        },
        py::arg("spin_s"), py::arg("epsilon"), py::arg("f_n"), py::arg("f_mn"), py::arg("kind"),
        py::arg("kappa"), py::arg("tau_rate"), py::arg("t"));

  // ---- two-positivity witness ---------------------------------------------
  m.def("cp_certificate",
        [](double delta, double m_value) {
          const auto cert = cpcheck::certify(cpcheck::build_witness(delta, m_value));
          py::dict out;
          out["delta"] = cert.delta;
          out["m"] = cert.m;
          out["before_eigs"] = cert.before_eigs;
          out["after_eigs"] = cert.after_eigs;
          out["before_positive"] = cert.before_positive;
          out["after_positive"] = cert.after_positive;
          out["before_formula_residual"] = cert.before_formula_residual;
          out["after_formula_residual"] = cert.after_formula_residual;
          out["inequality_predicts_negative"] = cert.inequality_predicts_negative;
          return out;
        },
        py::arg("delta"), py::arg("m"));

  // ---- verification -------------------------------------------------------
  m.def("verify",
        [](int d, std::uint64_t seed) {
          py::list out;
          for (const auto& result : verify::run_all(d, seed)) {
            py::dict row;
            row["name"] = result.name;
            row["passed"] = result.passed;
            row["detail"] = result.detail;
            out.append(row);
          }
          return out;
        },
        py::arg("d") = 3, py::arg("seed") = 1);
}
