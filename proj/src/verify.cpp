#include "symflow/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "symflow/cpcheck.hpp"
#include "symflow/decoherence.hpp"
#include "symflow/pairspace.hpp"
#include "symflow/qnd.hpp"
#include "symflow/scattering.hpp"
#include "symflow/states.hpp"
#include "symflow/symmap.hpp"

namespace symflow::verify {

namespace {

using pairspace::PairBasis;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

SuiteResult run_suite(const std::string& name, const std::function<double()>& worst_residual,
                      double threshold) {
  SuiteResult result{name, false, ""};
  try {
    const double worst = worst_residual();
    result.passed = worst <= threshold;
    result.detail = "worst residual " + sci(worst) + " (threshold " + sci(threshold) + ")";
  } catch (const std::exception& err) {
    result.passed = false;
    result.detail = err.what();
  }
  return result;
}

double exchange_algebra_residual(int d) {
  const PairBasis basis(d);
  const auto n = basis.pair_dim();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const ComplexMatrix s = pairspace::build_symmetrizer(basis);
  const ComplexMatrix a = pairspace::build_antisymmetrizer(basis);

  double worst = 0.0;
  const auto track = [&](const ComplexMatrix& residual) {
    worst = std::max(worst, residual.cwiseAbs().maxCoeff());
  };
  track(p * p - identity);
  track(p - p.adjoint());
  track(s + a - identity);
  track(s * s - s);
  track(a * a - a);
  track(s * a);
  track(p - (2.0 * s - identity));

  ComplexMatrix completeness = ComplexMatrix::Zero(n, n);
  for (const Ket& k : pairspace::sym_eigenbasis(basis)) completeness += k * k.adjoint();
  for (const Ket& k : pairspace::asym_eigenbasis(basis)) completeness += k * k.adjoint();
  track(completeness - identity);
  return worst;
}

double basis_round_trip_residual(int d, std::uint64_t seed) {
  const PairBasis basis(d);
  double worst = 0.0;
  for (int rep = 0; rep < 25; ++rep) {
    const Ket psi = states::random_ket(seed + rep, basis.pair_dim());
    const auto parts = pairspace::decompose_ket(psi, basis);
    worst = std::max(worst, (parts.symmetric + parts.antisymmetric - psi).norm());
    const double pythagoras = parts.symmetric.squaredNorm() + parts.antisymmetric.squaredNorm() -
                              psi.squaredNorm();
    worst = std::max(worst, std::abs(pythagoras));
  }
  return worst;
}

double symmetricity_bounds_residual(int d, std::uint64_t seed) {
  const PairBasis basis(d);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto rho = states::random_density(seed + rep, d, states::DensityKind::Generic);
    const double value = states::symmetricity(rho, basis);
    worst = std::max(worst, std::max(0.0, std::abs(value) - 1.0));
  }
  const auto sym = states::random_density(seed, d, states::DensityKind::StateSymmetric);
  const auto asym = states::random_density(seed + 1, d, states::DensityKind::StateAntisymmetric);
  worst = std::max(worst, std::abs(states::symmetricity(sym, basis) - 1.0));
  worst = std::max(worst, std::abs(states::symmetricity(asym, basis) + 1.0));
  if (states::classify(sym, basis).cls != states::SymmetryClass::StateSymmetric ||
      states::classify(asym, basis).cls != states::SymmetryClass::StateAntisymmetric) {
    return 1.0;
  }
  return worst;
}

double semigroup_residual(int d, std::uint64_t seed) {
  const PairBasis basis(d);
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const auto rho = states::random_density(seed + 11, d, states::DensityKind::Generic);

  double worst = 0.0;
  for (double tau : {0.1, 1.0, 5.0}) {
    const ComplexMatrix lhs = decoherence::apply_semigroup_symmetrizer(rho.matrix(), tau, p);
    // Exponential series of tau (P . P) applied to rho, damped by e^{-tau}.
    ComplexMatrix series = ComplexMatrix::Zero(basis.pair_dim(), basis.pair_dim());
    ComplexMatrix term = rho.matrix();
    double factorial = 1.0;
    for (int k = 0; k < 60; ++k) {
      if (k > 0) {
        term = (p * term * p).eval();
        factorial *= k;
      }
      series += std::pow(tau, k) / factorial * term;
    }
    worst = std::max(worst, (lhs - std::exp(-tau) * series).cwiseAbs().maxCoeff());
    // Semigroup law.
    const ComplexMatrix twice = decoherence::apply_semigroup_symmetrizer(
        decoherence::apply_semigroup_symmetrizer(rho.matrix(), tau, p), 2.0 * tau, p);
    const ComplexMatrix once =
        decoherence::apply_semigroup_symmetrizer(rho.matrix(), 3.0 * tau, p);
    worst = std::max(worst, (twice - once).cwiseAbs().maxCoeff());
  }
  return worst;
}

double qnd_oracle_residual() {
  const qnd::SpectralModel model{1.0, 10.0, qnd::CutoffKind::Exponential};
  double worst = 0.0;
  for (double theta : {0.5, 2.0, 10.0}) {
    const double quad = qnd::decoherence_exponent_quadrature(model, theta);
    const double closed = qnd::decoherence_exponent_closed(model, theta);
    worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
  }
  return worst;
}

double schedule_map_residual(int d, std::uint64_t seed) {
  const PairBasis basis(d);
  const auto sigma = states::random_density(seed + 23, d, states::DensityKind::Paos);
  double worst = 0.0;
  for (auto kind : {symmap::ScheduleKind::ToAntisymmetric, symmap::ScheduleKind::ToSymmetric}) {
    const symmap::Schedule schedule = symmap::builtin_schedule(kind, 1.0);
    for (double t : {0.0, 0.5, 2.0}) {
      const auto image = symmap::apply_map(sigma, schedule, t, basis);
      worst = std::max(worst, std::abs(image.trace() - sigma.trace()));
      const double sign = kind == symmap::ScheduleKind::ToSymmetric ? 1.0 : -1.0;
      const double expected = sign * std::pow(std::tanh(t), 2);
      worst = std::max(worst, std::abs(states::symmetricity(image, basis) - expected));
    }
  }
  return worst;
}

double entropy_residual(int d, std::uint64_t seed) {
  const PairBasis basis(d);
  // Pure symmetric + pure antisymmetric halves share unit block purity.
  const auto sym_kets = pairspace::sym_eigenbasis(basis);
  const auto asym_kets = pairspace::asym_eigenbasis(basis);
  (void)seed;
  const ComplexMatrix rho = 0.5 * (sym_kets[0] * sym_kets[0].adjoint()) +
                            0.5 * (asym_kets[0] * asym_kets[0].adjoint());
  const states::DensityOperator sigma(rho, basis);
  const symmap::Schedule schedule =
      symmap::builtin_schedule(symmap::ScheduleKind::ToSymmetric, 1.0);
  const auto report = symmap::entropy_trajectory(sigma, schedule, {0.0, 0.7, 2.0, 8.0}, basis);
  if (!report.equal_purity_hypothesis) return 1.0;
  const double s0 = report.samples.front().renyi;
  double worst = 0.0;
  for (const auto& sample : report.samples) {
    worst = std::max(worst, std::abs(sample.renyi - s0 - sample.delta_formula));
  }
  return worst;
}

double scattering_limit_residual() {
  symmap::Schedule schedule = symmap::builtin_schedule(symmap::ScheduleKind::ToSymmetric, 1.0);
  scattering::CollisionConfig config{0.5, 1, Complex(0.12, 0.08), Complex(-0.06, 0.10),
                                     schedule, scattering::linear_tau(1.0)};
  const double limit = scattering::environment_probability(config, 10.0);
  return std::abs(limit - scattering::standard_probability(config));
}

double cpcheck_residual() {
  const auto cert = cpcheck::certify(cpcheck::build_witness(0.4, -0.5));
  double worst = std::max(cert.before_formula_residual, cert.after_formula_residual);
  if (!cert.before_positive || cert.after_positive) worst = std::max(worst, 1.0);
  return worst;
}

}  // namespace

std::vector<SuiteResult> run_all(int d, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  results.push_back(
      run_suite("exchange_algebra", [d] { return exchange_algebra_residual(d); }, 1e-12));
  results.push_back(run_suite(
      "basis_round_trip", [d, seed] { return basis_round_trip_residual(d, seed); }, 1e-12));
  results.push_back(run_suite(
      "symmetricity_bounds", [d, seed] { return symmetricity_bounds_residual(d, seed); }, 1e-9));
  results.push_back(
      run_suite("semigroup_channel", [d, seed] { return semigroup_residual(d, seed); }, 1e-10));
  results.push_back(run_suite("bath_exponent_oracle", qnd_oracle_residual, 1e-5));
  results.push_back(run_suite(
      "schedule_maps", [d, seed] { return schedule_map_residual(d, seed); }, 1e-10));
  results.push_back(
      run_suite("collision_entropy", [d, seed] { return entropy_residual(d, seed); }, 1e-10));
  results.push_back(run_suite("scattering_limits", scattering_limit_residual, 1e-7));
  results.push_back(run_suite("two_positivity_certificate", cpcheck_residual, 1e-10));
  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const auto& result : results) {
    if (!result.passed) return false;
  }
  return true;
}

}  // namespace symflow::verify
