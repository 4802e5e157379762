#include "symflow/decoherence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symflow::decoherence {

namespace {

ComplexMatrix channel(const ComplexMatrix& o, const ComplexMatrix& p, double keep,
                      double swap) {
  return keep * o + swap * (p * o * p);
}

// Trapezoid evaluation of the Gaussian unitary average on n uniform nodes.
ComplexMatrix gaussian_average_nodes(const ComplexMatrix& rho, double tau,
                                     const ComplexMatrix& p, int n, double half_width) {
  const int dim = static_cast<int>(rho.rows());
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  const double u_max = half_width * std::sqrt(tau);
  const double du = 2.0 * u_max / (n - 1);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * tau);

  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const double u = -u_max + k * du;
    const double weight = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    // P is involutory, so e^{-iPu} = cos(u) 1 - i sin(u) P.
    const ComplexMatrix kick = std::cos(u) * identity - Complex(0.0, std::sin(u)) * p;
    acc += weight * std::exp(-u * u / (2.0 * tau)) * (kick * rho * kick.adjoint());
  }
  return norm * du * acc;
}

}  // namespace

ComplexMatrix dissipator_bracket(const ComplexMatrix& a, const ComplexMatrix& rho,
                                 const ComplexMatrix& b) {
  const ComplexMatrix a_dag = a.adjoint();
  return b * a_dag * rho + rho * b * a_dag - 2.0 * a_dag * rho * b;
}

ComplexMatrix apply_semigroup_symmetrizer(const ComplexMatrix& rho, double tau,
                                          const ComplexMatrix& permutation) {
  if (tau < 0.0) {
    throw std::invalid_argument(
        "apply_semigroup_symmetrizer: tau must be >= 0 (use apply_semigroup_inverse)");
  }
  const double decay = std::exp(-2.0 * tau);
  return channel(rho, permutation, 0.5 * (1.0 + decay), 0.5 * (1.0 - decay));
}

states::DensityOperator apply_semigroup_symmetrizer(const states::DensityOperator& rho,
                                                    double tau,
                                                    const pairspace::PairBasis& basis) {
  return states::DensityOperator(
      apply_semigroup_symmetrizer(rho.matrix(), tau, pairspace::build_permutation(basis)),
      basis);
}

ComplexMatrix apply_semigroup_inverse(const ComplexMatrix& o, double tau,
                                      const ComplexMatrix& permutation) {
  if (tau < 0.0) throw std::invalid_argument("apply_semigroup_inverse: tau must be >= 0");
  const double growth = std::exp(2.0 * tau);
  return channel(o, permutation, 0.5 * (1.0 + growth), 0.5 * (1.0 - growth));
}

ComplexMatrix apply_formal_antisymmetrizer(const ComplexMatrix& o, double tau,
                                           const ComplexMatrix& permutation) {
  if (tau < 0.0) throw std::invalid_argument("apply_formal_antisymmetrizer: tau must be >= 0");
  const double decay = std::exp(-2.0 * tau);
  return channel(o, permutation, 0.5 * (1.0 + decay), 0.5 * (decay - 1.0));
}

GaussianAverageResult gaussian_unitary_average(const ComplexMatrix& rho, double tau,
                                               const ComplexMatrix& permutation,
                                               const QuadratureSpec& spec) {
  if (tau <= 0.0) throw std::invalid_argument("gaussian_unitary_average: tau must be > 0");
  if (spec.nodes < 5) throw std::invalid_argument("gaussian_unitary_average: need >= 5 nodes");
  if (spec.half_width <= 0.0) {
    throw std::invalid_argument("gaussian_unitary_average: half_width must be > 0");
  }

  GaussianAverageResult out;
  out.matrix = gaussian_average_nodes(rho, tau, permutation, spec.nodes, spec.half_width);
  // Error estimate by halving the resolution (keeping the endpoints).
  const int coarse = (spec.nodes - 1) / 2 + 1;
  const ComplexMatrix coarse_result =
      gaussian_average_nodes(rho, tau, permutation, coarse, spec.half_width);
  out.estimated_error = (out.matrix - coarse_result).norm();
  return out;
}

void EvolutionParams::validate(const pairspace::PairBasis& basis) const {
  if (dt <= 0.0) throw std::invalid_argument("EvolutionParams: dt must be > 0");
  if (t_max < 0.0) throw std::invalid_argument("EvolutionParams: t_max must be >= 0");
  if (gamma < 0.0) throw std::invalid_argument("EvolutionParams: gamma must be >= 0");
  if (sample_stride < 1) throw std::invalid_argument("EvolutionParams: sample_stride must be >= 1");
  double h_norm = 0.0;
  if (hamiltonian.size() > 0) {
    if (hamiltonian.rows() != basis.pair_dim() || hamiltonian.cols() != basis.pair_dim()) {
      throw std::invalid_argument("EvolutionParams: hamiltonian must be d^2 x d^2");
    }
    const ComplexMatrix p = pairspace::build_permutation(basis);
    h_norm = hamiltonian.norm();
    if ((hamiltonian * p - p * hamiltonian).norm() > 1e-10 * std::max(h_norm, 1.0)) {
      throw std::invalid_argument("EvolutionParams: hamiltonian must commute with the exchange operator");
    }
  }
  if (dt * (h_norm + 4.0 * gamma) > 0.1) {
    throw std::invalid_argument(
        "EvolutionParams: dt * (||H|| + 4 gamma) exceeds 0.1; choose a smaller dt");
  }
}

std::vector<TrajectorySample> integrate_master_equation(const states::DensityOperator& rho0,
                                                        const EvolutionParams& params,
                                                        const pairspace::PairBasis& basis) {
  params.validate(basis);
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const bool with_h = params.hamiltonian.size() > 0;
  const Complex minus_i(0.0, -1.0);

  const auto rhs = [&](const ComplexMatrix& rho) -> ComplexMatrix {
    ComplexMatrix out = -2.0 * params.gamma * (rho - p * rho * p);
    if (with_h) {
      out += minus_i * (params.hamiltonian * rho - rho * params.hamiltonian);
    }
    return out;
  };

  const auto n_steps = static_cast<long>(std::ceil(params.t_max / params.dt - 1e-12));

  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(n_steps / params.sample_stride) + 2);
  ComplexMatrix rho = rho0.matrix();
  samples.push_back({0.0, rho});

  double t = 0.0;
  for (long step = 0; step < n_steps; ++step) {
    const double h = std::min(params.dt, params.t_max - t);
    const ComplexMatrix k1 = rhs(rho);
    const ComplexMatrix k2 = rhs(rho + 0.5 * h * k1);
    const ComplexMatrix k3 = rhs(rho + 0.5 * h * k2);
    const ComplexMatrix k4 = rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if ((step + 1) % params.sample_stride == 0 || step == n_steps - 1) {
      samples.push_back({t, rho});
    }
  }
  return samples;
}

}  // namespace symflow::decoherence
