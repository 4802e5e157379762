#pragma once

#include <vector>

#include "symflow/pairspace.hpp"
#include "symflow/states.hpp"
#include "symflow/types.hpp"

namespace symflow::decoherence {

/// Dissipator bracket {A, rho, B} = B A^dag rho + rho B A^dag - 2 A^dag rho B.
/// For A = B = P this reduces to 2 rho - 2 P rho P.
ComplexMatrix dissipator_bracket(const ComplexMatrix& a, const ComplexMatrix& rho,
                                 const ComplexMatrix& b);

/// Semigroup symmetrization channel at decoherence time tau >= 0:
///   (1 + e^{-2 tau})/2 * rho + (1 - e^{-2 tau})/2 * P rho P.
/// Fixes the definite-symmetry blocks, damps mixed-symmetry blocks by
/// e^{-2 tau}, and converges to the operator symmetrizer as tau -> inf.
ComplexMatrix apply_semigroup_symmetrizer(const ComplexMatrix& rho, double tau,
                                          const ComplexMatrix& permutation);
states::DensityOperator apply_semigroup_symmetrizer(const states::DensityOperator& rho,
                                                    double tau,
                                                    const pairspace::PairBasis& basis);

/// Formal inverse of the channel above; amplifies mixed blocks by e^{+2 tau},
/// so it is only defined where the result stays positive.
ComplexMatrix apply_semigroup_inverse(const ComplexMatrix& o, double tau,
                                      const ComplexMatrix& permutation);

/// Damped inverse (1 + e^{-2 tau})/2 * O + (e^{-2 tau} - 1)/2 * P O P: the
/// identity at tau = 0, the operator antisymmetrizer as tau -> inf. Not a
/// positive map; callers inspect the output spectrum themselves.
ComplexMatrix apply_formal_antisymmetrizer(const ComplexMatrix& o, double tau,
                                           const ComplexMatrix& permutation);

struct QuadratureSpec {
  int nodes = 401;          // uniform trapezoid nodes (odd keeps u = 0 on-grid)
  double half_width = 8.0;  // integration range +-half_width * sqrt(tau)
};

struct GaussianAverageResult {
  ComplexMatrix matrix;
  double estimated_error;  // Frobenius distance to the half-resolution result
};

/// Gaussian average of unitary exchange kicks,
///   (2 pi tau)^{-1/2} Integral du e^{-u^2/(2 tau)} e^{-iPu} rho e^{+iPu},
/// evaluated by trapezoid quadrature. Agrees with the semigroup channel
/// exactly in the infinite-node limit.
GaussianAverageResult gaussian_unitary_average(const ComplexMatrix& rho, double tau,
                                               const ComplexMatrix& permutation,
                                               const QuadratureSpec& spec = {});

struct EvolutionParams {
  double gamma = 0.0;   // dissipator rate, dimensionless
  double dt = 1e-3;     // fixed integrator step
  double t_max = 1.0;
  ComplexMatrix hamiltonian;  // must commute with P; empty means H = 0
  int sample_stride = 1;      // emit every sample_stride-th step

  void validate(const pairspace::PairBasis& basis) const;
};

struct TrajectorySample {
  double t;
  ComplexMatrix rho;
};

/// Fixed-step classical RK4 integration of
///   d rho/dt = -i [H, rho] - gamma (2 rho - 2 P rho P).
/// Samples include t = 0 and t = t_max.
std::vector<TrajectorySample> integrate_master_equation(const states::DensityOperator& rho0,
                                                        const EvolutionParams& params,
                                                        const pairspace::PairBasis& basis);

}  // namespace symflow::decoherence
