#pragma once

#include <functional>

#include "symflow/symmap.hpp"
#include "symflow/types.hpp"

namespace symflow::scattering {

/// Elastic two-particle collision inputs: spin, exchange sign, user-supplied
/// scattering amplitudes into the +-n directions, the symmetrization schedule,
/// and the decoherence-time map tau(t).
struct CollisionConfig {
  double spin_s = 0.0;      // nonnegative half-integer
  int epsilon = 1;          // +1 bosons, -1 fermions
  Complex f_forward;        // F(n, t)
  Complex f_backward;       // F(-n, t)
  symmap::Schedule schedule;
  std::function<double(double)> tau_of_t;  // nondecreasing, tau(0) >= 0

  void validate() const;
  int spin_multiplicity() const;  // 2s + 1
};

/// Linear decoherence-time map tau = rate * t; the default rate choice is the
/// semigroup value 2 pi g / b from the bath model.
std::function<double(double)> linear_tau(double rate);

/// Symmetrized scattering probability density
///   |F(n)|^2 + |F(-n)|^2 + (eps/(2s+1)) 2 Re[F*(n) F(-n)].
double standard_probability(const CollisionConfig& config);

/// Environment-induced generalization: the operator-sum schedule replaces the
/// projector pair and the semigroup channel replaces the operator symmetrizer.
/// Recovers standard_probability with eps = +-1 as the schedule saturates and
/// tau -> inf. The imaginary residue of the assembled value stays below 1e-12;
/// the real part is returned.
double environment_probability(const CollisionConfig& config, double t);

}  // namespace symflow::scattering
