#pragma once

#include <string>
#include <vector>

namespace symflow::qnd {

enum class CutoffKind { Exponential, Step };

/// Ohmic bath in dimensionless variables: g = eta/hbar^2 (coupling),
/// b = beta hbar omega_c (inverse temperature), theta = omega_c t (time).
struct SpectralModel {
  double g = 1.0;
  double b = 1.0;
  CutoffKind cutoff = CutoffKind::Exponential;

  void validate() const;
};

/// Decoherence exponent
///   I(theta) = g Integral_0^inf e^{-x} (1 - cos(x theta)) coth(b x / 2) / x dx
/// by split quadrature: a short series over the removable endpoint at x = 0,
/// then adaptive Simpson. Absolute accuracy ~1e-9; throws if refinement stalls.
double decoherence_exponent_quadrature(const SpectralModel& model, double theta);

/// Same exponent via the summed closed form
///   (g/2) ln(1 + theta^2) + g sum_j ln(1 + theta^2/(j b + 1)^2),
/// truncated at J = max(1000, ceil(100 theta / b)) with an analytic integral
/// tail correction (midpoint Euler-Maclaurin) for the remainder.
double decoherence_exponent_closed(const SpectralModel& model, double theta);

/// High-temperature-cutoff approximation (b >> 1):
///   (g/2) ln(theta^2 + 1) + g ln[(b/(pi theta)) sinh(pi theta / b)],
/// evaluated in log space so large theta/b cannot overflow.
double decoherence_exponent_high_temperature(const SpectralModel& model, double theta);

/// Exchange-parity bookkeeping: parity is +1 for a symmetric eigenvector,
/// -1 for an antisymmetric one. The exponent deficit 2[1 - pb*pk] is 0 for
/// diagonal (equal-parity) elements and 4 for mixed ones; a matrix element
/// decays by exp(-deficit * I).
int parity_deficit(int parity_bra, int parity_ket);
double element_decay_factor(double exponent_value, int parity_bra, int parity_ket);

struct SemigroupApproximation {
  double tau;                     // 2 pi g theta / b; mixed elements decay as e^{-2 tau}
  double prefactor_offdiagonal;   // (2 pi / b)^{4 g}, the mixed-element prefactor
  double small_parameter;         // 4 g ln(b / (2 pi)); must be << 1 for the expansion
  bool regime_ok;
  std::vector<std::string> warnings;

  /// Prefactor (2 pi / b)^{2 g [1 - pb*pk]} for an arbitrary parity pairing,
  /// exposed so either reading of the pairing convention can be compared.
  double prefactor(int parity_bra, int parity_ket) const;
};

/// Linear-in-theta semigroup regime of the exponent, with regime checks
/// (b >> 1, theta/b >> 1, small prefactor logarithm) reported as warnings,
/// never errors. The approximation is not uniform as theta -> 0.
SemigroupApproximation decoherence_exponent_semigroup(const SpectralModel& model, double theta);

double semigroup_tau(const SpectralModel& model, double theta);

struct SeriesCheck {
  double finite_difference;  // d I/d theta from the quadrature route
  double series_sum;         // 2 g theta sum_n 1/(theta^2 + (1 + n b)^2) + g theta/(theta^2 + 1)
  double truncation_bound;   // analytic bound on the dropped series tail
};

SeriesCheck derivative_series_check(const SpectralModel& model, double theta, long n_terms);

struct StepCutoffResult {
  double value;
  std::vector<std::string> warnings;
};

/// Exponent with the sharp cutoff (integrand supported on x <= 1). Numerical
/// exploration only; the regime of interest is b -> 0 followed by theta -> inf.
StepCutoffResult step_cutoff_exploration(const SpectralModel& model, double theta);

/// prod_{j<=n} [1 + x^2/(pi j)^2], optionally with the analytic tail
/// correction; converges to sinh(x)/x.
double weierstrass_product(double x, long n_terms, bool tail_corrected);

}  // namespace symflow::qnd
