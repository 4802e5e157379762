#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symflow/pairspace.hpp"
#include "symflow/states.hpp"
#include "symflow/types.hpp"

namespace symflow::symmap {

enum class ScheduleKind { ToAntisymmetric, ToSymmetric, Identity, Perpendicular, Custom };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

/// Time-dependent coefficient vectors a(t), s(t) defining the K-channel
/// operators W_alpha = a_alpha A + s_alpha S. Represented extensionally
/// (evaluable at any t), K <= 8. The inner product follows the physics
/// convention of conjugating the first factor: a.s = sum conj(a_alpha) s_alpha.
class Schedule {
 public:
  using CoefficientFn = std::function<ComplexVector(double)>;

  Schedule(CoefficientFn a, CoefficientFn s, double kappa, ScheduleKind kind,
           bool initial_identity);

  ComplexVector a(double t) const { return a_(t); }
  ComplexVector s(double t) const { return s_(t); }
  double a_norm2(double t) const { return a_(t).squaredNorm(); }
  double s_norm2(double t) const { return s_(t).squaredNorm(); }
  Complex a_dot_s(double t) const { return a_(t).dot(s_(t)); }

  /// p(t) = (||s||^2 + ||a||^2)/2; equals 1 on the perfectly asymmetric domain.
  double p(double t) const { return 0.5 * (s_norm2(t) + a_norm2(t)); }
  /// m(t) = (||s||^2 - ||a||^2)/2; the symmetricity of the image of a
  /// perfectly asymmetric unit-trace input.
  double m(double t) const { return 0.5 * (s_norm2(t) - a_norm2(t)); }

  int channels() const { return channels_; }
  double kappa() const { return kappa_; }
  ScheduleKind kind() const { return kind_; }
  /// True when a(0) = s(0) componentwise, which makes the map the identity at
  /// t = 0. The perpendicular realization keeps the norm constraints but not
  /// this one.
  bool initial_identity() const { return initial_identity_; }

  /// Checks continuity at 0, unit norms at 0, p(t) = 1 and |m(t)| <= 1 on the
  /// sampled times, and (for initial-identity schedules) a(0) = s(0).
  void validate(const std::vector<double>& sample_times) const;

 private:
  CoefficientFn a_;
  CoefficientFn s_;
  double kappa_;
  ScheduleKind kind_;
  bool initial_identity_;
  int channels_;
};

/// The four built-in schedules:
///   to_antisymmetric: a = (tanh kt, 1),    s = (0, sech kt)
///   to_symmetric:     a = (0, sech kt),    s = (tanh kt, 1)
///   identity:         a = s = (1)
///   perpendicular:    a = (tanh kt, 1, 0), s = (0, 0, sech kt)
Schedule builtin_schedule(ScheduleKind kind, double kappa);

/// Literal K-channel operator sum: sum_alpha W_alpha sigma W_alpha^dag.
ComplexMatrix apply_kraus_sum(const ComplexMatrix& sigma, const ComplexVector& a,
                              const ComplexVector& s, const ComplexMatrix& permutation);

/// Equivalent closed four-term expansion in sigma, P sigma P, P sigma, sigma P.
ComplexMatrix apply_four_term(const ComplexMatrix& sigma, const ComplexVector& a,
                              const ComplexVector& s, const ComplexMatrix& permutation);

/// Trace-preserving rewrite valid on all of the positive cone; positivity is
/// not structural and is checked by callers. Throws on zero trace or when
/// |m| = |(||s||^2 - ||a||^2)/2| exceeds the uniform bound 1/2.
ComplexMatrix apply_noncp(const ComplexMatrix& sigma, const ComplexVector& a,
                          const ComplexVector& s, const ComplexMatrix& permutation);

/// Operator-sum map on the perfectly asymmetric domain (|Tr P sigma| <=
/// 1e-9 Tr sigma); the returned operator is validated positive with the trace
/// of sigma. Throws (pointing at apply_map_noncp) outside the domain.
states::DensityOperator apply_map(const states::DensityOperator& sigma, const Schedule& schedule,
                                  double t, const pairspace::PairBasis& basis);

/// Extended-domain map; positivity certified per call by the returned
/// operator's validation.
states::DensityOperator apply_map_noncp(const states::DensityOperator& sigma,
                                        const Schedule& schedule, double t,
                                        const pairspace::PairBasis& basis);

enum class OperatorSymmetry { Symmetric, Antisymmetric, Indefinite };

struct ConservationReport {
  std::vector<OperatorSymmetry> operator_classes;
  double completeness_residual;  // || sum W^dag W - 1 ||_F
  double symmetricity_before;
  double symmetricity_after;
  bool conservation_implied;  // all operators share one definite symmetry
  int expected_sign;          // +1 all symmetric, -1 all antisymmetric, 0 otherwise
  bool conserved;             // measured against the expected sign
  std::string note;
};

/// Checks Tr P rho(t) = +-Tr P rho for a Kraus set whose members each commute
/// or anticommute with P and resolve the identity.
ConservationReport symmetricity_conservation_check(const std::vector<ComplexMatrix>& kraus_ops,
                                                   const states::DensityOperator& sigma,
                                                   const pairspace::PairBasis& basis);

/// Collision (order-2 Renyi) entropy -ln Tr rho^2, k = 1. Requires unit trace.
double renyi_entropy(const states::DensityOperator& rho);

struct EntropySample {
  double t;
  double m_t;                      // schedule prediction (||s||^2 - ||a||^2)/2
  double symmetricity_measured;    // Tr P rho(t) / Tr rho(t)
  double trace;
  double renyi;                    // S_R(t)
  double entropy_bound_rhs;        // S_R(0) - ln(2 - |a.s|^2)
  double min_eigenvalue;
  double delta_formula;            // -ln(1 + tanh^4(kappa t)); tanh/sech schedules only
};

struct MapReport {
  std::vector<EntropySample> samples;
  bool equal_purity_hypothesis;  // Tr rho_A^2 = Tr rho_S^2 held for the input
  std::string note;              // set when the formula column is only a bound
};

/// Tracks symmetricity and collision entropy of Lambda_t(sigma) over the given
/// times. sigma must be perfectly asymmetric; the closed entropy formula
/// column is meaningful when sigma is paos with equal block purities,
/// otherwise the report downgrades to the general bound.
MapReport entropy_trajectory(const states::DensityOperator& sigma, const Schedule& schedule,
                             const std::vector<double>& times, const pairspace::PairBasis& basis);

}  // namespace symflow::symmap
