#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symflow/pairspace.hpp"
#include "symflow/types.hpp"

namespace symflow::states {

enum class SymmetryClass {
  StateSymmetric,         // P rho = rho
  StateAntisymmetric,     // P rho = -rho
  OperatorSymmetricOnly,  // P rho P = rho but neither of the above
  NoDefiniteSymmetry,
};

std::string to_string(SymmetryClass c);

enum class DensityKind {
  Generic,
  StateSymmetric,
  StateAntisymmetric,
  PerfectlyAsymmetric,  // Tr P rho = 0
  Paos,                 // perfectly asymmetric and operator-symmetric
};

std::string to_string(DensityKind k);
DensityKind density_kind_from_string(const std::string& name);

/// Validated two-particle density operator: Hermitian, positive (relative to
/// the trace norm), finite trace. Unit trace is recorded, not required; the
/// maps in symmap act on the positive cone at large.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, const pairspace::PairBasis& basis);

  const ComplexMatrix& matrix() const { return matrix_; }
  int d() const { return d_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  double trace() const { return trace_; }
  bool normalized() const { return normalized_; }

  /// Provenance carried into JSON output; empty when not applicable.
  std::optional<DensityKind> kind;
  std::optional<std::uint64_t> seed;

 private:
  ComplexMatrix matrix_;
  int d_;
  double trace_;
  bool normalized_;
};

/// Statistical ensemble of normalized kets; weights positive and summing to 1.
/// Capped at 64 members.
struct Ensemble {
  std::vector<double> weights;
  std::vector<Ket> kets;

  void validate(const pairspace::PairBasis& basis) const;
  ComplexMatrix density_matrix() const;
};

struct ClassificationReport {
  SymmetryClass cls;
  double symmetricity;
  // Relative Frobenius residuals for the three membership tests.
  double residual_state_symmetric;
  double residual_state_antisymmetric;
  double residual_operator_symmetric;
};

/// Tr(P rho)/Tr(rho), in [-1, 1] for density operators. Throws on zero trace.
double symmetricity(const DensityOperator& rho, const pairspace::PairBasis& basis);
double symmetricity(const ComplexMatrix& rho, const ComplexMatrix& permutation);

ClassificationReport classify(const DensityOperator& rho, const pairspace::PairBasis& basis);

/// Operator symmetrizer (O + POP)/2 and antisymmetrizer (O - POP)/2.
ComplexMatrix operator_symmetrize(const ComplexMatrix& o, const pairspace::PairBasis& basis);
ComplexMatrix operator_antisymmetrize(const ComplexMatrix& o, const pairspace::PairBasis& basis);
ComplexMatrix operator_symmetrize(const ComplexMatrix& o, const ComplexMatrix& permutation);
ComplexMatrix operator_antisymmetrize(const ComplexMatrix& o, const ComplexMatrix& permutation);

/// Coefficient matrix <Psi_s;ij| rho |Psi_s;kl> of a state-symmetric density
/// operator over the symmetric eigenbasis (sym_dim x sym_dim, unit trace,
/// Hermitian). Throws unless classify(rho) = StateSymmetric.
ComplexMatrix symmetric_block_form(const DensityOperator& rho, const pairspace::PairBasis& basis);

/// Rebuilds the full matrix from symmetric-eigenbasis coefficients.
ComplexMatrix symmetric_block_reconstruct(const ComplexMatrix& coefficients,
                                 const pairspace::PairBasis& basis);

struct SymmetryComponent {
  double weight;
  DensityOperator state;  // state-symmetric or state-antisymmetric, unit trace
  SymmetryClass cls;
};

/// Splits an operator-symmetric ensemble into a statistical mixture of
/// state-symmetric and state-antisymmetric density operators. Members whose
/// symmetric (antisymmetric) part has squared norm below 1e-12 contribute a
/// single component of the other symmetry.
std::vector<SymmetryComponent> decompose_by_symmetry(const Ensemble& ensemble,
                                              const pairspace::PairBasis& basis);

struct PaosSplit {
  DensityOperator antisymmetric;  // unit trace, state-antisymmetric
  DensityOperator symmetric;      // unit trace, state-symmetric
};

/// Equal-weight split rho = (rho_A + rho_S)/2 of a perfectly asymmetric,
/// operator-symmetric density operator. Violated preconditions are named
/// individually.
PaosSplit split_paos(const DensityOperator& rho, const pairspace::PairBasis& basis);

struct PictureIdentityReport {
  // Residuals of the four Schrodinger/Heisenberg matrix-element identities,
  // in the order (S,S), (A,A), (S,A), (A,S) for the bra/ket symmetry parts.
  std::array<double, 4> residuals;
  double scale;  // ||O||_F * ||psi|| * ||phi||
};

PictureIdentityReport picture_identity_check(const ComplexMatrix& o, const Ket& psi,
                                             const Ket& phi, const pairspace::PairBasis& basis);

/// Seeded random density operators. The Gaussian source is the documented
/// Box-Muller stream in types.hpp, so fixed seeds reproduce bit-identical
/// matrices.
DensityOperator random_density(std::uint64_t seed, int d, DensityKind kind);

Ket random_ket(std::uint64_t seed, int dim);

}  // namespace symflow::states
