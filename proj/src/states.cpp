#include "symflow/states.hpp"

#include <cmath>
#include <stdexcept>

namespace symflow::states {

namespace {

constexpr std::size_t kMaxEnsembleMembers = 64;
constexpr double kZeroKetNorm2 = 1e-12;

ComplexMatrix random_gaussian_matrix(GaussianStream& stream, int n) {
  ComplexMatrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      g(r, c) = stream.next_complex();
    }
  }
  return g;
}

// GG^dag / Tr(GG^dag) with G a seeded complex Gaussian.
ComplexMatrix generic_density_matrix(GaussianStream& stream, int n) {
  const ComplexMatrix g = random_gaussian_matrix(stream, n);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

// Generic draw conjugated into one exchange eigenspace.
ComplexMatrix eigenspace_density_matrix(GaussianStream& stream, const ComplexMatrix& projector) {
  const int n = static_cast<int>(projector.rows());
  const ComplexMatrix generic = generic_density_matrix(stream, n);
  ComplexMatrix rho = projector * generic * projector;
  const double tr = rho.trace().real();
  rho /= tr;
  return rho;
}

}  // namespace

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::StateSymmetric: return "state_symmetric";
    case SymmetryClass::StateAntisymmetric: return "state_antisymmetric";
    case SymmetryClass::OperatorSymmetricOnly: return "operator_symmetric_only";
    case SymmetryClass::NoDefiniteSymmetry: return "no_definite_symmetry";
  }
  return "unknown";
}

std::string to_string(DensityKind k) {
  switch (k) {
    case DensityKind::Generic: return "generic";
    case DensityKind::StateSymmetric: return "state_symmetric";
    case DensityKind::StateAntisymmetric: return "state_antisymmetric";
    case DensityKind::PerfectlyAsymmetric: return "perfectly_asymmetric";
    case DensityKind::Paos: return "paos";
  }
  return "unknown";
}

DensityKind density_kind_from_string(const std::string& name) {
  if (name == "generic") return DensityKind::Generic;
  if (name == "state_symmetric") return DensityKind::StateSymmetric;
  if (name == "state_antisymmetric") return DensityKind::StateAntisymmetric;
  if (name == "perfectly_asymmetric") return DensityKind::PerfectlyAsymmetric;
  if (name == "paos") return DensityKind::Paos;
  throw std::invalid_argument("unknown density kind: " + name);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, const pairspace::PairBasis& basis)
    : matrix_(std::move(matrix)), d_(basis.d()) {
  if (matrix_.rows() != basis.pair_dim() || matrix_.cols() != basis.pair_dim()) {
    throw std::invalid_argument("DensityOperator: matrix must be d^2 x d^2");
  }
  if (!is_hermitian(matrix_)) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  if (!is_positive_semidefinite(matrix_)) {
    throw std::invalid_argument("DensityOperator: matrix is not positive");
  }
  const Complex tr = matrix_.trace();
  if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag())) {
    throw std::invalid_argument("DensityOperator: trace is not finite");
  }
  trace_ = tr.real();
  normalized_ = std::abs(trace_ - 1.0) <= 1e-10;
}

void Ensemble::validate(const pairspace::PairBasis& basis) const {
  if (weights.size() != kets.size()) {
    throw std::invalid_argument("Ensemble: weight and ket counts differ");
  }
  if (weights.empty() || weights.size() > kMaxEnsembleMembers) {
    throw std::invalid_argument("Ensemble: member count must be in [1, 64]");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < weights.size(); ++r) {
    if (weights[r] <= 0.0) {
      throw std::invalid_argument("Ensemble: weights must be positive");
    }
    total += weights[r];
    if (kets[r].size() != basis.pair_dim()) {
      throw std::invalid_argument("Ensemble: ket dimension does not match basis");
    }
    if (std::abs(kets[r].norm() - 1.0) > tol::norm) {
      throw std::invalid_argument("Ensemble: kets must be normalized");
    }
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("Ensemble: weights must sum to 1");
  }
}

ComplexMatrix Ensemble::density_matrix() const {
  ComplexMatrix rho = ComplexMatrix::Zero(kets.front().size(), kets.front().size());
  for (std::size_t r = 0; r < kets.size(); ++r) {
    rho += weights[r] * (kets[r] * kets[r].adjoint());
  }
  return rho;
}

double symmetricity(const ComplexMatrix& rho, const ComplexMatrix& permutation) {
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1e-12) {
    throw std::invalid_argument("symmetricity: zero-trace input");
  }
  return (permutation * rho).trace().real() / tr;
}

double symmetricity(const DensityOperator& rho, const pairspace::PairBasis& basis) {
  return symmetricity(rho.matrix(), pairspace::build_permutation(basis));
}

ClassificationReport classify(const DensityOperator& rho, const pairspace::PairBasis& basis) {
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const ComplexMatrix& m = rho.matrix();
  const double scale = m.norm();

  ClassificationReport report{};
  report.symmetricity = symmetricity(m, p);
  const ComplexMatrix pm = p * m;
  report.residual_state_symmetric = (pm - m).norm() / scale;
  report.residual_state_antisymmetric = (pm + m).norm() / scale;
  report.residual_operator_symmetric = (pm * p - m).norm() / scale;

  // The stronger state-level property shadows the operator-level one.
  if (report.residual_state_symmetric <= tol::classify) {
    report.cls = SymmetryClass::StateSymmetric;
  } else if (report.residual_state_antisymmetric <= tol::classify) {
    report.cls = SymmetryClass::StateAntisymmetric;
  } else if (report.residual_operator_symmetric <= tol::classify) {
    report.cls = SymmetryClass::OperatorSymmetricOnly;
  } else {
    report.cls = SymmetryClass::NoDefiniteSymmetry;
  }
  return report;
}

ComplexMatrix operator_symmetrize(const ComplexMatrix& o, const ComplexMatrix& permutation) {
  if (o.rows() != permutation.rows() || o.cols() != permutation.cols()) {
    throw std::invalid_argument("operator_symmetrize: dimension mismatch");
  }
  return 0.5 * (o + permutation * o * permutation);
}

ComplexMatrix operator_antisymmetrize(const ComplexMatrix& o, const ComplexMatrix& permutation) {
  if (o.rows() != permutation.rows() || o.cols() != permutation.cols()) {
    throw std::invalid_argument("operator_antisymmetrize: dimension mismatch");
  }
  return 0.5 * (o - permutation * o * permutation);
}

ComplexMatrix operator_symmetrize(const ComplexMatrix& o, const pairspace::PairBasis& basis) {
  return operator_symmetrize(o, pairspace::build_permutation(basis));
}

ComplexMatrix operator_antisymmetrize(const ComplexMatrix& o, const pairspace::PairBasis& basis) {
  return operator_antisymmetrize(o, pairspace::build_permutation(basis));
}

ComplexMatrix symmetric_block_form(const DensityOperator& rho, const pairspace::PairBasis& basis) {
  const ClassificationReport report = classify(rho, basis);
  if (report.cls != SymmetryClass::StateSymmetric) {
    throw std::invalid_argument(
        "symmetric_block_form: input is not state-symmetric (P rho = rho fails; class " +
        to_string(report.cls) + ")");
  }
  const std::vector<Ket> sym = pairspace::sym_eigenbasis(basis);
  const int ns = basis.sym_dim();
  ComplexMatrix coeff(ns, ns);
  for (int r = 0; r < ns; ++r) {
    for (int c = 0; c < ns; ++c) {
      coeff(r, c) = sym[r].dot(rho.matrix() * sym[c]);
    }
  }
  return coeff;
}

ComplexMatrix symmetric_block_reconstruct(const ComplexMatrix& coefficients,
                                 const pairspace::PairBasis& basis) {
  const std::vector<Ket> sym = pairspace::sym_eigenbasis(basis);
  const int ns = basis.sym_dim();
  if (coefficients.rows() != ns || coefficients.cols() != ns) {
    throw std::invalid_argument("symmetric_block_reconstruct: coefficient matrix must be sym_dim^2");
  }
  ComplexMatrix out = ComplexMatrix::Zero(basis.pair_dim(), basis.pair_dim());
  for (int r = 0; r < ns; ++r) {
    for (int c = 0; c < ns; ++c) {
      out += coefficients(r, c) * (sym[r] * sym[c].adjoint());
    }
  }
  return out;
}

std::vector<SymmetryComponent> decompose_by_symmetry(const Ensemble& ensemble,
                                              const pairspace::PairBasis& basis) {
  ensemble.validate(basis);
  const ComplexMatrix rho = ensemble.density_matrix();
  const ComplexMatrix p = pairspace::build_permutation(basis);
  if ((p * rho * p - rho).norm() > tol::classify * rho.norm()) {
    throw std::invalid_argument("decompose_by_symmetry: ensemble density operator is not operator-symmetric");
  }

  std::vector<SymmetryComponent> components;
  for (std::size_t r = 0; r < ensemble.kets.size(); ++r) {
    const auto parts = pairspace::decompose_ket(ensemble.kets[r], basis);
    const double ns = parts.symmetric.squaredNorm();
    const double na = parts.antisymmetric.squaredNorm();
    // Near-zero parts are treated as exactly zero kets.
    if (ns > kZeroKetNorm2) {
      const Ket normalized = parts.symmetric / std::sqrt(ns);
      DensityOperator state(normalized * normalized.adjoint(), basis);
      components.push_back({ensemble.weights[r] * ns, std::move(state),
                            SymmetryClass::StateSymmetric});
    }
    if (na > kZeroKetNorm2) {
      const Ket normalized = parts.antisymmetric / std::sqrt(na);
      DensityOperator state(normalized * normalized.adjoint(), basis);
      components.push_back({ensemble.weights[r] * na, std::move(state),
                            SymmetryClass::StateAntisymmetric});
    }
  }
  return components;
}

PaosSplit split_paos(const DensityOperator& rho, const pairspace::PairBasis& basis) {
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const ComplexMatrix& m = rho.matrix();
  const double tr = rho.trace();
  const double sym = (p * m).trace().real();
  if (std::abs(sym) > tol::perfectly_asymmetric * std::abs(tr)) {
    throw std::invalid_argument("split_paos: input is not perfectly asymmetric (Tr P rho != 0)");
  }
  if ((p * m * p - m).norm() > tol::classify * m.norm()) {
    throw std::invalid_argument("split_paos: input is not operator-symmetric (P rho P != rho)");
  }
  const int n = basis.pair_dim();
  const ComplexMatrix s_proj = 0.5 * (ComplexMatrix::Identity(n, n) + p);
  const ComplexMatrix a_proj = 0.5 * (ComplexMatrix::Identity(n, n) - p);
  // Each block carries half the trace, so doubling restores unit trace.
  PaosSplit out{DensityOperator(2.0 / tr * (a_proj * m * a_proj), basis),
                DensityOperator(2.0 / tr * (s_proj * m * s_proj), basis)};
  return out;
}

PictureIdentityReport picture_identity_check(const ComplexMatrix& o, const Ket& psi,
                                             const Ket& phi, const pairspace::PairBasis& basis) {
  const int n = basis.pair_dim();
  if (o.rows() != n || o.cols() != n || psi.size() != n || phi.size() != n) {
    throw std::invalid_argument("picture_identity_check: dimensions must all be d^2");
  }
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const ComplexMatrix os = operator_symmetrize(o, p);
  const ComplexMatrix oa = operator_antisymmetrize(o, p);

  const auto psi_parts = pairspace::decompose_ket(psi, basis);
  const auto phi_parts = pairspace::decompose_ket(phi, basis);

  const ComplexMatrix anti_comm = p * os + os * p;
  const ComplexMatrix comm = p * oa - oa * p;

  const auto element = [&](const Ket& bra, const ComplexMatrix& op, const Ket& ket) {
    return bra.dot(op * ket);
  };

  PictureIdentityReport report{};
  report.residuals[0] = std::abs(element(psi_parts.symmetric, o, phi_parts.symmetric) -
                                 0.5 * element(psi, os + 0.5 * anti_comm, phi));
  report.residuals[1] = std::abs(element(psi_parts.antisymmetric, o, phi_parts.antisymmetric) -
                                 0.5 * element(psi, os - 0.5 * anti_comm, phi));
  report.residuals[2] = std::abs(element(psi_parts.symmetric, o, phi_parts.antisymmetric) -
                                 0.5 * element(psi, oa + 0.5 * comm, phi));
  report.residuals[3] = std::abs(element(psi_parts.antisymmetric, o, phi_parts.symmetric) -
                                 0.5 * element(psi, oa - 0.5 * comm, phi));
  report.scale = o.norm() * psi.norm() * phi.norm();
  return report;
}

Ket random_ket(std::uint64_t seed, int dim) {
  GaussianStream stream(seed);
  Ket k(dim);
  for (int i = 0; i < dim; ++i) k(i) = stream.next_complex();
  k.normalize();
  return k;
}

DensityOperator random_density(std::uint64_t seed, int d, DensityKind kind) {
  const pairspace::PairBasis basis(d);
  const int n = basis.pair_dim();
  GaussianStream stream(seed);

  ComplexMatrix rho;
  switch (kind) {
    case DensityKind::Generic:
      rho = generic_density_matrix(stream, n);
      break;
    case DensityKind::StateSymmetric:
      rho = eigenspace_density_matrix(stream, pairspace::build_symmetrizer(basis));
      break;
    case DensityKind::StateAntisymmetric:
      rho = eigenspace_density_matrix(stream, pairspace::build_antisymmetrizer(basis));
      break;
    case DensityKind::PerfectlyAsymmetric: {
      const ComplexMatrix p = pairspace::build_permutation(basis);
      const ComplexMatrix rho1 = generic_density_matrix(stream, n);
      ComplexMatrix rho2 = generic_density_matrix(stream, n);
      const double s1 = symmetricity(rho1, p);
      double s2 = symmetricity(rho2, p);
      if (s1 * s2 >= 0.0) {
        // Redraw the second operator inside the eigenspace of opposite sign;
        // its symmetricity is then exactly -+1.
        const ComplexMatrix proj = s1 >= 0.0 ? pairspace::build_antisymmetrizer(basis)
                                             : pairspace::build_symmetrizer(basis);
        rho2 = eigenspace_density_matrix(stream, proj);
        s2 = symmetricity(rho2, p);
      }
      const double alpha = s2 / (s2 - s1);
      rho = alpha * rho1 + (1.0 - alpha) * rho2;
      break;
    }
    case DensityKind::Paos: {
      const ComplexMatrix rho_s =
          eigenspace_density_matrix(stream, pairspace::build_symmetrizer(basis));
      const ComplexMatrix rho_a =
          eigenspace_density_matrix(stream, pairspace::build_antisymmetrizer(basis));
      rho = 0.5 * rho_s + 0.5 * rho_a;
      break;
    }
  }

  // Symmetrize away round-off so the validated constructor never sees noise.
  rho = 0.5 * (rho + rho.adjoint().eval());
  DensityOperator out(std::move(rho), basis);
  out.kind = kind;
  out.seed = seed;
  return out;
}

}  // namespace symflow::states
