#include "symflow/types.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace symflow {

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& hermitian_matrix) {
  return hermitian_eigenvalues(hermitian_matrix).minCoeff();
}

bool is_positive_semidefinite(const ComplexMatrix& m, double tolerance) {
  if (!is_hermitian(m, tol::hermitian)) return false;
  const Eigen::VectorXd eigs = hermitian_eigenvalues(m);
  return eigs.minCoeff() >= -tolerance * eigs.cwiseAbs().sum();
}

double GaussianStream::uniform01() {
  // Top 53 bits, mapped to (0, 1] so log() below is always finite.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex GaussianStream::next_complex() {
  const double re = next();
  const double im = next();
  return {re, im};
}

}  // namespace symflow
