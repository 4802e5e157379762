#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace symflow {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Ket = Eigen::VectorXcd;

// Tolerances shared across modules. Matrices stay below 256x256, so double
// precision leaves ample headroom at these thresholds.
namespace tol {
inline constexpr double hermitian = 1e-10;        // max |M - M^dag| entrywise
inline constexpr double norm = 1e-10;             // | ||k|| - 1 |
inline constexpr double positive = 1e-9;          // min eig >= -positive * trace_norm
inline constexpr double classify = 1e-9;          // relative Frobenius residual
inline constexpr double perfectly_asymmetric = 1e-9;  // |Tr P rho| <= . * Tr rho
}  // namespace tol

/// Sum of singular values (equals the sum of |eigenvalues| for Hermitian input).
double trace_norm(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermitian);

/// Positivity relative to the trace norm: min eigenvalue >= -tolerance * trace_norm.
bool is_positive_semidefinite(const ComplexMatrix& m, double tolerance = tol::positive);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& hermitian_matrix);

/// Deterministic standard-normal stream: mt19937_64 feeding 53-bit uniforms in
/// (0, 1] through Box-Muller. Unlike std::normal_distribution, the output is
/// identical across standard libraries for a given seed.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next();
  Complex next_complex();  // independent N(0,1) real and imaginary parts

 private:
  double uniform01();  // in (0, 1]

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace symflow
