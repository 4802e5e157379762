#include "symflow/cpcheck.hpp"

#include <cmath>
#include <stdexcept>

#include "symflow/pairspace.hpp"

namespace symflow::cpcheck {

namespace {

constexpr double kEigTolerance = 1e-10;

// Basis order |++>, |+->, |-+>, |-->; the exchange operator swaps the middle
// two coordinates.
ComplexMatrix two_qubit_swap() {
  const pairspace::PairBasis basis(2);
  return pairspace::build_permutation(basis);
}

ComplexMatrix asymmetric_block() {
  ComplexMatrix m(4, 4);
  m << 0.5, 0.0, 0.0, 0.0,
       0.0, 0.25, -0.25, 0.0,
       0.0, -0.25, 0.25, 0.0,
       0.0, 0.0, 0.0, 0.0;
  return m;
}

ComplexMatrix symmetric_block(double delta) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = delta;
  return m;
}

ComplexMatrix assemble(const std::array<ComplexMatrix, 4>& blocks) {
  ComplexMatrix out(8, 8);
  out.block(0, 0, 4, 4) = blocks[0];
  out.block(0, 4, 4, 4) = blocks[1];
  out.block(4, 0, 4, 4) = blocks[2];
  out.block(4, 4, 4, 4) = blocks[3];
  return out;
}

}  // namespace

BlockWitness build_witness(double delta, double m) {
  if (!(delta > 0.0)) throw std::invalid_argument("build_witness: delta must be > 0");
  if (std::abs(m) > 0.5 + 1e-12) {
    throw std::invalid_argument("build_witness: |m| must not exceed 1/2");
  }

  BlockWitness w;
  w.delta = delta;
  w.m = m;
  w.blocks = {asymmetric_block(), symmetric_block(delta), symmetric_block(delta),
              symmetric_block(delta)};

  // The 11 block is perfectly asymmetric and operator-symmetric, so the map
  // reduces to (1 + m P); the delta blocks are state-symmetric and stationary.
  const ComplexMatrix p = two_qubit_swap();
  const ComplexMatrix identity = ComplexMatrix::Identity(4, 4);
  w.mapped_blocks = w.blocks;
  w.mapped_blocks[0] = (identity + m * p) * w.blocks[0];

  w.before = assemble(w.blocks);
  w.after = assemble(w.mapped_blocks);
  return w;
}

Certificate certify(const BlockWitness& witness) {
  Certificate cert{};
  cert.delta = witness.delta;
  cert.m = witness.m;

  const Eigen::VectorXd before = hermitian_eigenvalues(witness.before);
  const Eigen::VectorXd after = hermitian_eigenvalues(witness.after);
  cert.before_eigs.assign(before.data(), before.data() + before.size());
  cert.after_eigs.assign(after.data(), after.data() + after.size());
  cert.before_positive = before.minCoeff() >= -kEigTolerance;
  cert.after_positive = after.minCoeff() >= -kEigTolerance;

  const double delta = witness.delta;
  const double m = witness.m;
  const double root_before = 0.25 * std::sqrt(20.0 * delta * delta - 4.0 * delta + 1.0);
  cert.before_formula_values = {0.5 * delta + 0.25 + root_before,
                                0.5 * delta + 0.25 - root_before, 0.5, 0.0};
  cert.after_formula_value =
      0.25 * m + 0.5 * delta + 0.25 -
      0.25 * std::sqrt(m * m - 4.0 * m * delta + 2.0 * m + 20.0 * delta * delta -
                       4.0 * delta + 1.0);

  const auto closest_distance = [](const Eigen::VectorXd& eigs, double target) {
    return (eigs.array() - target).abs().minCoeff();
  };
  cert.before_formula_residual = 0.0;
  for (double value : cert.before_formula_values) {
    cert.before_formula_residual =
        std::max(cert.before_formula_residual, closest_distance(before, value));
  }
  cert.after_formula_residual = closest_distance(after, cert.after_formula_value);
  cert.inequality_predicts_negative = m < 2.0 * delta - 1.0;
  return cert;
}

std::vector<ScanCell> scan(const std::vector<double>& deltas, const std::vector<double>& ms) {
  std::vector<ScanCell> cells;
  cells.reserve(deltas.size() * ms.size());
  for (double delta : deltas) {
    if (!(delta > 0.0) || delta >= 0.5) {
      throw std::invalid_argument("scan: delta grid must lie inside (0, 1/2)");
    }
    for (double m : ms) {
      if (std::abs(m) > 0.5 + 1e-12) {
        throw std::invalid_argument("scan: m grid must lie inside [-1/2, 1/2]");
      }
      const Certificate cert = certify(build_witness(delta, m));
      ScanCell cell{};
      cell.delta = delta;
      cell.m = m;
      cell.before_positive = cert.before_positive;
      cell.after_positive = cert.after_positive;
      cell.predicted_negative = cert.inequality_predicts_negative;
      cell.prediction_mismatch = cell.predicted_negative && cell.after_positive;
      cell.min_after_eig = cert.after_eigs.front();
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace symflow::cpcheck
