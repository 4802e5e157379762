#pragma once

#include <array>
#include <vector>

#include "symflow/types.hpp"

namespace symflow::cpcheck {

/// Two-qubit witness for the failure of two-positivity of the extended-domain
/// map: four 4x4 blocks assembled into 8x8 matrices before and after the map.
/// The 11 block is the perfectly asymmetric, operator-symmetric mixture of
/// |++><++| and the singlet projector; the others are delta |++><++|.
struct BlockWitness {
  double delta;  // in (0, 1/2) for a positive "before" matrix
  double m;      // map parameter, in [-1/2, 1/2]
  std::array<ComplexMatrix, 4> blocks;         // M_11, M_12, M_21, M_22
  std::array<ComplexMatrix, 4> mapped_blocks;  // images under the map
  ComplexMatrix before;  // sum E_ij (x) M_ij
  ComplexMatrix after;   // sum E_ij (x) Lambda(M_ij)
};

BlockWitness build_witness(double delta, double m);

struct Certificate {
  double delta;
  double m;
  std::vector<double> before_eigs;  // ascending
  std::vector<double> after_eigs;   // ascending
  bool before_positive;
  bool after_positive;
  // Closed-form eigenvalues of the "before" matrix and the smallest closed-form
  // eigenvalue of the "after" matrix, with their distances to the computed
  // spectra.
  std::array<double, 4> before_formula_values;
  double after_formula_value;
  double before_formula_residual;  // max over the four closed-form values
  double after_formula_residual;
  bool inequality_predicts_negative;  // m < 2 delta - 1 (sufficient, not necessary)
};

Certificate certify(const BlockWitness& witness);

struct ScanCell {
  double delta;
  double m;
  bool before_positive;
  bool after_positive;
  bool predicted_negative;   // the sufficient inequality fired
  bool prediction_mismatch;  // predicted negative yet the spectrum is positive
  double min_after_eig;
};

/// Grid sweep over (delta, m) in (0, 1/2) x [-1/2, 1/2].
std::vector<ScanCell> scan(const std::vector<double>& deltas, const std::vector<double>& ms);

}  // namespace symflow::cpcheck
