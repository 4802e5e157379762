#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "support/test_helpers.hpp"
#include "symflow/cpcheck.hpp"
#include "symflow/pairspace.hpp"
#include "symflow/states.hpp"
#include "symflow/symmap.hpp"

using namespace symflow;
using namespace symflow::cpcheck;
using symflow::testing::max_abs_diff;

TEST_CASE("witness blocks") {
  const BlockWitness w = build_witness(0.4, -0.5);

  SUBCASE("the asymmetric block is the |++>/singlet mixture") {
    ComplexMatrix expected(4, 4);
    expected << 0.5, 0, 0, 0,
                0, 0.25, -0.25, 0,
                0, -0.25, 0.25, 0,
                0, 0, 0, 0;
    CHECK(max_abs_diff(w.blocks[0], expected) == 0.0);
    // Perfectly asymmetric and operator-symmetric as a two-qubit state.
    const pairspace::PairBasis basis(2);
    const states::DensityOperator rho(w.blocks[0], basis);
    CHECK(std::abs(states::symmetricity(rho, basis)) < 1e-15);
    CHECK(states::classify(rho, basis).cls == states::SymmetryClass::OperatorSymmetricOnly);
  }

  SUBCASE("the remaining blocks are delta |++><++|") {
    for (int k : {1, 2, 3}) {
      ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
      expected(0, 0) = 0.4;
      CHECK(max_abs_diff(w.blocks[k], expected) == 0.0);
      CHECK(max_abs_diff(w.mapped_blocks[k], expected) == 0.0);  // stationary
    }
  }

  SUBCASE("mapped asymmetric block matches the explicit entries") {
    // Diagonal (1+m)/2, (1-m)/4, (1-m)/4, 0; off-diagonal (m-1)/4.
    for (double m : {-0.5, -0.2, 0.0, 0.3, 0.5}) {
      const BlockWitness witness = build_witness(0.4, m);
      ComplexMatrix expected(4, 4);
      expected << 0.5 * (m + 1.0), 0, 0, 0,
                  0, 0.25 * (1.0 - m), 0.25 * (m - 1.0), 0,
                  0, 0.25 * (m - 1.0), 0.25 * (1.0 - m), 0,
                  0, 0, 0, 0;
      CHECK(max_abs_diff(witness.mapped_blocks[0], expected) < 1e-15);
      CHECK(is_hermitian(witness.mapped_blocks[0]));
      CHECK(std::abs(witness.mapped_blocks[0].trace().real() - 1.0) < 1e-15);
    }
    // Frozen values at m = -1/2, delta = 0.4: diagonal (1/4, 3/8, 3/8, 0),
    // off-diagonal -3/8.
    const BlockWitness frozen = build_witness(0.4, -0.5);
    CHECK(frozen.mapped_blocks[0](0, 0).real() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(frozen.mapped_blocks[0](1, 1).real() == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(frozen.mapped_blocks[0](1, 2).real() == doctest::Approx(-0.375).epsilon(1e-15));
  }

  SUBCASE("m = 0 leaves every block unchanged") {
    const BlockWitness identity_witness = build_witness(0.3, 0.0);
    CHECK(max_abs_diff(identity_witness.before, identity_witness.after) == 0.0);
  }

  SUBCASE("the mapped block agrees with the extended-domain map at a.s = 0") {
    const pairspace::PairBasis basis(2);
    const ComplexMatrix p = pairspace::build_permutation(basis);
    for (double m : {-0.5, -0.1, 0.25}) {
      const BlockWitness witness = build_witness(0.2, m);
      ComplexVector a(2), s(2);
      a << std::sqrt(1.0 - m), 0.0;
      s << 0.0, std::sqrt(1.0 + m);
      const ComplexMatrix via_map = symmap::apply_noncp(witness.blocks[0], a, s, p);
      CHECK(max_abs_diff(via_map, witness.mapped_blocks[0]) < 1e-12);
    }
  }

  CHECK_THROWS_AS(build_witness(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_witness(0.4, 0.7), std::invalid_argument);
}

TEST_CASE("certificate eigenvalues against the closed forms") {
  SUBCASE("before spectrum at delta = 0.25") {
    const Certificate cert = certify(build_witness(0.25, 0.0));
    // (1/2) 0.25 + 1/4 +- (1/4) sqrt(20/16 - 1 + 1) = 0.375 +- sqrt(1.25)/4.
    const double plus = 0.375 + 0.25 * std::sqrt(1.25);
    const double minus = 0.375 - 0.25 * std::sqrt(1.25);
    CHECK(plus == doctest::Approx(0.654508497187).epsilon(1e-10));
    CHECK(minus == doctest::Approx(0.095491502813).epsilon(1e-10));
    CHECK(cert.before_formula_residual < 1e-10);
    CHECK(cert.before_positive);
  }

  SUBCASE("closed forms across the delta range") {
    for (double delta = 0.05; delta < 0.46; delta += 0.05) {
      const Certificate cert = certify(build_witness(delta, -0.5));
      CAPTURE(delta);
      CHECK(cert.before_formula_residual < 1e-10);
      CHECK(cert.after_formula_residual < 1e-10);
      CHECK(cert.before_positive);
    }
  }

  SUBCASE("the counterexample instance") {
    const Certificate cert = certify(build_witness(0.4, -0.5));
    CHECK(cert.before_positive);
    CHECK_FALSE(cert.after_positive);
    CHECK(cert.inequality_predicts_negative);  // -0.5 < 2(0.4) - 1 = -0.2
    // Frozen closed-form value of the negative eigenvalue.
    const double expected = 0.25 * (-0.5) + 0.5 * 0.4 + 0.25 -
                            0.25 * std::sqrt(0.25 + 0.8 - 1.0 + 3.2 - 1.6 + 1.0);
    CHECK(cert.after_formula_value == doctest::Approx(expected).epsilon(1e-14));
    CHECK(cert.after_formula_value < -0.05);
    CHECK(cert.after_eigs.front() < -0.05);
  }

  SUBCASE("individual blocks stay positive for every |m| <= 1/2") {
    for (double m = -0.5; m <= 0.5 + 1e-9; m += 0.05) {
      const BlockWitness witness = build_witness(0.3, m);
      for (const auto& block : witness.mapped_blocks) {
        CHECK(min_eigenvalue(block) > -1e-12);
      }
    }
  }
}

TEST_CASE("grid scan") {
  std::vector<double> deltas, ms;
  for (double delta = 0.05; delta < 0.5; delta += 0.05) deltas.push_back(delta);
  for (double m = -0.5; m <= 0.5 + 1e-9; m += 0.125) ms.push_back(m);
  const auto cells = scan(deltas, ms);
  REQUIRE(cells.size() == deltas.size() * ms.size());

  bool found_counterexample = false;
  for (const auto& cell : cells) {
    CHECK(cell.before_positive);  // delta < 1/2 keeps the assembled matrix positive
    if (cell.predicted_negative) {
      // The inequality is sufficient for negativity.
      CHECK_FALSE(cell.after_positive);
      CHECK_FALSE(cell.prediction_mismatch);
    }
    if (cell.m == 0.0) CHECK(cell.after_positive);
    if (cell.before_positive && !cell.after_positive) found_counterexample = true;
  }
  // Machine-checked conclusion: some admissible cell is positive before and
  // not after, so the map is not two-positive.
  CHECK(found_counterexample);

  SUBCASE("specific cells") {
    const auto cert_strong = certify(build_witness(0.49, -0.5));
    CHECK(cert_strong.inequality_predicts_negative);
    CHECK_FALSE(cert_strong.after_positive);
    const auto cert_weak = certify(build_witness(0.1, -0.5));
    CHECK_FALSE(cert_weak.inequality_predicts_negative);  // -0.5 > 2(0.1) - 1
  }

  SUBCASE("grid validation") {
    CHECK_THROWS_AS(scan({0.6}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(scan({0.3}, {0.8}), std::invalid_argument);
  }
}
