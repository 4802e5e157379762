#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "support/test_helpers.hpp"
#include "symflow/pairspace.hpp"
#include "symflow/states.hpp"
#include "symflow/symmap.hpp"

using namespace symflow;
using namespace symflow::symmap;
using pairspace::PairBasis;
using states::DensityKind;
using states::DensityOperator;
using symflow::testing::max_abs_diff;

namespace {

DensityOperator equal_purity_paos(const PairBasis& basis, std::size_t sym_pick = 0,
                                  std::size_t asym_pick = 0) {
  const auto sym = pairspace::sym_eigenbasis(basis);
  const auto asym = pairspace::asym_eigenbasis(basis);
  const ComplexMatrix rho = 0.5 * (sym[sym_pick] * sym[sym_pick].adjoint()) +
                            0.5 * (asym[asym_pick] * asym[asym_pick].adjoint());
  return DensityOperator(rho, basis);
}

}  // namespace

TEST_CASE("built-in schedules satisfy their constraints") {
  const std::vector<double> times{0.0, 0.1, 0.5, 1.0, 2.5, 6.0};

  SUBCASE("to_antisymmetric norms and start point") {
    const Schedule schedule = builtin_schedule(ScheduleKind::ToAntisymmetric, 1.0);
    schedule.validate(times);
    CHECK(schedule.initial_identity());
    const ComplexVector a0 = schedule.a(0.0);
    const ComplexVector s0 = schedule.s(0.0);
    CHECK(std::abs(a0(0)) < 1e-15);
    CHECK(std::abs(a0(1) - 1.0) < 1e-15);
    CHECK((a0 - s0).norm() < 1e-15);
    for (double t : times) {
      CHECK(schedule.a_norm2(t) ==
            doctest::Approx(std::pow(std::tanh(t), 2) + 1.0).epsilon(1e-12));
      CHECK(schedule.s_norm2(t) == doctest::Approx(std::pow(1.0 / std::cosh(t), 2)).epsilon(1e-12));
    }
  }

  SUBCASE("schedule m(t) values") {
    const Schedule anti = builtin_schedule(ScheduleKind::ToAntisymmetric, 1.0);
    // kappa t = 2: m = (sech^2 - tanh^2 - 1)/2 = -tanh^2(2).
    CHECK(anti.m(2.0) == doctest::Approx(-std::pow(std::tanh(2.0), 2)).epsilon(1e-12));
    const Schedule sym = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    CHECK(sym.m(2.0) == doctest::Approx(std::pow(std::tanh(2.0), 2)).epsilon(1e-12));
    CHECK(sym.m(20.0) == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("kappa scales the clock") {
    const Schedule fast = builtin_schedule(ScheduleKind::ToSymmetric, 2.0);
    CHECK(fast.m(1.0) == doctest::Approx(std::pow(std::tanh(2.0), 2)).epsilon(1e-12));
  }

  SUBCASE("perpendicular schedule has orthogonal coefficients and unit start norms") {
    const Schedule perp = builtin_schedule(ScheduleKind::Perpendicular, 1.0);
    CHECK_FALSE(perp.initial_identity());
    perp.validate(times);
    for (double t : times) {
      CHECK(std::abs(perp.a_dot_s(t)) < 1e-15);
      CHECK(perp.p(t) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("identity schedule") {
    const Schedule id = builtin_schedule(ScheduleKind::Identity, 1.0);
    id.validate(times);
    CHECK(id.m(3.0) == 0.0);
  }

  CHECK_THROWS_AS(builtin_schedule(ScheduleKind::ToSymmetric, 0.0), std::invalid_argument);
}

TEST_CASE("operator-sum action on the perfectly asymmetric domain") {
  for (int d : {2, 3}) {
    const PairBasis basis(d);
    const ComplexMatrix p = pairspace::build_permutation(basis);

    SUBCASE("identity schedule acts as the identity") {
      const auto sigma = states::random_density(40, d, DensityKind::PerfectlyAsymmetric);
      const Schedule id = builtin_schedule(ScheduleKind::Identity, 1.0);
      const auto image = apply_map(sigma, id, 5.0, basis);
      CHECK(max_abs_diff(image.matrix(), sigma.matrix()) < 1e-12);
    }

    SUBCASE("literal channel sum equals the four-term expansion") {
      const auto sigma = states::random_density(41, d, DensityKind::PerfectlyAsymmetric);
      for (auto kind : {ScheduleKind::ToAntisymmetric, ScheduleKind::ToSymmetric,
                        ScheduleKind::Perpendicular}) {
        const Schedule schedule = builtin_schedule(kind, 1.3);
        for (double t : {0.0, 0.4, 1.7}) {
          const ComplexMatrix literal =
              apply_kraus_sum(sigma.matrix(), schedule.a(t), schedule.s(t), p);
          const ComplexMatrix expanded =
              apply_four_term(sigma.matrix(), schedule.a(t), schedule.s(t), p);
          CHECK(max_abs_diff(literal, expanded) < 1e-12);
        }
      }
    }

    SUBCASE("trace, positivity and symmetricity track m(t)") {
      for (int rep = 0; rep < 100; ++rep) {
        const auto sigma =
            states::random_density(4200 + rep, d, DensityKind::PerfectlyAsymmetric);
        const Schedule schedule = builtin_schedule(
            rep % 2 == 0 ? ScheduleKind::ToAntisymmetric : ScheduleKind::ToSymmetric, 1.0);
        for (double t : {0.0, 0.3, 0.8, 1.5, 2.5, 4.0, 6.0, 8.0, 12.0, 16.0}) {
          const auto image = apply_map(sigma, schedule, t, basis);
          CHECK(std::abs(image.trace() - sigma.trace()) < 1e-10);
          const double expected = (rep % 2 == 0 ? -1.0 : 1.0) * std::pow(std::tanh(t), 2);
          CHECK(std::abs(states::symmetricity(image, basis) - expected) < 1e-10);
        }
      }
    }

    SUBCASE("non-asymmetric input is pointed at the extended map") {
      const auto sigma = states::random_density(43, d, DensityKind::Generic);
      const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
      CHECK_THROWS_WITH_AS(apply_map(sigma, schedule, 1.0, basis),
                           doctest::Contains("apply_map_noncp"), std::invalid_argument);
    }
  }
}

TEST_CASE("trace drift formula off the asymmetric domain") {
  // Pushing a generic sigma through the bare channel sum drifts the trace as
  // p(t) Tr sigma + m(t) Tr P sigma.
  const PairBasis basis(3);
  const ComplexMatrix p = pairspace::build_permutation(basis);
  for (int rep = 0; rep < 20; ++rep) {
    const auto sigma = states::random_density(4400 + rep, 3, DensityKind::Generic);
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    for (double t : {0.5, 1.5}) {
      const ComplexMatrix image = apply_kraus_sum(sigma.matrix(), schedule.a(t), schedule.s(t), p);
      const double predicted = schedule.p(t) * sigma.trace() +
                               schedule.m(t) * (p * sigma.matrix()).trace().real();
      CHECK(image.trace().real() == doctest::Approx(predicted).epsilon(1e-10));
      // Symmetricity transfer follows the mirrored formula.
      const double sym_predicted = schedule.m(t) * sigma.trace() +
                                   schedule.p(t) * (p * sigma.matrix()).trace().real();
      CHECK((p * image).trace().real() == doctest::Approx(sym_predicted).epsilon(1e-10));
    }
  }
}

TEST_CASE("trace-preserving extension") {
  const PairBasis basis(2);
  const ComplexMatrix p = pairspace::build_permutation(basis);

  SUBCASE("state-symmetric and antisymmetric inputs are stationary") {
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    const double t = 0.45;  // |m| = tanh^2(0.45) < 1/2 keeps the bound satisfied
    for (auto kind : {DensityKind::StateSymmetric, DensityKind::StateAntisymmetric}) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto sigma = states::random_density(4600 + rep, 2, kind);
        const auto image = apply_map_noncp(sigma, schedule, t, basis);
        CHECK(max_abs_diff(image.matrix(), sigma.matrix()) < 1e-10);
      }
    }
  }

  SUBCASE("agrees with the operator-sum map on the shared domain") {
    const Schedule schedule = builtin_schedule(ScheduleKind::ToAntisymmetric, 1.0);
    const double t = 0.5;
    for (int rep = 0; rep < 20; ++rep) {
      const auto sigma = states::random_density(4700 + rep, 2, DensityKind::PerfectlyAsymmetric);
      const auto restricted = apply_map(sigma, schedule, t, basis);
      const auto extended = apply_map_noncp(sigma, schedule, t, basis);
      CHECK(max_abs_diff(restricted.matrix(), extended.matrix()) < 1e-10);
    }
  }

  SUBCASE("orthogonal schedules on operator-symmetric inputs reduce to 1 + m P") {
    const Schedule perp = builtin_schedule(ScheduleKind::Perpendicular, 1.0);
    const auto sigma = states::random_density(48, 2, DensityKind::Paos);
    const double t = 0.6;
    const ComplexMatrix image = apply_noncp(sigma.matrix(), perp.a(t), perp.s(t), p);
    const ComplexMatrix expected =
        (ComplexMatrix::Identity(4, 4) + perp.m(t) * p) * sigma.matrix();
    CHECK(max_abs_diff(image, expected) < 1e-12);
  }

  SUBCASE("trace is preserved exactly for any input") {
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
      const auto sigma = states::random_density(4900 + rep, 2, DensityKind::Generic);
      const ComplexMatrix image =
          apply_noncp(sigma.matrix(), schedule.a(0.4), schedule.s(0.4), p);
      CHECK(std::abs(image.trace().real() - sigma.trace()) < 1e-12);
      CHECK(max_abs_diff(image, image.adjoint()) < 1e-12);
    }
  }

  SUBCASE("the uniform bound on m is enforced") {
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    const auto sigma = states::random_density(50, 2, DensityKind::Generic);
    // tanh^2(2) ~ 0.93 > 1/2.
    CHECK_THROWS_WITH_AS(apply_map_noncp(sigma, schedule, 2.0, basis),
                         doctest::Contains("uniform bound"), std::invalid_argument);
  }

  SUBCASE("zero trace is rejected") {
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    CHECK_THROWS_AS(apply_noncp(ComplexMatrix::Zero(4, 4), schedule.a(0.1), schedule.s(0.1), p),
                    std::invalid_argument);
  }
}

TEST_CASE("norm constraint identity for trace-preserving coefficient pairs") {
  // (s+a).(s+a) = 4 - ||s-a||^2 - 2 Re[(s-a).(s+a)] r for schedules satisfying
  // the trace-preservation constraint p = 1 - r m.
  SUBCASE("built-in schedules at r = 0") {
    for (auto kind : {ScheduleKind::ToAntisymmetric, ScheduleKind::ToSymmetric,
                      ScheduleKind::Perpendicular, ScheduleKind::Identity}) {
      const Schedule schedule = builtin_schedule(kind, 1.0);
      for (double t : {0.0, 0.5, 2.0}) {
        const ComplexVector a = schedule.a(t);
        const ComplexVector s = schedule.s(t);
        const double lhs = (s + a).squaredNorm();
        const double rhs = 4.0 - (s - a).squaredNorm();
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }
    }
  }

  SUBCASE("synthetic pair at r != 0") {
    // Norms chosen so p = 1 - r m, the trace-preservation constraint for
    // inputs of symmetricity ratio r.
    const double r = 0.3;
    const double m = 0.25;
    const double p_val = 1.0 - r * m;
    ComplexVector a(2), s(2);
    a << std::sqrt(p_val - m), 0.0;
    s << 0.0, std::sqrt(p_val + m);
    const double lhs = (s + a).squaredNorm();
    const double rhs =
        4.0 - (s - a).squaredNorm() - 2.0 * ((s - a).dot(s + a)).real() * r;
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("symmetricity conservation for definite-symmetry channel sets") {
  const PairBasis basis(2);
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const ComplexMatrix identity = ComplexMatrix::Identity(4, 4);
  const auto sigma = states::random_density(60, 2, DensityKind::Generic);

  SUBCASE("single symmetric unitary conserves exactly") {
    // exp(i phi P) commutes with P.
    const ComplexMatrix w = std::cos(0.7) * identity + Complex(0, std::sin(0.7)) * p;
    const auto report = symmetricity_conservation_check({w}, sigma, basis);
    CHECK(report.conservation_implied);
    CHECK(report.expected_sign == 1);
    CHECK(report.conserved);
    CHECK(std::abs(report.symmetricity_after - report.symmetricity_before) < 1e-12);
  }

  SUBCASE("pair {1/sqrt2, P/sqrt2} conserves") {
    const double w = 1.0 / std::sqrt(2.0);
    const auto report =
        symmetricity_conservation_check({w * identity, w * p}, sigma, basis);
    CHECK(report.conservation_implied);
    CHECK(report.conserved);
  }

  SUBCASE("indefinite operator set is flagged and moves the symmetricity") {
    // W1 mixes the symmetry blocks; completed to a resolution of the identity.
    const auto sym = pairspace::sym_eigenbasis(basis);
    const auto asym = pairspace::asym_eigenbasis(basis);
    const ComplexMatrix cross = sym[1] * asym[0].adjoint();
    const ComplexMatrix w1 = 0.5 * identity + 0.5 * (cross + cross.adjoint());
    // Complete: W2 = sqrt(1 - W1^dag W1).
    const ComplexMatrix remainder = identity - w1.adjoint() * w1;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(remainder);
    const ComplexMatrix w2 = solver.eigenvectors() *
                             solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                             solver.eigenvectors().adjoint();
    const auto report = symmetricity_conservation_check({w1, w2}, sigma, basis);
    CHECK_FALSE(report.conservation_implied);
    CHECK(report.note == "conservation not implied: operator set mixes or lacks definite symmetry");
    CHECK(std::abs(report.symmetricity_after - report.symmetricity_before) > 1e-4);
  }

  SUBCASE("incomplete operator sets are rejected") {
    CHECK_THROWS_AS(symmetricity_conservation_check({0.5 * identity}, sigma, basis),
                    std::invalid_argument);
  }
}

TEST_CASE("collision entropy") {
  const PairBasis basis(3);

  SUBCASE("requires unit trace") {
    const auto rho = states::random_density(70, 3, DensityKind::Generic);
    CHECK(renyi_entropy(rho) > 0.0);
    const DensityOperator scaled(2.0 * rho.matrix(), basis);
    CHECK_THROWS_AS(renyi_entropy(scaled), std::invalid_argument);
  }

  SUBCASE("closed formula on equal-purity inputs") {
    const auto sigma = equal_purity_paos(basis);
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    const std::vector<double> times{0.0, 0.2, 0.7, 1.5, 3.0, 5.0, 8.0};
    const auto report = entropy_trajectory(sigma, schedule, times, basis);
    REQUIRE(report.equal_purity_hypothesis);
    const double s0 = report.samples.front().renyi;
    for (const auto& sample : report.samples) {
      CHECK(std::abs(sample.renyi - s0 - sample.delta_formula) < 1e-10);
      // Purity transfer: Tr rho(t)^2 = (a^4 + s^4)/2 Tr rho^2.
      const double a2 = schedule.a_norm2(sample.t);
      const double s2 = schedule.s_norm2(sample.t);
      const double predicted = 0.5 * (a2 * a2 + s2 * s2) * std::exp(-s0);
      CHECK(std::exp(-sample.renyi) == doctest::Approx(predicted).epsilon(1e-10));
      // General bound.
      CHECK(sample.renyi >= sample.entropy_bound_rhs - 1e-10);
    }
    // Entropy decreases monotonically and lands at S_R(0) - ln 2.
    for (std::size_t k = 1; k < report.samples.size(); ++k) {
      CHECK(report.samples[k].renyi <= report.samples[k - 1].renyi + 1e-12);
    }
    CHECK(std::abs(report.samples.back().renyi - (s0 - std::log(2.0))) < 1e-6);
  }

  SUBCASE("mixed equal-purity blocks also satisfy the formula") {
    const auto sym = pairspace::sym_eigenbasis(basis);
    const auto asym = pairspace::asym_eigenbasis(basis);
    const double w = 0.7;
    const ComplexMatrix rho_s =
        w * (sym[0] * sym[0].adjoint()) + (1.0 - w) * (sym[2] * sym[2].adjoint());
    const ComplexMatrix rho_a =
        w * (asym[0] * asym[0].adjoint()) + (1.0 - w) * (asym[1] * asym[1].adjoint());
    const DensityOperator sigma(0.5 * rho_s + 0.5 * rho_a, basis);
    const Schedule schedule = builtin_schedule(ScheduleKind::ToAntisymmetric, 1.0);
    const auto report = entropy_trajectory(sigma, schedule, {0.0, 1.0, 2.0}, basis);
    REQUIRE(report.equal_purity_hypothesis);
    const double s0 = report.samples.front().renyi;
    for (const auto& sample : report.samples) {
      CHECK(std::abs(sample.renyi - s0 - sample.delta_formula) < 1e-10);
    }
  }

  SUBCASE("identity-coefficient schedules keep the entropy constant") {
    const auto sigma = equal_purity_paos(basis, 1, 1);
    const Schedule id = builtin_schedule(ScheduleKind::Identity, 1.0);
    const auto report = entropy_trajectory(sigma, id, {0.0, 1.0, 4.0}, basis);
    const double s0 = report.samples.front().renyi;
    for (const auto& sample : report.samples) {
      CHECK(std::abs(sample.renyi - s0) < 1e-12);
    }
  }

  SUBCASE("unequal purities downgrade to the bound") {
    const auto sym = pairspace::sym_eigenbasis(basis);
    const auto asym = pairspace::asym_eigenbasis(basis);
    const ComplexMatrix rho_s = 0.5 * (sym[0] * sym[0].adjoint()) + 0.5 * (sym[1] * sym[1].adjoint());
    const ComplexMatrix rho_a = asym[0] * asym[0].adjoint();
    const DensityOperator sigma(0.5 * rho_s + 0.5 * rho_a, basis);
    const Schedule schedule = builtin_schedule(ScheduleKind::ToSymmetric, 1.0);
    const auto report = entropy_trajectory(sigma, schedule, {0.0, 1.0}, basis);
    CHECK_FALSE(report.equal_purity_hypothesis);
    CHECK(report.note == "block purities differ; closed entropy formula replaced by the general bound");
    for (const auto& sample : report.samples) {
      CHECK(sample.renyi >= sample.entropy_bound_rhs - 1e-10);
    }
  }

  SUBCASE("perpendicular schedules respect the -ln 2 floor") {
    const auto sigma = equal_purity_paos(basis);
    const Schedule perp = builtin_schedule(ScheduleKind::Perpendicular, 1.0);
    const auto report = entropy_trajectory(sigma, perp, {0.0, 0.5, 2.0, 6.0}, basis);
    const double s0 = renyi_entropy(sigma);
    for (const auto& sample : report.samples) {
      CHECK(sample.renyi - s0 >= -std::log(2.0) - 1e-10);
    }
  }
}
