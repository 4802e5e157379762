#include "symflow/symmap.hpp"

#include <cmath>
#include <stdexcept>

namespace symflow::symmap {

namespace {

constexpr int kMaxChannels = 8;
constexpr double kNonCpBound = 0.5;

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::ToAntisymmetric: return "to_antisymmetric";
    case ScheduleKind::ToSymmetric: return "to_symmetric";
    case ScheduleKind::Identity: return "identity";
    case ScheduleKind::Perpendicular: return "perpendicular";
    case ScheduleKind::Custom: return "custom";
  }
  return "unknown";
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "to_antisymmetric") return ScheduleKind::ToAntisymmetric;
  if (name == "to_symmetric") return ScheduleKind::ToSymmetric;
  if (name == "identity") return ScheduleKind::Identity;
  if (name == "perpendicular") return ScheduleKind::Perpendicular;
  if (name == "custom") return ScheduleKind::Custom;
  throw std::invalid_argument("unknown schedule kind: " + name);
}

Schedule::Schedule(CoefficientFn a, CoefficientFn s, double kappa, ScheduleKind kind,
                   bool initial_identity)
    : a_(std::move(a)), s_(std::move(s)), kappa_(kappa), kind_(kind),
      initial_identity_(initial_identity) {
  const ComplexVector a0 = a_(0.0);
  const ComplexVector s0 = s_(0.0);
  if (a0.size() != s0.size()) {
    throw std::invalid_argument("Schedule: a(t) and s(t) must have the same channel count");
  }
  if (a0.size() < 1 || a0.size() > kMaxChannels) {
    throw std::invalid_argument("Schedule: channel count must be in [1, 8]");
  }
  channels_ = static_cast<int>(a0.size());
}

void Schedule::validate(const std::vector<double>& sample_times) const {
  const ComplexVector a0 = a_(0.0);
  const ComplexVector s0 = s_(0.0);
  const double dt = 1e-9;
  if ((a_(dt) - a0).norm() > 1e-6 || (s_(dt) - s0).norm() > 1e-6) {
    throw std::invalid_argument("Schedule: coefficients are not continuous at t = 0");
  }
  if (std::abs(a0.squaredNorm() - 1.0) > 1e-10 || std::abs(s0.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("Schedule: ||a(0)||^2 and ||s(0)||^2 must equal 1");
  }
  if (initial_identity_ && (a0 - s0).norm() > 1e-12) {
    throw std::invalid_argument("Schedule: a(0) = s(0) required for an initial-identity schedule");
  }
  for (double t : sample_times) {
    if (std::abs(p(t) - 1.0) > 1e-10) {
      throw std::invalid_argument("Schedule: p(t) != 1 at t = " + std::to_string(t));
    }
    if (std::abs(m(t)) > 1.0 + 1e-10) {
      throw std::invalid_argument("Schedule: |m(t)| > 1 at t = " + std::to_string(t));
    }
  }
}

Schedule builtin_schedule(ScheduleKind kind, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("builtin_schedule: kappa must be > 0");
  switch (kind) {
    case ScheduleKind::ToAntisymmetric:
      return Schedule(
          [kappa](double t) {
            ComplexVector v(2);
            v << std::tanh(kappa * t), 1.0;
            return v;
          },
          [kappa](double t) {
            ComplexVector v(2);
            v << 0.0, sech(kappa * t);
            return v;
          },
          kappa, kind, /*initial_identity=*/true);
    case ScheduleKind::ToSymmetric:
      return Schedule(
          [kappa](double t) {
            ComplexVector v(2);
            v << 0.0, sech(kappa * t);
            return v;
          },
          [kappa](double t) {
            ComplexVector v(2);
            v << std::tanh(kappa * t), 1.0;
            return v;
          },
          kappa, kind, /*initial_identity=*/true);
    case ScheduleKind::Identity:
      return Schedule([](double) { return ComplexVector::Ones(1); },
                      [](double) { return ComplexVector::Ones(1); }, kappa, kind,
                      /*initial_identity=*/true);
    case ScheduleKind::Perpendicular:
      // a.s = 0 for all t with the same norms as to_antisymmetric; the map is
      // not the identity at t = 0.
      return Schedule(
          [kappa](double t) {
            ComplexVector v(3);
            v << std::tanh(kappa * t), 1.0, 0.0;
            return v;
          },
          [kappa](double t) {
            ComplexVector v(3);
            v << 0.0, 0.0, sech(kappa * t);
            return v;
          },
          kappa, kind, /*initial_identity=*/false);
    case ScheduleKind::Custom:
      break;
  }
  throw std::invalid_argument("builtin_schedule: no built-in realization for this kind");
}

ComplexMatrix apply_kraus_sum(const ComplexMatrix& sigma, const ComplexVector& a,
                              const ComplexVector& s, const ComplexMatrix& permutation) {
  const auto n = sigma.rows();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  const ComplexMatrix proj_a = 0.5 * (identity - permutation);
  const ComplexMatrix proj_s = 0.5 * (identity + permutation);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index alpha = 0; alpha < a.size(); ++alpha) {
    const ComplexMatrix w = a(alpha) * proj_a + s(alpha) * proj_s;
    out += w * sigma * w.adjoint();
  }
  return out;
}

ComplexMatrix apply_four_term(const ComplexMatrix& sigma, const ComplexVector& a,
                              const ComplexVector& s, const ComplexMatrix& permutation) {
  const ComplexVector sum = s + a;
  const ComplexVector diff = s - a;
  const Complex c_keep = 0.25 * sum.dot(sum);    // coefficient of sigma
  const Complex c_conj = 0.25 * diff.dot(diff);  // coefficient of P sigma P
  const Complex c_left = 0.25 * sum.dot(diff);   // coefficient of P sigma
  const Complex c_right = 0.25 * diff.dot(sum);  // coefficient of sigma P
  return c_keep * sigma + c_conj * (permutation * sigma * permutation) +
         c_left * (permutation * sigma) + c_right * (sigma * permutation);
}

ComplexMatrix apply_noncp(const ComplexMatrix& sigma, const ComplexVector& a,
                          const ComplexVector& s, const ComplexMatrix& permutation) {
  const double trace = sigma.trace().real();
  if (std::abs(trace) < 1e-12) {
    throw std::invalid_argument("apply_noncp: zero-trace input");
  }
  const double m = 0.5 * (s.squaredNorm() - a.squaredNorm());
  if (std::abs(m) > kNonCpBound + 1e-12) {
    throw std::invalid_argument(
        "apply_noncp: |m(t)| exceeds the uniform bound 1/2 required on the extended domain");
  }
  const double r_sigma = (permutation * sigma).trace().real() / trace;
  const ComplexVector diff = s - a;
  const ComplexVector sum = s + a;
  const double c_conj = 0.25 * diff.squaredNorm();
  const Complex c_left = 0.25 * sum.dot(diff);
  const Complex c_right = 0.25 * diff.dot(sum);
  return sigma + c_conj * (permutation * sigma * permutation - sigma) +
         c_left * (permutation * sigma - r_sigma * sigma) +
         c_right * (sigma * permutation - r_sigma * sigma);
}

states::DensityOperator apply_map(const states::DensityOperator& sigma, const Schedule& schedule,
                                  double t, const pairspace::PairBasis& basis) {
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const double sym_trace = (p * sigma.matrix()).trace().real();
  if (std::abs(sym_trace) > tol::perfectly_asymmetric * std::abs(sigma.trace())) {
    throw std::invalid_argument(
        "apply_map: input is not perfectly asymmetric (Tr P sigma != 0); use apply_map_noncp");
  }
  ComplexMatrix out = apply_four_term(sigma.matrix(), schedule.a(t), schedule.s(t), p);
  out = 0.5 * (out + out.adjoint().eval());
  return states::DensityOperator(std::move(out), basis);
}

states::DensityOperator apply_map_noncp(const states::DensityOperator& sigma,
                                        const Schedule& schedule, double t,
                                        const pairspace::PairBasis& basis) {
  const ComplexMatrix p = pairspace::build_permutation(basis);
  ComplexMatrix out = apply_noncp(sigma.matrix(), schedule.a(t), schedule.s(t), p);
  out = 0.5 * (out + out.adjoint().eval());
  // Positivity is certified by the validated constructor.
  return states::DensityOperator(std::move(out), basis);
}

ConservationReport symmetricity_conservation_check(const std::vector<ComplexMatrix>& kraus_ops,
                                                   const states::DensityOperator& sigma,
                                                   const pairspace::PairBasis& basis) {
  if (kraus_ops.empty()) {
    throw std::invalid_argument("symmetricity_conservation_check: empty operator set");
  }
  const ComplexMatrix p = pairspace::build_permutation(basis);
  const auto n = p.rows();

  ConservationReport report{};
  ComplexMatrix completeness = ComplexMatrix::Zero(n, n);
  ComplexMatrix image = ComplexMatrix::Zero(n, n);
  int n_symmetric = 0;
  int n_antisymmetric = 0;
  for (const ComplexMatrix& w : kraus_ops) {
    if (w.rows() != n || w.cols() != n) {
      throw std::invalid_argument("symmetricity_conservation_check: operator dimension mismatch");
    }
    const double scale = std::max(w.norm(), 1e-300);
    const ComplexMatrix commutator = w * p - p * w;
    const ComplexMatrix anticommutator = w * p + p * w;
    OperatorSymmetry cls = OperatorSymmetry::Indefinite;
    if (commutator.norm() <= 1e-10 * scale) {
      cls = OperatorSymmetry::Symmetric;
      ++n_symmetric;
    } else if (anticommutator.norm() <= 1e-10 * scale) {
      cls = OperatorSymmetry::Antisymmetric;
      ++n_antisymmetric;
    }
    report.operator_classes.push_back(cls);
    completeness += w.adjoint() * w;
    image += w * sigma.matrix() * w.adjoint();
  }
  report.completeness_residual = (completeness - ComplexMatrix::Identity(n, n)).norm();
  if (report.completeness_residual > 1e-9) {
    throw std::invalid_argument(
        "symmetricity_conservation_check: operators do not resolve the identity");
  }

  report.symmetricity_before = states::symmetricity(sigma.matrix(), p);
  report.symmetricity_after = states::symmetricity(image, p);

  const auto total = static_cast<int>(kraus_ops.size());
  if (n_symmetric == total) {
    report.expected_sign = 1;
    report.conservation_implied = true;
  } else if (n_antisymmetric == total) {
    report.expected_sign = -1;
    report.conservation_implied = true;
  } else {
    report.expected_sign = 0;
    report.conservation_implied = false;
    report.note = "conservation not implied: operator set mixes or lacks definite symmetry";
  }
  report.conserved =
      report.conservation_implied &&
      std::abs(report.symmetricity_after - report.expected_sign * report.symmetricity_before) <=
          1e-9;
  return report;
}

double renyi_entropy(const states::DensityOperator& rho) {
  if (!rho.normalized()) {
    throw std::invalid_argument("renyi_entropy: density operator must have unit trace");
  }
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  return -std::log(purity);
}

MapReport entropy_trajectory(const states::DensityOperator& sigma, const Schedule& schedule,
                             const std::vector<double>& times,
                             const pairspace::PairBasis& basis) {
  const ComplexMatrix p = pairspace::build_permutation(basis);

  MapReport report{};
  report.equal_purity_hypothesis = false;
  double purity_gap = -1.0;
  try {
    const states::PaosSplit split = states::split_paos(sigma, basis);
    const double pur_a = (split.antisymmetric.matrix() * split.antisymmetric.matrix()).trace().real();
    const double pur_s = (split.symmetric.matrix() * split.symmetric.matrix()).trace().real();
    purity_gap = std::abs(pur_a - pur_s);
    report.equal_purity_hypothesis = purity_gap <= 1e-10;
  } catch (const std::invalid_argument&) {
    // Not paos; the closed formula column stays a bound only.
  }
  if (!report.equal_purity_hypothesis) {
    report.note = purity_gap < 0.0
                      ? "input is not paos; closed entropy formula replaced by the general bound"
                      : "block purities differ; closed entropy formula replaced by the general bound";
  }

  const double s0 = renyi_entropy(sigma);
  report.samples.reserve(times.size());
  for (double t : times) {
    const states::DensityOperator image = apply_map(sigma, schedule, t, basis);
    EntropySample sample{};
    sample.t = t;
    sample.m_t = schedule.m(t);
    sample.symmetricity_measured = states::symmetricity(image.matrix(), p);
    sample.trace = image.trace();
    sample.renyi = -std::log((image.matrix() * image.matrix()).trace().real());
    sample.entropy_bound_rhs = s0 - std::log(2.0 - std::norm(schedule.a_dot_s(t)));
    sample.min_eigenvalue = min_eigenvalue(image.matrix());
    const double th = std::tanh(schedule.kappa() * t);
    sample.delta_formula = -std::log1p(th * th * th * th);
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace symflow::symmap
