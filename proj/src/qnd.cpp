#include "symflow/qnd.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace symflow::qnd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureTol = 1e-9;
constexpr int kMaxDepth = 40;

double coth(double y) { return 1.0 / std::tanh(y); }

// Integrand of the exponent with the endpoint written as 2 sin^2(theta x / 2)
// so 1 - cos never cancels catastrophically. Finite limit theta^2/b at x = 0.
double exponential_cutoff_integrand(double x, double theta, double b) {
  if (x < 1e-14) return theta * theta / b;
  const double s = std::sin(0.5 * theta * x);
  return std::exp(-x) * 2.0 * s * s / x * coth(0.5 * b * x);
}

double step_cutoff_integrand(double x, double theta, double b) {
  if (x < 1e-14) return theta * theta / b;
  const double s = std::sin(0.5 * theta * x);
  return 2.0 * s * s / x * coth(0.5 * b * x);
}

struct SeriesCoefficients {
  double a0, a2, a4;  // even Taylor coefficients of the x = 0 regular part
};

// (1 - cos(theta x))/x * coth(b x / 2) = a0 + a2 x^2 + a4 x^4 + O(x^6),
// valid while theta x and b x stay small.
SeriesCoefficients endpoint_series(double theta, double b) {
  const double t2 = theta * theta;
  const double t4 = t2 * t2;
  const double t6 = t4 * t2;
  SeriesCoefficients c;
  c.a0 = t2 / b;
  c.a2 = t2 * b / 12.0 - t4 / (12.0 * b);
  c.a4 = -t2 * b * b * b / 720.0 - t4 * b / 144.0 + t6 / (360.0 * b);
  return c;
}

// Integral over [0, eps] of the series times e^{-x} (exponential cutoff).
double endpoint_integral_exponential(double eps, double theta, double b) {
  const SeriesCoefficients c = endpoint_series(theta, b);
  const double c0 = c.a0;
  const double c1 = -c.a0;
  const double c2 = c.a0 / 2.0 + c.a2;
  const double c3 = -c.a0 / 6.0 - c.a2;
  const double c4 = c.a0 / 24.0 + c.a2 / 2.0 + c.a4;
  double x = eps;
  double out = c0 * x;
  x *= eps;
  out += c1 * x / 2.0;
  x *= eps;
  out += c2 * x / 3.0;
  x *= eps;
  out += c3 * x / 4.0;
  x *= eps;
  out += c4 * x / 5.0;
  return out;
}

// Integral over [0, eps] of the bare series (step cutoff).
double endpoint_integral_step(double eps, double theta, double b) {
  const SeriesCoefficients c = endpoint_series(theta, b);
  const double e3 = eps * eps * eps;
  const double e5 = e3 * eps * eps;
  return c.a0 * eps + c.a2 * e3 / 3.0 + c.a4 * e5 / 5.0;
}

double pick_x_small(double theta, double b) {
  double eps = 1e-3;
  if (theta > 100.0) eps = std::min(eps, 0.1 / theta);
  if (b > 100.0) eps = std::min(eps, 0.1 / b);
  return eps;
}

struct SimpsonState {
  long evals = 0;
  double error = 0.0;
  bool converged = true;
};

double simpson_recurse(const std::function<double(double)>& f, double a, double m, double b,
                       double fa, double fm, double fb, double whole, double local_tol, int depth,
                       SimpsonState& state) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  state.evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Roundoff floor: once delta is at machine-level noise of the panel value,
  // further splitting cannot help.
  const double noise = 1e-14 * (std::abs(left) + std::abs(right));
  if (std::abs(delta) <= std::max(15.0 * local_tol, noise) || depth >= kMaxDepth) {
    if (depth >= kMaxDepth && std::abs(delta) > std::max(15.0 * local_tol, noise)) {
      state.converged = false;
    }
    state.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * local_tol, depth + 1, state) +
         simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * local_tol, depth + 1, state);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int initial_panels, SimpsonState& state) {
  double total = 0.0;
  const double width = (b - a) / initial_panels;
  const double panel_tol = tol / initial_panels;
  for (int k = 0; k < initial_panels; ++k) {
    const double x0 = a + k * width;
    const double x1 = x0 + width;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0);
    const double fm = f(xm);
    const double f1 = f(x1);
    state.evals += 3;
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += simpson_recurse(f, x0, xm, x1, f0, fm, f1, whole, panel_tol, 0, state);
  }
  return total;
}

// Panel count resolving the cos(theta x) oscillation.
int oscillation_panels(double theta, double a, double b) {
  const double per_period = (b - a) * std::abs(theta) / kPi;
  return std::max(16, std::min(200000, static_cast<int>(std::ceil(per_period)) + 1));
}

double upper_cutoff(double b) {
  // e^{-X} (2/X) coth(bX/2) below 1e-13 guarantees a negligible tail.
  double x = 40.0;
  while (std::exp(-x) * (2.0 / x) * (1.0 + 2.0 / (b * x)) > 1e-13) x += 5.0;
  return x;
}

// sum_{j > J} ln(1 + theta^2 / (j b + 1)^2) via the midpoint rule in j, with
// the leading Euler-Maclaurin correction. Antiderivative of ln(1 + c^2/u^2):
// u ln(1 + c^2/u^2) + 2 c arctan(u/c).
double log_product_tail(double theta, double b, long j_max) {
  const double u = (static_cast<double>(j_max) + 0.5) * b + 1.0;
  const double integral =
      (kPi * theta - u * std::log1p(theta * theta / (u * u)) - 2.0 * theta * std::atan(u / theta)) /
      b;
  const double derivative = -2.0 * theta * theta * b / (u * (u * u + theta * theta));
  return integral + derivative / 24.0;
}

}  // namespace

void SpectralModel::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("SpectralModel: coupling g must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("SpectralModel: inverse temperature b must be > 0");
}

double decoherence_exponent_quadrature(const SpectralModel& model, double theta) {
  model.validate();
  if (model.cutoff != CutoffKind::Exponential) {
    throw std::invalid_argument(
        "decoherence_exponent_quadrature: exponential cutoff required (use step_cutoff_exploration)");
  }
  if (theta < 0.0) throw std::invalid_argument("decoherence_exponent_quadrature: theta must be >= 0");
  if (theta == 0.0) return 0.0;

  const double b = model.b;
  const double eps = pick_x_small(theta, b);
  const double x_max = upper_cutoff(b);
  const auto f = [&](double x) { return exponential_cutoff_integrand(x, theta, b); };

  SimpsonState state;
  const double bulk =
      adaptive_simpson(f, eps, x_max, kQuadratureTol, oscillation_panels(theta, eps, x_max), state);
  const double head = endpoint_integral_exponential(eps, theta, b);
  if (!state.converged) {
    throw std::runtime_error("decoherence_exponent_quadrature: refinement limit reached; partial estimate " +
                             std::to_string(model.g * (head + bulk)));
  }
  return model.g * (head + bulk);
}

double decoherence_exponent_closed(const SpectralModel& model, double theta) {
  model.validate();
  if (model.cutoff != CutoffKind::Exponential) {
    throw std::invalid_argument("decoherence_exponent_closed: exponential cutoff required");
  }
  if (theta < 0.0) throw std::invalid_argument("decoherence_exponent_closed: theta must be >= 0");
  if (theta == 0.0) return 0.0;

  const double b = model.b;
  const double t2 = theta * theta;
  const long j_max =
      std::max<long>(1000, static_cast<long>(std::ceil(100.0 * theta / b)));
  double log_sum = 0.0;
  for (long j = j_max; j >= 1; --j) {  // ascending magnitude for a tighter sum
    const double u = static_cast<double>(j) * b + 1.0;
    log_sum += std::log1p(t2 / (u * u));
  }
  log_sum += log_product_tail(theta, b, j_max);
  return 0.5 * model.g * std::log1p(t2) + model.g * log_sum;
}

double decoherence_exponent_high_temperature(const SpectralModel& model, double theta) {
  model.validate();
  if (theta < 0.0) throw std::invalid_argument("theta must be >= 0");
  if (theta == 0.0) return 0.0;
  const double y = kPi * theta / model.b;
  // ln(sinh(y)/y) computed in log space; safe for y in the hundreds.
  const double log_sinh_over_y = y + std::log1p(-std::exp(-2.0 * y)) - std::log(2.0) - std::log(y);
  return 0.5 * model.g * std::log1p(theta * theta) + model.g * log_sinh_over_y;
}

int parity_deficit(int parity_bra, int parity_ket) {
  if (std::abs(parity_bra) != 1 || std::abs(parity_ket) != 1) {
    throw std::invalid_argument("parity must be +1 (symmetric) or -1 (antisymmetric)");
  }
  return 2 * (1 - parity_bra * parity_ket);
}

double element_decay_factor(double exponent_value, int parity_bra, int parity_ket) {
  return std::exp(-static_cast<double>(parity_deficit(parity_bra, parity_ket)) * exponent_value);
}

double semigroup_tau(const SpectralModel& model, double theta) {
  return 2.0 * kPi * model.g * theta / model.b;
}

double SemigroupApproximation::prefactor(int parity_bra, int parity_ket) const {
  // Stored small_parameter is 4 g ln(b/(2 pi)); per parity pair the exponent
  // halves or vanishes with the deficit.
  const double exponent = -0.25 * small_parameter * parity_deficit(parity_bra, parity_ket);
  return std::exp(exponent);
}

SemigroupApproximation decoherence_exponent_semigroup(const SpectralModel& model, double theta) {
  model.validate();
  if (theta < 0.0) throw std::invalid_argument("theta must be >= 0");

  SemigroupApproximation out;
  out.tau = semigroup_tau(model, theta);
  out.small_parameter = 4.0 * model.g * std::log(model.b / (2.0 * kPi));
  out.prefactor_offdiagonal = std::pow(2.0 * kPi / model.b, 4.0 * model.g);

  if (model.b < 20.0) {
    out.warnings.push_back("regime: b >> 1 violated (b = " + std::to_string(model.b) + ")");
  }
  if (theta < 10.0 * model.b) {
    out.warnings.push_back(
        "regime: theta/b >> 1 violated; the linear approximation is not uniform near theta = 0");
  }
  if (std::abs(out.small_parameter) > 0.1) {
    out.warnings.push_back("regime: prefactor expansion parameter 4 g ln(b/(2 pi)) is not small");
  }
  out.regime_ok = out.warnings.empty();
  return out;
}

SeriesCheck derivative_series_check(const SpectralModel& model, double theta, long n_terms) {
  model.validate();
  if (!(theta > 0.0)) throw std::invalid_argument("derivative_series_check: theta must be > 0");
  if (n_terms < 1) throw std::invalid_argument("derivative_series_check: n_terms must be >= 1");

  const double h = std::min(1e-3 * std::max(1.0, theta), 0.5 * theta);
  SeriesCheck out;
  out.finite_difference = (decoherence_exponent_quadrature(model, theta + h) -
                           decoherence_exponent_quadrature(model, theta - h)) /
                          (2.0 * h);

  const double t2 = theta * theta;
  double sum = 0.0;
  for (long n = n_terms; n >= 1; --n) {
    const double u = 1.0 + static_cast<double>(n) * model.b;
    sum += 1.0 / (t2 + u * u);
  }
  out.series_sum = 2.0 * model.g * theta * sum + model.g * theta / (t2 + 1.0);

  const double u_tail = 1.0 + static_cast<double>(n_terms) * model.b;
  out.truncation_bound =
      (2.0 * model.g / model.b) * (kPi / 2.0 - std::atan(u_tail / theta));
  return out;
}

StepCutoffResult step_cutoff_exploration(const SpectralModel& model, double theta) {
  model.validate();
  if (model.cutoff != CutoffKind::Step) {
    throw std::invalid_argument("step_cutoff_exploration: step cutoff required");
  }
  if (theta < 0.0) throw std::invalid_argument("theta must be >= 0");

  StepCutoffResult out;
  if (model.b > 0.1) {
    out.warnings.push_back("regime: the step-cutoff limit expects b -> 0 (b = " +
                           std::to_string(model.b) + ")");
  }
  if (theta == 0.0) {
    out.value = 0.0;
    return out;
  }
  const double eps = pick_x_small(theta, model.b);
  const auto f = [&](double x) { return step_cutoff_integrand(x, theta, model.b); };
  SimpsonState state;
  const double bulk =
      adaptive_simpson(f, eps, 1.0, kQuadratureTol, oscillation_panels(theta, eps, 1.0), state);
  if (!state.converged) {
    throw std::runtime_error("step_cutoff_exploration: refinement limit reached");
  }
  out.value = model.g * (endpoint_integral_step(eps, theta, model.b) + bulk);
  return out;
}

double weierstrass_product(double x, long n_terms, bool tail_corrected) {
  if (n_terms < 1) throw std::invalid_argument("weierstrass_product: n_terms must be >= 1");
  const double c = x / kPi;
  const double c2 = c * c;
  double log_sum = 0.0;
  for (long j = n_terms; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    log_sum += std::log1p(c2 / (jd * jd));
  }
  if (tail_corrected) {
    const double u = static_cast<double>(n_terms) + 0.5;
    const double integral =
        kPi * c - u * std::log1p(c2 / (u * u)) - 2.0 * c * std::atan(u / c);
    const double derivative = -2.0 * c2 / (u * (u * u + c2));
    log_sum += integral + derivative / 24.0;
  }
  return std::exp(log_sum);
}

}  // namespace symflow::qnd
