#include "symflow/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace symflow::scattering {

void CollisionConfig::validate() const {
  if (spin_s < 0.0 || std::abs(2.0 * spin_s - std::round(2.0 * spin_s)) > 1e-12) {
    throw std::invalid_argument("CollisionConfig: spin_s must be a nonnegative half-integer");
  }
  if (epsilon != 1 && epsilon != -1) {
    throw std::invalid_argument("CollisionConfig: epsilon must be +1 or -1");
  }
  if (!std::isfinite(f_forward.real()) || !std::isfinite(f_forward.imag()) ||
      !std::isfinite(f_backward.real()) || !std::isfinite(f_backward.imag())) {
    throw std::invalid_argument("CollisionConfig: amplitudes must be finite");
  }
  if (!tau_of_t) {
    throw std::invalid_argument("CollisionConfig: tau_of_t is required");
  }
  if (tau_of_t(0.0) < -1e-12) {
    throw std::invalid_argument("CollisionConfig: tau_of_t(0) must be >= 0");
  }
}

int CollisionConfig::spin_multiplicity() const {
  return static_cast<int>(std::lround(2.0 * spin_s)) + 1;
}

std::function<double(double)> linear_tau(double rate) {
  if (rate < 0.0) throw std::invalid_argument("linear_tau: rate must be >= 0");
  return [rate](double t) { return rate * t; };
}

double standard_probability(const CollisionConfig& config) {
  config.validate();
  const double direct = std::norm(config.f_forward) + std::norm(config.f_backward);
  const double exchange =
      2.0 * (std::conj(config.f_forward) * config.f_backward).real();
  const double value =
      direct + static_cast<double>(config.epsilon) / config.spin_multiplicity() * exchange;
  if (value < -1e-12) {
    throw std::runtime_error("standard_probability: negative probability density");
  }
  return value;
}

double environment_probability(const CollisionConfig& config, double t) {
  config.validate();
  const double tau = config.tau_of_t(t);
  if (tau < config.tau_of_t(0.0) - 1e-12) {
    throw std::invalid_argument("environment_probability: tau_of_t must be nondecreasing");
  }
  const double decay = std::exp(-2.0 * tau);
  const Complex a_dot_s = config.schedule.a_dot_s(t);  // sum conj(a) s
  const double m = config.schedule.m(t);
  const int multiplicity = config.spin_multiplicity();

  const Complex f_fwd = config.f_forward;
  const Complex f_bwd = config.f_backward;

  // Direct terms carry 1 +- e^{-2 tau} Re(a.s); the conjugate cross pair
  // carries (2m -+ 2 i e^{-2 tau} Im(a.s)) / (2(2s+1)).
  const double direct_shift = decay * a_dot_s.real();
  Complex value = (1.0 + direct_shift) * std::norm(f_fwd) +
                  (1.0 - direct_shift) * std::norm(f_bwd);
  const Complex cross_fwd(m, -decay * a_dot_s.imag());
  const Complex cross_bwd(m, decay * a_dot_s.imag());
  value += cross_fwd / (1.0 * multiplicity) * (f_fwd * std::conj(f_bwd));
  value += cross_bwd / (1.0 * multiplicity) * (f_bwd * std::conj(f_fwd));

  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
    throw std::runtime_error("environment_probability: non-real probability density");
  }
  return value.real();
}

}  // namespace symflow::scattering
