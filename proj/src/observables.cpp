#include "hchain/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hchain/compensated_sum.hpp"
#include "hchain/error.hpp"

namespace hchain {

namespace {

constexpr double kExpansionTolerance = 1e-12;
constexpr double kQuadratureTolerance = 1e-8;

// (1 + e^{-a}) / (1 - e^{-a}) = coth(a/2), evaluated without cancellation.
double thermal_factor(double a) {
  if (a > 700.0) return 1.0;
  const double em = std::expm1(-a);
  return (2.0 + em) / -em;
}

std::size_t odd_mode_count(std::size_t n) { return n / 2; }

double half_angle(std::size_t j, std::size_t n) {
  return std::numbers::pi * static_cast<double>(2 * j - 1) / (2.0 * static_cast<double>(n));
}

}  // namespace

double odd_mode_coefficient(std::size_t j, std::size_t n) {
  const double sign = j % 2 == 0 ? 1.0 : -1.0;  // (-1)^j
  return -std::sqrt(8.0 / static_cast<double>(n)) * sign * std::cos(half_angle(j, n));
}

double odd_mode_sine(std::size_t j, std::size_t n) { return std::sin(half_angle(j, n)); }

ExpansionCheck check_expansion(const LengthExpansion& expansion, const ModeTable& table) {
  ExpansionCheck check;
  const std::size_t n = table.n;
  for (std::size_t m = 0; m < n; ++m) {
    const double diff = table.amplitude(m, n) - table.amplitude(m, 1);
    if (m % 2 == 0) {
      check.max_even_difference = std::max(check.max_even_difference, std::fabs(diff));
    } else {
      const std::size_t j = (m + 1) / 2;
      const double c = j <= expansion.coefficients.size() ? expansion.coefficients[j - 1] : 0.0;
      check.max_odd_deviation = std::max(check.max_odd_deviation, std::fabs(c - diff));
    }
  }
  return check;
}

LengthExpansion length_expansion(const ModeTable& table, const ChainSpec& spec) {
  spec.validate();
  if (table.n != spec.n) throw ValidationError("mode table size does not match chain spec");
  LengthExpansion expansion;
  expansion.constant = static_cast<double>(spec.n - 1) * spec.spacing;
  expansion.coefficients.resize(odd_mode_count(spec.n));
  for (std::size_t j = 1; j <= expansion.coefficients.size(); ++j) {
    expansion.coefficients[j - 1] = odd_mode_coefficient(j, spec.n);
  }
  const auto check = check_expansion(expansion, table);
  if (check.max_odd_deviation > kExpansionTolerance || check.max_even_difference > kExpansionTolerance) {
    throw std::logic_error("length expansion disagrees with mode amplitudes");
  }
  return expansion;
}

double mean_length(const ChainSpec& spec) {
  spec.validate();
  return static_cast<double>(spec.n - 1) * spec.spacing;
}

double gamma_parameter(const ChainSpec& spec, const ThermoState& state) {
  spec.validate();
  return state.units().hbar * spec.max_frequency() * state.beta();
}

double length_variance_exact(const ChainSpec& spec, const ThermoState& state) {
  spec.validate();
  const double omega_max = spec.max_frequency();
  CompensatedSum sum;
  for (std::size_t j = 1; j <= odd_mode_count(spec.n); ++j) {
    const double c = odd_mode_coefficient(j, spec.n);
    const double omega = omega_max * odd_mode_sine(j, spec.n);
    sum += c * c * mean_u_squared(omega, spec.mass, state);
  }
  return sum.value();
}

double length_variance_dimensionless(const ChainSpec& spec, const ThermoState& state) {
  spec.validate();
  const double gamma = gamma_parameter(spec, state);
  CompensatedSum sum;
  for (std::size_t j = 1; j <= odd_mode_count(spec.n); ++j) {
    const double x = odd_mode_sine(j, spec.n);
    const double factor = state.is_zero() ? 1.0 : thermal_factor(gamma * x);
    sum += (1.0 - x * x) / x * factor;
  }
  const double scale = 2.0 / static_cast<double>(spec.n) * spec.units.hbar /
                       (spec.stiffness * std::sqrt(spec.mass));
  return scale * sum.value();
}

double asymptotic_dispersion(const ChainSpec& spec, const ThermoState& state) {
  spec.validate();
  if (state.is_zero()) throw ValidationError("temperature > 0 required for the asymptotic dispersion");
  return std::sqrt(12.0 * state.thermal_energy()) /
         (std::numbers::pi * spec.stiffness * spec.spacing * std::sqrt(static_cast<double>(spec.n)));
}

double riemann_bound(const ChainSpec& spec, const ThermoState& state) {
  spec.validate();
  if (state.is_zero()) throw ValidationError("temperature > 0 required for the Riemann bound");
  if (spec.n < 4) throw ValidationError("n >= 4 required for the Riemann bound");

  const double gamma = gamma_parameter(spec, state);
  auto f = [gamma](double x) { return std::sqrt(1.0 - x * x) / x * thermal_factor(gamma * x); };

  const double theta1 = half_angle(1, spec.n);
  const double x1 = std::sin(theta1);

  // x = sin(theta), theta = e^t: removes the square-root endpoint at x = 1
  // and flattens the 1/x^2 growth near x_1.
  auto integrand = [gamma](double t) {
    const double theta = std::exp(t);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return c * c / s * thermal_factor(gamma * s) * theta;
  };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, std::log(theta1), std::log(std::numbers::pi / 2.0), 20, 1e-12, &error);
  if (!(error <= kQuadratureTolerance * std::fabs(integral))) {
    throw ConvergenceError("Riemann-bound quadrature did not reach 1e-8 relative accuracy",
                           error / std::fabs(integral));
  }

  const double scale = 2.0 / std::numbers::pi * spec.units.hbar /
                       (spec.stiffness * std::sqrt(spec.mass));
  return scale * (2.0 * x1 * f(x1) + integral);
}

std::optional<double> LengthStatistics::ratio() const {
  if (!asymptotic || relative_dispersion <= 0.0) return std::nullopt;
  return *asymptotic / relative_dispersion;
}

LengthStatistics length_statistics(const ChainSpec& spec, const ThermoState& state) {
  spec.validate();
  LengthStatistics stats;
  stats.mean = mean_length(spec);
  stats.variance = length_variance_exact(spec, state);
  stats.relative_dispersion = std::sqrt(stats.variance) / stats.mean;
  stats.zero_temperature = state.is_zero();
  stats.x_values.resize(odd_mode_count(spec.n));
  for (std::size_t j = 1; j <= stats.x_values.size(); ++j) {
    stats.x_values[j - 1] = odd_mode_sine(j, spec.n);
  }
  if (!state.is_zero()) {
    stats.gamma = gamma_parameter(spec, state);
    stats.asymptotic = asymptotic_dispersion(spec, state);
    if (spec.n >= 4) stats.riemann_bound = riemann_bound(spec, state);
  }
  return stats;
}

}  // namespace hchain
