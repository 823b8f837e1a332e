#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hchain/chain_spec.hpp"
#include "hchain/modes.hpp"
#include "hchain/thermo.hpp"

namespace hchain {

/// L = x_N - x_1 = constant + sum_j coefficients[j-1] u_{2j-1}.
/// Only odd modes contribute; there are floor(N/2) of them.
struct LengthExpansion {
  double constant = 0.0;
  std::vector<double> coefficients;
};

// c_j = -sqrt(8/N) (-1)^j cos((2j-1) pi / 2N), j is 1-based.
double odd_mode_coefficient(std::size_t j, std::size_t n);

// x_j = sin((2j-1) pi / 2N), so that omega_{2j-1} = (2 kappa / sqrt(mu)) x_j.
double odd_mode_sine(std::size_t j, std::size_t n);

struct ExpansionCheck {
  double max_odd_deviation = 0.0;  // |c_j - (Y[2j-1][N] - Y[2j-1][1])|
  double max_even_difference = 0.0;  // |Y[m][N] - Y[m][1]| over even m
};

ExpansionCheck check_expansion(const LengthExpansion& expansion, const ModeTable& table);

// Closed-form expansion; throws std::logic_error if it disagrees with the
// amplitude differences in `table` by more than 1e-12.
LengthExpansion length_expansion(const ModeTable& table, const ChainSpec& spec);

// <L> = (N-1) xi at every temperature.
double mean_length(const ChainSpec& spec);

// gamma = 2 hbar kappa / (k_B T sqrt(mu)) = hbar omega_max / k_B T.
double gamma_parameter(const ChainSpec& spec, const ThermoState& state);

// sum_j c_j^2 <u_{2j-1}^2>, compensated, ascending j. Zero temperature gives
// the zero-point variance.
double length_variance_exact(const ChainSpec& spec, const ThermoState& state);

// The same variance written in dimensionless form:
// (2/N)(hbar / kappa sqrt(mu)) sum_j ((1 - x_j^2)/x_j) (1 + e^{-gamma x_j}) / (1 - e^{-gamma x_j}).
double length_variance_dimensionless(const ChainSpec& spec, const ThermoState& state);

// Large-N estimate sqrt(12 k_B T) / (pi kappa xi sqrt(N)) of the relative dispersion.
double asymptotic_dispersion(const ChainSpec& spec, const ThermoState& state);

/// Upper bound on the variance from comparing the mode sum with an integral:
///   (2/pi)(hbar / kappa sqrt(mu)) [2 x_1 f(x_1) + int_{x_1}^1 f(x) dx],
///   f(x) = (sqrt(1 - x^2)/x) (1 + e^{-gamma x}) / (1 - e^{-gamma x}).
/// The integral is computed by adaptive Gauss-Kronrod quadrature to 1e-8
/// relative accuracy. Requires T > 0 and N >= 4.
double riemann_bound(const ChainSpec& spec, const ThermoState& state);

struct LengthStatistics {
  double mean = 0.0;
  double variance = 0.0;
  double relative_dispersion = 0.0;
  std::optional<double> gamma;           // absent at T = 0
  std::vector<double> x_values;
  std::optional<double> asymptotic;      // absent at T = 0
  std::optional<double> riemann_bound;   // present when T > 0 and N >= 4
  bool zero_temperature = false;

  // asymptotic / relative_dispersion when both are available.
  std::optional<double> ratio() const;
};

LengthStatistics length_statistics(const ChainSpec& spec, const ThermoState& state);

}  // namespace hchain
