#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hchain/chain_spec.hpp"
#include "hchain/thermo.hpp"

namespace hchain {

struct SweepPlan {
  std::vector<std::size_t> n_values;   // ascending, each >= 2
  std::vector<double> temperatures;    // each > 0, order preserved in output
  ChainSpec base;                      // n is ignored
  std::size_t fit_min_n = 256;         // smallest N entering the log-log fit

  void validate() const;

  // n_min, n_min*factor, ... while <= n_max.
  static std::vector<std::size_t> geometric_sizes(std::size_t n_min, std::size_t n_max,
                                                  std::size_t factor);
};

struct SweepRow {
  std::size_t n = 0;
  double temperature = 0.0;
  double gamma = 0.0;
  double mean_length = 0.0;
  double variance_exact = 0.0;
  double rel_dispersion = 0.0;
  double asymptotic = 0.0;
  double ratio = 0.0;  // asymptotic / rel_dispersion
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // Euclidean norm of the log-space residuals
};

struct TemperatureFit {
  double temperature = 0.0;
  std::size_t points = 0;
  std::optional<LogLogFit> fit;  // absent when fewer than 3 sizes qualify
};

struct SweepResult {
  std::vector<SweepRow> rows;        // N outer ascending, T inner in plan order
  std::vector<TemperatureFit> fits;  // one per temperature, in plan order
};

// Ordinary least squares of ln(value) against ln(N). Needs >= 3 points with
// positive N and value.
LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points);

// Fits rel_dispersion vs N for each temperature among `rows`.
std::vector<TemperatureFit> fit_rows(const std::vector<SweepRow>& rows,
                                     const std::vector<double>& temperatures,
                                     std::size_t fit_min_n);

SweepResult run_sweep(const SweepPlan& plan);

struct Preset {
  std::string name;
  ChainSpec spec;
  ThermoState state = ThermoState::zero(UnitSystem::si());
  double max_frequency = 0.0;  // rad/s
};

inline constexpr double kSodiumAtomicMass = 3.82e-26;  // kg
inline constexpr double kElectronVolt = 1.602176634e-19;  // J

/// Named SI parameter sets. "sodium-like": xi = 5e-10 m, omega_max = 2 pi 5 THz,
/// sodium atomic mass, T = 300 K. Throws ValidationError for unknown names.
Preset si_preset(std::string_view name, std::size_t n = 1'000'000);

}  // namespace hchain
