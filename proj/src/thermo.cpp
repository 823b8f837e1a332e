#include "hchain/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hchain/error.hpp"
#include "hchain/modes.hpp"

namespace hchain {

namespace {

// Beyond this exp(-x) is below 1e-304 and all Gibbs factors equal their
// ground-state limits to double precision.
constexpr double kFrozenLimit = 700.0;
// Below this the coth series 2/x + x/6 is exact to double precision.
constexpr double kClassicalLimit = 1e-4;

void require_frequency(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("mode frequency must be > 0 (got " + std::to_string(omega) +
                          "); the zero mode has no Gibbs factor");
  }
}

double reduced_energy(double omega, const ThermoState& state) {
  if (state.is_zero()) {
    throw ValidationError("temperature > 0 required for Gibbs averages");
  }
  return state.units().hbar * omega * state.beta();
}

}  // namespace

ThermoState ThermoState::at(double temperature, UnitSystem units) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("temperature >= 0 required (got " + std::to_string(temperature) + ")");
  }
  return ThermoState(temperature, units);
}

double ThermoState::beta() const {
  if (is_zero()) return std::numeric_limits<double>::infinity();
  return 1.0 / thermal_energy();
}

double partition_function(double omega, const ThermoState& state) {
  require_frequency(omega);
  const double x = reduced_energy(omega, state);
  if (x > kFrozenLimit) return 1.0;
  return -1.0 / std::expm1(-x);
}

double mean_occupation(double omega, const ThermoState& state) {
  require_frequency(omega);
  const double x = reduced_energy(omega, state);
  if (x > kFrozenLimit) return 0.0;
  return 1.0 / std::expm1(x);
}

double mean_u_squared(double omega, double mass, const ThermoState& state) {
  require_frequency(omega);
  if (!(mass > 0.0)) throw ValidationError("mass > 0 required");
  const double zero_point = state.units().hbar / (2.0 * mass * omega);
  if (state.is_zero()) return zero_point;
  const double x = state.units().hbar * omega * state.beta();
  if (x > kFrozenLimit) return zero_point;
  if (x < kClassicalLimit) return zero_point * (2.0 / x + x / 6.0);
  return zero_point / std::tanh(x / 2.0);
}

ModeThermo mode_thermo(double omega, double mass, const ThermoState& state) {
  return {omega, partition_function(omega, state), mean_occupation(omega, state),
          mean_u_squared(omega, mass, state)};
}

double phonon_energy(const std::vector<std::uint32_t>& occupations,
                     const std::vector<double>& quanta) {
  double energy = 0.0;
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    energy += static_cast<double>(occupations[i]) * quanta[i];
  }
  return energy;
}

namespace {

// Depth-first walk over species in ascending order. `partial` is built with
// the same operation order as phonon_energy, so pruning and the stored
// energy agree exactly.
void enumerate_from(std::size_t species, double partial, const std::vector<double>& quanta,
                    double cutoff, std::vector<std::uint32_t>& tuple,
                    std::vector<PhononState>& out) {
  if (species == quanta.size()) {
    if (out.size() >= kMaxPhononStates) {
      throw ValidationError("phonon enumeration exceeds " + std::to_string(kMaxPhononStates) +
                            " states; lower the cutoff or N");
    }
    out.push_back({tuple, partial});
    return;
  }
  for (std::uint32_t nu = 0;; ++nu) {
    const double next = partial + static_cast<double>(nu) * quanta[species];
    if (next > cutoff) break;
    tuple[species] = nu;
    enumerate_from(species + 1, next, quanta, cutoff, tuple, out);
  }
  tuple[species] = 0;
}

}  // namespace

std::vector<PhononState> enumerate_phonon_energies(const ChainSpec& spec, double energy_cutoff) {
  spec.validate();
  if (!(energy_cutoff >= 0.0) || !std::isfinite(energy_cutoff)) {
    throw ValidationError("energy cutoff >= 0 required");
  }
  const auto omega = mode_frequencies(spec);
  std::vector<double> quanta(spec.n - 1);
  for (std::size_t m = 1; m < spec.n; ++m) quanta[m - 1] = spec.units.hbar * omega[m];

  std::vector<PhononState> states;
  std::vector<std::uint32_t> tuple(quanta.size(), 0);
  enumerate_from(0, 0.0, quanta, energy_cutoff, tuple, states);

  std::sort(states.begin(), states.end(), [](const PhononState& a, const PhononState& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.occupations < b.occupations;
  });
  return states;
}

}  // namespace hchain
