#pragma once

#include <cstdint>
#include <vector>

#include "hchain/chain_spec.hpp"

namespace hchain {

/// Temperature of a Gibbs state. A zero temperature is representable and
/// means the ground state; it is accepted only where zero-point values make
/// sense (mean_u_squared, the exact length variance).
class ThermoState {
 public:
  // Throws ValidationError for negative or non-finite temperature.
  static ThermoState at(double temperature, UnitSystem units);
  static ThermoState zero(UnitSystem units) { return ThermoState(0.0, units); }

  double temperature() const { return temperature_; }
  bool is_zero() const { return temperature_ == 0.0; }
  const UnitSystem& units() const { return units_; }

  // 1 / (k_B T); +inf at zero temperature.
  double beta() const;
  double thermal_energy() const { return units_.k_boltzmann * temperature_; }

 private:
  ThermoState(double temperature, UnitSystem units) : temperature_(temperature), units_(units) {}

  double temperature_;
  UnitSystem units_;
};

struct ModeThermo {
  double frequency = 0.0;
  double partition = 1.0;
  double occupation = 0.0;
  double u_squared = 0.0;
};

// Z = 1 / (1 - exp(-beta hbar omega)).
double partition_function(double omega, const ThermoState& state);

// <nu> = 1 / (exp(beta hbar omega) - 1).
double mean_occupation(double omega, const ThermoState& state);

// <u^2> = (hbar / 2 mu omega) (2 <nu> + 1) = (hbar / 2 mu omega) coth(beta hbar omega / 2).
double mean_u_squared(double omega, double mass, const ThermoState& state);

// All three quantities for a single mode (requires positive temperature).
ModeThermo mode_thermo(double omega, double mass, const ThermoState& state);

struct PhononState {
  std::vector<std::uint32_t> occupations;  // nu_m for m = 1..N-1
  double energy = 0.0;

  friend bool operator==(const PhononState&, const PhononState&) = default;
};

// Sum of nu_m hbar omega_m accumulated in ascending m.
double phonon_energy(const std::vector<std::uint32_t>& occupations,
                     const std::vector<double>& quanta);

inline constexpr std::size_t kMaxPhononStates = 1'000'000;

/// Every phonon occupation tuple with energy <= cutoff, ascending by energy,
/// ties ordered lexicographically by the tuple. The rigid-translation mode
/// carries no phonons and is excluded.
std::vector<PhononState> enumerate_phonon_energies(const ChainSpec& spec, double energy_cutoff);

}  // namespace hchain
