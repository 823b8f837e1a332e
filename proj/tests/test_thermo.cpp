#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "hchain/error.hpp"
#include "hchain/modes.hpp"
#include "hchain/thermo.hpp"

using namespace hchain;

namespace {

const UnitSystem kReduced = UnitSystem::reduced();

// State with beta hbar omega = x for omega = 1 in reduced units.
ThermoState state_for(double x) { return ThermoState::at(1.0 / x, kReduced); }

}  // namespace

TEST_CASE("partition function") {
  CHECK(partition_function(1.0, state_for(std::log(2.0))) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(partition_function(1.0, state_for(800.0)) == 1.0);
  CHECK(partition_function(1.0, state_for(50.0)) == doctest::Approx(1.0).epsilon(1e-15));
  // sum_{nu=0}^{1000} e^{-nu}
  CHECK(partition_function(1.0, state_for(1.0)) == doctest::Approx(1.5819767068693267).epsilon(1e-14));
  CHECK_THROWS_AS(partition_function(0.0, state_for(1.0)), ValidationError);
  CHECK_THROWS_AS(partition_function(-1.0, state_for(1.0)), ValidationError);
  CHECK_THROWS_AS(partition_function(1.0, ThermoState::zero(kReduced)), ValidationError);
}

TEST_CASE("mean occupation") {
  CHECK(mean_occupation(1.0, state_for(std::log(2.0))) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mean_occupation(1.0, state_for(800.0)) == 0.0);
  // sum nu e^{-nu} / sum e^{-nu}, 1000 terms
  CHECK(mean_occupation(1.0, state_for(1.0)) == doctest::Approx(0.5819767068693265).epsilon(1e-14));
  CHECK_THROWS_AS(mean_occupation(0.0, state_for(1.0)), ValidationError);
}

TEST_CASE("mean squared normal coordinate") {
  CHECK(mean_u_squared(1.0, 1.0, ThermoState::zero(kReduced)) == 0.5);
  CHECK(mean_u_squared(1.0, 1.0, state_for(std::log(2.0))) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(mean_u_squared(1.0, 1.0, state_for(1e-3)) == doctest::Approx(1000.0).epsilon(1e-6));
  CHECK(mean_u_squared(2.0, 3.0, state_for(900.0)) == 1.0 / 12.0);
  CHECK_THROWS_AS(mean_u_squared(0.0, 1.0, state_for(1.0)), ValidationError);

  // (hbar / 2 mu omega)(2<nu> + 1) on both sides of the series switch
  for (double x : {2e-5, 9e-5, 1.1e-4, 0.3, 5.0, 650.0}) {
    const auto st = state_for(x);
    const double via_occupation = 0.5 * (2.0 * mean_occupation(1.0, st) + 1.0);
    CHECK(mean_u_squared(1.0, 1.0, st) == doctest::Approx(via_occupation).epsilon(1e-12));
  }
}

TEST_CASE("classical limit of mean squared coordinate") {
  for (double x : {1e-3, 5e-4, 1e-4, 3e-5, 1e-6}) {
    for (double omega : {0.5, 1.0, 4.0}) {
      const double mass = 1.3;
      const auto st = ThermoState::at(omega / x, kReduced);
      const double classical = st.thermal_energy() / (mass * omega * omega);
      const double rel = std::fabs(mean_u_squared(omega, mass, st) - classical) / classical;
      CHECK(rel <= x * x / 12.0 + 1e-12);
    }
  }
}

TEST_CASE("occupation is the log-derivative of the partition function") {
  for (double omega : {0.2, 1.0, 3.0}) {
    for (double beta : {0.05, 0.4, 1.0, 3.0}) {
      const double h = 1e-5 * beta;
      auto log_z = [&](double b) { return std::log(partition_function(omega, ThermoState::at(1.0 / b, kReduced))); };
      const double derivative = (log_z(beta + h) - log_z(beta - h)) / (2.0 * h);
      const double from_fd = -derivative / omega;
      const double direct = mean_occupation(omega, ThermoState::at(1.0 / beta, kReduced));
      CHECK(std::fabs(from_fd - direct) <= 1e-8 * std::max(1.0, direct));
    }
  }
}

TEST_CASE("monotonicity in temperature and frequency") {
  double prev = 0.0;
  for (double t = 0.0; t <= 50.0; t += 0.25) {
    const auto st = t == 0.0 ? ThermoState::zero(kReduced) : ThermoState::at(t, kReduced);
    const double u2 = mean_u_squared(1.0, 1.0, st);
    if (t > 0.0) CHECK(u2 > prev);
    prev = u2;
  }
  const auto st = ThermoState::at(2.0, kReduced);
  prev = INFINITY;
  for (double omega = 0.05; omega < 10.0; omega *= 1.3) {
    const double u2 = mean_u_squared(omega, 1.0, st);
    CHECK(u2 < prev);
    CHECK(u2 >= 0.5 / omega);
    prev = u2;
  }
}

TEST_CASE("thermo state") {
  CHECK_THROWS_AS(ThermoState::at(-1.0, kReduced), ValidationError);
  CHECK(ThermoState::at(0.0, kReduced).is_zero());
  CHECK(std::isinf(ThermoState::zero(kReduced).beta()));
  CHECK(ThermoState::at(300.0, UnitSystem::si()).thermal_energy() == doctest::Approx(4.141947e-21));
}

TEST_CASE("phonon energy enumeration") {
  const ChainSpec n3{3, 1.0, 1.0, 1.0, kReduced};
  const auto states = enumerate_phonon_energies(n3, 2.8);
  REQUIRE(states.size() == 5);
  const double expected[] = {0.0, 1.0, 1.7320508075688772, 2.0, 2.732050807568877};
  for (int i = 0; i < 5; ++i) CHECK(states[i].energy == doctest::Approx(expected[i]).epsilon(1e-14));
  CHECK(states[1].occupations == std::vector<std::uint32_t>{1, 0});
  CHECK(states[2].occupations == std::vector<std::uint32_t>{0, 1});

  const auto vacuum = enumerate_phonon_energies(ChainSpec{6, 1.0, 1.0, 1.0, kReduced}, 0.0);
  REQUIRE(vacuum.size() == 1);
  CHECK(vacuum[0].energy == 0.0);
  CHECK(vacuum[0].occupations == std::vector<std::uint32_t>(5, 0));

  const auto n2 = enumerate_phonon_energies(ChainSpec{2, 1.0, 1.0, 1.0, kReduced}, 3.0);
  REQUIRE(n2.size() == 3);
  CHECK(n2[1].energy == doctest::Approx(std::sqrt(2.0)));
  CHECK(n2[2].energy == doctest::Approx(2.0 * std::sqrt(2.0)));

  CHECK_THROWS_AS(enumerate_phonon_energies(n3, -1.0), ValidationError);
  CHECK_THROWS_AS(enumerate_phonon_energies(ChainSpec{40, 1.0, 1.0, 1.0, kReduced}, 10.0), ValidationError);
}

TEST_CASE("enumeration matches exhaustive tuple generation") {
  for (double cutoff : {0.5, 2.8, 6.0, 11.3}) {
    const ChainSpec spec{3, 1.0, 1.0, 1.0, kReduced};
    const auto omega = mode_frequencies(spec);
    std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> brute;
    for (std::uint32_t a = 0; a < 40; ++a) {
      for (std::uint32_t b = 0; b < 40; ++b) {
        const double e = 0.0 + a * omega[1] + b * omega[2];
        if (e <= cutoff) brute.emplace_back(e, a, b);
      }
    }
    std::sort(brute.begin(), brute.end());
    const auto states = enumerate_phonon_energies(spec, cutoff);
    REQUIRE(states.size() == brute.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      CHECK(states[i].energy == std::get<0>(brute[i]));
      CHECK(states[i].occupations == std::vector<std::uint32_t>{std::get<1>(brute[i]), std::get<2>(brute[i])});
      CHECK(states[i].energy == phonon_energy(states[i].occupations, {omega[1], omega[2]}));
    }
  }
}
