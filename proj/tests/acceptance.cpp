// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hchain/cli_io.hpp"
#include "hchain/eigen_oracle.hpp"
#include "hchain/modes.hpp"
#include "hchain/observables.hpp"
#include "hchain/scaling.hpp"
#include "hchain/thermo.hpp"

using namespace hchain;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const UnitSystem kReduced = UnitSystem::reduced();

ChainSpec reduced_chain(std::size_t n) { return ChainSpec{n, 1.0, 1.0, 1.0, kReduced}; }

// Temperature giving the requested gamma with mu = kappa = hbar = k_B = 1.
ThermoState at_gamma(double gamma) { return ThermoState::at(2.0 / gamma, kReduced); }

Outcome spectrum_oracle() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::size_t n = 2; n <= 64; ++n) {
    const ChainSpec spec{n, 1.7, 0.9, 1.0, kReduced};
    const auto table = build_mode_table(spec);
    const auto eig = symmetric_eigen(build_dynamical_matrix(spec).entries, 1e-12);
    for (std::size_t m = 0; m < n; ++m) {
      const double lambda = spec.mass * table.frequencies[m] * table.frequencies[m] / (spec.stiffness * spec.stiffness);
      // The zero mode is compared absolutely.
      const double scale = m == 0 ? 1.0 : eig.eigenvalues[m];
      worst = std::max(worst, std::fabs(lambda - eig.eigenvalues[m]) / scale);
    }
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-9 && elapsed < 10.0, fmt("max rel err %.3e (< 1e-9), %.2f s (< 10 s)", worst, elapsed)};
}

Outcome mean_length_criterion() {
  double worst_mean = 0.0, worst_even = 0.0;
  for (std::size_t n : {2u, 3u, 17u, 1024u}) {
    const ChainSpec spec{n, 1.0, 1.0, 3.5e-10, UnitSystem::si()};
    const double expected = static_cast<double>(n - 1) * spec.spacing;
    // <u_m> = 0 for every phonon mode, so only the constant survives.
    const auto table = build_mode_table(spec);
    const auto expansion = length_expansion(table, spec);
    double via_expansion = expansion.constant;
    for (double c : expansion.coefficients) via_expansion += c * 0.0;
    worst_mean = std::max({worst_mean, std::fabs(mean_length(spec) - expected) / expected,
                           std::fabs(via_expansion - expected) / expected});
    worst_even = std::max(worst_even, check_expansion(expansion, table).max_even_difference);
  }
  return {worst_mean <= 1e-12 && worst_even < 1e-12,
          fmt("mean rel err %.3e (<= 1e-12), max even-mode coefficient %.3e (< 1e-12)", worst_mean, worst_even)};
}

Outcome equipartition() {
  double worst_margin = -INFINITY;
  bool ok = true;
  for (std::size_t n : {2u, 3u, 10u, 50u, 1000u}) {
    for (double gamma : {1e-3, 3e-4, 1e-4, 1e-5}) {
      const auto state = at_gamma(gamma);
      const double oracle = static_cast<double>(n - 1) * state.thermal_energy();  // kappa = 1
      const double rel = std::fabs(length_variance_exact(reduced_chain(n), state) - oracle) / oracle;
      const double bound = gamma * gamma / 12.0 + 1e-10;
      ok = ok && rel <= bound;
      worst_margin = std::max(worst_margin, rel / bound);
    }
  }
  return {ok, fmt("max (rel err)/(gamma^2/12 + 1e-10) = %.3f (<= 1)", worst_margin)};
}

SweepResult classical_sweep() {
  SweepPlan plan{SweepPlan::geometric_sizes(256, 65536, 2), {2.0 / 1e-3}, reduced_chain(2), 256};
  return run_sweep(plan);
}

Outcome scaling_law() {
  const auto start = std::chrono::steady_clock::now();
  const auto result = classical_sweep();
  const double elapsed = seconds_since(start);
  const auto& fit = result.fits.front().fit;
  if (!fit) return {false, "fit absent"};
  const bool ok = std::fabs(fit->slope + 0.5) <= 0.01 && elapsed < 60.0;
  return {ok, fmt("slope %.6f (-0.500 +/- 0.01) over %zu sizes at gamma = 1e-3, %.2f s (< 60 s)", fit->slope,
                  result.fits.front().points, elapsed)};
}

Outcome prefactor() {
  const auto spec = reduced_chain(65536);
  const auto state = at_gamma(1e-3);
  const double exact = std::sqrt(length_variance_exact(spec, state)) / mean_length(spec);
  const double ratio = asymptotic_dispersion(spec, state) / exact;
  const double target = std::sqrt(12.0) / std::numbers::pi;
  const double rel = std::fabs(ratio - target) / target;
  return {rel <= 0.01, fmt("asymptotic/exact = %.6f vs sqrt(12)/pi = %.6f, rel diff %.2e (<= 1%%)", ratio, target, rel)};
}

Outcome bound_grid() {
  int violations = 0, cases = 0;
  double min_ratio = INFINITY;
  for (std::size_t n = 16; n <= 4096; n *= 2) {
    for (double gamma : {1e-3, 0.1, 1.0, 10.0}) {
      const auto state = at_gamma(gamma);
      const double bound = riemann_bound(reduced_chain(n), state);
      const double exact = length_variance_exact(reduced_chain(n), state);
      ++cases;
      if (!(bound >= exact)) ++violations;
      min_ratio = std::min(min_ratio, bound / exact);
    }
  }
  return {violations == 0, fmt("%d violations in %d grid points, min bound/exact %.4f", violations, cases, min_ratio)};
}

Outcome preset_values() {
  const auto p = si_preset("sodium-like");
  const double hbar_omega = p.spec.units.hbar * p.max_frequency;
  const double kt = p.state.thermal_energy();
  const bool ok = hbar_omega >= 2.5e-21 && hbar_omega <= 3.5e-21 && kt >= 4e-21 && kt <= 5e-21;
  return {ok, fmt("hbar*omega_max = %.4e J in [2.5e-21, 3.5e-21], k_B*300K = %.4e J in [4e-21, 5e-21]", hbar_omega, kt)};
}

Outcome property_suites() {
  double ortho = 0.0, parity = 0.0, recurrence = 0.0;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 2; n <= 64; ++n) sizes.push_back(n);
  for (std::size_t n : {100u, 127u, 256u, 511u, 1024u}) sizes.push_back(n);
  for (std::size_t n : sizes) {
    const ChainSpec spec{n, 2.0, 1.5, 1.0, kReduced};
    const auto t = build_mode_table(spec);
    for (std::size_t m = 0; m < n; ++m) {
      const auto ym = t.amplitudes.row(m);
      for (std::size_t m2 = m; m2 < n; ++m2) {
        const auto ym2 = t.amplitudes.row(m2);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += ym[i] * ym2[i];
        ortho = std::max(ortho, std::fabs(dot - (m == m2 ? 1.0 : 0.0)));
      }
      const double sign = t.parities[m] == Parity::even ? 1.0 : -1.0;
      const double lambda = dimensionless_eigenvalue(m, n);
      for (std::size_t p = 1; p <= n; ++p) {
        parity = std::max(parity, std::fabs(t.amplitude(m, n + 1 - p) - sign * t.amplitude(m, p)));
        const double prev = t.amplitude(m, p == 1 ? 1 : p - 1);
        const double next = t.amplitude(m, p == n ? n : p + 1);
        recurrence = std::max(recurrence, std::fabs(next + prev - (2.0 - lambda) * t.amplitude(m, p)));
      }
    }
  }

  double parseval = 0.0, roundtrip = 0.0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t n : {2u, 7u, 31u, 200u}) {
    const auto t = build_mode_table(reduced_chain(n));
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> y(n);
      for (double& v : y) v = dist(rng);
      const auto u = to_normal({y, Frame::shifted_position}, t);
      double ny = 0.0, nu = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        ny += y[i] * y[i];
        nu += u.values[i] * u.values[i];
      }
      parseval = std::max(parseval, std::fabs(ny - nu) / ny);
      const auto back = from_normal(u, t);
      for (std::size_t i = 0; i < n; ++i) roundtrip = std::max(roundtrip, std::fabs(back.values[i] - y[i]));
    }
  }

  double fd = 0.0;
  for (double omega : {0.1, 1.0, 5.0}) {
    for (double beta : {0.05, 0.5, 2.0, 8.0}) {
      const double h = 1e-5 * beta;
      auto log_z = [&](double b) { return std::log(partition_function(omega, ThermoState::at(1.0 / b, kReduced))); };
      const double from_fd = -(log_z(beta + h) - log_z(beta - h)) / (2.0 * h) / omega;
      const double direct = mean_occupation(omega, ThermoState::at(1.0 / beta, kReduced));
      fd = std::max(fd, std::fabs(from_fd - direct) / std::max(1.0, direct));
    }
  }

  bool enumeration = true;
  std::size_t enumerated = 0;
  const auto spec3 = reduced_chain(3);
  const auto omega = mode_frequencies(spec3);
  for (double cutoff : {0.0, 2.8, 7.5, 15.0}) {
    std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> brute;
    for (std::uint32_t a = 0; a <= 30; ++a)
      for (std::uint32_t b = 0; b <= 30; ++b)
        if (const double e = 0.0 + a * omega[1] + b * omega[2]; e <= cutoff) brute.emplace_back(e, a, b);
    std::sort(brute.begin(), brute.end());
    const auto states = enumerate_phonon_energies(spec3, cutoff);
    enumeration = enumeration && states.size() == brute.size();
    for (std::size_t i = 0; enumeration && i < states.size(); ++i) {
      enumeration = states[i].energy == std::get<0>(brute[i]) && states[i].occupations[0] == std::get<1>(brute[i]) &&
                    states[i].occupations[1] == std::get<2>(brute[i]);
    }
    enumerated += states.size();
  }

  const bool ok = ortho < 1e-12 && parity < 1e-12 && recurrence < 1e-12 && parseval < 1e-12 && roundtrip < 1e-12 &&
                  fd < 1e-8 && enumeration;
  return {ok, fmt("ortho %.1e, parity %.1e, recurrence %.1e, Parseval %.1e, round-trip %.1e (all < 1e-12); "
                  "dlnZ/dbeta %.1e (< 1e-8); enumeration %s (%zu states)",
                  ortho, parity, recurrence, parseval, roundtrip, fd, enumeration ? "exact" : "MISMATCH", enumerated)};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs = {
      {"modes", "--n", "12"},
      {"spectrum", "--n", "4", "--cutoff", "4"},
      {"thermo", "--n", "12", "--temp", "0.3"},
      {"length", "--n", "500", "--temp", "3"},
      {"length", "--n", "500", "--temp", "0"},
      {"sweep", "--n-min", "256", "--n-max", "8192", "--temps", "1,2000"},
      {"preset"},
  };
  int compared = 0, differing = 0;
  for (auto args : runs) {
    for (const char* format : {"csv", "json"}) {
      auto full = args;
      full.insert(full.end(), {"--format", format});
      const auto config = parse_config(full);
      ++compared;
      if (render(config) != render(config)) ++differing;
    }
  }
  return {differing == 0, fmt("%d of %d repeated outputs differ", differing, compared)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 spectrum oracle equivalence", spectrum_oracle},
      {"2 mean length and even-mode coefficients", mean_length_criterion},
      {"3 classical equipartition oracle", equipartition},
      {"4 1/sqrt(N) scaling law", scaling_law},
      {"5 asymptotic prefactor ratio", prefactor},
      {"6 Riemann bound on (N, gamma) grid", bound_grid},
      {"7 sodium-like preset energies", preset_values},
      {"8 property suites", property_suites},
      {"9 byte-identical outputs", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] AC%s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
