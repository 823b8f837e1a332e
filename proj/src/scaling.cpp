#include "hchain/scaling.hpp"

#include <cmath>
#include <numbers>

#include "hchain/compensated_sum.hpp"
#include "hchain/error.hpp"
#include "hchain/observables.hpp"

namespace hchain {

void SweepPlan::validate() const {
  if (n_values.empty()) throw ValidationError("sweep needs at least one N");
  if (temperatures.empty()) throw ValidationError("sweep needs at least one temperature");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 2) throw ValidationError("n >= 2 required for every sweep size");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw ValidationError("sweep sizes must be strictly ascending");
    }
  }
  for (double t : temperatures) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("sweep temperatures must be > 0");
  }
  ChainSpec probe = base;
  probe.n = n_values.front();
  probe.validate();
}

std::vector<std::size_t> SweepPlan::geometric_sizes(std::size_t n_min, std::size_t n_max,
                                                    std::size_t factor) {
  if (n_min < 2) throw ValidationError("n-min >= 2 required");
  if (n_max < n_min) throw ValidationError("n-max >= n-min required");
  if (factor < 2) throw ValidationError("n-factor >= 2 required");
  std::vector<std::size_t> sizes;
  for (std::size_t n = n_min; n <= n_max; n *= factor) {
    sizes.push_back(n);
    if (n > n_max / factor) break;
  }
  return sizes;
}

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ValidationError("log-log fit needs at least 3 points");
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw ValidationError("log-log fit needs positive N and values");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const double count = static_cast<double>(points.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx.value() / count;
  const double my = sy.value() / count;
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx.value() == 0.0) throw ValidationError("log-log fit needs at least two distinct N");

  LogLogFit fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum rss;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss.value());
  return fit;
}

std::vector<TemperatureFit> fit_rows(const std::vector<SweepRow>& rows,
                                     const std::vector<double>& temperatures,
                                     std::size_t fit_min_n) {
  std::vector<TemperatureFit> fits;
  for (double t : temperatures) {
    std::vector<std::pair<double, double>> points;
    for (const auto& row : rows) {
      if (row.temperature == t && row.n >= fit_min_n) {
        points.emplace_back(static_cast<double>(row.n), row.rel_dispersion);
      }
    }
    TemperatureFit entry{t, points.size(), std::nullopt};
    if (points.size() >= 3) entry.fit = fit_loglog(points);
    fits.push_back(entry);
  }
  return fits;
}

SweepResult run_sweep(const SweepPlan& plan) {
  plan.validate();
  SweepResult result;
  result.rows.reserve(plan.n_values.size() * plan.temperatures.size());
  for (std::size_t n : plan.n_values) {
    ChainSpec spec = plan.base;
    spec.n = n;
    for (double t : plan.temperatures) {
      const auto state = ThermoState::at(t, spec.units);
      SweepRow row;
      row.n = n;
      row.temperature = t;
      row.gamma = gamma_parameter(spec, state);
      row.mean_length = mean_length(spec);
      row.variance_exact = length_variance_exact(spec, state);
      row.rel_dispersion = std::sqrt(row.variance_exact) / row.mean_length;
      row.asymptotic = asymptotic_dispersion(spec, state);
      row.ratio = row.asymptotic / row.rel_dispersion;
      result.rows.push_back(row);
    }
  }
  result.fits = fit_rows(result.rows, plan.temperatures, plan.fit_min_n);
  return result;
}

Preset si_preset(std::string_view name, std::size_t n) {
  if (name != "sodium-like") {
    throw ValidationError("unknown preset '" + std::string(name) + "' (known: sodium-like)");
  }
  Preset preset;
  preset.name = std::string(name);
  preset.max_frequency = 2.0 * std::numbers::pi * 5e12;
  preset.spec.n = n;
  preset.spec.mass = kSodiumAtomicMass;
  // omega_max = 2 kappa / sqrt(mu)
  preset.spec.stiffness = preset.max_frequency * std::sqrt(kSodiumAtomicMass) / 2.0;
  preset.spec.spacing = 5e-10;
  preset.spec.units = UnitSystem::si();
  preset.spec.validate();
  preset.state = ThermoState::at(300.0, UnitSystem::si());
  return preset;
}

}  // namespace hchain
