#include "hchain/modes.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "hchain/error.hpp"

namespace hchain {

namespace {

void require_length(const CoordinateVector& coords, std::size_t n) {
  if (coords.values.size() != n) {
    throw ValidationError("coordinate vector length " + std::to_string(coords.values.size()) +
                          " does not match chain size " + std::to_string(n));
  }
}

// Amplitude profile of mode m at 1-based particle `p` without normalization.
// The phase k_m (p - (N+1)/2) equals pi r / (2N) with the integer
// r = m (2p - N - 1); reducing r exactly keeps the argument small and makes
// the inversion symmetry p -> N+1-p hold bit for bit.
double mode_shape(std::int64_t m, std::int64_t p, std::int64_t n) {
  const std::int64_t period = 4 * n;
  std::int64_t r = (m * (2 * p - n - 1)) % period;
  if (r > 2 * n) r -= period;
  if (r <= -2 * n) r += period;
  const std::int64_t mag = r < 0 ? -r : r;
  const double angle = std::numbers::pi * static_cast<double>(mag) / static_cast<double>(2 * n);
  if (m % 2 == 0) {
    return std::cos(angle);
  }
  if (mag == 0 || mag == 2 * n) return 0.0;
  const double s = std::sin(angle);
  return r < 0 ? -s : s;
}

}  // namespace

std::vector<double> equilibrium_positions(const ChainSpec& spec) {
  spec.validate();
  std::vector<double> offsets(spec.n);
  const double center = (static_cast<double>(spec.n) + 1.0) / 2.0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    offsets[i] = (static_cast<double>(i + 1) - center) * spec.spacing;
  }
  return offsets;
}

double dispersion(double k, const ChainSpec& spec) {
  if (!(k >= 0.0 && k <= std::numbers::pi)) {
    throw ValidationError("wavenumber must lie in [0, pi] (got " + std::to_string(k) + ")");
  }
  return spec.max_frequency() * std::sin(k / 2.0);
}

double dimensionless_eigenvalue(std::size_t m, std::size_t n) {
  const double s = std::sin(std::numbers::pi * static_cast<double>(m) / (2.0 * static_cast<double>(n)));
  return 4.0 * s * s;
}

std::vector<double> mode_frequencies(const ChainSpec& spec) {
  spec.validate();
  const double dn = static_cast<double>(spec.n);
  std::vector<double> omega(spec.n);
  for (std::size_t m = 0; m < spec.n; ++m) {
    // sin(k_m / 2) written as sin(m pi / 2N)
    omega[m] = spec.max_frequency() * std::sin(std::numbers::pi * static_cast<double>(m) / (2.0 * dn));
  }
  return omega;
}

ModeTable build_mode_table(const ChainSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const double dn = static_cast<double>(n);

  ModeTable table;
  table.n = n;
  table.wavenumbers.resize(n);
  table.frequencies = mode_frequencies(spec);
  table.parities.resize(n);
  table.amplitudes = SquareMatrix(n);

  const double zero_norm = 1.0 / std::sqrt(dn);
  const double norm = std::sqrt(2.0 / dn);
  for (std::size_t m = 0; m < n; ++m) {
    table.wavenumbers[m] = std::numbers::pi * static_cast<double>(m) / dn;
    table.parities[m] = m % 2 == 0 ? Parity::even : Parity::odd;

    auto row = table.amplitudes.row(m);
    if (m == 0) {
      for (double& y : row) y = zero_norm;
      continue;
    }
    for (std::size_t p = 1; p <= n; ++p) {
      row[p - 1] = norm * mode_shape(static_cast<std::int64_t>(m), static_cast<std::int64_t>(p),
                                     static_cast<std::int64_t>(n));
    }
  }

  table.zero_mode.total_mass = dn * spec.mass;
  table.zero_mode.com_scale = std::sqrt(dn);
  table.zero_mode.momentum_scale = 1.0 / std::sqrt(dn);
  return table;
}

DynamicalMatrix build_dynamical_matrix(const ChainSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  DynamicalMatrix d{n, SquareMatrix(n)};
  for (std::size_t i = 0; i < n; ++i) {
    d.entries(i, i) = (i == 0 || i + 1 == n) ? 1.0 : 2.0;
    if (i + 1 < n) {
      d.entries(i, i + 1) = -1.0;
      d.entries(i + 1, i) = -1.0;
    }
  }
  return d;
}

CoordinateVector to_shifted(const CoordinateVector& lab, const ChainSpec& spec) {
  if (lab.frame != Frame::lab_position) throw ValidationError("to_shifted expects lab positions");
  require_length(lab, spec.n);
  const auto offsets = equilibrium_positions(spec);
  CoordinateVector out{lab.values, Frame::shifted_position};
  for (std::size_t i = 0; i < spec.n; ++i) out.values[i] -= offsets[i];
  return out;
}

CoordinateVector to_lab(const CoordinateVector& shifted, const ChainSpec& spec) {
  if (shifted.frame != Frame::shifted_position) throw ValidationError("to_lab expects shifted positions");
  require_length(shifted, spec.n);
  const auto offsets = equilibrium_positions(spec);
  CoordinateVector out{shifted.values, Frame::lab_position};
  for (std::size_t i = 0; i < spec.n; ++i) out.values[i] += offsets[i];
  return out;
}

CoordinateVector to_normal(const CoordinateVector& coords, const ModeTable& table) {
  Frame target;
  switch (coords.frame) {
    case Frame::shifted_position: target = Frame::normal_coordinate; break;
    case Frame::particle_momentum: target = Frame::normal_momentum; break;
    default: throw ValidationError("to_normal expects shifted positions or particle momenta");
  }
  require_length(coords, table.n);
  CoordinateVector out{std::vector<double>(table.n, 0.0), target};
  for (std::size_t m = 0; m < table.n; ++m) {
    const auto row = table.amplitudes.row(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < table.n; ++i) acc += row[i] * coords.values[i];
    out.values[m] = acc;
  }
  return out;
}

CoordinateVector from_normal(const CoordinateVector& coords, const ModeTable& table) {
  Frame target;
  switch (coords.frame) {
    case Frame::normal_coordinate: target = Frame::shifted_position; break;
    case Frame::normal_momentum: target = Frame::particle_momentum; break;
    default: throw ValidationError("from_normal expects normal coordinates or momenta");
  }
  require_length(coords, table.n);
  CoordinateVector out{std::vector<double>(table.n, 0.0), target};
  for (std::size_t m = 0; m < table.n; ++m) {
    const auto row = table.amplitudes.row(m);
    const double u = coords.values[m];
    for (std::size_t i = 0; i < table.n; ++i) out.values[i] += row[i] * u;
  }
  return out;
}

double center_of_mass(const CoordinateVector& shifted, const ModeTable& table) {
  const auto normal = to_normal(shifted, table);
  return normal.values[0] / table.zero_mode.com_scale;
}

}  // namespace hchain
