#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hchain/chain_spec.hpp"
#include "hchain/matrix.hpp"

namespace hchain {

enum class Parity { even, odd };

// Rigid translation of the chain: u0 = sqrt(N) X, q0 = P / sqrt(N).
struct ZeroMode {
  double total_mass = 0.0;
  double com_scale = 0.0;
  double momentum_scale = 0.0;
};

/// Analytic normal modes of the free-ended chain.
///
/// Mode m (0-based, m = 0..N-1) has wavenumber k_m = m pi / N and frequency
/// omega_m = (2 kappa / sqrt(mu)) sin(k_m / 2). Its amplitude at particle n
/// (1-based, n = 1..N) is
///
///   sqrt(2/N) cos(k_m (n - (N+1)/2))   for even m >= 2,
///   sqrt(2/N) sin(k_m (n - (N+1)/2))   for odd m,
///
/// and 1/sqrt(N) for m = 0. Rows of the amplitude matrix are orthonormal.
struct ModeTable {
  std::size_t n = 0;
  std::vector<double> wavenumbers;
  std::vector<double> frequencies;
  SquareMatrix amplitudes;  // amplitudes(m, n-1)
  std::vector<Parity> parities;
  ZeroMode zero_mode;

  // Amplitude of mode m at 1-based particle index `particle`.
  double amplitude(std::size_t m, std::size_t particle) const {
    return amplitudes(m, particle - 1);
  }
};

// Dimensionless dynamical matrix D = Hessian(V) / kappa^2: tridiagonal with
// diagonal (1, 2, ..., 2, 1) and -1 off the diagonal. Eigenvalues are
// mu omega^2 / kappa^2.
struct DynamicalMatrix {
  std::size_t dim = 0;
  SquareMatrix entries;
};

enum class Frame {
  lab_position,      // x_n
  shifted_position,  // y_n = x_n - equilibrium offset
  normal_coordinate, // u_m
  particle_momentum, // p_n
  normal_momentum,   // q_m
};

struct CoordinateVector {
  std::vector<double> values;
  Frame frame = Frame::shifted_position;
};

// Offsets (n - (N+1)/2) xi for n = 1..N, so that x_n = y_n + offset_n.
std::vector<double> equilibrium_positions(const ChainSpec& spec);

// omega(k) = (2 kappa / sqrt(mu)) sin(k/2) for k in [0, pi].
double dispersion(double k, const ChainSpec& spec);

// omega_m for m = 0..N-1 from the closed form, O(N).
std::vector<double> mode_frequencies(const ChainSpec& spec);

ModeTable build_mode_table(const ChainSpec& spec);

DynamicalMatrix build_dynamical_matrix(const ChainSpec& spec);

// Closed-form eigenvalue of D for mode m: 4 sin^2(m pi / 2N).
double dimensionless_eigenvalue(std::size_t m, std::size_t n);

CoordinateVector to_shifted(const CoordinateVector& lab, const ChainSpec& spec);
CoordinateVector to_lab(const CoordinateVector& shifted, const ChainSpec& spec);

// u_m = sum_n Y[m][n] y_n (and q_m from p_n by the same rule).
CoordinateVector to_normal(const CoordinateVector& coords, const ModeTable& table);
// y_n = sum_m Y[m][n] u_m.
CoordinateVector from_normal(const CoordinateVector& coords, const ModeTable& table);

// Centre-of-mass coordinate X = u0 / sqrt(N) from shifted positions.
double center_of_mass(const CoordinateVector& shifted, const ModeTable& table);

}  // namespace hchain
