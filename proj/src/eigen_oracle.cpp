#include "hchain/eigen_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hchain/error.hpp"

namespace hchain {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

// Tracks, for every row i, the column j > i holding the largest |a_ij|.
// Rows are rescanned only when a rotation may have lowered their maximum.
class PivotIndex {
 public:
  explicit PivotIndex(const SquareMatrix& a) : best_(a.dim(), 0) {
    for (std::size_t i = 0; i + 1 < a.dim(); ++i) rescan(a, i);
  }

  void rescan(const SquareMatrix& a, std::size_t i) {
    std::size_t best = i + 1;
    for (std::size_t j = i + 2; j < a.dim(); ++j) {
      if (std::fabs(a(i, j)) > std::fabs(a(i, best))) best = j;
    }
    best_[i] = best;
  }

  // Row i had entries at columns p and q rewritten (i < p < q or similar).
  void touch(const SquareMatrix& a, std::size_t i, std::size_t p, std::size_t q) {
    if (best_[i] == p || best_[i] == q) {
      rescan(a, i);
      return;
    }
    for (std::size_t col : {p, q}) {
      if (col <= i) continue;
      const double cur = std::fabs(a(i, best_[i]));
      const double cand = std::fabs(a(i, col));
      if (cand > cur || (cand == cur && col < best_[i])) best_[i] = col;
    }
  }

  // Global pivot (p, q) with p < q.
  std::pair<std::size_t, std::size_t> pivot(const SquareMatrix& a) const {
    std::size_t p = 0;
    for (std::size_t i = 1; i + 1 < a.dim(); ++i) {
      if (std::fabs(a(i, best_[i])) > std::fabs(a(p, best_[p]))) p = i;
    }
    return {p, best_[p]};
  }

 private:
  std::vector<std::size_t> best_;
};

double max_residual(const SquareMatrix& original, const std::vector<double>& values,
                    const SquareMatrix& vectors) {
  const std::size_t n = original.dim();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += original(i, j) * vectors(j, k);
      worst = std::max(worst, std::fabs(av - values[k] * vectors(i, k)));
    }
  }
  return worst;
}

}  // namespace

EigenResult symmetric_eigen(const SquareMatrix& matrix, double tolerance) {
  if (!(tolerance > 0.0)) throw ValidationError("eigen tolerance must be > 0");
  const std::size_t n = matrix.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::fabs(matrix(i, j) - matrix(j, i)) > kSymmetryTolerance) {
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }

  SquareMatrix a = matrix;
  SquareMatrix v = SquareMatrix::identity(n);
  std::vector<double> diag(n);
  const std::size_t cap = 64 * n * n;
  std::size_t rotations = 0;

  auto collect = [&] {
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  };

  if (n < 2) {
    collect();
    return {diag, v, 0, 0.0};
  }

  PivotIndex index(a);
  double threshold = tolerance / static_cast<double>(n);
  double residual = 0.0;
  while (true) {
    auto [p, q] = index.pivot(a);
    const double apq = a(p, q);
    if (std::fabs(apq) <= threshold) {
      collect();
      residual = max_residual(matrix, diag, v);
      if (residual <= tolerance) break;
      if (apq == 0.0) {
        throw ConvergenceError("Jacobi iteration stalled above tolerance (residual " +
                               std::to_string(residual) + ")",
                               residual);
      }
      threshold *= 1e-2;
      continue;
    }
    if (rotations >= cap) {
      collect();
      residual = max_residual(matrix, diag, v);
      throw ConvergenceError("Jacobi iteration cap of " + std::to_string(cap) +
                                 " rotations reached (residual " + std::to_string(residual) + ")",
                             residual);
    }

    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == p || r == q) continue;
      const double arp = a(r, p);
      const double arq = a(r, q);
      a(r, p) = a(p, r) = c * arp - s * arq;
      a(r, q) = a(q, r) = s * arp + c * arq;
    }
    for (std::size_t r = 0; r < n; ++r) {
      const double vrp = v(r, p);
      const double vrq = v(r, q);
      v(r, p) = c * vrp - s * vrq;
      v(r, q) = s * vrp + c * vrq;
    }
    ++rotations;

    index.rescan(a, p);
    if (q + 1 < n) index.rescan(a, q);
    for (std::size_t r = 0; r + 1 < n; ++r) {
      if (r != p && r != q) index.touch(a, r, p, q);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = SquareMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
  }
  result.iterations = rotations;
  result.residual = residual;
  return result;
}

}  // namespace hchain
