#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbh {

// Dense real symmetric matrix, row-major storage. Builders write both
// halves; eigh() rejects input whose stored halves disagree.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }

  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const double& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // writes both (i,j) and (j,i)
  void set_sym(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Full spectral decomposition of a real symmetric matrix.
// values are ascending; vectors[k] is the unit eigenvector paired with
// values[k]. Inside a degenerate cluster the basis is whatever the solver
// produced; callers must not rely on it.
struct EigenSystem {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

namespace detail {

inline double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi diagonalization. Converges when the off-diagonal Frobenius
// norm drops below 1e-13 * ||A||_F; hard cap of 100 sweeps.
inline EigenSystem eigh(const SymMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("eigh: empty matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(m.at(i, j)))
        throw std::invalid_argument("eigh: non-finite entry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw std::invalid_argument("eigh: stored halves disagree at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");

  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double tol = 1e-13 * m.frobenius_norm();
  constexpr int kMaxSweeps = 100;
  double off = detail::off_diagonal_norm(a, n);
  int sweep = 0;
  while (off > tol && sweep < kMaxSweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        a[p * n + p] -= t * apq;
        a[q * n + q] += t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = a[p * n + k] = c * akp - s * akq;
          a[k * n + q] = a[q * n + k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    ++sweep;
    off = detail::off_diagonal_norm(a, n);
  }
  if (off > tol)
    throw std::runtime_error("eigh: Jacobi did not converge within " +
                             std::to_string(kMaxSweeps) +
                             " sweeps; off-diagonal residual = " + std::to_string(off));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

  EigenSystem es;
  es.values.resize(n);
  es.vectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = order[k];
    es.values[k] = a[c * n + c];
    for (std::size_t i = 0; i < n; ++i) es.vectors[k][i] = v[i * n + c];
  }
  return es;
}

// Greedy ascending clustering: a value joins the open class iff it lies
// within tol of the class representative (the first member). Returns
// (representative, multiplicity) pairs; multiplicities sum to n.
inline std::vector<std::pair<double, int>> degeneracy_classes(const std::vector<double>& ascending,
                                                              double tol) {
  if (tol <= 0.0) throw std::invalid_argument("degeneracy_classes: tol must be positive");
  std::vector<std::pair<double, int>> classes;
  for (double v : ascending) {
    if (!classes.empty() && std::abs(v - classes.back().first) <= tol)
      ++classes.back().second;
    else
      classes.emplace_back(v, 1);
  }
  return classes;
}

inline std::vector<std::pair<double, int>> degeneracy_classes(const EigenSystem& es, double tol) {
  return degeneracy_classes(es.values, tol);
}

}  // namespace qbh
