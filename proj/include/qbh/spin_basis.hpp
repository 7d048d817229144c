#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "qbh/sym_matrix.hpp"

namespace qbh {

// Two spin-1 particles, product basis |sigma_left, sigma_right> with
// sigma in {-1, 0, +1}. Canonical index = 3*(sigma_left+1) + (sigma_right+1).
inline constexpr std::size_t kTwoSiteDim = 9;

constexpr int basis_index(int sigma_left, int sigma_right) {
  return 3 * (sigma_left + 1) + (sigma_right + 1);
}
constexpr int left_spin(int index) { return index / 3 - 1; }
constexpr int right_spin(int index) { return index % 3 - 1; }
constexpr int total_sz(int index) { return left_spin(index) + right_spin(index); }
constexpr int mirror_index(int index) { return basis_index(right_spin(index), left_spin(index)); }

// Normalized 9-amplitude state in canonical index order. All Hamiltonians
// handled here are real symmetric, so real amplitudes suffice.
struct TwoSiteState {
  std::array<double, kTwoSiteDim> amp{};

  double norm() const {
    double s = 0.0;
    for (double a : amp) s += a * a;
    return std::sqrt(s);
  }

  double dot(const TwoSiteState& other) const {
    double s = 0.0;
    for (std::size_t i = 0; i < kTwoSiteDim; ++i) s += amp[i] * other.amp[i];
    return s;
  }
};

namespace detail {

// Transverse double-exchange pairs, (S^+_L S^-_R + S^-_L S^+_R)/2.
// For spin-1 every allowed pair carries amplitude 1.
template <typename F>
void for_each_exchange_pair(F&& f) {
  for (int sl = -1; sl <= 1; ++sl)
    for (int sr = -1; sr <= 1; ++sr) {
      if (sl == 1 || sr == -1) continue;
      const double amp =
          0.5 * std::sqrt(2.0 - sl * (sl + 1)) * std::sqrt(2.0 - sr * (sr - 1));
      f(basis_index(sl + 1, sr - 1), basis_index(sl, sr), amp);
    }
}

}  // namespace detail

// Matrix of S_L . S_R in the canonical basis.
inline SymMatrix spin_dot_matrix() {
  SymMatrix m(kTwoSiteDim);
  for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i)
    m.at(i, i) = static_cast<double>(left_spin(i) * right_spin(i));
  detail::for_each_exchange_pair([&](int i, int j, double amp) { m.set_sym(i, j, amp); });
  return m;
}

// Biquadratic coupling matrix: transverse double-exchange plus the squared
// Ising part, (S^+_L S^-_R + S^-_L S^+_R)/2 + (S^z_L S^z_R)^2.
inline SymMatrix biquadratic_matrix() {
  SymMatrix m(kTwoSiteDim);
  for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i) {
    const double zz = static_cast<double>(left_spin(i) * right_spin(i));
    m.at(i, i) = zz * zz;
  }
  detail::for_each_exchange_pair([&](int i, int j, double amp) { m.set_sym(i, j, amp); });
  return m;
}

// Matrix of S^z_L + S^z_R (diagonal).
inline SymMatrix sz_total_matrix() {
  SymMatrix m(kTwoSiteDim);
  for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i)
    m.at(i, i) = static_cast<double>(total_sz(i));
  return m;
}

}  // namespace qbh
