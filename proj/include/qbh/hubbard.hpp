#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qbh/spin_basis.hpp"
#include "qbh/sym_matrix.hpp"

namespace qbh {

// Microscopic parameters of the two-well spin-1 Bose-Hubbard dimer. u0 and
// u2 are the on-site pair energies in the total-spin-0 and total-spin-2
// collision channels (both repulsive); field is the Zeeman energy gamma*B^z.
struct HubbardParams {
  double t = 0.0;
  double u0 = 1.0;
  double u2 = 1.0;
  double field = 0.0;

  void validate() const {
    if (!std::isfinite(t) || t < 0.0)
      throw std::invalid_argument("HubbardParams: t must be finite and >= 0");
    if (!std::isfinite(u0) || u0 <= 0.0 || !std::isfinite(u2) || u2 <= 0.0)
      throw std::invalid_argument("HubbardParams: u0 and u2 must be positive");
    if (!std::isfinite(field) || field < 0.0)
      throw std::invalid_argument("HubbardParams: field must be finite and >= 0");
  }
};

// Occupations (n_{L,-1}, n_{L,0}, n_{L,+1}, n_{R,-1}, n_{R,0}, n_{R,+1}),
// two particles total.
using FockState = std::array<int, 6>;

inline constexpr std::size_t kFockDim = 21;

// All 21 two-particle states in ascending lexicographic order.
inline const std::vector<FockState>& enumerate_fock_basis() {
  static const std::vector<FockState> basis = [] {
    std::vector<FockState> v;
    FockState s{};
    for (s[0] = 0; s[0] <= 2; ++s[0])
      for (s[1] = 0; s[1] + s[0] <= 2; ++s[1])
        for (s[2] = 0; s[2] + s[1] + s[0] <= 2; ++s[2])
          for (s[3] = 0; s[3] + s[2] + s[1] + s[0] <= 2; ++s[3])
            for (s[4] = 0; s[4] + s[3] + s[2] + s[1] + s[0] <= 2; ++s[4]) {
              s[5] = 2 - s[0] - s[1] - s[2] - s[3] - s[4];
              v.push_back(s);
            }
    std::sort(v.begin(), v.end());
    return v;
  }();
  return basis;
}

namespace detail {

inline int fock_index(const FockState& s) {
  static const std::map<FockState, int> lut = [] {
    std::map<FockState, int> m;
    const auto& basis = enumerate_fock_basis();
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) m.emplace(basis[i], i);
    return m;
  }();
  return lut.at(s);
}

// Dense real 21x21 workspace matrix (not necessarily symmetric).
struct FockMat {
  std::array<double, kFockDim * kFockDim> a{};
  double& at(int i, int j) { return a[i * kFockDim + j]; }
  double at(int i, int j) const { return a[i * kFockDim + j]; }
};

inline FockMat mul(const FockMat& x, const FockMat& y) {
  FockMat r;
  for (std::size_t i = 0; i < kFockDim; ++i)
    for (std::size_t k = 0; k < kFockDim; ++k) {
      const double xik = x.a[i * kFockDim + k];
      if (xik == 0.0) continue;
      for (std::size_t j = 0; j < kFockDim; ++j)
        r.a[i * kFockDim + j] += xik * y.a[k * kFockDim + j];
    }
  return r;
}

inline void axpy(FockMat& acc, double c, const FockMat& x) {
  for (std::size_t i = 0; i < kFockDim * kFockDim; ++i) acc.a[i] += c * x.a[i];
}

inline FockMat transpose(const FockMat& x) {
  FockMat r;
  for (std::size_t i = 0; i < kFockDim; ++i)
    for (std::size_t j = 0; j < kFockDim; ++j) r.a[j * kFockDim + i] = x.a[i * kFockDim + j];
  return r;
}

// Matrix of a^dag_p a_q with bosonic sqrt(n) amplitudes.
inline FockMat bilinear(int p, int q) {
  FockMat m;
  const auto& basis = enumerate_fock_basis();
  for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
    FockState s = basis[col];
    if (s[q] == 0) continue;
    const double amp_q = std::sqrt(static_cast<double>(s[q]));
    --s[q];
    const double amp_p = std::sqrt(static_cast<double>(s[p] + 1));
    ++s[p];
    m.at(fock_index(s), col) += amp_q * amp_p;
  }
  return m;
}

// Per-site spin-1 operators built from second-quantized bilinears.
// Site modes are (base+0, base+1, base+2) for sigma = (-1, 0, +1).
struct SiteOps {
  FockMat sz, s_plus, s_minus, number, spin_squared;
};

inline SiteOps site_ops(int site) {
  const int b = 3 * site;
  SiteOps ops;
  for (int sigma = 0; sigma < 3; ++sigma) {
    FockMat n = bilinear(b + sigma, b + sigma);
    axpy(ops.number, 1.0, n);
    axpy(ops.sz, static_cast<double>(sigma - 1), n);
  }
  const double r2 = std::sqrt(2.0);
  axpy(ops.s_plus, r2, bilinear(b + 1, b + 0));
  axpy(ops.s_plus, r2, bilinear(b + 2, b + 1));
  ops.s_minus = transpose(ops.s_plus);
  // S^2 = Sz^2 + (S^+ S^- + S^- S^+)/2
  ops.spin_squared = mul(ops.sz, ops.sz);
  axpy(ops.spin_squared, 0.5, mul(ops.s_plus, ops.s_minus));
  axpy(ops.spin_squared, 0.5, mul(ops.s_minus, ops.s_plus));
  return ops;
}

}  // namespace detail

// Full 21x21 dimer Hamiltonian: spin-conserving hopping, on-site
// interaction with pair energies u0 / u2 in the spin-0 / spin-2 channels,
// and a linear Zeeman term along z.
inline SymMatrix build_hubbard_hamiltonian(const HubbardParams& p) {
  p.validate();
  detail::FockMat h;

  for (int sigma = 0; sigma < 3; ++sigma) {
    const detail::FockMat hop = detail::bilinear(sigma, 3 + sigma);
    detail::axpy(h, -p.t, hop);
    detail::axpy(h, -p.t, detail::transpose(hop));
  }

  // density and spin couplings realizing the channel pair energies
  const double c0 = (p.u0 + 2.0 * p.u2) / 3.0;
  const double c2 = (p.u2 - p.u0) / 3.0;
  for (int site = 0; site < 2; ++site) {
    const detail::SiteOps ops = detail::site_ops(site);
    detail::FockMat n2 = detail::mul(ops.number, ops.number);
    detail::axpy(h, 0.5 * c0, n2);
    detail::axpy(h, -0.5 * c0, ops.number);
    detail::axpy(h, 0.5 * c2, ops.spin_squared);
    detail::axpy(h, -c2, ops.number);
    detail::axpy(h, -p.field, ops.sz);
  }

  SymMatrix m(kFockDim);
  for (std::size_t i = 0; i < kFockDim; ++i) {
    m.at(i, i) = h.at(i, i);
    for (std::size_t j = i + 1; j < kFockDim; ++j) {
      if (std::abs(h.at(i, j) - h.at(j, i)) > 1e-12)
        throw std::runtime_error("build_hubbard_hamiltonian: assembled matrix not symmetric");
      m.set_sym(i, j, h.at(i, j));
    }
  }
  return m;
}

// Second-order superexchange couplings and the dimensionless parameters
// they induce. j1 < 0 for every repulsive parameter set, so lambda_out is
// always -1 from the microscopic mapping.
struct EffectiveCouplings {
  double j0 = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
  int lambda_out = -1;
  double theta_out = 0.0;
  double h_out = 0.0;
  bool perturbative_ok = true;  // t < min(u0, u2)/10
};

inline EffectiveCouplings map_to_effective(const HubbardParams& p) {
  p.validate();
  EffectiveCouplings c;
  const double t2 = p.t * p.t;
  c.j1 = -2.0 * t2 / p.u2;
  c.j2 = -2.0 * t2 / (3.0 * p.u2) - 4.0 * t2 / (3.0 * p.u0);
  c.j0 = c.j1 - c.j2;
  c.lambda_out = -1;
  // j2/|j1| is t-independent
  c.theta_out = std::atan(-1.0 / 3.0 - 2.0 * p.u2 / (3.0 * p.u0));
  if (c.j1 != 0.0) {
    c.h_out = p.field / std::abs(c.j1);
  } else if (p.field != 0.0) {
    throw std::invalid_argument("map_to_effective: t must be positive when field is nonzero");
  }
  c.perturbative_ok = p.t < std::min(p.u0, p.u2) / 10.0;
  return c;
}

// Exchange Hamiltonian j0 + j1 S_L.S_R + j2 (S_L.S_R)^2 - field (Sz_L+Sz_R)
// on the unit-filling 9-dimensional spin basis, in raw energy units. This is
// the operator the second-order couplings actually generate.
inline SymMatrix exchange_hamiltonian(double j0, double j1, double j2, double field) {
  const SymMatrix dot = spin_dot_matrix();
  SymMatrix dot2(kTwoSiteDim);
  for (std::size_t i = 0; i < kTwoSiteDim; ++i)
    for (std::size_t j = 0; j < kTwoSiteDim; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < kTwoSiteDim; ++k) s += dot.at(i, k) * dot.at(k, j);
      dot2.at(i, j) = s;
    }
  SymMatrix m(kTwoSiteDim);
  for (std::size_t i = 0; i < kTwoSiteDim; ++i)
    for (std::size_t j = 0; j < kTwoSiteDim; ++j)
      m.at(i, j) = j1 * dot.at(i, j) + j2 * dot2.at(i, j);
  for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i)
    m.at(i, i) += j0 - field * total_sz(i);
  return m;
}

struct SpectrumComparison {
  double max_deviation = 0.0;  // in units of |j1|
  double offset_used = 0.0;    // constant removed between the two spectra
};

// Diagonalizes the full dimer and the exchange model it maps onto, aligns
// the nine lowest levels by their means, and reports the largest remaining
// difference in units of |j1|.
inline SpectrumComparison compare_spectra(const HubbardParams& p) {
  p.validate();
  const EigenSystem hub = eigh(build_hubbard_hamiltonian(p));
  const double manifold_spread = hub.values[8] - hub.values[0];
  const double charge_gap = hub.values[9] - hub.values[8];
  if (charge_gap < 10.0 * manifold_spread)
    throw std::runtime_error(
        "compare_spectra: fewer than 9 Hubbard states below the charge gap; decrease t");

  const EffectiveCouplings c = map_to_effective(p);
  const EigenSystem eff = eigh(exchange_hamiltonian(c.j0, c.j1, c.j2, p.field));

  double mean_h = 0.0, mean_e = 0.0;
  for (int i = 0; i < 9; ++i) {
    mean_h += hub.values[i] / 9.0;
    mean_e += eff.values[i] / 9.0;
  }
  double dev = 0.0;
  for (int i = 0; i < 9; ++i)
    dev = std::max(dev, std::abs((hub.values[i] - mean_h) - (eff.values[i] - mean_e)));

  SpectrumComparison out;
  const double unit = std::abs(c.j1);
  out.max_deviation = unit > 0.0 ? dev / unit : dev;
  out.offset_used = mean_h - mean_e;
  return out;
}

}  // namespace qbh
