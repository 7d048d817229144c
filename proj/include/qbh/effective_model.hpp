#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbh/spin_basis.hpp"
#include "qbh/sym_matrix.hpp"

namespace qbh {

// Dimensionless couplings of the two-site quadratic-biquadratic Heisenberg
// Hamiltonian
//
//   H = lambda * S_L.S_R + tan(theta) * B - h * (Sz_L + Sz_R),
//
// with B the biquadratic coupling of biquadratic_matrix(). All energies are
// in units of |J1|. h >= 0; negative fields map onto h >= 0 by inverting the
// spin quantization axis, which flips the sign of every S^z sector label.
struct QbhParams {
  int lambda = 1;      // sign of the linear coupling, +1 or -1
  double theta = 0.0;  // radians, |theta| < pi/2 (tan theta stays finite)
  double h = 0.0;      // dimensionless field, >= 0

  void validate() const {
    if (lambda != 1 && lambda != -1)
      throw std::invalid_argument("QbhParams: lambda must be +1 or -1");
    if (!std::isfinite(theta) || std::abs(theta) >= std::numbers::pi / 2 - 1e-9)
      throw std::invalid_argument("QbhParams: |theta| must be < pi/2 - 1e-9");
    if (!std::isfinite(h) || h < 0.0)
      throw std::invalid_argument("QbhParams: h must be finite and >= 0");
  }

  double tan_theta() const { return std::tan(theta); }
};

inline SymMatrix build_qbh_hamiltonian(const QbhParams& p) {
  p.validate();
  const double tau = p.tan_theta();
  const SymMatrix dot = spin_dot_matrix();
  const SymMatrix biq = biquadratic_matrix();
  SymMatrix m(kTwoSiteDim);
  for (std::size_t i = 0; i < kTwoSiteDim; ++i)
    for (std::size_t j = 0; j < kTwoSiteDim; ++j)
      m.at(i, j) = p.lambda * dot.at(i, j) + tau * biq.at(i, j);
  for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i)
    m.at(i, i) -= p.h * total_sz(i);
  return m;
}

// Closed-form spectrum. Sector S^z = +-2 holds the product states |+-1,+-1>;
// S^z = +-1 the Bell pairs (|0,s> +- |s,0>)/sqrt2; S^z = 0 splits into the
// antisymmetric combination at e00 and two mirror-symmetric states at e0_pm
// whose mixing with |0,0> is parametrized by alpha_pm, cos^2(alpha_pm) =
// |e0_pm| / delta.
struct AnalyticSpectrum {
  double e_plus2 = 0.0, e_minus2 = 0.0;
  double e1_plus = 0.0, e1_minus = 0.0;
  double em1_plus = 0.0, em1_minus = 0.0;
  double e00 = 0.0, e0_plus = 0.0, e0_minus = 0.0;
  double delta = 0.0;
  double alpha_plus = 0.0, alpha_minus = 0.0;

  std::array<double, 9> sorted() const {
    std::array<double, 9> e{e_plus2, e_minus2, e1_plus,  e1_minus, em1_plus,
                            em1_minus, e00,    e0_plus, e0_minus};
    std::sort(e.begin(), e.end());
    return e;
  }
};

inline AnalyticSpectrum analytic_spectrum(const QbhParams& p) {
  p.validate();
  const double tau = p.tan_theta();
  const double g = p.lambda + tau;
  AnalyticSpectrum s;
  s.e_plus2 = g - 2.0 * p.h;
  s.e_minus2 = g + 2.0 * p.h;
  s.e1_plus = g - p.h;
  s.e1_minus = -g - p.h;
  s.em1_plus = g + p.h;
  s.em1_minus = -g + p.h;
  s.e00 = -p.lambda + tau;
  s.delta = std::sqrt(9.0 * g * g - 4.0 * p.lambda * tau);
  if (!(s.delta > 1e-9))
    throw std::runtime_error("analytic_spectrum: gap parameter delta vanished");
  // e0_pm = (e00 +- delta)/2 with e0_plus * e0_minus = -2 g^2; evaluate the
  // cancellation-prone root through the product to keep it accurate near
  // g = 0
  const double det = -2.0 * g * g;
  if (s.e00 >= 0.0) {
    s.e0_plus = (s.e00 + s.delta) / 2.0;
    s.e0_minus = det / s.e0_plus;
  } else {
    s.e0_minus = (s.e00 - s.delta) / 2.0;
    s.e0_plus = det / s.e0_minus;
  }
  auto alpha = [&](double e) {
    const double c2 = std::clamp(std::abs(e) / s.delta, 0.0, 1.0);
    return std::acos(std::sqrt(c2));
  };
  s.alpha_plus = alpha(s.e0_plus);
  s.alpha_minus = alpha(s.e0_minus);
  return s;
}

namespace detail {

inline TwoSiteState product_state(int sigma_left, int sigma_right) {
  TwoSiteState st;
  st.amp[basis_index(sigma_left, sigma_right)] = 1.0;
  return st;
}

// (|0,sigma> + sign * |sigma,0>)/sqrt2
inline TwoSiteState bell_pair(int sigma, int sign) {
  TwoSiteState st;
  const double r = 1.0 / std::sqrt(2.0);
  st.amp[basis_index(0, sigma)] = r;
  st.amp[basis_index(sigma, 0)] = sign * r;
  return st;
}

// Mirror-symmetric S^z = 0 state x*(|-1,1>+|1,-1>)/sqrt2 + y*|0,0>, with the
// sign fixed so that x >= 0 (and y >= 0 when x vanishes).
inline TwoSiteState symmetric_sector0_state(double x, double y) {
  if (x < 0.0 || (x == 0.0 && y < 0.0)) {
    x = -x;
    y = -y;
  }
  TwoSiteState st;
  const double r = 1.0 / std::sqrt(2.0);
  st.amp[basis_index(-1, 1)] = x * r;
  st.amp[basis_index(1, -1)] = x * r;
  st.amp[basis_index(0, 0)] = y;
  return st;
}

// Eigenvector of the mirror-symmetric S^z = 0 block [[a, b], [b, 0]] in the
// basis {(|-1,1>+|1,-1>)/sqrt2, |0,0>}. For eigenvalue mu the vector is
// (b, mu - a) = (b, -mu_other), which stays accurate where the direct
// difference would cancel. Both components vanish only when the block is
// diagonal and the |0,0> slot holds the other level.
inline TwoSiteState symmetric_sector0_eigenstate(double b, double minus_other) {
  double x = b;
  double y = minus_other;
  if (x == 0.0 && y == 0.0) x = 1.0;
  const double r = std::sqrt(x * x + y * y);
  return symmetric_sector0_state(x / r, y / r);
}

struct EigenstateRecord {
  double energy;
  int sz;
  int branch_rank;  // preference order inside a sector when levels collide
  TwoSiteState state;
};

inline std::vector<EigenstateRecord> analytic_eigensystem(const QbhParams& p) {
  const AnalyticSpectrum s = analytic_spectrum(p);
  const double tau = p.tan_theta();
  const double b = std::sqrt(2.0) * (p.lambda + tau);  // (s, |0,0>) coupling

  std::vector<EigenstateRecord> r;
  r.reserve(9);
  r.push_back({s.e_plus2, 2, 0, product_state(1, 1)});
  r.push_back({s.e_minus2, -2, 0, product_state(-1, -1)});
  r.push_back({s.e1_minus, 1, 0, bell_pair(1, -1)});
  r.push_back({s.e1_plus, 1, 1, bell_pair(1, +1)});
  r.push_back({s.em1_minus, -1, 0, bell_pair(-1, -1)});
  r.push_back({s.em1_plus, -1, 1, bell_pair(-1, +1)});
  r.push_back({s.e0_minus, 0, 0, symmetric_sector0_eigenstate(b, -s.e0_plus)});
  // antisymmetric combination (|-1,1> - |1,-1>)/sqrt2
  {
    TwoSiteState st;
    const double inv = 1.0 / std::sqrt(2.0);
    st.amp[basis_index(-1, 1)] = inv;
    st.amp[basis_index(1, -1)] = -inv;
    r.push_back({s.e00, 0, 1, st});
  }
  r.push_back({s.e0_plus, 0, 2, symmetric_sector0_eigenstate(b, -s.e0_minus)});
  return r;
}

}  // namespace detail

// Nine (energy, eigenstate) pairs of the closed-form eigensystem.
inline std::vector<std::pair<double, TwoSiteState>> analytic_eigenstates(const QbhParams& p) {
  std::vector<std::pair<double, TwoSiteState>> out;
  out.reserve(9);
  for (const auto& rec : detail::analytic_eigensystem(p)) out.emplace_back(rec.energy, rec.state);
  return out;
}

// Splits a 9x9 Hamiltonian into its five S^z blocks (dimensions 1,2,3,2,1
// for S^z = -2..+2). Any nonzero cross-sector entry signals a corrupted
// builder and is rejected.
inline std::map<int, SymMatrix> sector_decompose(const SymMatrix& m) {
  if (m.size() != kTwoSiteDim)
    throw std::invalid_argument("sector_decompose: expected a 9x9 matrix");
  for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i)
    for (int j = 0; j < static_cast<int>(kTwoSiteDim); ++j)
      if (total_sz(i) != total_sz(j) && m.at(i, j) != 0.0)
        throw std::runtime_error("sector_decompose: nonzero entry couples S^z = " +
                                 std::to_string(total_sz(i)) + " to S^z = " +
                                 std::to_string(total_sz(j)));
  std::map<int, SymMatrix> blocks;
  for (int sz = -2; sz <= 2; ++sz) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(kTwoSiteDim); ++i)
      if (total_sz(i) == sz) idx.push_back(i);
    SymMatrix b(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) b.at(r, c) = m.at(idx[r], idx[c]);
    blocks.emplace(sz, std::move(b));
  }
  return blocks;
}

struct GroundState {
  double energy = 0.0;
  int sz = 0;
  TwoSiteState state;
  bool degenerate = false;
  std::vector<int> degenerate_sectors;  // sectors reaching the minimum within 1e-12
};

// Global ground state over all sectors. Ties within 1e-12 are resolved
// toward the smallest |S^z| (nonnegative preferred), and inside a sector
// toward the minus branch; the degenerate flag reports every tied level.
inline GroundState ground_state(const QbhParams& p) {
  const auto recs = detail::analytic_eigensystem(p);
  double e_min = recs.front().energy;
  for (const auto& r : recs) e_min = std::min(e_min, r.energy);

  constexpr double kTieTol = 1e-12;
  const detail::EigenstateRecord* best = nullptr;
  std::vector<int> sectors;
  int tied = 0;
  for (const auto& r : recs) {
    if (r.energy - e_min > kTieTol) continue;
    ++tied;
    if (std::find(sectors.begin(), sectors.end(), r.sz) == sectors.end()) sectors.push_back(r.sz);
    auto rank = [](const detail::EigenstateRecord& x) {
      return std::tuple<int, int, int>(std::abs(x.sz), x.sz < 0 ? 1 : 0, x.branch_rank);
    };
    if (best == nullptr || rank(r) < rank(*best)) best = &r;
  }
  std::sort(sectors.begin(), sectors.end());

  GroundState g;
  g.energy = best->energy;
  g.sz = best->sz;
  g.state = best->state;
  g.degenerate = tied > 1;
  g.degenerate_sectors = std::move(sectors);
  return g;
}

// Numeric cross-check path for the S^z = 0 sector ground state: Jacobi on
// the 3x3 block, with a mirror-symmetry projection to pick a reproducible
// representative when the two lowest levels collide.
inline std::pair<double, TwoSiteState> sector0_ground_numeric(const SymMatrix& h9) {
  const int i_m = basis_index(-1, 1), i_0 = basis_index(0, 0), i_p = basis_index(1, -1);
  const int idx[3] = {i_m, i_0, i_p};
  SymMatrix block(3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) block.at(r, c) = h9.at(idx[r], idx[c]);
  const EigenSystem es = eigh(block);

  const double scale = std::max(1.0, std::abs(es.values[0]));
  std::vector<double> v = es.vectors[0];
  if (es.values[1] - es.values[0] <= 1e-10 * scale) {
    // project each cluster vector onto the mirror-symmetric subspace and
    // keep the representative with the larger symmetric component
    auto sym_part = [](const std::vector<double>& w) {
      return std::vector<double>{0.5 * (w[0] + w[2]), w[1], 0.5 * (w[0] + w[2])};
    };
    auto norm = [](const std::vector<double>& w) {
      return std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    };
    std::vector<double> s0 = sym_part(es.vectors[0]);
    std::vector<double> s1 = sym_part(es.vectors[1]);
    v = (norm(s0) >= norm(s1)) ? s0 : s1;
    const double r = norm(v);
    for (double& x : v) x /= r;
  }
  // fix the global sign: symmetric component nonnegative, then |0,0|
  const double s_comp = v[0] + v[2];
  if (s_comp < 0.0 || (s_comp == 0.0 && v[1] < 0.0))
    for (double& x : v) x = -x;

  TwoSiteState st;
  st.amp[i_m] = v[0];
  st.amp[i_0] = v[1];
  st.amp[i_p] = v[2];
  return {es.values[0], st};
}

}  // namespace qbh
