#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qbh/effective_model.hpp"
#include "qbh/entanglement.hpp"

namespace qbh {

// Inclusive-endpoint 1d grid: steps is the number of points.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  void validate() const {
    if (steps < 1) throw std::invalid_argument("GridSpec: steps must be >= 1");
    if (!(min <= max)) throw std::invalid_argument("GridSpec: min must be <= max");
  }

  double at(int i) const {
    return steps == 1 ? min : min + (max - min) * static_cast<double>(i) / (steps - 1);
  }
};

struct SweepSpec {
  int lambda = 1;
  GridSpec theta;
  GridSpec h;

  void validate() const {
    theta.validate();
    h.validate();
    if (h.min < 0.0) throw std::invalid_argument("SweepSpec: h must be >= 0");
    QbhParams{lambda, theta.min, h.min}.validate();
    QbhParams{lambda, theta.max, h.min}.validate();
  }
};

struct PhasePoint {
  double theta = 0.0;
  double h = 0.0;
  int sz = 0;
  double energy = 0.0;
  double magnetization = 0.0;  // equals sz; S^z is a good quantum number
  bool degenerate = false;
};

// Ground-sector classification from the closed-form level energies.
inline PhasePoint classify(const QbhParams& p) {
  const GroundState g = ground_state(p);
  PhasePoint pt;
  pt.theta = p.theta;
  pt.h = p.h;
  pt.sz = g.sz;
  pt.energy = g.energy;
  pt.magnetization = static_cast<double>(g.sz);
  pt.degenerate = g.degenerate;
  return pt;
}

struct GroundStateReport {
  PhasePoint point;
  std::array<double, kTwoSiteDim> amplitudes{};
  double entropy = 0.0;
  double k = 1.0;
  double f_s = 0.0;
  double f_t = 0.0;
  double ppm = 0.0;
  double p0 = 0.0;
};

inline GroundStateReport ground_state_report(const QbhParams& p) {
  const GroundState g = ground_state(p);
  GroundStateReport r;
  r.point = classify(p);
  r.amplitudes = g.state.amp;
  const DensityMatrix3 rho = reduce_left(g.state);
  r.entropy = entropy(rho);
  r.k = orbital_number(rho);
  const Fidelities f = fidelities(g.state);
  r.f_s = f.f_singlet;
  r.f_t = f.f_triplet;
  const ProductProbabilities pp = product_probabilities(g.state);
  r.ppm = pp.pm();
  r.p0 = pp.p0;
  return r;
}

namespace detail {

template <typename F>
void parallel_for(int total, unsigned threads, F&& body) {
  if (threads <= 1 || total < 256) {
    for (int i = 0; i < total; ++i) body(i);
    return;
  }
  const unsigned nt = std::min<unsigned>(threads, static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < total; i += static_cast<int>(nt)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Row-major (theta outer, h inner) grid of classifications. Points are
// independent; any thread count produces the identical grid.
inline std::vector<PhasePoint> sweep(const SweepSpec& spec, unsigned threads = 1) {
  spec.validate();
  const int total = spec.theta.steps * spec.h.steps;
  std::vector<PhasePoint> grid(total);
  detail::parallel_for(total, threads, [&](int i) {
    const int ti = i / spec.h.steps;
    const int hi = i % spec.h.steps;
    grid[i] = classify(QbhParams{spec.lambda, spec.theta.at(ti), spec.h.at(hi)});
  });
  return grid;
}

// First-order transition fields along h at fixed (lambda, theta): a uniform
// 1000-sample scan brackets every sector change, then bisection on the
// sector label pins each crossing to within tol.
inline std::vector<double> boundaries_1d(int lambda, double theta, double h_max, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("boundaries_1d: tol must be positive");
  std::vector<double> out;
  if (h_max <= 0.0) return out;
  constexpr int kScan = 1000;
  auto sector_at = [&](double h) { return classify(QbhParams{lambda, theta, h}).sz; };
  int s_prev = sector_at(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double h_hi = h_max * k / kScan;
    const int s_hi = sector_at(h_hi);
    if (s_hi != s_prev) {
      double lo = h_max * (k - 1) / kScan;
      double hi = h_hi;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (sector_at(mid) == s_prev)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    s_prev = s_hi;
  }
  return out;
}

enum class SweepAxis { theta, h };

struct SpectrumRow {
  double x = 0.0;  // grid value along the chosen axis
  std::array<double, 9> energies{};
  std::vector<std::pair<double, int>> classes;  // degeneracy clusters, tol 1e-8
};

inline std::vector<SpectrumRow> spectrum_sweep(int lambda, SweepAxis axis, double fixed,
                                               const GridSpec& grid) {
  grid.validate();
  std::vector<SpectrumRow> rows;
  rows.reserve(grid.steps);
  for (int i = 0; i < grid.steps; ++i) {
    const double x = grid.at(i);
    const QbhParams p = (axis == SweepAxis::theta) ? QbhParams{lambda, x, fixed}
                                                   : QbhParams{lambda, fixed, x};
    const AnalyticSpectrum s = analytic_spectrum(p);
    SpectrumRow row;
    row.x = x;
    row.energies = s.sorted();
    row.classes =
        degeneracy_classes(std::vector<double>(row.energies.begin(), row.energies.end()), 1e-8);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct EntanglementRow {
  double theta = 0.0;
  double entropy = 0.0;
  double k = 1.0;
  double p0 = 0.0;
  double ppm = 0.0;
  double f_s = 0.0;
  double f_t = 0.0;
  bool is_global_ground = false;  // sector minimum also global at h = 0
};

// Entanglement measures of the S^z = 0 sector ground state along theta.
// The sector energies carry no field dependence; the global-ground flag is
// evaluated at h = 0 (ties count as global).
inline std::vector<EntanglementRow> entanglement_sweep(int lambda, const GridSpec& thetas) {
  thetas.validate();
  std::vector<EntanglementRow> rows;
  rows.reserve(thetas.steps);
  for (int i = 0; i < thetas.steps; ++i) {
    const QbhParams p{lambda, thetas.at(i), 0.0};
    const auto recs = detail::analytic_eigensystem(p);
    const detail::EigenstateRecord* sector0 = nullptr;
    double min_other = 0.0;
    bool seen_other = false;
    for (const auto& rec : recs) {
      if (rec.sz == 0) {
        if (sector0 == nullptr || rec.energy < sector0->energy - 1e-15 ||
            (std::abs(rec.energy - sector0->energy) <= 1e-15 &&
             rec.branch_rank < sector0->branch_rank))
          sector0 = &rec;
      } else if (!seen_other || rec.energy < min_other) {
        min_other = rec.energy;
        seen_other = true;
      }
    }
    EntanglementRow row;
    row.theta = p.theta;
    const DensityMatrix3 rho = reduce_left(sector0->state);
    row.entropy = entropy(rho);
    row.k = orbital_number(rho);
    const Fidelities f = fidelities(sector0->state);
    row.f_s = f.f_singlet;
    row.f_t = f.f_triplet;
    const ProductProbabilities pp = product_probabilities(sector0->state);
    row.p0 = pp.p0;
    row.ppm = pp.pm();
    row.is_global_ground = sector0->energy <= min_other + 1e-12;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qbh
