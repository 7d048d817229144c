#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qbh/effective_model.hpp"
#include "qbh/entanglement.hpp"
#include "qbh/hubbard.hpp"
#include "qbh/spin_basis.hpp"

namespace qbh {

struct SuiteResult {
  std::string name;
  bool passed = true;
  int checks = 0;
  int failures = 0;
  double max_error = 0.0;
};

struct ValidationOptions {
  unsigned seed = 1;
  int spectrum_draws = 10000;
  int entanglement_draws = 1000;
  int symmetry_draws = 500;
  // hook so a harness can exercise failure reporting
  std::function<double(const DensityMatrix3&)> entropy_fn;
};

namespace detail {

inline QbhParams draw_params(std::mt19937& rng, bool with_field) {
  std::uniform_real_distribution<double> theta_d(-1.5, 1.5);
  std::uniform_real_distribution<double> h_d(0.0, 3.0);
  QbhParams p;
  p.lambda = (rng() & 1u) ? 1 : -1;
  p.theta = theta_d(rng);
  p.h = with_field ? h_d(rng) : 0.0;
  return p;
}

inline void record(SuiteResult& r, double err, double tol) {
  ++r.checks;
  r.max_error = std::max(r.max_error, err);
  if (!(err <= tol)) {
    ++r.failures;
    r.passed = false;
  }
}

}  // namespace detail

// Closed-form energies against Jacobi eigenvalues of the built matrix.
inline SuiteResult suite_spectrum_oracle(unsigned seed, int draws) {
  SuiteResult r{"spectrum-oracle"};
  std::mt19937 rng(seed);
  for (int i = 0; i < draws; ++i) {
    const QbhParams p = detail::draw_params(rng, true);
    const auto analytic = analytic_spectrum(p).sorted();
    const auto numeric = eigh(build_qbh_hamiltonian(p)).values;
    double err = 0.0;
    for (int k = 0; k < 9; ++k) err = std::max(err, std::abs(analytic[k] - numeric[k]));
    detail::record(r, err, 1e-10);
  }
  return r;
}

// Closed-form entropy / orbital number against the numeric pipeline
// (sector block diagonalization, partial trace, spectral sums).
inline SuiteResult suite_entanglement_oracle(unsigned seed, int draws) {
  SuiteResult r{"entanglement-oracle"};
  std::mt19937 rng(seed + 1);
  for (int i = 0; i < draws; ++i) {
    QbhParams p = detail::draw_params(rng, false);
    if (i == 0) p = QbhParams{1, -std::numbers::pi / 4, 0.0};
    if (i == 1) p = QbhParams{-1, std::numbers::pi / 4, 0.0};
    const EntanglementClosedForm closed = analytic_entanglement(p);
    const auto [energy, state] = sector0_ground_numeric(build_qbh_hamiltonian(p));
    const DensityMatrix3 rho = reduce_left(state);
    const double err = std::max(std::abs(closed.entropy - entropy(rho)),
                                std::abs(closed.orbital_number - orbital_number(rho)));
    detail::record(r, err, 1e-9);
  }
  return r;
}

// Fixed-eigenvalue entropy fixtures, routed through the hook.
inline SuiteResult suite_entropy_oracle(
    const std::function<double(const DensityMatrix3&)>& entropy_fn) {
  SuiteResult r{"entropy-oracle"};
  auto fn = entropy_fn ? entropy_fn : [](const DensityMatrix3& d) { return entropy(d); };
  struct Fixture {
    std::array<double, 3> eta;
    double expected;
  };
  const Fixture fixtures[] = {
      {{0.0, 0.0, 1.0}, 0.0},
      {{1.0 / 3, 1.0 / 3, 1.0 / 3}, std::log2(3.0)},
      {{0.0, 0.5, 0.5}, 1.0},
      {{1.0 / 6, 1.0 / 6, 2.0 / 3}, std::log2(6.0) / 3.0 + 2.0 / 3.0 * std::log2(1.5)},
  };
  for (const auto& f : fixtures) {
    DensityMatrix3 d;
    for (int i = 0; i < 3; ++i) d.rho.at(i, i) = f.eta[i];
    d.eta = f.eta;
    detail::record(r, std::abs(fn(d) - f.expected), 1e-9);
  }
  return r;
}

// Field inversion, S^z conservation, and left/right reduction symmetry.
inline SuiteResult suite_symmetry(unsigned seed, int draws) {
  SuiteResult r{"symmetry"};
  std::mt19937 rng(seed + 2);
  const SymMatrix dot = spin_dot_matrix();
  const SymMatrix biq = biquadratic_matrix();
  for (int i = 0; i < draws; ++i) {
    const QbhParams p = detail::draw_params(rng, true);
    const SymMatrix h_pos = build_qbh_hamiltonian(p);

    // spectra at +h and -h agree as multisets
    SymMatrix h_neg(kTwoSiteDim);
    const double tau = p.tan_theta();
    for (std::size_t a = 0; a < kTwoSiteDim; ++a)
      for (std::size_t b = 0; b < kTwoSiteDim; ++b)
        h_neg.at(a, b) = p.lambda * dot.at(a, b) + tau * biq.at(a, b);
    for (int a = 0; a < static_cast<int>(kTwoSiteDim); ++a)
      h_neg.at(a, a) += p.h * total_sz(a);
    const auto ev_pos = eigh(h_pos).values;
    const auto ev_neg = eigh(h_neg).values;
    double err = 0.0;
    for (int k = 0; k < 9; ++k) err = std::max(err, std::abs(ev_pos[k] - ev_neg[k]));
    detail::record(r, err, 1e-12);

    // no matrix element couples different S^z sectors
    double cross = 0.0;
    for (int a = 0; a < static_cast<int>(kTwoSiteDim); ++a)
      for (int b = 0; b < static_cast<int>(kTwoSiteDim); ++b)
        if (total_sz(a) != total_sz(b)) cross = std::max(cross, std::abs(h_pos.at(a, b)));
    detail::record(r, cross, 0.0);

    // eigenstate reductions agree between the two wells
    for (const auto& [energy, state] : analytic_eigenstates(p)) {
      const auto eta_l = reduce_left(state).eta;
      const auto eta_r = reduce_right(state).eta;
      double eta_err = 0.0;
      for (int k = 0; k < 3; ++k) eta_err = std::max(eta_err, std::abs(eta_l[k] - eta_r[k]));
      detail::record(r, eta_err, 1e-12);
    }
  }
  return r;
}

// Deviation between the dimer spectrum and its exchange model shrinks by
// ~4x per halving of t (second-order mapping; residual is fourth order).
inline SuiteResult suite_perturbative_scaling() {
  SuiteResult r{"perturbative-scaling"};
  const double ts[3] = {0.04, 0.02, 0.01};
  double dev[3];
  for (int i = 0; i < 3; ++i)
    dev[i] = compare_spectra(HubbardParams{ts[i], 1.0, 1.0, 0.0}).max_deviation;
  for (int i = 0; i + 1 < 3; ++i) {
    const double ratio = dev[i] / dev[i + 1];
    ++r.checks;
    if (ratio < 3.0 || ratio > 5.0) {
      ++r.failures;
      r.passed = false;
      r.max_error = std::max(r.max_error, ratio);
    }
  }
  detail::record(r, dev[2], 1e-3);
  return r;
}

inline std::vector<SuiteResult> run_validation(const ValidationOptions& opt) {
  std::vector<SuiteResult> out;
  out.push_back(suite_spectrum_oracle(opt.seed, opt.spectrum_draws));
  out.push_back(suite_entanglement_oracle(opt.seed, opt.entanglement_draws));
  out.push_back(suite_entropy_oracle(opt.entropy_fn));
  out.push_back(suite_symmetry(opt.seed, opt.symmetry_draws));
  out.push_back(suite_perturbative_scaling());
  return out;
}

inline bool all_passed(const std::vector<SuiteResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace qbh
