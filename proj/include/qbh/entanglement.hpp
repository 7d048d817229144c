#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qbh/effective_model.hpp"
#include "qbh/spin_basis.hpp"
#include "qbh/sym_matrix.hpp"

namespace qbh {

// Single-site reduced density matrix over the spin basis {-1, 0, +1},
// together with its eigenvalues (ascending).
struct DensityMatrix3 {
  SymMatrix rho{3};
  std::array<double, 3> eta{};
};

namespace detail {

inline DensityMatrix3 reduce(const TwoSiteState& state, bool left) {
  const double n = state.norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw std::invalid_argument("reduce: state norm deviates from 1 by more than 1e-9");
  DensityMatrix3 d;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double x = left ? state.amp[3 * a + k] : state.amp[3 * k + a];
        const double y = left ? state.amp[3 * b + k] : state.amp[3 * k + b];
        s += x * y;
      }
      d.rho.at(a, b) = s;
    }
  const EigenSystem es = eigh(d.rho);
  for (int i = 0; i < 3; ++i) d.eta[i] = es.values[i];
  return d;
}

inline double clipped_eta(double eta) {
  if (eta < 0.0) {
    if (eta < -1e-12) throw std::invalid_argument("entanglement: eigenvalue below -1e-12");
    return 0.0;
  }
  return std::min(eta, 1.0);
}

}  // namespace detail

// Trace over the right site: (rho_L)_{ab} = sum_k c_{ak} c_{bk} with c the
// 3x3 amplitude array of the state.
inline DensityMatrix3 reduce_left(const TwoSiteState& state) { return detail::reduce(state, true); }

inline DensityMatrix3 reduce_right(const TwoSiteState& state) {
  return detail::reduce(state, false);
}

// von Neumann entropy in bits, -sum eta log2 eta with 0 log2 0 = 0.
// Ranges from 0 (product state) to log2(3).
inline double entropy(const DensityMatrix3& rho) {
  double s = 0.0;
  for (double eta : rho.eta) {
    const double e = detail::clipped_eta(eta);
    if (e > 0.0) s -= e * std::log2(e);
  }
  return s;
}

// Effective number of occupied single-particle orbitals, (sum eta^2)^-1.
// Equals n when the reduced state has n equal nonzero eigenvalues.
inline double orbital_number(const DensityMatrix3& rho) {
  double s = 0.0;
  for (double eta : rho.eta) {
    const double e = detail::clipped_eta(eta);
    s += e * e;
  }
  return 1.0 / s;
}

// Reference maximally entangled states. The qutrit singlet/triplet pair is
// not orthogonal: <b3_singlet|b3_triplet> = 1/3.
struct BellStates {
  static TwoSiteState b3_singlet() { return make3(-1.0); }
  static TwoSiteState b3_triplet() { return make3(+1.0); }

  // (|1,-1> + |-1,1>)/sqrt2
  static TwoSiteState b2_triplet() {
    TwoSiteState st;
    const double r = 1.0 / std::sqrt(2.0);
    st.amp[basis_index(1, -1)] = r;
    st.amp[basis_index(-1, 1)] = r;
    return st;
  }

  // (|0,+-1> - |+-1,0>)/sqrt2
  static TwoSiteState qubit_singlet(int sigma) {
    TwoSiteState st;
    const double r = 1.0 / std::sqrt(2.0);
    st.amp[basis_index(0, sigma)] = r;
    st.amp[basis_index(sigma, 0)] = -r;
    return st;
  }

 private:
  static TwoSiteState make3(double sign00) {
    TwoSiteState st;
    const double r = 1.0 / std::sqrt(3.0);
    st.amp[basis_index(1, -1)] = r;
    st.amp[basis_index(-1, 1)] = r;
    st.amp[basis_index(0, 0)] = sign00 * r;
    return st;
  }
};

struct Fidelities {
  double f_singlet = 0.0;
  double f_triplet = 0.0;
};

// Squared overlaps with the generalized qutrit Bell states. Both lie in
// [0,1]; they do not sum against each other since the targets overlap.
inline Fidelities fidelities(const TwoSiteState& state) {
  const double os = state.dot(BellStates::b3_singlet());
  const double ot = state.dot(BellStates::b3_triplet());
  return {os * os, ot * ot};
}

struct ProductProbabilities {
  double p_plus = 0.0;   // |<-1,+1|G>|^2
  double p_minus = 0.0;  // |<+1,-1|G>|^2
  double p0 = 0.0;       // |<0,0|G>|^2

  // mirror-symmetric states carry p_plus == p_minus
  double pm() const { return 0.5 * (p_plus + p_minus); }
};

inline ProductProbabilities product_probabilities(const TwoSiteState& state) {
  ProductProbabilities p;
  const double ap = state.amp[basis_index(-1, 1)];
  const double am = state.amp[basis_index(1, -1)];
  const double a0 = state.amp[basis_index(0, 0)];
  p.p_plus = ap * ap;
  p.p_minus = am * am;
  p.p0 = a0 * a0;
  return p;
}

struct EntanglementClosedForm {
  double entropy = 0.0;
  double orbital_number = 1.0;
};

// Closed forms for the entropy and orbital number of the S^z = 0 sector
// ground state, as functions of (lambda, theta) alone; the field cancels
// inside the sector. Agrees with the eigh -> partial-trace pipeline,
// including the degenerate point lambda + tan(theta) = 0 where the
// 0 log2 0 convention applies.
inline EntanglementClosedForm analytic_entanglement(const QbhParams& p) {
  const AnalyticSpectrum s = analytic_spectrum(p);
  const double g = p.lambda + p.tan_theta();
  const double e = s.e0_minus;  // <= 0 always
  const double den = 8.0 * g * g * g * g + e * e * e * e;
  if (den == 0.0) return {0.0, 1.0};  // bare |0,0> ground state

  EntanglementClosedForm out;
  out.orbital_number = 2.0 * s.delta * s.delta * e * e / den;
  double entropy_bits = 0.0;
  if (e != 0.0) entropy_bits += (e / s.delta) * std::log2(std::abs(e) / (2.0 * s.delta));
  if (g != 0.0 && e != 0.0) {
    const double w = 2.0 * g * g / (s.delta * std::abs(e));
    entropy_bits += (2.0 * g * g / (s.delta * e)) * std::log2(w);
  }
  out.entropy = entropy_bits;
  return out;
}

}  // namespace qbh
