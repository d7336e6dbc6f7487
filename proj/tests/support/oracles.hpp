#pragma once

// Closed forms used as independent references. None of these go through
// the Liouvillian or the lift code.

#include <array>
#include <cmath>

#include "tomowitness/quantum.hpp"
#include "tomowitness/tomography.hpp"

namespace tomowitness::testing {

/// Pauli channel weights p_mu(t) for L = sum_k g_k (s_k rho s_k - rho):
/// A_ij = exp(-2 (g_i + g_j) t),
/// p_0 = (1 + A12 + A13 + A23) / 4, p_1 = (1 - A12 - A13 + A23) / 4,
/// p_2 = (1 - A12 + A13 - A23) / 4, p_3 = (1 + A12 - A13 - A23) / 4.
inline std::array<double, 4> pauli_channel_weights(double g1, double g2, double g3, double t) {
  const double a12 = std::exp(-2.0 * (g1 + g2) * t);
  const double a13 = std::exp(-2.0 * (g1 + g3) * t);
  const double a23 = std::exp(-2.0 * (g2 + g3) * t);
  return {0.25 * (1 + a12 + a13 + a23), 0.25 * (1 - a12 - a13 + a23), 0.25 * (1 - a12 + a13 - a23),
          0.25 * (1 + a12 - a13 - a23)};
}

inline ComplexMatrix pauli_channel(const ComplexMatrix& rho, double g1, double g2, double g3, double t) {
  const auto p = pauli_channel_weights(g1, g2, g3, t);
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int mu = 0; mu < 4; ++mu) out += p[static_cast<std::size_t>(mu)] * pauli(mu) * rho * pauli(mu);
  return out;
}

/// Two-state flip generator gamma [[-1, 1], [1, -1]].
inline RealMatrix flip_generator(double gamma) {
  RealMatrix m(2, 2);
  m << -gamma, gamma, gamma, -gamma;
  return m;
}

/// Its exponential, (1/2) [[1 + e, 1 - e], [1 - e, 1 + e]], e = exp(-2 gamma t).
inline RealMatrix flip_map(double gamma, double t) {
  const double e = std::exp(-2.0 * gamma * t);
  RealMatrix m(2, 2);
  m << 1 + e, 1 - e, 1 - e, 1 + e;
  return 0.5 * m;
}

/// Block-diagonal simplex generator of the Pauli channel:
/// flip blocks with rates g2 + g3, g1 + g3, g1 + g2 on the x, y, z sectors.
inline RealMatrix pauli_channel_simplex_generator(double g1, double g2, double g3) {
  RealMatrix m = RealMatrix::Zero(6, 6);
  m.block(0, 0, 2, 2) = flip_generator(g2 + g3);
  m.block(2, 2, 2, 2) = flip_generator(g1 + g3);
  m.block(4, 4, 2, 2) = flip_generator(g1 + g2);
  return m;
}

/// Damped, rotating qubit on the Pauli quorum, written out entry by entry:
/// (1/2) [[-G, G, -w nu, w nu, 0, 0], [G, -G, w nu, -w nu, 0, 0],
///        [w/nu, -w/nu, -G, G, 0, 0], [-w/nu, w/nu, G, -G, 0, 0],
///        [0, 0, 0, 0, -2 g1, 2 g2], [0, 0, 0, 0, 2 g1, -2 g2]]
/// with G = (g1 + g2)/2 + g3 and nu = pi_x / pi_y.
inline RealMatrix damped_qubit_simplex_generator(double w, double g1, double g2, double g3, double pi_x,
                                                 double pi_y) {
  const double big = 0.5 * (g1 + g2) + g3;
  const double nu = pi_x / pi_y;
  RealMatrix m(6, 6);
  m << -big, big, -w * nu, w * nu, 0, 0,
       big, -big, w * nu, -w * nu, 0, 0,
       w / nu, -w / nu, -big, big, 0, 0,
       -w / nu, w / nu, big, -big, 0, 0,
       0, 0, 0, 0, -2 * g1, 2 * g2,
       0, 0, 0, 0, 2 * g1, -2 * g2;
  return 0.5 * m;
}

/// Qubit Pauli-quorum encoding from the Bloch vector:
/// p_{1,2}^(a) = pi_a (1 +/- r_a) / 2.
inline RealVector bloch_encoding(double x, double y, double z, double pi_x, double pi_y, double pi_z) {
  RealVector p(6);
  p << pi_x * (1 + x) / 2, pi_x * (1 - x) / 2, pi_y * (1 + y) / 2, pi_y * (1 - y) / 2, pi_z * (1 + z) / 2,
      pi_z * (1 - z) / 2;
  return p;
}

/// Central finite difference of encode(e^{tL} rho) at t = 0, with the
/// backward step taken through e^{-hL} applied to the operator.
inline RealVector encoded_velocity_fd(const GkslGenerator& l, const ComplexMatrix& rho, const Quorum& q,
                                      double h = 1e-5) {
  const RealVector fwd = encode_linear(propagate(l, rho, h), q);
  const GkslGenerator neg(-l.hamiltonian(), {});
  // Backward step: only valid for Hamiltonian generators; otherwise use a
  // second-order one-sided difference.
  if (l.jumps().empty()) {
    const RealVector bwd = encode_linear(propagate(neg, rho, h), q);
    return (fwd - bwd) / (2.0 * h);
  }
  const RealVector p0 = encode_linear(rho, q);
  const RealVector fwd2 = encode_linear(propagate(l, rho, 2.0 * h), q);
  return (-3.0 * p0 + 4.0 * fwd - fwd2) / (2.0 * h);
}

}  // namespace tomowitness::testing
