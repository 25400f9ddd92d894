#pragma once

#include "qbt/channel.hpp"
#include "qbt/entanglement.hpp"
#include "qbt/fock.hpp"

namespace qbt {

/// N bosons in one one-particle state, qubits flipped by m quanta at a time
/// (couplings g_i a_i^m). `init` is carried for scenario bookkeeping; the
/// closed forms below cover |00> generally and |11> for N = 1.
struct CondensateScenario {
  int n_particles = 1;
  int photon_order = 1;  // m >= 1
  complexd u1{0.0, 0.0};
  complexd u2{0.0, 0.0};
  double g1 = 1.0;
  double g2 = 1.0;
  InitialQubitState init = InitialQubitState::q00;
};

/// Exact X-state for the condensate scenario with qubits starting in |00>.
/// Diagonal entries sum multinomial weights against squared cosines/sines of
/// sqrt(n!/(n-m)!) g t, with the falling factorial zero below the band; the
/// coherence carries (conj(u1) u2)^m. rho14 vanishes for these couplings.
XState rho_condensate(const CondensateScenario& s, double t);

/// Exact X-state for one particle (N = 1, m = 1) with qubits starting in |11>.
/// Exhibits entanglement death and revival.
XState rho_condensate_excited(complexd u1, complexd u2, double g1, double g2, double t);

/// Couplings g (a_i + beta e^{i theta} a_i†) on the symmetric one-particle
/// state (u1 = u2 = 1/sqrt(2), equal couplings). Summed in closed form after a
/// Bogoliubov rotation b = cosh(r) a + e^{i theta} sinh(r) a†, beta = tanh(r).
struct BogoliubovScenario {
  double beta = 0.0;   // in [0, 1)
  double theta = 0.0;
  double g = 1.0;
  int series_terms = 0;  // 0: truncate where |c_n|^2 < 1e-15
};
XState rho_bogoliubov(const BogoliubovScenario& s, double t);

/// Number mixture sum_N p_N |N><N|: entrywise weight-sum of rho_condensate
/// (m = 1) over the distribution.
XState rho_mixture(const NumberDistribution& p, complexd u1, complexd u2, double g1, double g2,
                   double t);

/// Two particles occupying a pair of orthonormal states related to the
/// detector modes by an SU(2) rotation with angles (theta, eta).
/// rho11, rho44 and rho23 are evaluated in closed form; rho22 and rho33 come
/// from the generic brute-force channel, which is exact here (cutoff 3).
struct SU2PairScenario {
  double theta = 0.0;
  double eta = 0.0;
  double g1 = 1.0;
  double g2 = 1.0;
};
XState rho_su2_pair(const SU2PairScenario& s, double t);

/// N1 bosons in phi_b1 and N2 in phi_b2 (orthonormal vectors over the 3-mode
/// layout: two coupled modes + spectator), couplings g_i a_i. Evaluated from
/// the double multinomial expansion of the state and the analytic action of
/// the flip/no-flip blocks; fully independent of the eigendecomposition path.
struct TwoModeScenario {
  int n1 = 1;
  int n2 = 1;
  Eigen::Vector3cd phi_b1 = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd phi_b2 = Eigen::Vector3cd::Zero();
  double g1 = 1.0;
  double g2 = 1.0;
};
XState rho_two_mode(const TwoModeScenario& s, double t);

}  // namespace qbt
