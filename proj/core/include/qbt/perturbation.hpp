#pragma once

#include <Eigen/Dense>

#include "qbt/fock.hpp"

namespace qbt {

/// The 2-point and 4-point functions that control the short-time indicators:
///   c12 = <F1† F2>, c12dag = <F1† F2†>,
///   p1 = <F1† F1>, p2 = <F2† F2>, p12 = <F1† F1 F2† F2>.
/// p1, p2, p12 are expectations of positive operators, so real and >= 0.
struct CorrelatorSet {
  complexd c12{0.0, 0.0};
  complexd c12dag{0.0, 0.0};
  double p1 = 0.0;
  double p2 = 0.0;
  double p12 = 0.0;
};

/// Leading small-t indicator coefficients: n23(t) ~ n23_coeff * t^4 and
/// n14(t) ~ n14_coeff * t^4 (couplings absorbed into the operators). A
/// positive coefficient certifies entanglement at short times.
struct FourthOrderResult {
  double n23_coeff = 0.0;
  double n14_coeff = 0.0;
};

/// n23_coeff = |c12|^2 - p12,  n14_coeff = |c12dag|^2 - p1 p2.
FourthOrderResult fourth_order(const CorrelatorSet& c);

/// Evaluates the correlators exactly on the truncated space.
/// Requires commuting couplings (p12 is computed as ||F1 F2 psi||^2).
CorrelatorSet correlators_exact(const CouplingOperator& f1, const CouplingOperator& f2,
                                const StateVector& state);
CorrelatorSet correlators_exact(const CouplingOperator& f1, const CouplingOperator& f2,
                                const MixedBosonState& rho);

/// n23 coefficient for a number mixture against couplings g_i a_i:
///   g1^2 g2^2 |u1|^2 |u2|^2 ((sum p_N N)^2 - sum p_N N(N-1)).
/// Positive exactly when the distribution is sub-Poissonian.
double n23_distribution(const NumberDistribution& p, complexd u1, complexd u2, double g1,
                        double g2);

/// n23 coefficient when N1 bosons occupy one state and N2 an orthogonal one;
/// u(i,k) is the overlap of detector mode i with occupied state k:
///   g1^2 g2^2 (N1 |u11 u21|^2 + N2 |u12 u22|^2 - N1 N2 (|u21 u12|^2 + |u22 u11|^2)).
double n23_two_mode(int n1, int n2, const Eigen::Matrix2cd& u, double g1, double g2);

/// Mixing threshold for the symmetric a + beta a† scenario
/// (u1 = u2 = 1/sqrt(2), beta1 = beta2): the fourth-order n23 indicator is
/// positive exactly for |beta| below sqrt((2 sqrt(2) - 1) / 7) ~= 0.511.
double beta_threshold();

/// Residual |beta1 <psi1|phi2> - beta2 <psi2|phi1>| of the commutation
/// condition for couplings g_i (a(phi_i) + conj(beta_i) a†(psi_i)); scenario
/// builders reject residuals above 1e-10.
double field_constraint(complexd beta1, complexd beta2, complexd overlap_psi1_phi2,
                        complexd overlap_psi2_phi1);

}  // namespace qbt
