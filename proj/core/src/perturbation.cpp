#include "qbt/perturbation.hpp"

#include <cmath>

namespace qbt {

namespace {
constexpr double kCommuteTol = 1e-10;
}

FourthOrderResult fourth_order(const CorrelatorSet& c) {
  FourthOrderResult r;
  r.n23_coeff = std::norm(c.c12) - c.p12;
  r.n14_coeff = std::norm(c.c12dag) - c.p1 * c.p2;
  return r;
}

CorrelatorSet correlators_exact(const CouplingOperator& f1, const CouplingOperator& f2,
                                const StateVector& state) {
  if (f1.basis() != state.basis || f2.basis() != state.basis)
    throw std::invalid_argument("correlators_exact: operator basis does not match state");
  if (check_commuting(f1, f2) > kCommuteTol)
    throw std::invalid_argument("correlators_exact: couplings must commute");

  const Eigen::VectorXcd f1psi = f1.apply(state.amplitudes);
  const Eigen::VectorXcd f2psi = f2.apply(state.amplitudes);
  const Eigen::VectorXcd f2dag_psi = f2.apply_adjoint(state.amplitudes);
  const Eigen::VectorXcd f1f2psi = f1.apply(f2psi);

  CorrelatorSet c;
  c.c12 = f1psi.dot(f2psi);
  c.c12dag = f1psi.dot(f2dag_psi);
  c.p1 = f1psi.squaredNorm();
  c.p2 = f2psi.squaredNorm();
  c.p12 = f1f2psi.squaredNorm();
  return c;
}

CorrelatorSet correlators_exact(const CouplingOperator& f1, const CouplingOperator& f2,
                                const MixedBosonState& rho) {
  CorrelatorSet total;
  for (const auto& comp : rho.components()) {
    const CorrelatorSet c = correlators_exact(f1, f2, comp.state);
    total.c12 += comp.weight * c.c12;
    total.c12dag += comp.weight * c.c12dag;
    total.p1 += comp.weight * c.p1;
    total.p2 += comp.weight * c.p2;
    total.p12 += comp.weight * c.p12;
  }
  return total;
}

double n23_distribution(const NumberDistribution& p, complexd u1, complexd u2, double g1,
                        double g2) {
  const double mean = p.mean();
  const double pair = p.mean_pair();
  return g1 * g1 * g2 * g2 * std::norm(u1) * std::norm(u2) * (mean * mean - pair);
}

double n23_two_mode(int n1, int n2, const Eigen::Matrix2cd& u, double g1, double g2) {
  for (int i = 0; i < 2; ++i) {
    const double row = std::norm(u(i, 0)) + std::norm(u(i, 1));
    if (row > 1.0 + 1e-12)
      throw std::invalid_argument("n23_two_mode: overlap row norm exceeds 1");
  }
  const double direct =
      n1 * std::norm(u(0, 0) * u(1, 0)) + n2 * std::norm(u(0, 1) * u(1, 1));
  const double exchange =
      static_cast<double>(n1) * n2 * (std::norm(u(1, 0) * u(0, 1)) + std::norm(u(1, 1) * u(0, 0)));
  return g1 * g1 * g2 * g2 * (direct - exchange);
}

double beta_threshold() { return std::sqrt((2.0 * std::sqrt(2.0) - 1.0) / 7.0); }

double field_constraint(complexd beta1, complexd beta2, complexd overlap_psi1_phi2,
                        complexd overlap_psi2_phi1) {
  return std::abs(beta1 * overlap_psi1_phi2 - beta2 * overlap_psi2_phi1);
}

}  // namespace qbt
