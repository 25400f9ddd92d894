#include "qbt/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace qbt {

namespace {

// eigenvalues of [[a, conj(x)], [x, d]] as {minus, plus}
std::pair<double, double> block_eigenvalues(double a, double d, complexd x) {
  const double root = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(x));
  return {0.5 * (a + d - root), 0.5 * (a + d + root)};
}

NegativityReport report_from(double lambda_min, const XState& x) {
  NegativityReport rep;
  rep.negative_eigenvalue = std::min(lambda_min, 0.0);
  rep.negativity = std::max(0.0, -2.0 * lambda_min);
  rep.n23 = std::norm(x.rho23) - x.rho11 * x.rho44;
  rep.n14 = std::norm(x.rho14) - x.rho22 * x.rho33;
  if (rep.negativity > kEntangledTol)
    rep.branch = (rep.n23 >= rep.n14) ? IndicatorBranch::n23 : IndicatorBranch::n14;
  return rep;
}

}  // namespace

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd out;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int r2 = 0; r2 < 2; ++r2)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
          out(2 * r1 + r2, 2 * c1 + c2) = rho(2 * c1 + r2, 2 * r1 + c2);
  return out;
}

TwoQubitState partial_transpose(const TwoQubitState& state) {
  return TwoQubitState{partial_transpose(state.rho)};
}

NegativityReport negativity(const TwoQubitState& state) {
  const Eigen::Matrix4cd pt = partial_transpose(state.rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt);
  const double lambda_min = solver.eigenvalues().minCoeff();
  return report_from(lambda_min, to_x_state(state));
}

NegativityReport negativity(const XState& x) {
  const XSpectra spectra = x_eigenvalues(x);
  const double lambda_min = *std::min_element(spectra.pt.begin(), spectra.pt.end());
  return report_from(lambda_min, x);
}

XSpectra x_eigenvalues(const XState& x) {
  XSpectra s;
  const auto [r1m, r1p] = block_eigenvalues(x.rho11, x.rho44, x.rho14);
  const auto [r2m, r2p] = block_eigenvalues(x.rho22, x.rho33, x.rho23);
  s.rho = {r1m, r1p, r2m, r2p};
  // partial transpose swaps the coherences between the blocks
  const auto [t1m, t1p] = block_eigenvalues(x.rho11, x.rho44, x.rho23);
  const auto [t2m, t2p] = block_eigenvalues(x.rho22, x.rho33, x.rho14);
  s.pt = {t1m, t1p, t2m, t2p};
  return s;
}

std::pair<double, double> indicators(const XState& x) {
  return {std::norm(x.rho23) - x.rho11 * x.rho44, std::norm(x.rho14) - x.rho22 * x.rho33};
}

Eigen::Matrix4cd to_matrix(const XState& x) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = x.rho11;
  m(1, 1) = x.rho22;
  m(2, 2) = x.rho33;
  m(3, 3) = x.rho44;
  m(1, 2) = x.rho23;
  m(2, 1) = std::conj(x.rho23);
  m(0, 3) = x.rho14;
  m(3, 0) = std::conj(x.rho14);
  return m;
}

XState to_x_state(const TwoQubitState& state) {
  XState x;
  x.rho11 = state.rho(0, 0).real();
  x.rho22 = state.rho(1, 1).real();
  x.rho33 = state.rho(2, 2).real();
  x.rho44 = state.rho(3, 3).real();
  x.rho23 = state.rho(1, 2);
  x.rho14 = state.rho(0, 3);
  return x;
}

double x_structure_residual(const TwoQubitState& state) {
  double worst = 0.0;
  static constexpr int pairs[8][2] = {{0, 1}, {0, 2}, {1, 0}, {2, 0},
                                      {1, 3}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& p : pairs) worst = std::max(worst, std::abs(state.rho(p[0], p[1])));
  return worst;
}

}  // namespace qbt
