#pragma once

#include <array>

#include "qbt/channel.hpp"

namespace qbt {

/// Entanglement verdict threshold: negativity above this counts as entangled.
/// Sits above accumulated eigensolver noise and below every nonzero value the
/// in-scope scenarios produce at sampled times.
inline constexpr double kEntangledTol = 1e-10;

/// Two-qubit state whose only nonzero entries are the diagonal and the two
/// anti-diagonal coherences rho14 = <00|rho|11> and rho23 = <01|rho|10>.
struct XState {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  double rho44 = 0.0;
  complexd rho23{0.0, 0.0};
  complexd rho14{0.0, 0.0};
};

enum class IndicatorBranch { none, n23, n14 };

/// Negativity is twice the magnitude of the negative partial-transpose
/// eigenvalue (at most one exists for two qubits); equivalently trace-norm
/// minus one when a single eigenvalue is negative. Zero iff separable.
struct NegativityReport {
  double negativity = 0.0;
  double negative_eigenvalue = 0.0;  // most negative PT eigenvalue, clamped to <= 0
  IndicatorBranch branch = IndicatorBranch::none;
  double n23 = 0.0;  // |rho23|^2 - rho11 rho44
  double n14 = 0.0;  // |rho14|^2 - rho22 rho33
};

/// Transposition on the first qubit's indices only:
/// PT(a1 a2; a1' a2') = rho(a1' a2; a1 a2'). For X states this swaps
/// rho23 <-> conj(rho14).
Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho);
TwoQubitState partial_transpose(const TwoQubitState& state);

NegativityReport negativity(const TwoQubitState& state);
NegativityReport negativity(const XState& x);

/// Spectra of an X state and of its partial transpose, each from two 2x2
/// blocks in closed form; agrees with dense diagonalization to 1e-12.
struct XSpectra {
  std::array<double, 4> rho;  // {lambda_1-, lambda_1+, lambda_2-, lambda_2+}
  std::array<double, 4> pt;
};
XSpectra x_eigenvalues(const XState& x);

/// (n23, n14): either being positive certifies entanglement; positivity of the
/// state forbids both from being positive at once.
std::pair<double, double> indicators(const XState& x);

Eigen::Matrix4cd to_matrix(const XState& x);
/// Extracts the X entries; off-X content is ignored (see x_structure_residual).
XState to_x_state(const TwoQubitState& state);
/// Largest magnitude among the eight entries an X state must not have.
double x_structure_residual(const TwoQubitState& state);

}  // namespace qbt
