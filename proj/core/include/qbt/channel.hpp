#pragma once

#include <array>

#include <Eigen/Dense>

#include "qbt/fock.hpp"

namespace qbt {

/// Initial product state of the two qubits, basis order {|00>,|01>,|10>,|11>}.
enum class InitialQubitState { q00, q01, q10, q11 };

/// The no-flip / flip blocks of a single qubit-boson evolution at time t:
///   K = cos(sqrt(F†F) t),   N = -i F sin(sqrt(F†F) t) / sqrt(F†F),
/// satisfying K†K + N†N = I. Dense on the full space.
struct ChannelOperators {
  Eigen::MatrixXcd K;
  Eigen::MatrixXcd N;
  double t = 0.0;
};

/// Evolution generated by one coupling operator, reusable across times.
///
/// Diagonalizes f†f once on the coupled mode; K(t) and N(t) then follow from
/// the spectral form. sin(sqrt(l) t)/sqrt(l) is replaced by its limit t below
/// lambda_tol = 1e-12 * max(spectrum).
class CouplingChannel {
 public:
  explicit CouplingChannel(CouplingOperator coupling);

  const CouplingOperator& coupling() const { return f_; }
  const Eigen::VectorXd& mode_spectrum() const { return vals_; }
  const Eigen::MatrixXcd& mode_eigenvectors() const { return vecs_; }
  /// Coupling matrix rotated into the f†f eigenbasis, V† f V.
  const Eigen::MatrixXcd& rotated_coupling() const { return f_rot_; }

  Eigen::MatrixXcd mode_K(double t) const;
  Eigen::MatrixXcd mode_N(double t) const;
  /// cos(sqrt(l_j) t) and sinc entries per eigenvalue index.
  Eigen::VectorXd cos_table(double t) const;
  Eigen::VectorXd sinc_table(double t) const;

  /// Dense K and N on the full space (capacity-guarded; sweeps should use
  /// ReducedDensityEngine instead).
  ChannelOperators full(double t) const;

 private:
  CouplingOperator f_;
  Eigen::MatrixXcd vecs_;
  Eigen::VectorXd vals_;
  Eigen::MatrixXcd f_rot_;
};

ChannelOperators kn_operators(const CouplingOperator& coupling, double t);

/// Two-qubit density matrix in the basis {|00>,|01>,|10>,|11>}.
struct TwoQubitState {
  Eigen::Matrix4cd rho;
};

/// |Tr(rho) - 1|
double trace_check(const TwoQubitState& state);

/// Evolution of both qubits against a fixed bosonic state, reusable across a
/// time sweep. Handles all four initial qubit states: |11> maps to the |00>
/// computation with daggered couplings conjugated by sigma_x x sigma_x, and
/// |01>/|10> to the single-sided swaps.
class ReducedDensityEngine {
 public:
  ReducedDensityEngine(const CouplingOperator& f1, const CouplingOperator& f2,
                       MixedBosonState rho_b, InitialQubitState init = InitialQubitState::q00);

  TwoQubitState at(double t) const;
  const FockBasis& basis() const { return rho_.basis(); }

 private:
  CouplingChannel ch1_;
  CouplingChannel ch2_;
  MixedBosonState rho_;
  std::array<int, 4> perm_;
  // components rotated into the per-mode eigenbases, plus per-index mode digits
  std::vector<Eigen::VectorXcd> rotated_;
  std::vector<double> weights_;
  std::vector<int> digit1_;
  std::vector<int> digit2_;
};

/// One-shot reduced density matrix; sweeps should construct a
/// ReducedDensityEngine once and call at(t).
TwoQubitState reduced_density(const CouplingOperator& f1, const CouplingOperator& f2,
                              const MixedBosonState& rho_b, double t,
                              InitialQubitState init = InitialQubitState::q00);
TwoQubitState reduced_density(const CouplingOperator& f1, const CouplingOperator& f2,
                              const StateVector& state, double t,
                              InitialQubitState init = InitialQubitState::q00);

}  // namespace qbt
