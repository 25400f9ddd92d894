#pragma once

// Shared helpers for the test suites: deterministic random draws and a
// reference evolution built directly from the joint Hamiltonian, independent
// of the channel module's block construction.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qbt/channel.hpp"
#include "qbt/fock.hpp"

namespace qbt::test {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline std::mt19937& rng() {
  static std::mt19937 gen(20240817u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline complexd random_phase() {
  const double a = uniform(0.0, 2.0 * 3.14159265358979323846);
  return {std::cos(a), std::sin(a)};
}

/// (u1, u2) with |u1|^2 + |u2|^2 <= max_total and random phases.
inline std::pair<complexd, complexd> random_overlaps(double max_total = 0.95) {
  const double s = uniform(0.1, max_total);
  const double split = uniform(0.05, 0.95);
  const double a1 = std::sqrt(s * split);
  const double a2 = std::sqrt(s * (1.0 - split));
  return {a1 * random_phase(), a2 * random_phase()};
}

/// Random orthonormal pair in C^3 by Gram-Schmidt on Gaussian vectors.
inline std::pair<Eigen::Vector3cd, Eigen::Vector3cd> random_orthonormal_pair() {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3cd a, b;
  for (int i = 0; i < 3; ++i) {
    a[i] = complexd{gauss(rng()), gauss(rng())};
    b[i] = complexd{gauss(rng()), gauss(rng())};
  }
  a.normalize();
  b -= a.dot(b) * a;
  b.normalize();
  return {a, b};
}

/// The four <q'|U|q> blocks of U = exp(-i H t) with H = [[0, F†], [F, 0]],
/// obtained by diagonalizing the joint Hamiltonian. Uses only the dense
/// realized coupling; no channel-module code.
struct EvolutionBlocks {
  MatrixXcd b[2][2];  // b[q_out][q_in]
};

inline EvolutionBlocks reference_evolution(const MatrixXcd& f, double t) {
  const Eigen::Index d = f.rows();
  MatrixXcd h = MatrixXcd::Zero(2 * d, 2 * d);
  h.block(0, d, d, d) = f.adjoint();
  h.block(d, 0, d, d) = f;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
  VectorXcd phases(2 * d);
  for (Eigen::Index j = 0; j < 2 * d; ++j)
    phases[j] = std::exp(complexd{0.0, -solver.eigenvalues()[j] * t});
  const MatrixXcd u =
      solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  EvolutionBlocks out;
  out.b[0][0] = u.block(0, 0, d, d);
  out.b[0][1] = u.block(0, d, d, d);
  out.b[1][0] = u.block(d, 0, d, d);
  out.b[1][1] = u.block(d, d, d, d);
  return out;
}

/// Reduced two-qubit density matrix computed from the full joint evolution:
/// evolves |q1 q2> x psi with U1 U2 and takes the Gram matrix of the four
/// conditional field states. Independent oracle for the channel module.
inline Eigen::Matrix4cd reference_reduced_density(const CouplingOperator& f1,
                                                  const CouplingOperator& f2,
                                                  const MixedBosonState& rho, double t,
                                                  InitialQubitState init) {
  const int i1 = (init == InitialQubitState::q10 || init == InitialQubitState::q11) ? 1 : 0;
  const int i2 = (init == InitialQubitState::q01 || init == InitialQubitState::q11) ? 1 : 0;
  const EvolutionBlocks u1 = reference_evolution(f1.realized(), t);
  const EvolutionBlocks u2 = reference_evolution(f2.realized(), t);
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (const auto& comp : rho.components()) {
    std::array<VectorXcd, 4> v;
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2)
        v[static_cast<std::size_t>(2 * q1 + q2)] =
            u1.b[q1][i1] * (u2.b[q2][i2] * comp.state.amplitudes);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out(a, b) += comp.weight * v[static_cast<std::size_t>(b)].dot(v[static_cast<std::size_t>(a)]);
  }
  return out;
}

inline double max_abs_diff(const MatrixXcd& a, const MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Random coupling in the g (p(n) a^n + q(n) a†^m) class with bounded tables.
inline CouplingOperator random_coupling(const FockBasis& basis, int mode) {
  const int shape = uniform_int(0, 2);  // 0: lowering only, 1: raising only, 2: both
  const int n = uniform_int(1, 2);
  const int m = uniform_int(1, 2);
  const double g = uniform(0.2, 1.5);
  const std::size_t d = static_cast<std::size_t>(basis.cutoff()) + 1;
  std::vector<complexd> p, q;
  if (shape != 1) {
    p.resize(d);
    for (auto& v : p) v = uniform(0.2, 1.0) * random_phase();
  }
  if (shape != 0) {
    q.resize(d);
    for (auto& v : q) v = uniform(0.2, 1.0) * random_phase();
  }
  return CouplingOperator(basis, mode, g, std::move(p), n, std::move(q), m);
}

}  // namespace qbt::test
