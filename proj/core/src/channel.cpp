#include "qbt/channel.hpp"

#include <cmath>
#include <string>

namespace qbt {

namespace {

constexpr std::int64_t kMaxDenseDim = 4096;
constexpr double kCommuteTol = 1e-10;
const complexd kMinusI{0.0, -1.0};

}  // namespace

CouplingChannel::CouplingChannel(CouplingOperator coupling) : f_(std::move(coupling)) {
  const Eigen::MatrixXcd& f = f_.mode_matrix();
  const Eigen::MatrixXcd m = f.adjoint() * f;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("CouplingChannel: eigendecomposition of F†F failed (mode dim " +
                        std::to_string(m.rows()) + ", |F†F| = " + std::to_string(m.norm()) + ")");
  }
  vals_ = solver.eigenvalues().cwiseMax(0.0);
  vecs_ = solver.eigenvectors();
  f_rot_ = vecs_.adjoint() * f * vecs_;
}

Eigen::VectorXd CouplingChannel::cos_table(double t) const {
  return (vals_.cwiseSqrt() * t).array().cos();
}

Eigen::VectorXd CouplingChannel::sinc_table(double t) const {
  const double tol = 1e-12 * std::max(vals_.maxCoeff(), 0.0);
  Eigen::VectorXd out(vals_.size());
  for (Eigen::Index j = 0; j < vals_.size(); ++j) {
    const double lam = vals_[j];
    out[j] = (lam > tol) ? std::sin(std::sqrt(lam) * t) / std::sqrt(lam) : t;
  }
  return out;
}

Eigen::MatrixXcd CouplingChannel::mode_K(double t) const {
  return vecs_ * cos_table(t).asDiagonal() * vecs_.adjoint();
}

Eigen::MatrixXcd CouplingChannel::mode_N(double t) const {
  return kMinusI * f_.mode_matrix() * vecs_ * sinc_table(t).asDiagonal() * vecs_.adjoint();
}

ChannelOperators CouplingChannel::full(double t) const {
  const FockBasis& basis = f_.basis();
  if (basis.dim() > kMaxDenseDim)
    throw capacity_error("CouplingChannel::full: dense channel on dim " +
                         std::to_string(basis.dim()) + " too large");
  const Eigen::MatrixXcd km = mode_K(t);
  const Eigen::MatrixXcd nm = mode_N(t);
  const std::int64_t dim = basis.dim();
  const int d = basis.cutoff() + 1;
  const std::int64_t stride = basis.stride(f_.mode());
  ChannelOperators ops;
  ops.t = t;
  ops.K = Eigen::MatrixXcd::Zero(dim, dim);
  ops.N = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const int o = basis.occupation(col, f_.mode());
    for (int r = 0; r < d; ++r) {
      const std::int64_t row = col + (r - o) * stride;
      ops.K(row, col) = km(r, o);
      ops.N(row, col) = nm(r, o);
    }
  }
  return ops;
}

ChannelOperators kn_operators(const CouplingOperator& coupling, double t) {
  return CouplingChannel(coupling).full(t);
}

double trace_check(const TwoQubitState& state) { return std::abs(state.rho.trace() - 1.0); }

ReducedDensityEngine::ReducedDensityEngine(const CouplingOperator& f1, const CouplingOperator& f2,
                                           MixedBosonState rho_b, InitialQubitState init)
    : ch1_([&] {
        switch (init) {
          case InitialQubitState::q10:
          case InitialQubitState::q11:
            return CouplingChannel(f1.adjoint());
          default:
            return CouplingChannel(f1);
        }
      }()),
      ch2_([&] {
        switch (init) {
          case InitialQubitState::q01:
          case InitialQubitState::q11:
            return CouplingChannel(f2.adjoint());
          default:
            return CouplingChannel(f2);
        }
      }()),
      rho_(std::move(rho_b)) {
  if (f1.basis() != rho_.basis() || f2.basis() != rho_.basis())
    throw std::invalid_argument("ReducedDensityEngine: couplings and state on different bases");
  const double residual = check_commuting(f1, f2);
  if (residual > kCommuteTol)
    throw std::invalid_argument(
        "ReducedDensityEngine: couplings do not commute (residual " + std::to_string(residual) +
        "); the evolution does not factor into independent qubit channels");

  switch (init) {
    case InitialQubitState::q00: perm_ = {0, 1, 2, 3}; break;
    case InitialQubitState::q01: perm_ = {1, 0, 3, 2}; break;
    case InitialQubitState::q10: perm_ = {2, 3, 0, 1}; break;
    case InitialQubitState::q11: perm_ = {3, 2, 1, 0}; break;
  }

  const FockBasis& basis = rho_.basis();
  digit1_.resize(static_cast<std::size_t>(basis.dim()));
  digit2_.resize(static_cast<std::size_t>(basis.dim()));
  for (std::int64_t i = 0; i < basis.dim(); ++i) {
    digit1_[static_cast<std::size_t>(i)] = basis.occupation(i, ch1_.coupling().mode());
    digit2_[static_cast<std::size_t>(i)] = basis.occupation(i, ch2_.coupling().mode());
  }
  for (const auto& comp : rho_.components()) {
    Eigen::VectorXcd psi = apply_mode_operator(basis, ch1_.coupling().mode(),
                                               ch1_.mode_eigenvectors().adjoint(), comp.state.amplitudes);
    psi = apply_mode_operator(basis, ch2_.coupling().mode(), ch2_.mode_eigenvectors().adjoint(), psi);
    rotated_.push_back(std::move(psi));
    weights_.push_back(comp.weight);
  }
}

TwoQubitState ReducedDensityEngine::at(double t) const {
  const FockBasis& basis = rho_.basis();
  const Eigen::VectorXd cos1 = ch1_.cos_table(t);
  const Eigen::VectorXd sinc1 = ch1_.sinc_table(t);
  const Eigen::VectorXd cos2 = ch2_.cos_table(t);
  const Eigen::VectorXd sinc2 = ch2_.sinc_table(t);
  const Eigen::MatrixXcd& f1r = ch1_.rotated_coupling();
  const Eigen::MatrixXcd& f2r = ch2_.rotated_coupling();

  const auto scale = [&](const Eigen::VectorXcd& v, const std::vector<int>& digits,
                         const Eigen::VectorXd& table) {
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = table[digits[static_cast<std::size_t>(i)]] * v[i];
    return out;
  };

  Eigen::Matrix4cd base = Eigen::Matrix4cd::Zero();
  for (std::size_t c = 0; c < rotated_.size(); ++c) {
    const Eigen::VectorXcd& psi = rotated_[c];
    // In the rotated frame K_i is diagonal and N_i = -i (V† f V) sinc_i.
    const Eigen::VectorXcd k2psi = scale(psi, digit2_, cos2);
    const Eigen::VectorXcd n2psi =
        kMinusI * apply_mode_operator(basis, ch2_.coupling().mode(), f2r, scale(psi, digit2_, sinc2));
    std::array<Eigen::VectorXcd, 4> w;
    w[0] = scale(k2psi, digit1_, cos1);
    w[1] = scale(n2psi, digit1_, cos1);
    w[2] = kMinusI * apply_mode_operator(basis, ch1_.coupling().mode(), f1r, scale(k2psi, digit1_, sinc1));
    w[3] = kMinusI * apply_mode_operator(basis, ch1_.coupling().mode(), f1r, scale(n2psi, digit1_, sinc1));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j <= i; ++j) {
        // rho_ij = <W_j psi, W_i psi>; the frame rotation is unitary and drops out
        const complexd entry = weights_[c] * w[static_cast<std::size_t>(j)].dot(w[static_cast<std::size_t>(i)]);
        base(i, j) += entry;
        if (i != j) base(j, i) += std::conj(entry);
      }
    }
  }

  TwoQubitState out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.rho(i, j) = base(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]);
  return out;
}

TwoQubitState reduced_density(const CouplingOperator& f1, const CouplingOperator& f2,
                              const MixedBosonState& rho_b, double t, InitialQubitState init) {
  return ReducedDensityEngine(f1, f2, rho_b, init).at(t);
}

TwoQubitState reduced_density(const CouplingOperator& f1, const CouplingOperator& f2,
                              const StateVector& state, double t, InitialQubitState init) {
  return ReducedDensityEngine(f1, f2, MixedBosonState(state), init).at(t);
}

}  // namespace qbt
