#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qbt/errors.hpp"

namespace qbt {

using complexd = std::complex<double>;

/// Truncated multimode occupation-number basis.
///
/// Basis states are occupation tuples (n_0, ..., n_{M-1}) with 0 <= n_i <= cutoff,
/// enumerated in mixed-radix order with mode 0 varying fastest:
///   index = sum_i n_i * (cutoff+1)^i
/// The index <-> tuple mapping is a bijection over dim = (cutoff+1)^M states.
class FockBasis {
 public:
  FockBasis(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  std::int64_t dim() const { return dim_; }
  std::int64_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

  std::int64_t index_of(std::span<const int> occupation) const;
  std::vector<int> occupation_of(std::int64_t index) const;
  /// Occupation of a single mode in the given basis state.
  int occupation(std::int64_t index, int mode) const;

  bool operator==(const FockBasis& other) const {
    return n_modes_ == other.n_modes_ && cutoff_ == other.cutoff_;
  }
  bool operator!=(const FockBasis& other) const { return !(*this == other); }

 private:
  int n_modes_;
  int cutoff_;
  std::int64_t dim_;
  std::vector<std::int64_t> strides_;
};

/// Builds a truncated basis, rejecting dimensions that cannot be held in memory.
FockBasis make_basis(int n_modes, int cutoff);

/// Complex amplitude vector over a FockBasis.
struct StateVector {
  FockBasis basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Vacuum |0,...,0>.
StateVector vacuum_state(const FockBasis& basis);

/// Statistical mixture of pure bosonic states sharing one basis.
/// Weights are probabilities: nonnegative, summing to 1 within 1e-12.
class MixedBosonState {
 public:
  struct Component {
    double weight;
    StateVector state;
  };

  explicit MixedBosonState(std::vector<Component> components);
  /// Pure state as a trivial mixture.
  explicit MixedBosonState(StateVector state);

  const std::vector<Component>& components() const { return components_; }
  const FockBasis& basis() const { return components_.front().state.basis; }

 private:
  std::vector<Component> components_;
};

/// Weights p_N over total particle number, for mixtures sum_N p_N |N><N|.
class NumberDistribution {
 public:
  /// weights[N] = p_N; must be nonnegative and sum to 1 within 1e-12.
  explicit NumberDistribution(std::vector<double> weights);

  static NumberDistribution point_mass(int n, int support = -1);
  static NumberDistribution binomial(int m, double p);
  /// Poisson(lambda) truncated where the remaining tail mass drops below
  /// `tail_mass`, then renormalized.
  static NumberDistribution poisson(double lambda, double tail_mass = 1e-15);
  /// Thermal-like geometric weights (1-z) z^N, truncated at tail < `tail_mass`.
  static NumberDistribution geometric(double z, double tail_mass = 1e-15);

  const std::vector<double>& weights() const { return weights_; }
  int max_n() const { return static_cast<int>(weights_.size()) - 1; }
  double mean() const;
  /// E[N(N-1)], the second falling moment.
  double mean_pair() const;

 private:
  std::vector<double> weights_;
};

/// Single-mode coupling g * (p(n) a^n + q(n) a†^m) embedded in the full space,
/// acting as identity on every other mode.
///
/// The coefficient tables are evaluated at the destination occupation, matching
/// the operator ordering: <k-n| p(n) a^n |k> = p(k-n) sqrt(k!/(k-n)!) and
/// <k+m| q(n) a†^m |k> = q(k+m) sqrt((k+m)!/k!). A band whose offset exceeds the
/// cutoff is simply empty. An empty table disables that band.
class CouplingOperator {
 public:
  CouplingOperator(FockBasis basis, int mode, double g,
                   std::vector<complexd> p_table, int n,
                   std::vector<complexd> q_table, int m);

  const FockBasis& basis() const { return basis_; }
  int mode() const { return mode_; }
  double g() const { return g_; }
  int lowering_power() const { return n_; }
  int raising_power() const { return m_; }
  bool has_lowering_band() const { return !p_table_.empty(); }
  bool has_raising_band() const { return !q_table_.empty(); }
  /// Largest amount by which the operator can raise the mode occupation.
  int max_raise() const { return has_raising_band() ? m_ : 0; }

  /// (cutoff+1) x (cutoff+1) action on the coupled mode, including g.
  const Eigen::MatrixXcd& mode_matrix() const { return mode_matrix_; }

  /// Dense dim x dim embedding. Guarded against huge bases; large scenarios
  /// never need it (state application below stays in O(dim * cutoff)).
  Eigen::MatrixXcd realized() const;

  /// F† as a coupling operator of the same class (bands swap roles).
  CouplingOperator adjoint() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& v) const;

 private:
  FockBasis basis_;
  int mode_;
  double g_;
  std::vector<complexd> p_table_;
  int n_;
  std::vector<complexd> q_table_;
  int m_;
  Eigen::MatrixXcd mode_matrix_;
};

/// g * a_mode^n
CouplingOperator annihilation_power(const FockBasis& basis, int mode, double g, int n = 1);
/// g * (a†_mode)^m
CouplingOperator creation_power(const FockBasis& basis, int mode, double g, int m = 1);
/// g * (a_mode + beta a†_mode)
CouplingOperator linear_mix(const FockBasis& basis, int mode, double g, complexd beta);

CouplingOperator build_coupling(const FockBasis& basis, int mode, double g,
                                std::vector<complexd> p_table, int n,
                                std::vector<complexd> q_table, int m);

/// Applies a single-mode operator M to `v` along `mode`, identity elsewhere.
Eigen::VectorXcd apply_mode_operator(const FockBasis& basis, int mode,
                                     const Eigen::MatrixXcd& M, const Eigen::VectorXcd& v);

/// N identical bosons in the one-particle state u1|mode0> + u2|mode1> + u_T|mode2>,
/// with u_T = sqrt(1 - |u1|^2 - |u2|^2) taken real nonnegative.
/// Amplitudes follow the multinomial expansion of the N-fold creation product;
/// requires a 3-mode basis with cutoff >= N.
StateVector condensate_state(const FockBasis& basis, int n_particles, complexd u1, complexd u2);

/// Product of creation operators for mutually orthonormal one-particle states,
/// each applied `count` times, normalized. The result is invariant under
/// permutation of the list (bosonic symmetry).
struct ModeOccupancy {
  Eigen::VectorXcd one_particle_state;
  int count = 1;
};
StateVector product_state(const FockBasis& basis, const std::vector<ModeOccupancy>& groups);

/// Product of distinct creation operators, one per listed one-particle state.
/// The states must be mutually orthonormal within 1e-10.
StateVector orthogonal_product_state(const FockBasis& basis,
                                     const std::vector<Eigen::VectorXcd>& one_particle_states);

/// Tr(rho * O_0 O_1 ... O_{k-1}), the product applied right-to-left to kets.
complexd expectation(const StateVector& state, const std::vector<const CouplingOperator*>& ops);
complexd expectation(const MixedBosonState& rho, const std::vector<const CouplingOperator*>& ops);

/// Largest magnitude among the matrix elements of [F1,F2], [F1,F2†] and
/// [F1†,F2†] that are unaffected by the occupation cutoff. Operators on
/// distinct modes commute exactly (tensor-factor structure), including on the
/// truncated space.
double check_commuting(const CouplingOperator& f1, const CouplingOperator& f2);

/// Exact double multinomial coefficient n! / (k0! k1! ... ), as a double.
double multinomial(int n, std::span<const int> parts);

/// z^k for small nonnegative integer k.
complexd ipow(complexd z, int k);

}  // namespace qbt
