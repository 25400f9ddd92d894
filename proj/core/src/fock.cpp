#include "qbt/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbt {

namespace {

constexpr std::int64_t kMaxDim = std::int64_t{1} << 24;
constexpr std::int64_t kMaxDenseDim = 4096;

std::string basis_str(const FockBasis& b) {
  std::ostringstream os;
  os << b.n_modes() << " modes, cutoff " << b.cutoff();
  return os.str();
}

}  // namespace

FockBasis::FockBasis(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
  if (n_modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
  if (cutoff < 1) throw std::invalid_argument("FockBasis: cutoff must be >= 1");
  const std::int64_t d = cutoff + 1;
  std::int64_t dim = 1;
  strides_.resize(static_cast<std::size_t>(n_modes));
  for (int i = 0; i < n_modes; ++i) {
    strides_[static_cast<std::size_t>(i)] = dim;
    if (dim > kMaxDim / d) {
      throw capacity_error("FockBasis: dimension (cutoff+1)^n_modes exceeds capacity of " +
                           std::to_string(kMaxDim) + " states");
    }
    dim *= d;
  }
  dim_ = dim;
}

std::int64_t FockBasis::index_of(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != n_modes_)
    throw std::invalid_argument("FockBasis::index_of: wrong tuple length");
  std::int64_t idx = 0;
  for (int i = 0; i < n_modes_; ++i) {
    const int n = occupation[static_cast<std::size_t>(i)];
    if (n < 0 || n > cutoff_) throw std::invalid_argument("FockBasis::index_of: occupation out of range");
    idx += n * strides_[static_cast<std::size_t>(i)];
  }
  return idx;
}

std::vector<int> FockBasis::occupation_of(std::int64_t index) const {
  if (index < 0 || index >= dim_) throw std::invalid_argument("FockBasis::occupation_of: index out of range");
  std::vector<int> occ(static_cast<std::size_t>(n_modes_));
  const std::int64_t d = cutoff_ + 1;
  for (int i = 0; i < n_modes_; ++i) {
    occ[static_cast<std::size_t>(i)] = static_cast<int>(index % d);
    index /= d;
  }
  return occ;
}

int FockBasis::occupation(std::int64_t index, int mode) const {
  const std::int64_t d = cutoff_ + 1;
  return static_cast<int>((index / strides_[static_cast<std::size_t>(mode)]) % d);
}

FockBasis make_basis(int n_modes, int cutoff) { return FockBasis(n_modes, cutoff); }

StateVector vacuum_state(const FockBasis& basis) {
  StateVector s{basis, Eigen::VectorXcd::Zero(basis.dim())};
  s.amplitudes[0] = 1.0;
  return s;
}

MixedBosonState::MixedBosonState(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("MixedBosonState: no components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.weight < 0.0) throw std::invalid_argument("MixedBosonState: negative weight");
    if (c.state.basis != components_.front().state.basis)
      throw std::invalid_argument("MixedBosonState: components on different bases");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("MixedBosonState: weights sum to " + std::to_string(total));
}

MixedBosonState::MixedBosonState(StateVector state) {
  components_.push_back({1.0, std::move(state)});
}

NumberDistribution::NumberDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("NumberDistribution: empty support");
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::invalid_argument("NumberDistribution: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("NumberDistribution: weights sum to " + std::to_string(total) +
                                ", expected 1");
}

NumberDistribution NumberDistribution::point_mass(int n, int support) {
  if (n < 0) throw std::invalid_argument("point_mass: negative particle number");
  const int len = std::max(support, n + 1);
  std::vector<double> w(static_cast<std::size_t>(len), 0.0);
  w[static_cast<std::size_t>(n)] = 1.0;
  return NumberDistribution(std::move(w));
}

NumberDistribution NumberDistribution::binomial(int m, double p) {
  if (m < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: invalid parameters");
  std::vector<double> w(static_cast<std::size_t>(m) + 1);
  // multiplicative recurrence keeps every weight at a few ulps
  double c = std::pow(1.0 - p, m);
  for (int n = 0; n <= m; ++n) {
    w[static_cast<std::size_t>(n)] = c;
    if (n < m && p < 1.0) c *= (static_cast<double>(m - n) / (n + 1)) * (p / (1.0 - p));
  }
  if (p == 1.0) {
    std::fill(w.begin(), w.end(), 0.0);
    w.back() = 1.0;
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return NumberDistribution(std::move(w));
}

NumberDistribution NumberDistribution::poisson(double lambda, double tail_mass) {
  if (lambda < 0.0) throw std::invalid_argument("poisson: negative mean");
  std::vector<double> w;
  double term = std::exp(-lambda);
  double cumulative = 0.0;
  for (int n = 0; n < 4096; ++n) {
    w.push_back(term);
    cumulative += term;
    if (n > lambda && 1.0 - cumulative < tail_mass) break;
    term *= lambda / (n + 1);
  }
  for (double& x : w) x /= cumulative;
  return NumberDistribution(std::move(w));
}

NumberDistribution NumberDistribution::geometric(double z, double tail_mass) {
  if (z < 0.0 || z >= 1.0) throw std::invalid_argument("geometric: need 0 <= z < 1");
  std::vector<double> w;
  double term = 1.0 - z;
  double cumulative = 0.0;
  do {
    w.push_back(term);
    cumulative += term;
    term *= z;
  } while (1.0 - cumulative >= tail_mass && w.size() < 4096);
  for (double& x : w) x /= cumulative;
  return NumberDistribution(std::move(w));
}

double NumberDistribution::mean() const {
  double s = 0.0;
  for (std::size_t n = 0; n < weights_.size(); ++n) s += weights_[n] * static_cast<double>(n);
  return s;
}

double NumberDistribution::mean_pair() const {
  double s = 0.0;
  for (std::size_t n = 0; n < weights_.size(); ++n)
    s += weights_[n] * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
  return s;
}

CouplingOperator::CouplingOperator(FockBasis basis, int mode, double g,
                                   std::vector<complexd> p_table, int n,
                                   std::vector<complexd> q_table, int m)
    : basis_(std::move(basis)),
      mode_(mode),
      g_(g),
      p_table_(std::move(p_table)),
      n_(n),
      q_table_(std::move(q_table)),
      m_(m) {
  if (mode_ < 0 || mode_ >= basis_.n_modes())
    throw std::invalid_argument("CouplingOperator: mode index out of range");
  if (p_table_.empty() && q_table_.empty())
    throw std::invalid_argument("CouplingOperator: at least one band required");
  if (!p_table_.empty() && n_ < 1)
    throw std::invalid_argument("CouplingOperator: lowering power must be >= 1");
  if (!q_table_.empty() && m_ < 1)
    throw std::invalid_argument("CouplingOperator: raising power must be >= 1");
  const std::size_t d = static_cast<std::size_t>(basis_.cutoff()) + 1;
  if (!p_table_.empty() && p_table_.size() < d)
    throw std::invalid_argument("CouplingOperator: p table must cover 0..cutoff");
  if (!q_table_.empty() && q_table_.size() < d)
    throw std::invalid_argument("CouplingOperator: q table must cover 0..cutoff");

  const int c = basis_.cutoff();
  mode_matrix_ = Eigen::MatrixXcd::Zero(c + 1, c + 1);
  if (!p_table_.empty()) {
    for (int k = n_; k <= c; ++k) {
      double fall = 1.0;
      for (int j = 0; j < n_; ++j) fall *= static_cast<double>(k - j);
      mode_matrix_(k - n_, k) += g_ * p_table_[static_cast<std::size_t>(k - n_)] * std::sqrt(fall);
    }
  }
  if (!q_table_.empty()) {
    for (int k = 0; k + m_ <= c; ++k) {
      double rise = 1.0;
      for (int j = 1; j <= m_; ++j) rise *= static_cast<double>(k + j);
      mode_matrix_(k + m_, k) += g_ * q_table_[static_cast<std::size_t>(k + m_)] * std::sqrt(rise);
    }
  }
}

Eigen::MatrixXcd CouplingOperator::realized() const {
  const std::int64_t dim = basis_.dim();
  if (dim > kMaxDenseDim) {
    throw capacity_error("CouplingOperator::realized: dense " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " embedding too large; use apply()");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const int c = basis_.cutoff();
  const std::int64_t stride = basis_.stride(mode_);
  for (std::int64_t col = 0; col < dim; ++col) {
    const int o = basis_.occupation(col, mode_);
    for (int r = 0; r <= c; ++r) {
      const complexd v = mode_matrix_(r, o);
      if (v != complexd{0.0, 0.0}) out(col + (r - o) * stride, col) = v;
    }
  }
  return out;
}

CouplingOperator CouplingOperator::adjoint() const {
  const std::size_t d = static_cast<std::size_t>(basis_.cutoff()) + 1;
  // (p(n) a^n)† = q'(n) a†^n with q'(k+n) = conj(p(k));
  // (q(n) a†^m)† = p'(n) a^m with p'(k) = conj(q(k+m)).
  std::vector<complexd> p_adj;
  std::vector<complexd> q_adj;
  if (!q_table_.empty()) {
    p_adj.assign(d, complexd{0.0, 0.0});
    for (std::size_t k = 0; k + static_cast<std::size_t>(m_) < d; ++k)
      p_adj[k] = std::conj(q_table_[k + static_cast<std::size_t>(m_)]);
  }
  if (!p_table_.empty()) {
    q_adj.assign(d, complexd{0.0, 0.0});
    for (std::size_t j = static_cast<std::size_t>(n_); j < d; ++j)
      q_adj[j] = std::conj(p_table_[j - static_cast<std::size_t>(n_)]);
  }
  return CouplingOperator(basis_, mode_, g_, std::move(p_adj), m_, std::move(q_adj), n_);
}

Eigen::VectorXcd CouplingOperator::apply(const Eigen::VectorXcd& v) const {
  return apply_mode_operator(basis_, mode_, mode_matrix_, v);
}

Eigen::VectorXcd CouplingOperator::apply_adjoint(const Eigen::VectorXcd& v) const {
  return apply_mode_operator(basis_, mode_, mode_matrix_.adjoint(), v);
}

CouplingOperator annihilation_power(const FockBasis& basis, int mode, double g, int n) {
  std::vector<complexd> ones(static_cast<std::size_t>(basis.cutoff()) + 1, complexd{1.0, 0.0});
  return CouplingOperator(basis, mode, g, std::move(ones), n, {}, 0);
}

CouplingOperator creation_power(const FockBasis& basis, int mode, double g, int m) {
  std::vector<complexd> ones(static_cast<std::size_t>(basis.cutoff()) + 1, complexd{1.0, 0.0});
  return CouplingOperator(basis, mode, g, {}, 0, std::move(ones), m);
}

CouplingOperator linear_mix(const FockBasis& basis, int mode, double g, complexd beta) {
  const std::size_t d = static_cast<std::size_t>(basis.cutoff()) + 1;
  std::vector<complexd> p(d, complexd{1.0, 0.0});
  std::vector<complexd> q(d, beta);
  return CouplingOperator(basis, mode, g, std::move(p), 1, std::move(q), 1);
}

CouplingOperator build_coupling(const FockBasis& basis, int mode, double g,
                                std::vector<complexd> p_table, int n,
                                std::vector<complexd> q_table, int m) {
  return CouplingOperator(basis, mode, g, std::move(p_table), n, std::move(q_table), m);
}

Eigen::VectorXcd apply_mode_operator(const FockBasis& basis, int mode, const Eigen::MatrixXcd& M,
                                     const Eigen::VectorXcd& v) {
  const int d = basis.cutoff() + 1;
  if (M.rows() != d || M.cols() != d)
    throw std::invalid_argument("apply_mode_operator: matrix does not match cutoff");
  if (v.size() != basis.dim()) throw std::invalid_argument("apply_mode_operator: wrong vector size");
  const std::int64_t stride = basis.stride(mode);
  const std::int64_t block = stride * d;
  const std::int64_t dim = basis.dim();
  Eigen::VectorXcd out(dim);
  for (std::int64_t hi = 0; hi < dim; hi += block) {
    for (std::int64_t lo = 0; lo < stride; ++lo) {
      const std::int64_t base = hi + lo;
      for (int r = 0; r < d; ++r) {
        complexd acc{0.0, 0.0};
        for (int c = 0; c < d; ++c) acc += M(r, c) * v[base + c * stride];
        out[base + r * stride] = acc;
      }
    }
  }
  return out;
}

double multinomial(int n, std::span<const int> parts) {
  double result = 1.0;
  int remaining = n;
  for (int part : parts) {
    if (part < 0) throw std::invalid_argument("multinomial: negative part");
    // C(remaining, part) by multiplicative recurrence
    double c = 1.0;
    for (int j = 1; j <= part; ++j) c = c * static_cast<double>(remaining - part + j) / j;
    result *= c;
    remaining -= part;
  }
  if (remaining != 0) throw std::invalid_argument("multinomial: parts do not sum to n");
  return result;
}

complexd ipow(complexd z, int k) {
  complexd out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

StateVector condensate_state(const FockBasis& basis, int n_particles, complexd u1, complexd u2) {
  if (basis.n_modes() != 3)
    throw std::invalid_argument("condensate_state: needs the 3-mode layout (two coupled + spectator)");
  if (n_particles < 0 || n_particles > basis.cutoff())
    throw std::invalid_argument("condensate_state: particle number must be in 0..cutoff");
  const double leak = std::norm(u1) + std::norm(u2);
  if (leak > 1.0 + 1e-12)
    throw std::invalid_argument("condensate_state: |u1|^2 + |u2|^2 = " + std::to_string(leak) +
                                " exceeds 1");
  const double ut = std::sqrt(std::max(0.0, 1.0 - leak));

  StateVector s{basis, Eigen::VectorXcd::Zero(basis.dim())};
  for (int n1 = 0; n1 <= n_particles; ++n1) {
    for (int n2 = 0; n2 + n1 <= n_particles; ++n2) {
      const int n3 = n_particles - n1 - n2;
      const int parts[3] = {n1, n2, n3};
      const double w = std::sqrt(multinomial(n_particles, parts));
      const complexd amp = w * ipow(u1, n1) * ipow(u2, n2) * std::pow(ut, n3);
      s.amplitudes[basis.index_of(parts)] = amp;
    }
  }
  return s;
}

namespace {

// a†(phi) = sum_j phi_j a_j† applied to v
Eigen::VectorXcd apply_creation(const FockBasis& basis, const Eigen::VectorXcd& phi,
                                const Eigen::VectorXcd& v) {
  const int d = basis.cutoff() + 1;
  Eigen::MatrixXcd create = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k + 1 <= basis.cutoff(); ++k) create(k + 1, k) = std::sqrt(k + 1.0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dim());
  for (int j = 0; j < basis.n_modes(); ++j) {
    if (phi[j] == complexd{0.0, 0.0}) continue;
    out += phi[j] * apply_mode_operator(basis, j, create, v);
  }
  return out;
}

void check_orthonormal(const std::vector<Eigen::VectorXcd>& states, int n_modes) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != n_modes)
      throw std::invalid_argument("product_state: one-particle state has wrong mode count");
    for (std::size_t j = i; j < states.size(); ++j) {
      const complexd ov = states[i].dot(states[j]);
      const complexd target = (i == j) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
      if (std::abs(ov - target) > 1e-10)
        throw std::invalid_argument(
            "product_state: one-particle states are not mutually orthonormal "
            "(<phi_k|phi_k'> must be delta_{k,k'})");
    }
  }
}

}  // namespace

StateVector product_state(const FockBasis& basis, const std::vector<ModeOccupancy>& groups) {
  if (groups.empty()) throw std::invalid_argument("product_state: no creation groups");
  std::vector<Eigen::VectorXcd> distinct;
  int total = 0;
  for (const auto& gr : groups) {
    if (gr.count < 0) throw std::invalid_argument("product_state: negative count");
    total += gr.count;
    distinct.push_back(gr.one_particle_state);
  }
  check_orthonormal(distinct, basis.n_modes());
  if (total > basis.cutoff() * basis.n_modes())
    throw std::invalid_argument("product_state: more particles than the truncated space holds");

  StateVector s = vacuum_state(basis);
  double norm_expected = 1.0;  // prod_i count_i! for orthonormal one-particle states
  for (const auto& gr : groups) {
    for (int k = 0; k < gr.count; ++k) {
      s.amplitudes = apply_creation(basis, gr.one_particle_state, s.amplitudes);
      norm_expected *= k + 1.0;
    }
  }
  const double nrm2 = s.amplitudes.squaredNorm();
  if (std::abs(nrm2 - norm_expected) > 1e-8 * norm_expected) {
    throw numeric_error("product_state: norm deviates from the orthonormal-product value; "
                        "cutoff too small for this particle content");
  }
  s.amplitudes /= std::sqrt(nrm2);
  return s;
}

StateVector orthogonal_product_state(const FockBasis& basis,
                                     const std::vector<Eigen::VectorXcd>& one_particle_states) {
  std::vector<ModeOccupancy> groups;
  groups.reserve(one_particle_states.size());
  for (const auto& phi : one_particle_states) groups.push_back({phi, 1});
  return product_state(basis, groups);
}

complexd expectation(const StateVector& state, const std::vector<const CouplingOperator*>& ops) {
  Eigen::VectorXcd w = state.amplitudes;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if ((*it)->basis() != state.basis)
      throw std::invalid_argument("expectation: operator basis does not match state basis");
    w = (*it)->apply(w);
  }
  return state.amplitudes.dot(w);
}

complexd expectation(const MixedBosonState& rho, const std::vector<const CouplingOperator*>& ops) {
  complexd total{0.0, 0.0};
  for (const auto& c : rho.components()) total += c.weight * expectation(c.state, ops);
  return total;
}

double check_commuting(const CouplingOperator& f1, const CouplingOperator& f2) {
  if (f1.basis() != f2.basis())
    throw std::invalid_argument("check_commuting: operators on different bases (" +
                                basis_str(f1.basis()) + " vs " + basis_str(f2.basis()) + ")");
  if (f1.mode() != f2.mode()) return 0.0;

  const int c = f1.basis().cutoff();
  const auto& a = f1.mode_matrix();
  const auto& b = f2.mode_matrix();
  const Eigen::MatrixXcd a_dag = a.adjoint();
  const Eigen::MatrixXcd b_dag = b.adjoint();

  // A product entry <k'|XY|k> is exact whenever the intermediate Y|k> stays
  // within the cutoff, i.e. for columns k <= cutoff - raise(Y). Restricting the
  // residual to those columns measures the true commutator, not the truncation
  // edge.
  const auto residual = [c](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, int raise_x,
                            int raise_y) {
    const Eigen::MatrixXcd comm = x * y - y * x;
    const int margin = std::max(raise_x, raise_y);
    const int cols = c + 1 - margin;
    if (cols <= 0) return comm.cwiseAbs().maxCoeff();
    return comm.leftCols(cols).cwiseAbs().maxCoeff();
  };

  const int r1 = f1.max_raise();
  const int r2 = f2.max_raise();
  const int r1d = f1.has_lowering_band() ? f1.lowering_power() : 0;
  const int r2d = f2.has_lowering_band() ? f2.lowering_power() : 0;

  double worst = residual(a, b, r1, r2);
  worst = std::max(worst, residual(a, b_dag, r1, r2d));
  worst = std::max(worst, residual(a_dag, b_dag, r1d, r2d));
  return worst;
}

}  // namespace qbt
