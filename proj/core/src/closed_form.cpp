#include "qbt/closed_form.hpp"

#include <cmath>
#include <vector>

namespace qbt {

namespace {

// n! / (n-m)!, zero when the lowering band annihilates (n < m)
double falling(int n, int m) {
  if (n < m) return 0.0;
  double f = 1.0;
  for (int j = 0; j < m; ++j) f *= static_cast<double>(n - j);
  return f;
}

// (n+m)! / n!
double rising(int n, int m) {
  double f = 1.0;
  for (int j = 1; j <= m; ++j) f *= static_cast<double>(n + j);
  return f;
}

void validate_condensate(const CondensateScenario& s) {
  if (s.n_particles < 0) throw std::invalid_argument("rho_condensate: negative particle number");
  if (s.photon_order < 1) throw std::invalid_argument("rho_condensate: photon order must be >= 1");
  if (std::norm(s.u1) + std::norm(s.u2) > 1.0 + 1e-12)
    throw std::invalid_argument("rho_condensate: |u1|^2 + |u2|^2 exceeds 1");
  if (s.init != InitialQubitState::q00)
    throw std::invalid_argument(
        "rho_condensate: closed form covers the |00> initial state; use "
        "rho_condensate_excited (N = 1) or the channel path for others");
}

}  // namespace

XState rho_condensate(const CondensateScenario& s, double t) {
  validate_condensate(s);
  const int n_total = s.n_particles;
  const int m = s.photon_order;
  const double a1 = std::norm(s.u1);
  const double a2 = std::norm(s.u2);
  const double at = std::max(0.0, 1.0 - a1 - a2);

  XState x;
  for (int n1 = 0; n1 <= n_total; ++n1) {
    const double c1 = std::cos(std::sqrt(falling(n1, m)) * s.g1 * t);
    const double s1 = std::sin(std::sqrt(falling(n1, m)) * s.g1 * t);
    for (int n2 = 0; n1 + n2 <= n_total; ++n2) {
      const int rest = n_total - n1 - n2;
      const int parts[3] = {n1, n2, rest};
      const double weight =
          multinomial(n_total, parts) * std::pow(a1, n1) * std::pow(a2, n2) * std::pow(at, rest);
      const double c2 = std::cos(std::sqrt(falling(n2, m)) * s.g2 * t);
      const double s2 = std::sin(std::sqrt(falling(n2, m)) * s.g2 * t);
      x.rho11 += weight * c1 * c1 * c2 * c2;
      x.rho22 += weight * c1 * c1 * s2 * s2;
      x.rho33 += weight * s1 * s1 * c2 * c2;
      x.rho44 += weight * s1 * s1 * s2 * s2;
    }
  }

  // coherence <01|rho|10>: both kernels pair a cosine at n with a sine one band up
  double sum23 = 0.0;
  for (int n1 = 0; n1 + m <= n_total; ++n1) {
    const double r1 = rising(n1, m);
    const double k1 = std::cos(std::sqrt(falling(n1, m)) * s.g1 * t) *
                      std::sin(std::sqrt(r1) * s.g1 * t) / std::sqrt(r1);
    for (int n2 = 0; n1 + n2 + m <= n_total; ++n2) {
      const int rest = n_total - n1 - n2 - m;
      const double r2 = rising(n2, m);
      const double k2 = std::cos(std::sqrt(falling(n2, m)) * s.g2 * t) *
                        std::sin(std::sqrt(r2) * s.g2 * t) / std::sqrt(r2);
      // N! / (n1! n2! (N - n1 - n2 - m)!)
      const int parts[3] = {n1, n2, rest};
      const double combinatoric = multinomial(n_total - m, parts) * falling(n_total, m);
      sum23 += combinatoric * std::pow(a1, n1) * std::pow(a2, n2) * std::pow(at, rest) * k1 * k2;
    }
  }
  x.rho23 = ipow(std::conj(s.u1) * s.u2, m) * sum23;
  x.rho14 = complexd{0.0, 0.0};
  return x;
}

XState rho_condensate_excited(complexd u1, complexd u2, double g1, double g2, double t) {
  if (std::norm(u1) + std::norm(u2) > 1.0 + 1e-12)
    throw std::invalid_argument("rho_condensate_excited: |u1|^2 + |u2|^2 exceeds 1");
  const double a1 = std::norm(u1);
  const double a2 = std::norm(u2);
  const double at = std::max(0.0, 1.0 - a1 - a2);
  const double c1 = std::cos(g1 * t), s1 = std::sin(g1 * t);
  const double c2 = std::cos(g2 * t), s2 = std::sin(g2 * t);
  const double C1 = std::cos(std::sqrt(2.0) * g1 * t), S1 = std::sin(std::sqrt(2.0) * g1 * t);
  const double C2 = std::cos(std::sqrt(2.0) * g2 * t), S2 = std::sin(std::sqrt(2.0) * g2 * t);

  // Daggered couplings shift every frequency one rung up on the occupied mode;
  // the sigma_x x sigma_x conjugation then reverses the diagonal.
  XState x;
  x.rho11 = a1 * S1 * S1 * s2 * s2 + a2 * s1 * s1 * S2 * S2 + at * s1 * s1 * s2 * s2;
  x.rho22 = a1 * S1 * S1 * c2 * c2 + a2 * s1 * s1 * C2 * C2 + at * s1 * s1 * c2 * c2;
  x.rho33 = a1 * C1 * C1 * s2 * s2 + a2 * c1 * c1 * S2 * S2 + at * c1 * c1 * s2 * s2;
  x.rho44 = a1 * C1 * C1 * c2 * c2 + a2 * c1 * c1 * C2 * C2 + at * c1 * c1 * c2 * c2;
  x.rho23 = std::conj(u1) * u2 * s1 * s2 * C1 * C2;
  x.rho14 = complexd{0.0, 0.0};
  return x;
}

XState rho_bogoliubov(const BogoliubovScenario& s, double t) {
  if (s.beta < 0.0 || s.beta >= 1.0)
    throw std::invalid_argument("rho_bogoliubov: beta must lie in [0, 1)");
  const double r = std::atanh(s.beta);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double th = s.beta;
  const double gt = s.g / ch;  // rescaled coupling after the rotation

  constexpr int kMaxTerms = 2000000;
  const int limit = s.series_terms > 0 ? s.series_terms : kMaxTerms;

  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;
  double cn2 = 1.0 / ch;  // |c_0|^2; ratio |c_{n+1}|^2/|c_n|^2 = th^2 (2n+1)/(2n+2)
  int n = 0;
  for (;; ++n) {
    if (n >= limit) {
      if (s.series_terms > 0) break;
      throw capacity_error("rho_bogoliubov: series did not reach the tail bound");
    }
    const double even = std::sqrt(2.0 * n) * gt * t;
    const double odd = std::sqrt(2.0 * n + 1.0) * gt * t;
    const double next = std::sqrt(2.0 * n + 2.0) * gt * t;
    const double w_odd = (2.0 * n + 1.0) / (ch * ch) * cn2;
    A += w_odd * std::cos(odd) * std::cos(odd);
    C += w_odd * std::sin(odd) * std::sin(odd);
    B += cn2 * std::cos(even) * std::cos(even);
    D += cn2 * std::sin(even) * std::sin(even);
    E += std::sqrt(2.0 * n + 1.0) / ch * cn2 * std::cos(even) * std::sin(odd);
    F += (2.0 * n + 1.0) / std::sqrt(2.0 * (n + 1.0)) * cn2 * std::cos(odd) * std::sin(next);
    if (s.series_terms == 0 && cn2 < 1e-15) break;
    cn2 *= th * th * (2.0 * n + 1.0) / (2.0 * n + 2.0);
  }
  F *= sh / (ch * ch);

  XState x;
  x.rho11 = A * B;
  x.rho22 = 0.5 * (A * D + B * C);
  x.rho33 = x.rho22;
  x.rho44 = C * D;
  x.rho23 = 0.5 * (E * E + F * F);
  x.rho14 = -std::exp(complexd{0.0, -s.theta}) * E * F;
  return x;
}

XState rho_mixture(const NumberDistribution& p, complexd u1, complexd u2, double g1, double g2,
                   double t) {
  XState total;
  CondensateScenario s;
  s.photon_order = 1;
  s.u1 = u1;
  s.u2 = u2;
  s.g1 = g1;
  s.g2 = g2;
  for (int n = 0; n <= p.max_n(); ++n) {
    const double w = p.weights()[static_cast<std::size_t>(n)];
    if (w == 0.0) continue;
    s.n_particles = n;
    const XState x = rho_condensate(s, t);
    total.rho11 += w * x.rho11;
    total.rho22 += w * x.rho22;
    total.rho33 += w * x.rho33;
    total.rho44 += w * x.rho44;
    total.rho23 += w * x.rho23;
    total.rho14 += w * x.rho14;
  }
  return total;
}

XState rho_su2_pair(const SU2PairScenario& s, double t) {
  const double c1 = std::cos(s.g1 * t), s1 = std::sin(s.g1 * t);
  const double c2 = std::cos(s.g2 * t), s2 = std::sin(s.g2 * t);
  const double C1 = std::cos(std::sqrt(2.0) * s.g1 * t), S1 = std::sin(std::sqrt(2.0) * s.g1 * t);
  const double C2 = std::cos(std::sqrt(2.0) * s.g2 * t), S2 = std::sin(std::sqrt(2.0) * s.g2 * t);
  const double sin2t = std::sin(2.0 * s.theta);
  const double cos2t = std::cos(2.0 * s.theta);
  const double sin4t = std::sin(4.0 * s.theta);

  XState x;
  x.rho11 = 0.5 * sin2t * sin2t * (C1 * C1 + C2 * C2) + cos2t * cos2t * c1 * c1 * c2 * c2;
  x.rho44 = cos2t * cos2t * s1 * s1 * s2 * s2;
  x.rho23 = (sin4t / (2.0 * std::sqrt(2.0))) * std::exp(complexd{0.0, s.eta}) *
            (s1 * S2 * c2 - s2 * S1 * c1);
  x.rho14 = complexd{0.0, 0.0};

  // rho22 and rho33 via the generic channel (exact: the two-particle content
  // fits the cutoff); only the three entries above have printed closed forms.
  const FockBasis basis = make_basis(3, 3);
  const complexd eip = std::exp(complexd{0.0, s.eta});
  const complexd eim = std::exp(complexd{0.0, -s.eta});
  Eigen::Vector3cd b1, b2;
  b1 << std::cos(s.theta), std::sin(s.theta) * eip, 0.0;
  b2 << -std::sin(s.theta) * eim, std::cos(s.theta), 0.0;
  const StateVector phi = orthogonal_product_state(basis, {b1, b2});
  const ReducedDensityEngine engine(annihilation_power(basis, 0, s.g1),
                                    annihilation_power(basis, 1, s.g2), MixedBosonState(phi));
  const TwoQubitState brute = engine.at(t);
  x.rho22 = brute.rho(1, 1).real();
  x.rho33 = brute.rho(2, 2).real();
  return x;
}

XState rho_two_mode(const TwoModeScenario& s, double t) {
  if (s.n1 < 0 || s.n2 < 0) throw std::invalid_argument("rho_two_mode: negative particle number");
  const complexd ortho = s.phi_b1.dot(s.phi_b2);
  if (std::abs(ortho) > 1e-10 || std::abs(s.phi_b1.norm() - 1.0) > 1e-10 ||
      std::abs(s.phi_b2.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("rho_two_mode: occupied states must be orthonormal");

  const int n_total = s.n1 + s.n2;
  const int d = n_total + 1;
  // amp(n0,n1,n2) from the double multinomial expansion of the creation product
  std::vector<complexd> amp(static_cast<std::size_t>(d) * d * d, complexd{0.0, 0.0});
  const auto at = [&](int a, int b, int c) -> complexd& {
    return amp[static_cast<std::size_t>((a * d + b) * d + c)];
  };

  const double norm_fact = [&] {
    double f = 1.0;
    for (int k = 2; k <= s.n1; ++k) f *= k;
    for (int k = 2; k <= s.n2; ++k) f *= k;
    return f;  // N1! N2!
  }();

  for (int j0 = 0; j0 <= s.n1; ++j0) {
    for (int j1 = 0; j0 + j1 <= s.n1; ++j1) {
      const int j2 = s.n1 - j0 - j1;
      const int jp[3] = {j0, j1, j2};
      const complexd wj = multinomial(s.n1, jp) * ipow(s.phi_b1[0], j0) * ipow(s.phi_b1[1], j1) *
                          ipow(s.phi_b1[2], j2);
      for (int k0 = 0; k0 <= s.n2; ++k0) {
        for (int k1 = 0; k0 + k1 <= s.n2; ++k1) {
          const int k2 = s.n2 - k0 - k1;
          const int kp[3] = {k0, k1, k2};
          const complexd wk = multinomial(s.n2, kp) * ipow(s.phi_b2[0], k0) *
                              ipow(s.phi_b2[1], k1) * ipow(s.phi_b2[2], k2);
          at(j0 + k0, j1 + k1, j2 + k2) += wj * wk;
        }
      }
    }
  }
  double norm2 = 0.0;
  for (int n0 = 0; n0 < d; ++n0)
    for (int n1 = 0; n1 < d; ++n1)
      for (int n2 = 0; n2 < d; ++n2) {
        double fact = 1.0;
        for (int k = 2; k <= n0; ++k) fact *= k;
        for (int k = 2; k <= n1; ++k) fact *= k;
        for (int k = 2; k <= n2; ++k) fact *= k;
        at(n0, n1, n2) *= std::sqrt(fact / norm_fact);
        norm2 += std::norm(at(n0, n1, n2));
      }
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw numeric_error("rho_two_mode: state norm " + std::to_string(norm2) +
                        " deviates from 1; check the occupied-state geometry");

  XState x;
  for (int n0 = 0; n0 < d; ++n0) {
    const double c1 = std::cos(std::sqrt(static_cast<double>(n0)) * s.g1 * t);
    const double s1 = std::sin(std::sqrt(static_cast<double>(n0)) * s.g1 * t);
    for (int n1 = 0; n1 < d; ++n1) {
      const double c2 = std::cos(std::sqrt(static_cast<double>(n1)) * s.g2 * t);
      const double s2 = std::sin(std::sqrt(static_cast<double>(n1)) * s.g2 * t);
      for (int n2 = 0; n2 < d; ++n2) {
        const double w = std::norm(at(n0, n1, n2));
        if (w == 0.0) continue;
        x.rho11 += w * c1 * c1 * c2 * c2;
        x.rho22 += w * c1 * c1 * s2 * s2;
        x.rho33 += w * s1 * s1 * c2 * c2;
        x.rho44 += w * s1 * s1 * s2 * s2;
      }
    }
  }
  // <01|rho|10> pairs amp(n0+1, n1-1) against amp(n0, n1): the first qubit's
  // flip block raises mode 0, the second's no-flip-dagger-flip lowers mode 1
  for (int n0 = 0; n0 + 1 < d; ++n0) {
    const double k1 = std::cos(std::sqrt(static_cast<double>(n0)) * s.g1 * t) *
                      std::sin(std::sqrt(n0 + 1.0) * s.g1 * t);
    for (int n1 = 1; n1 < d; ++n1) {
      const double k2 = std::cos(std::sqrt(n1 - 1.0) * s.g2 * t) *
                        std::sin(std::sqrt(static_cast<double>(n1)) * s.g2 * t);
      for (int n2 = 0; n2 < d; ++n2) {
        x.rho23 += std::conj(at(n0 + 1, n1 - 1, n2)) * at(n0, n1, n2) * k1 * k2;
      }
    }
  }
  x.rho14 = complexd{0.0, 0.0};
  return x;
}

}  // namespace qbt
