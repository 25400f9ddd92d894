#include "qbt/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>

#include <json.hpp>

#include "qbt/perturbation.hpp"

namespace qbt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<double> time_grid(const SweepSpec& sweep) {
  std::vector<double> ts(static_cast<std::size_t>(sweep.t_steps) + 1);
  for (int k = 0; k <= sweep.t_steps; ++k)
    ts[static_cast<std::size_t>(k)] = sweep.t_max * static_cast<double>(k) / sweep.t_steps;
  return ts;
}

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

NumberDistribution distribution_from(const ScenarioConfig& c) {
  if (c.distribution == "point") return NumberDistribution::point_mass(c.n_particles);
  if (c.distribution == "binomial") return NumberDistribution::binomial(c.binomial_m, c.binomial_p);
  if (c.distribution == "poisson") return NumberDistribution::poisson(c.lambda, 1e-15);
  if (c.distribution == "geometric") return NumberDistribution::geometric(c.z, 1e-15);
  throw config_error("unknown distribution '" + c.distribution +
                     "' (expected point, binomial, poisson or geometric)");
}

void su2_vectors(const ScenarioConfig& c, Eigen::Vector3cd& b1, Eigen::Vector3cd& b2) {
  if (c.phi_b_set) {
    b1 = c.phi_b1;
    b2 = c.phi_b2;
    return;
  }
  const complexd eip = std::exp(complexd{0.0, c.eta});
  const complexd eim = std::exp(complexd{0.0, -c.eta});
  b1 << std::cos(c.theta), std::sin(c.theta) * eip, 0.0;
  b2 << -std::sin(c.theta) * eim, std::cos(c.theta), 0.0;
}

double spectator_amplitude(const ScenarioConfig& c) {
  return std::sqrt(std::max(0.0, 1.0 - std::norm(c.u1) - std::norm(c.u2)));
}

// brute-force pieces shared by beta-mixed, perturbative and the crosscheck paths

StateVector brute_condensate(const FockBasis& basis, int n, complexd u1, complexd u2) {
  if (basis.n_modes() == 3) return condensate_state(basis, n, u1, u2);
  Eigen::VectorXcd phi(2);
  phi << u1, u2;
  if (n == 0) return vacuum_state(basis);
  return product_state(basis, {{phi, n}});
}

struct BruteSetup {
  FockBasis basis;
  CouplingOperator f1;
  CouplingOperator f2;
  MixedBosonState rho;
};

BruteSetup beta_mixed_setup(const ScenarioConfig& c, int cutoff) {
  const double ut = spectator_amplitude(c);
  const int n_modes = ut > 1e-7 ? 3 : 2;
  FockBasis basis = make_basis(n_modes, cutoff);
  const complexd phase = std::exp(complexd{0.0, c.theta});
  CouplingOperator f1 = linear_mix(basis, 0, c.g1, c.beta1 * phase);
  CouplingOperator f2 = linear_mix(basis, 1, c.g2, c.beta2 * phase);
  MixedBosonState rho(brute_condensate(basis, c.n_particles, c.u1, c.u2));
  return {std::move(basis), std::move(f1), std::move(f2), std::move(rho)};
}

std::vector<double> beta_mixed_negativity_curve(const ScenarioConfig& c, int cutoff,
                                                const std::vector<double>& ts) {
  const BruteSetup setup = beta_mixed_setup(c, cutoff);
  const ReducedDensityEngine engine(setup.f1, setup.f2, setup.rho);
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(negativity(engine.at(t)).negativity);
  return out;
}

int beta_mixed_cutoff(const ScenarioConfig& c) {
  if (c.cutoff_override) return *c.cutoff_override;
  SweepSpec probe = c.sweep;
  probe.t_steps = std::min(probe.t_steps, 200);
  const std::vector<double> ts = time_grid(probe);
  return converge_cutoff(
      [&](int cutoff) { return beta_mixed_negativity_curve(c, cutoff, ts); },
      c.n_particles + 8, 6, 150);
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::jc_pure: return "jc-pure";
    case ScenarioKind::jc_excited: return "jc-excited";
    case ScenarioKind::m_photon: return "m-photon";
    case ScenarioKind::beta_mixed: return "beta-mixed";
    case ScenarioKind::bogoliubov: return "bogoliubov";
    case ScenarioKind::two_mode: return "two-mode";
    case ScenarioKind::su2_pair: return "su2-pair";
    case ScenarioKind::mixture: return "mixture";
    case ScenarioKind::perturbative: return "perturbative";
  }
  throw std::logic_error("unreachable scenario kind");
}

ScenarioKind scenario_from_string(const std::string& name) {
  static const std::map<std::string, ScenarioKind> table = {
      {"jc-pure", ScenarioKind::jc_pure},       {"jc-excited", ScenarioKind::jc_excited},
      {"m-photon", ScenarioKind::m_photon},     {"beta-mixed", ScenarioKind::beta_mixed},
      {"bogoliubov", ScenarioKind::bogoliubov}, {"two-mode", ScenarioKind::two_mode},
      {"su2-pair", ScenarioKind::su2_pair},     {"mixture", ScenarioKind::mixture},
      {"perturbative", ScenarioKind::perturbative}};
  const auto it = table.find(name);
  if (it == table.end()) throw config_error("unknown scenario '" + name + "'");
  return it->second;
}

ScenarioConfig default_config(ScenarioKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  switch (kind) {
    case ScenarioKind::jc_pure:
      c.g1 = c.g2 = kPi / 2.0;
      break;
    case ScenarioKind::jc_excited:
      c.n_particles = 1;
      c.g1 = c.g2 = kPi / 2.0;
      c.sweep = {14.0, 1400};
      break;
    case ScenarioKind::m_photon:
      c.n_particles = 2;
      c.photon_order = 2;
      c.sweep = {10.0, 1000};
      break;
    case ScenarioKind::beta_mixed:
    case ScenarioKind::bogoliubov:
      c.beta1 = c.beta2 = 0.5;
      break;
    case ScenarioKind::two_mode:
      c.theta = kPi / 8.0;
      c.g1 = 3.0 / std::sqrt(2.0);
      c.g2 = 1.0;
      c.sweep = {8.0, 800};
      break;
    case ScenarioKind::su2_pair:
      c.theta = kPi / 8.0;
      c.g1 = 3.0 / std::sqrt(2.0);
      c.g2 = 1.0;
      c.sweep = {8.0, 800};
      break;
    case ScenarioKind::mixture:
      c.distribution = "binomial";
      break;
    case ScenarioKind::perturbative:
      c.beta1 = c.beta2 = 0.0;
      c.sweep = {0.5, 100};
      break;
  }
  return c;
}

ScenarioConfig config_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("config must be a JSON object");
  if (!doc.contains("scenario")) throw config_error("config is missing the 'scenario' key");

  ScenarioConfig c = default_config(scenario_from_string(doc["scenario"].get<std::string>()));

  const auto read_vec3 = [](const nlohmann::json& arr, const char* key) {
    if (!arr.is_array() || arr.size() != 6)
      throw config_error(std::string(key) + " must be an array [re0, im0, re1, im1, re2, im2]");
    Eigen::Vector3cd v;
    for (int i = 0; i < 3; ++i)
      v[i] = complexd{arr[2 * i].get<double>(), arr[2 * i + 1].get<double>()};
    return v;
  };

  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "scenario") continue;
      else if (key == "N") c.n_particles = value.get<int>();
      else if (key == "m") c.photon_order = value.get<int>();
      else if (key == "u1_re") c.u1.real(value.get<double>());
      else if (key == "u1_im") c.u1.imag(value.get<double>());
      else if (key == "u2_re") c.u2.real(value.get<double>());
      else if (key == "u2_im") c.u2.imag(value.get<double>());
      else if (key == "g1") c.g1 = value.get<double>();
      else if (key == "g2") c.g2 = value.get<double>();
      else if (key == "beta") c.beta1 = c.beta2 = value.get<double>();
      else if (key == "beta1") c.beta1 = value.get<double>();
      else if (key == "beta2") c.beta2 = value.get<double>();
      else if (key == "theta") c.theta = value.get<double>();
      else if (key == "eta") c.eta = value.get<double>();
      else if (key == "dist") c.distribution = value.get<std::string>();
      else if (key == "M") c.binomial_m = value.get<int>();
      else if (key == "p") c.binomial_p = value.get<double>();
      else if (key == "lambda") c.lambda = value.get<double>();
      else if (key == "z") c.z = value.get<double>();
      else if (key == "N1") c.two_mode_n1 = value.get<int>();
      else if (key == "N2") c.two_mode_n2 = value.get<int>();
      else if (key == "phib1") { c.phi_b1 = read_vec3(value, "phib1"); c.phi_b_set = true; }
      else if (key == "phib2") { c.phi_b2 = read_vec3(value, "phib2"); c.phi_b_set = true; }
      else if (key == "t_max") c.sweep.t_max = value.get<double>();
      else if (key == "t_steps") c.sweep.t_steps = value.get<int>();
      else if (key == "cutoff") c.cutoff_override = value.get<int>();
      else throw config_error("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw config_error("config key '" + key + "': " + e.what());
    }
  }
  return c;
}

void validate(const ScenarioConfig& c) {
  if (!(c.sweep.t_max > 0.0)) throw config_error("t_max must be positive");
  if (c.sweep.t_steps < 1) throw config_error("t_steps must be >= 1");
  if (!std::isfinite(c.g1) || !std::isfinite(c.g2)) throw config_error("couplings must be finite");
  if (c.cutoff_override && *c.cutoff_override < 1) throw config_error("cutoff must be >= 1");

  const double leak = std::norm(c.u1) + std::norm(c.u2);
  const bool uses_u = c.kind == ScenarioKind::jc_pure || c.kind == ScenarioKind::jc_excited ||
                      c.kind == ScenarioKind::m_photon || c.kind == ScenarioKind::beta_mixed ||
                      c.kind == ScenarioKind::mixture || c.kind == ScenarioKind::perturbative;
  if (uses_u && leak > 1.0 + 1e-12)
    throw config_error("|u1|^2 + |u2|^2 = " + std::to_string(leak) + " exceeds 1");

  switch (c.kind) {
    case ScenarioKind::jc_pure:
      if (c.n_particles < 0) throw config_error("N must be >= 0");
      break;
    case ScenarioKind::jc_excited:
      if (c.n_particles != 1) throw config_error("jc-excited covers exactly one particle (N = 1)");
      break;
    case ScenarioKind::m_photon:
      if (c.n_particles < 0) throw config_error("N must be >= 0");
      if (c.photon_order < 1) throw config_error("m must be >= 1");
      break;
    case ScenarioKind::beta_mixed:
    case ScenarioKind::perturbative:
      if (c.n_particles < 0) throw config_error("N must be >= 0");
      if (std::abs(c.beta1) >= 1.0 || std::abs(c.beta2) >= 1.0)
        throw config_error("mixing parameters must satisfy |beta| < 1");
      break;
    case ScenarioKind::bogoliubov:
      if (c.beta1 < 0.0 || c.beta1 >= 1.0) throw config_error("beta must lie in [0, 1)");
      break;
    case ScenarioKind::two_mode: {
      if (c.two_mode_n1 < 0 || c.two_mode_n2 < 0) throw config_error("N1, N2 must be >= 0");
      Eigen::Vector3cd b1, b2;
      su2_vectors(c, b1, b2);
      if (std::abs(b1.norm() - 1.0) > 1e-10 || std::abs(b2.norm() - 1.0) > 1e-10 ||
          std::abs(b1.dot(b2)) > 1e-10)
        throw config_error("phib1/phib2 must be orthonormal three-component vectors");
      break;
    }
    case ScenarioKind::su2_pair:
      break;
    case ScenarioKind::mixture:
      if (c.distribution == "binomial") {
        if (c.binomial_m < 0) throw config_error("M must be >= 0");
        if (c.binomial_p < 0.0 || c.binomial_p > 1.0) throw config_error("p must lie in [0, 1]");
      } else if (c.distribution == "poisson") {
        if (!(c.lambda > 0.0)) throw config_error("lambda must be positive");
      } else if (c.distribution == "geometric") {
        if (c.z < 0.0 || c.z >= 1.0) throw config_error("z must lie in [0, 1)");
      } else if (c.distribution == "point") {
        if (c.n_particles < 0) throw config_error("N must be >= 0");
      } else {
        throw config_error("unknown distribution '" + c.distribution + "'");
      }
      break;
  }
}

CurveRow make_row(double t, const XState& x) {
  const NegativityReport rep = negativity(x);
  return {t,          x.rho11,         x.rho22,         x.rho33,       x.rho44,
          x.rho23.real(), x.rho23.imag(), x.rho14.real(), x.rho14.imag(),
          rep.negativity, rep.n23,        rep.n14};
}

CurveRow make_row(double t, const TwoQubitState& state) {
  const NegativityReport rep = negativity(state);
  const XState x = to_x_state(state);
  return {t,          x.rho11,         x.rho22,         x.rho33,       x.rho44,
          x.rho23.real(), x.rho23.imag(), x.rho14.real(), x.rho14.imag(),
          rep.negativity, rep.n23,        rep.n14};
}

std::vector<CurveRow> run_scenario(const ScenarioConfig& c) {
  validate(c);
  const std::vector<double> ts = time_grid(c.sweep);
  std::vector<CurveRow> rows;
  rows.reserve(ts.size());

  switch (c.kind) {
    case ScenarioKind::jc_pure:
    case ScenarioKind::m_photon: {
      CondensateScenario s{c.n_particles, c.kind == ScenarioKind::m_photon ? c.photon_order : 1,
                           c.u1, c.u2, c.g1, c.g2, InitialQubitState::q00};
      for (double t : ts) rows.push_back(make_row(t, rho_condensate(s, t)));
      break;
    }
    case ScenarioKind::jc_excited:
      for (double t : ts) rows.push_back(make_row(t, rho_condensate_excited(c.u1, c.u2, c.g1, c.g2, t)));
      break;
    case ScenarioKind::bogoliubov: {
      BogoliubovScenario s{c.beta1, c.theta, c.g1, 0};
      for (double t : ts) rows.push_back(make_row(t, rho_bogoliubov(s, t)));
      break;
    }
    case ScenarioKind::mixture: {
      const NumberDistribution dist = distribution_from(c);
      for (double t : ts) rows.push_back(make_row(t, rho_mixture(dist, c.u1, c.u2, c.g1, c.g2, t)));
      break;
    }
    case ScenarioKind::su2_pair: {
      SU2PairScenario s{c.theta, c.eta, c.g1, c.g2};
      for (double t : ts) rows.push_back(make_row(t, rho_su2_pair(s, t)));
      break;
    }
    case ScenarioKind::two_mode: {
      TwoModeScenario s;
      s.n1 = c.two_mode_n1;
      s.n2 = c.two_mode_n2;
      su2_vectors(c, s.phi_b1, s.phi_b2);
      s.g1 = c.g1;
      s.g2 = c.g2;
      for (double t : ts) rows.push_back(make_row(t, rho_two_mode(s, t)));
      break;
    }
    case ScenarioKind::beta_mixed: {
      const int cutoff = beta_mixed_cutoff(c);
      const BruteSetup setup = beta_mixed_setup(c, cutoff);
      const ReducedDensityEngine engine(setup.f1, setup.f2, setup.rho);
      for (double t : ts) rows.push_back(make_row(t, engine.at(t)));
      break;
    }
    case ScenarioKind::perturbative: {
      const int cutoff = c.cutoff_override
                             ? *c.cutoff_override
                             : (c.beta1 == 0.0 && c.beta2 == 0.0 ? c.n_particles + 1
                                                                 : beta_mixed_cutoff(c));
      const BruteSetup setup = beta_mixed_setup(c, cutoff);
      const FourthOrderResult fo =
          fourth_order(correlators_exact(setup.f1, setup.f2, setup.rho));
      const ReducedDensityEngine engine(setup.f1, setup.f2, setup.rho);
      for (double t : ts) {
        CurveRow row = make_row(t, engine.at(t));
        const double t4 = t * t * t * t;
        row.n23 = fo.n23_coeff * t4;
        row.n14 = fo.n14_coeff * t4;
        rows.push_back(row);
      }
      break;
    }
  }
  return rows;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
  std::string out =
      "t,rho11,rho22,rho33,rho44,re_rho23,im_rho23,re_rho14,im_rho14,negativity,n23,n14\n";
  for (const CurveRow& r : rows) {
    const double cols[12] = {r.t,        r.rho11,    r.rho22,    r.rho33,
                             r.rho44,    r.re_rho23, r.im_rho23, r.re_rho14,
                             r.im_rho14, r.negativity, r.n23,    r.n14};
    for (int i = 0; i < 12; ++i) {
      if (i) out += ',';
      append_double(out, cols[i]);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f.good()) throw std::runtime_error("failed writing '" + path + "'");
}

int converge_cutoff(const std::function<std::vector<double>(int)>& negativity_curve, int start,
                    int step, int max_cutoff, double tol) {
  std::vector<double> prev = negativity_curve(start);
  for (int cutoff = start + step; cutoff <= max_cutoff; cutoff += step) {
    const std::vector<double> next = negativity_curve(cutoff);
    double dev = 0.0;
    for (std::size_t i = 0; i < prev.size(); ++i) dev = std::max(dev, std::abs(next[i] - prev[i]));
    if (dev < tol) return cutoff;
    prev = next;
  }
  throw capacity_error("cutoff search did not converge below " + std::to_string(max_cutoff));
}

CrosscheckReport crosscheck_scenario(const ScenarioConfig& c, double tolerance) {
  validate(c);
  const std::vector<double> ts = time_grid(c.sweep);

  std::vector<XState> closed;
  closed.reserve(ts.size());
  int cutoff = 0;
  std::unique_ptr<ReducedDensityEngine> engine;

  switch (c.kind) {
    case ScenarioKind::jc_pure:
    case ScenarioKind::m_photon: {
      const int m = c.kind == ScenarioKind::m_photon ? c.photon_order : 1;
      CondensateScenario s{c.n_particles, m, c.u1, c.u2, c.g1, c.g2, InitialQubitState::q00};
      for (double t : ts) closed.push_back(rho_condensate(s, t));
      cutoff = c.cutoff_override.value_or(std::max(1, c.n_particles + m));
      FockBasis basis = make_basis(3, cutoff);
      engine = std::make_unique<ReducedDensityEngine>(
          annihilation_power(basis, 0, c.g1, m), annihilation_power(basis, 1, c.g2, m),
          MixedBosonState(condensate_state(basis, c.n_particles, c.u1, c.u2)));
      break;
    }
    case ScenarioKind::jc_excited: {
      for (double t : ts) closed.push_back(rho_condensate_excited(c.u1, c.u2, c.g1, c.g2, t));
      cutoff = c.cutoff_override.value_or(3);
      FockBasis basis = make_basis(3, cutoff);
      engine = std::make_unique<ReducedDensityEngine>(
          annihilation_power(basis, 0, c.g1), annihilation_power(basis, 1, c.g2),
          MixedBosonState(condensate_state(basis, 1, c.u1, c.u2)), InitialQubitState::q11);
      break;
    }
    case ScenarioKind::bogoliubov: {
      BogoliubovScenario s{c.beta1, c.theta, c.g1, 0};
      for (double t : ts) closed.push_back(rho_bogoliubov(s, t));
      ScenarioConfig brute = c;
      brute.u1 = brute.u2 = complexd{kInvSqrt2, 0.0};
      brute.beta2 = brute.beta1;
      brute.g2 = brute.g1;
      brute.n_particles = 1;
      cutoff = c.cutoff_override ? *c.cutoff_override : beta_mixed_cutoff(brute);
      const BruteSetup setup = beta_mixed_setup(brute, cutoff);
      engine = std::make_unique<ReducedDensityEngine>(setup.f1, setup.f2, setup.rho);
      break;
    }
    case ScenarioKind::mixture: {
      const NumberDistribution dist = distribution_from(c);
      for (double t : ts) closed.push_back(rho_mixture(dist, c.u1, c.u2, c.g1, c.g2, t));
      cutoff = c.cutoff_override.value_or(dist.max_n() + 1);
      FockBasis basis = make_basis(3, cutoff);
      std::vector<MixedBosonState::Component> comps;
      for (int n = 0; n <= dist.max_n(); ++n) {
        const double w = dist.weights()[static_cast<std::size_t>(n)];
        if (w == 0.0) continue;
        comps.push_back({w, condensate_state(basis, n, c.u1, c.u2)});
      }
      engine = std::make_unique<ReducedDensityEngine>(annihilation_power(basis, 0, c.g1),
                                                      annihilation_power(basis, 1, c.g2),
                                                      MixedBosonState(std::move(comps)));
      break;
    }
    case ScenarioKind::su2_pair:
    case ScenarioKind::two_mode: {
      Eigen::Vector3cd b1, b2;
      su2_vectors(c, b1, b2);
      const int n1 = c.kind == ScenarioKind::su2_pair ? 1 : c.two_mode_n1;
      const int n2 = c.kind == ScenarioKind::su2_pair ? 1 : c.two_mode_n2;
      if (c.kind == ScenarioKind::su2_pair) {
        SU2PairScenario s{c.theta, c.eta, c.g1, c.g2};
        for (double t : ts) closed.push_back(rho_su2_pair(s, t));
      } else {
        TwoModeScenario s{n1, n2, b1, b2, c.g1, c.g2};
        for (double t : ts) closed.push_back(rho_two_mode(s, t));
      }
      cutoff = c.cutoff_override.value_or(n1 + n2 + 1);
      FockBasis basis = make_basis(3, std::max(cutoff, 1));
      std::vector<ModeOccupancy> groups;
      if (n1 > 0) groups.push_back({b1, n1});
      if (n2 > 0) groups.push_back({b2, n2});
      StateVector phi = groups.empty() ? vacuum_state(basis) : product_state(basis, groups);
      engine = std::make_unique<ReducedDensityEngine>(annihilation_power(basis, 0, c.g1),
                                                      annihilation_power(basis, 1, c.g2),
                                                      MixedBosonState(std::move(phi)));
      break;
    }
    case ScenarioKind::beta_mixed:
    case ScenarioKind::perturbative:
      throw config_error("scenario '" + to_string(c.kind) +
                         "' has no closed-form path to check against");
  }

  CrosscheckReport report;
  report.tolerance = tolerance;
  report.cutoff_used = cutoff;
  static const char* names[8] = {"rho11",    "rho22",    "rho33",    "rho44",
                                 "re_rho23", "im_rho23", "re_rho14", "im_rho14"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const XState brute = to_x_state(engine->at(ts[i]));
    const XState& cf = closed[i];
    const double devs[8] = {std::abs(cf.rho11 - brute.rho11),
                            std::abs(cf.rho22 - brute.rho22),
                            std::abs(cf.rho33 - brute.rho33),
                            std::abs(cf.rho44 - brute.rho44),
                            std::abs(cf.rho23.real() - brute.rho23.real()),
                            std::abs(cf.rho23.imag() - brute.rho23.imag()),
                            std::abs(cf.rho14.real() - brute.rho14.real()),
                            std::abs(cf.rho14.imag() - brute.rho14.imag())};
    for (int k = 0; k < 8; ++k) {
      if (devs[k] > report.max_abs_deviation) {
        report.max_abs_deviation = devs[k];
        report.worst_t = ts[i];
        report.worst_entry = names[k];
      }
    }
  }
  report.pass = report.max_abs_deviation <= tolerance;
  return report;
}

BetaScanResult scan_beta(double beta_min, double beta_max, int steps) {
  if (steps < 1) throw config_error("scan-beta: steps must be >= 1");
  if (beta_min < 0.0 || beta_max >= 1.0 || beta_min >= beta_max)
    throw config_error("scan-beta: need 0 <= beta-min < beta-max < 1");

  const FockBasis basis = make_basis(2, 3);
  Eigen::VectorXcd phi(2);
  phi << complexd{kInvSqrt2, 0.0}, complexd{kInvSqrt2, 0.0};
  const StateVector psi = product_state(basis, {{phi, 1}});

  BetaScanResult result;
  result.analytic_threshold = beta_threshold();
  for (int k = 0; k <= steps; ++k) {
    const double beta = beta_min + (beta_max - beta_min) * static_cast<double>(k) / steps;
    const CouplingOperator f1 = linear_mix(basis, 0, 1.0, complexd{beta, 0.0});
    const CouplingOperator f2 = linear_mix(basis, 1, 1.0, complexd{beta, 0.0});
    const FourthOrderResult fo = fourth_order(correlators_exact(f1, f2, psi));
    result.rows.push_back({beta, fo.n23_coeff, fo.n14_coeff});
  }
  for (std::size_t i = 0; i + 1 < result.rows.size(); ++i) {
    if (result.rows[i].n23_coeff > 0.0 && result.rows[i + 1].n23_coeff <= 0.0) {
      result.sign_change_found = true;
      result.bracket_lo = result.rows[i].beta;
      result.bracket_hi = result.rows[i + 1].beta;
      break;
    }
  }
  return result;
}

std::string beta_scan_to_csv(const BetaScanResult& result) {
  std::string out = "beta,n23_coeff,n14_coeff\n";
  for (const auto& r : result.rows) {
    append_double(out, r.beta);
    out += ',';
    append_double(out, r.n23_coeff);
    out += ',';
    append_double(out, r.n14_coeff);
    out += '\n';
  }
  return out;
}

namespace {

void write_multi_curve(const std::string& path, const std::string& header,
                       const std::vector<double>& ts,
                       const std::vector<std::vector<double>>& columns) {
  std::string out = header;
  out += '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    append_double(out, ts[i]);
    for (const auto& col : columns) {
      out += ',';
      append_double(out, col[i]);
    }
    out += '\n';
  }
  write_file(path, out);
}

std::vector<double> negativity_column(const std::vector<CurveRow>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.negativity);
  return out;
}

}  // namespace

void write_figures(const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

  // one boson vs three, symmetric couplings pi/2
  {
    ScenarioConfig c = default_config(ScenarioKind::jc_pure);
    c.sweep = {6.0, 1200};
    const std::vector<double> ts = time_grid(c.sweep);
    c.n_particles = 1;
    const auto n1 = negativity_column(run_scenario(c));
    c.n_particles = 3;
    const auto n3 = negativity_column(run_scenario(c));
    write_multi_curve(path("fig2a.csv"), "t,negativity_N1,negativity_N3", ts, {n1, n3});
    c.n_particles = 2;
    const auto n2 = negativity_column(run_scenario(c));
    c.n_particles = 4;
    const auto n4 = negativity_column(run_scenario(c));
    write_multi_curve(path("fig2b.csv"), "t,negativity_N2,negativity_N4", ts, {n2, n4});
  }
  // two-photon flips at unit coupling
  {
    ScenarioConfig c = default_config(ScenarioKind::m_photon);
    c.photon_order = 2;
    c.g1 = c.g2 = 1.0;
    c.sweep = {10.0, 2000};
    const std::vector<double> ts = time_grid(c.sweep);
    c.n_particles = 2;
    const auto n2 = negativity_column(run_scenario(c));
    c.n_particles = 3;
    const auto n3 = negativity_column(run_scenario(c));
    write_multi_curve(path("fig3a.csv"), "t,negativity_N2_m2,negativity_N3_m2", ts, {n2, n3});
  }
  // qubits starting excited
  {
    ScenarioConfig c = default_config(ScenarioKind::jc_excited);
    c.sweep = {14.0, 2800};
    write_multi_curve(path("fig3b.csv"), "t,negativity",
                      time_grid(c.sweep), {negativity_column(run_scenario(c))});
  }
  // mixing strengths beta = 0, 0.5, 0.7 at unit coupling
  {
    ScenarioConfig c = default_config(ScenarioKind::bogoliubov);
    c.g1 = 1.0;
    c.sweep = {6.0, 1200};
    const std::vector<double> ts = time_grid(c.sweep);
    std::vector<std::vector<double>> cols;
    for (double beta : {0.0, 0.5, 0.7}) {
      c.beta1 = c.beta2 = beta;
      cols.push_back(negativity_column(run_scenario(c)));
    }
    write_multi_curve(path("fig4.csv"), "t,negativity_beta0,negativity_beta05,negativity_beta07",
                      ts, cols);
  }
  // SU(2) pair vs two bosons in one state, mismatched couplings
  {
    ScenarioConfig su2 = default_config(ScenarioKind::su2_pair);
    su2.sweep = {8.0, 1600};
    const std::vector<double> ts = time_grid(su2.sweep);
    const auto pair_curve = negativity_column(run_scenario(su2));
    ScenarioConfig cond = default_config(ScenarioKind::jc_pure);
    cond.n_particles = 2;
    cond.g1 = su2.g1;
    cond.g2 = su2.g2;
    cond.sweep = su2.sweep;
    const auto cond_curve = negativity_column(run_scenario(cond));
    write_multi_curve(path("fig5.csv"), "t,negativity_su2,negativity_condensate", ts,
                      {pair_curve, cond_curve});
  }
}

}  // namespace qbt
