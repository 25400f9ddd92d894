#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbt/closed_form.hpp"

namespace qbt {

enum class ScenarioKind {
  jc_pure,      // N bosons in one state, couplings g_i a_i, qubits from |00>
  jc_excited,   // one boson, qubits from |11>
  m_photon,     // couplings g_i a_i^m
  beta_mixed,   // couplings g_i (a_i + beta_i a_i†), brute force with auto-cutoff
  bogoliubov,   // symmetric a + beta a† case summed in closed form
  two_mode,     // N1 + N2 bosons in two orthonormal states
  su2_pair,     // two bosons in an SU(2)-rotated orthonormal pair
  mixture,      // number mixture sum_N p_N |N><N|
  perturbative, // exact rows with fourth-order indicator columns
};

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string& name);

struct SweepSpec {
  double t_max = 6.0;
  int t_steps = 600;  // rows = t_steps + 1, including t = 0
};

/// Flat scenario configuration. Fields irrelevant to the selected scenario are
/// ignored. Validation happens before any computation starts.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::jc_pure;
  int n_particles = 1;       // N (jc-pure, m-photon, beta-mixed, perturbative)
  int photon_order = 1;      // m
  complexd u1{1.0 / std::sqrt(2.0), 0.0};
  complexd u2{1.0 / std::sqrt(2.0), 0.0};
  double g1 = 1.0;
  double g2 = 1.0;
  double beta1 = 0.5;        // beta-mixed / bogoliubov / perturbative
  double beta2 = 0.5;
  double theta = 0.0;        // mixing phase (bogoliubov) or SU(2) angle (su2-pair, two-mode default)
  double eta = 0.0;
  // mixture distribution: "point" | "binomial" | "poisson" | "geometric"
  std::string distribution = "binomial";
  int binomial_m = 4;
  double binomial_p = 0.5;
  double lambda = 1.0;
  double z = 0.5;
  // two-mode occupied states over (mode 1, mode 2, spectator)
  int two_mode_n1 = 1;
  int two_mode_n2 = 1;
  Eigen::Vector3cd phi_b1 = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd phi_b2 = Eigen::Vector3cd::Zero();
  bool phi_b_set = false;  // when false, an SU(2) pair at `theta`/`eta` is used
  SweepSpec sweep;
  std::optional<int> cutoff_override;
};

ScenarioConfig default_config(ScenarioKind kind);
/// Parses a flat key-value JSON document; unknown keys are rejected.
ScenarioConfig config_from_json(const std::string& json_text);
/// Throws config_error naming the violated invariant.
void validate(const ScenarioConfig& config);

struct CurveRow {
  double t;
  double rho11, rho22, rho33, rho44;
  double re_rho23, im_rho23;
  double re_rho14, im_rho14;
  double negativity;
  double n23, n14;
};

std::vector<CurveRow> run_scenario(const ScenarioConfig& config);
/// Fixed 12-column header, comma separator, 17 significant digits, LF endings.
std::string curve_to_csv(const std::vector<CurveRow>& rows);
void write_file(const std::string& path, const std::string& contents);

struct CrosscheckReport {
  double max_abs_deviation = 0.0;
  double worst_t = 0.0;
  std::string worst_entry;
  double tolerance = 0.0;
  bool pass = false;
  int cutoff_used = 0;
};

/// Closed-form vs brute-force comparison over the configured sweep.
/// Scenarios without a closed-form path are rejected.
CrosscheckReport crosscheck_scenario(const ScenarioConfig& config, double tolerance);

struct BetaScanRow {
  double beta;
  double n23_coeff;
  double n14_coeff;
};

struct BetaScanResult {
  std::vector<BetaScanRow> rows;
  bool sign_change_found = false;
  double bracket_lo = 0.0;  // last beta with positive n23 coefficient
  double bracket_hi = 0.0;  // first beta with negative n23 coefficient
  double analytic_threshold = 0.0;
};

/// Sweeps the symmetric mixing parameter and brackets where the fourth-order
/// n23 indicator changes sign; the correlators are evaluated exactly.
BetaScanResult scan_beta(double beta_min, double beta_max, int steps);
std::string beta_scan_to_csv(const BetaScanResult& result);

/// Emits the data behind the survey figures under fixed names
/// (fig2a.csv ... fig5.csv) in `out_dir`.
void write_figures(const std::string& out_dir);

/// Smallest cutoff at which the negativity curve stops moving: increases the
/// cutoff in steps until successive curves differ by less than `tol`
/// everywhere on the grid.
int converge_cutoff(const std::function<std::vector<double>(int)>& negativity_curve, int start,
                    int step, int max_cutoff, double tol = 1e-8);

/// Negativity and indicators of one state as a curve row.
CurveRow make_row(double t, const XState& x);
CurveRow make_row(double t, const TwoQubitState& state);

}  // namespace qbt
