#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swf/metrics.hpp"
#include "swf/solver.hpp"
#include "swf/types.hpp"

namespace swf {

enum class Experiment { ratio_sweep, misspec_sweep, sparsity_sweep, noise_sweep, single };
enum class SolverKind { swf, wf_baseline };

/// How the sparsity prior handed to the solver is chosen at each sweep
/// point. misspec_sweep ignores this and takes the prior from the axis.
struct KPriorRule {
  enum class Kind { exact, fixed, sqrt_n };
  Kind kind = Kind::exact;
  int value = 0;

  static KPriorRule exact() { return {Kind::exact, 0}; }
  static KPriorRule fixed(int v) { return {Kind::fixed, v}; }
  static KPriorRule sqrt_n() { return {Kind::sqrt_n, 0}; }
};

struct SolverSettings {
  double alpha_y = 3.0;
  int max_iters = 1000;
  double tol = 1e-7;
  StepSchedule step = StepSchedule::varying();
  int power_iters = 100;
};

/// A full experiment campaign. The axis meaning depends on the experiment:
/// m/n ratios (ratio_sweep, single), prior sparsity (misspec_sweep), true
/// sparsity (sparsity_sweep), or SNR in dB (noise_sweep, +inf = noiseless).
struct SweepSpec {
  Experiment experiment = Experiment::ratio_sweep;
  int n = 1000;
  int true_k = 10;
  KPriorRule k_prior_rule = KPriorRule::exact();
  std::vector<double> axis_values;
  int trials_per_point = 100;
  std::uint64_t master_seed = 1;
  SolverKind solver = SolverKind::swf;
  std::vector<double> snr_db;  // mirrors axis_values for noise sweeps
  SolverSettings settings;
  bool resample_x = false;       // fresh x per trial instead of per sweep
  bool record_wall_time = true;  // false zeroes the timing column (deterministic output)
};

struct SweepRow {
  double axis_value = 0.0;
  double recovery_rate = 0.0;
  double mean_nmse = 0.0;
  double mean_iterations = 0.0;
  double mean_wall_time_s = 0.0;
  int trials = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// Everything a single trial needs, resolved from the spec and one axis
/// value: problem sizes, the solver's prior, and the noise level.
struct TrialPoint {
  double axis = 0.0;
  int m = 0;
  int k_true = 0;
  int k_prior = 0;
  double snr_db = 0.0;
  bool noisy = false;
};

TrialPoint resolve_point(const SweepSpec& spec, int axis_index);

/// Runs one seeded trial. Deterministic in (spec, axis_index, trial_index)
/// except for wall_time_s, which measures the solve call.
TrialOutcome run_trial(const SweepSpec& spec, int axis_index, int trial_index);

/// Runs all points of the sweep. Trials of a point may execute on several
/// workers; results are merged by trial index, so the table does not
/// depend on the worker count.
SweepTable run_sweep(const SweepSpec& spec, int workers = 1);

SweepTable ratio_sweep(const SweepSpec& spec, int workers = 1);
SweepTable misspec_sweep(const SweepSpec& spec, int workers = 1);
SweepTable sparsity_sweep(const SweepSpec& spec, int workers = 1);
SweepTable noise_sweep(const SweepSpec& spec, int workers = 1);

/// Writes the CSV table (17 significant digits) plus a sidecar manifest
/// at <path>.manifest.json recording the full spec, seed derivation, and
/// the SNR definition.
void emit_results(const SweepTable& table, const SweepSpec& spec, const std::string& path);

void write_csv(std::ostream& out, const SweepTable& table);
SweepTable parse_results(const std::string& path);

std::string manifest_path_for(const std::string& csv_path);
SweepSpec spec_from_manifest(const std::string& manifest_path);

const char* to_string(Experiment e);
const char* to_string(SolverKind s);
Experiment experiment_from_string(const std::string& s);
SolverKind solver_kind_from_string(const std::string& s);

}  // namespace swf
