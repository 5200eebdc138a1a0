#include "swf/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "swf/model.hpp"
#include "swf/random.hpp"

namespace swf {

namespace {

constexpr const char* kManifestFormat = "swf-sweep-manifest/1";
constexpr const char* kSnrDefinition =
    "SNR_dB = 10*log10(mean_i (a_i.x)^4 / sigma^2); sigma is the standard "
    "deviation of the additive Gaussian intensity noise";
constexpr const char* kSeedDerivation =
    "trial_seed = splitmix64 chain over (master_seed, experiment, axis_index, "
    "trial_index); signal seed drops the trial (and axis, except for sparsity "
    "sweeps) components unless resample_x; per-purpose streams are tagged "
    "inside the samplers";

std::uint64_t experiment_tag(Experiment e) {
  switch (e) {
    case Experiment::ratio_sweep: return 0x72617469756f5f31ull;
    case Experiment::misspec_sweep: return 0x6d697373706563ull;
    case Experiment::sparsity_sweep: return 0x7370617273697479ull;
    case Experiment::noise_sweep: return 0x6e6f6973655f3131ull;
    case Experiment::single: return 0x73696e676c655f31ull;
  }
  throw std::invalid_argument("unknown experiment");
}

bool is_integral_value(double v) { return std::isfinite(v) && v == std::floor(v); }

void validate_spec(const SweepSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("sweep: n must be >= 1");
  if (spec.true_k < 1 || spec.true_k > spec.n)
    throw std::invalid_argument("sweep: need 1 <= true_k <= n");
  if (spec.trials_per_point < 1)
    throw std::invalid_argument("sweep: trials_per_point must be >= 1");
  if (spec.axis_values.empty()) throw std::invalid_argument("sweep: empty axis");
  for (std::size_t i = 1; i < spec.axis_values.size(); ++i)
    if (!(spec.axis_values[i] > spec.axis_values[i - 1]))
      throw std::invalid_argument("sweep: axis values must be strictly increasing");
  if (spec.k_prior_rule.kind == KPriorRule::Kind::fixed &&
      (spec.k_prior_rule.value < 1 || spec.k_prior_rule.value > spec.n))
    throw std::invalid_argument("sweep: fixed k_prior out of range");

  for (double a : spec.axis_values) {
    switch (spec.experiment) {
      case Experiment::ratio_sweep:
      case Experiment::single:
        if (!(a > 0.0) || !std::isfinite(a))
          throw std::invalid_argument("sweep: m/n ratio must be positive and finite");
        break;
      case Experiment::misspec_sweep:
        if (!is_integral_value(a) || a < 1.0 || a > spec.n)
          throw std::invalid_argument("sweep: prior sparsity axis must be integers in [1, n]");
        break;
      case Experiment::sparsity_sweep:
        if (!is_integral_value(a) || a < 1.0 || a > spec.n)
          throw std::invalid_argument("sweep: sparsity axis must be integers in [1, n]");
        break;
      case Experiment::noise_sweep:
        break;  // SNR in dB; any real, +inf = noiseless
    }
  }
}

int resolve_k_prior(const SweepSpec& spec, int k_true) {
  switch (spec.k_prior_rule.kind) {
    case KPriorRule::Kind::exact: return k_true;
    case KPriorRule::Kind::fixed: return spec.k_prior_rule.value;
    case KPriorRule::Kind::sqrt_n:
      return static_cast<int>(std::llround(std::sqrt(static_cast<double>(spec.n))));
  }
  throw std::invalid_argument("unknown k_prior rule");
}

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TrialPoint resolve_point(const SweepSpec& spec, int axis_index) {
  if (axis_index < 0 || axis_index >= static_cast<int>(spec.axis_values.size()))
    throw std::invalid_argument("resolve_point: axis index out of range");
  const double axis = spec.axis_values[axis_index];
  TrialPoint p;
  p.axis = axis;
  p.k_true = spec.true_k;
  switch (spec.experiment) {
    case Experiment::ratio_sweep:
    case Experiment::single:
      p.m = static_cast<int>(std::llround(axis * spec.n));
      if (!spec.snr_db.empty()) {
        p.snr_db = spec.snr_db.front();
        p.noisy = std::isfinite(p.snr_db);
      }
      break;
    case Experiment::misspec_sweep:
      p.m = spec.n;
      break;
    case Experiment::sparsity_sweep:
      p.m = static_cast<int>(std::llround(1.5 * spec.n));
      p.k_true = static_cast<int>(axis);
      break;
    case Experiment::noise_sweep:
      p.m = static_cast<int>(std::llround(1.5 * spec.n));
      p.snr_db = axis;
      p.noisy = std::isfinite(axis);
      break;
  }
  if (p.m < 1) throw std::invalid_argument("resolve_point: axis implies an empty ensemble");
  p.k_prior = spec.experiment == Experiment::misspec_sweep
                  ? static_cast<int>(axis)
                  : resolve_k_prior(spec, p.k_true);
  if (p.k_prior < 1 || p.k_prior > spec.n)
    throw std::invalid_argument("resolve_point: resolved k_prior out of range");
  return p;
}

TrialOutcome run_trial(const SweepSpec& spec, int axis_index, int trial_index) {
  validate_spec(spec);
  if (trial_index < 0) throw std::invalid_argument("run_trial: negative trial index");
  const TrialPoint point = resolve_point(spec, axis_index);
  const std::uint64_t tag = experiment_tag(spec.experiment);

  const std::uint64_t trial_seed =
      seed_chain({spec.master_seed, tag, static_cast<std::uint64_t>(axis_index),
                  static_cast<std::uint64_t>(trial_index)});
  // The signal seed ignores the trial (and, unless the axis changes the
  // signal law, the axis) so one x is shared across a sweep by default.
  const bool x_per_point = spec.experiment == Experiment::sparsity_sweep;
  const std::uint64_t x_seed =
      spec.resample_x
          ? trial_seed
          : seed_chain({spec.master_seed, tag,
                        x_per_point ? static_cast<std::uint64_t>(axis_index) : 0});

  const SignalVector x = sample_sparse_signal(spec.n, point.k_true, x_seed);
  const Matrix A = sample_measurement_vectors(spec.n, point.m, trial_seed);
  const double sigma = point.noisy ? sigma_for_snr(x, A, point.snr_db) : 0.0;
  const MeasurementEnsemble ens = measure(x, A, sigma, trial_seed);

  SwfConfig config;
  config.k_prior = point.k_prior;
  config.alpha_y = spec.settings.alpha_y;
  config.max_iters = spec.settings.max_iters;
  config.tol = spec.settings.tol;
  config.step = spec.settings.step;
  config.power_iters = spec.settings.power_iters;
  config.rng_seed = trial_seed;
  config.record_trace = false;

  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult result = spec.solver == SolverKind::swf
                                 ? swf_solve(ens.vectors, ens.intensities, config)
                                 : wf_solve_baseline(ens.vectors, ens.intensities, config);
  const auto t1 = std::chrono::steady_clock::now();

  TrialOutcome out;
  out.nmse = nmse(result.estimate, x.values);
  out.success = classify_success(out.nmse);
  out.iterations = result.iterations_run;
  out.wall_time_s =
      spec.record_wall_time ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
  out.seed = trial_seed;
  return out;
}

namespace {

SweepRow aggregate_point(const SweepSpec& spec, int axis_index,
                         const std::vector<TrialOutcome>& outcomes) {
  SweepRow row;
  row.axis_value = spec.axis_values[axis_index];
  row.trials = static_cast<int>(outcomes.size());
  int successes = 0;
  double nmse_sum = 0.0, iter_sum = 0.0, time_sum = 0.0;
  for (const TrialOutcome& o : outcomes) {
    successes += o.success ? 1 : 0;
    nmse_sum += o.nmse;
    iter_sum += o.iterations;
    time_sum += o.wall_time_s;
  }
  row.recovery_rate = static_cast<double>(successes) / row.trials;
  row.mean_nmse = nmse_sum / row.trials;
  row.mean_iterations = iter_sum / row.trials;
  row.mean_wall_time_s = time_sum / row.trials;
  return row;
}

std::vector<TrialOutcome> run_point(const SweepSpec& spec, int axis_index, int workers) {
  const int trials = spec.trials_per_point;
  std::vector<TrialOutcome> outcomes(trials);
  if (workers <= 1) {
    for (int i = 0; i < trials; ++i) outcomes[i] = run_trial(spec, axis_index, i);
    return outcomes;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= trials || failed.load()) return;
      try {
        outcomes[i] = run_trial(spec, axis_index, i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(workers, trials);
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return outcomes;
}

void require_kind(const SweepSpec& spec, Experiment expected, const char* who) {
  if (spec.experiment != expected)
    throw std::invalid_argument(std::string(who) + ": spec built for a different experiment");
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, int workers) {
  validate_spec(spec);
  SweepTable table;
  table.rows.reserve(spec.axis_values.size());
  for (int ai = 0; ai < static_cast<int>(spec.axis_values.size()); ++ai)
    table.rows.push_back(aggregate_point(spec, ai, run_point(spec, ai, workers)));
  return table;
}

SweepTable ratio_sweep(const SweepSpec& spec, int workers) {
  require_kind(spec, Experiment::ratio_sweep, "ratio_sweep");
  return run_sweep(spec, workers);
}

SweepTable misspec_sweep(const SweepSpec& spec, int workers) {
  require_kind(spec, Experiment::misspec_sweep, "misspec_sweep");
  return run_sweep(spec, workers);
}

SweepTable sparsity_sweep(const SweepSpec& spec, int workers) {
  require_kind(spec, Experiment::sparsity_sweep, "sparsity_sweep");
  return run_sweep(spec, workers);
}

SweepTable noise_sweep(const SweepSpec& spec, int workers) {
  require_kind(spec, Experiment::noise_sweep, "noise_sweep");
  if (spec.snr_db.empty())
    throw std::invalid_argument("noise_sweep: snr_db list must be provided");
  return run_sweep(spec, workers);
}

void write_csv(std::ostream& out, const SweepTable& table) {
  out << "axis,recovery_rate,mean_nmse,mean_iterations,mean_wall_time_s,trials\n";
  for (const SweepRow& r : table.rows) {
    out << fmt_g17(r.axis_value) << ',' << fmt_g17(r.recovery_rate) << ','
        << fmt_g17(r.mean_nmse) << ',' << fmt_g17(r.mean_iterations) << ','
        << fmt_g17(r.mean_wall_time_s) << ',' << r.trials << '\n';
  }
}

namespace {

nlohmann::ordered_json axis_to_json(const std::vector<double>& values) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (double v : values) {
    if (std::isfinite(v))
      arr.push_back(v);
    else
      arr.push_back(v > 0 ? "inf" : "-inf");  // JSON has no infinities
  }
  return arr;
}

std::vector<double> axis_from_json(const nlohmann::json& arr) {
  std::vector<double> values;
  for (const auto& v : arr) {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      values.push_back(s == "-inf" ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity());
    } else {
      values.push_back(v.get<double>());
    }
  }
  return values;
}

std::string k_prior_rule_to_string(const KPriorRule& rule) {
  switch (rule.kind) {
    case KPriorRule::Kind::exact: return "exact";
    case KPriorRule::Kind::sqrt_n: return "sqrt-n";
    case KPriorRule::Kind::fixed: return "fixed:" + std::to_string(rule.value);
  }
  throw std::invalid_argument("unknown k_prior rule");
}

KPriorRule k_prior_rule_from_string(const std::string& s) {
  if (s == "exact") return KPriorRule::exact();
  if (s == "sqrt-n") return KPriorRule::sqrt_n();
  if (s.rfind("fixed:", 0) == 0) return KPriorRule::fixed(std::stoi(s.substr(6)));
  throw std::invalid_argument("bad k_prior rule: " + s);
}

std::string step_to_string(const StepSchedule& step) {
  if (step.kind == StepSchedule::Kind::paper_varying) return "paper";
  return fmt_g17(step.mu);
}

StepSchedule step_from_string(const std::string& s) {
  if (s == "paper") return StepSchedule::varying();
  return StepSchedule::constant(std::stod(s));
}

}  // namespace

std::string manifest_path_for(const std::string& csv_path) {
  return csv_path + ".manifest.json";
}

void emit_results(const SweepTable& table, const SweepSpec& spec, const std::string& path) {
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_results: cannot open " + path);
    write_csv(out, table);
    if (!out) throw std::runtime_error("emit_results: write failed for " + path);
  }

  nlohmann::ordered_json man;
  man["format"] = kManifestFormat;
  man["solver_version"] = kVersion;
  man["experiment"] = to_string(spec.experiment);
  man["n"] = spec.n;
  man["true_k"] = spec.true_k;
  man["k_prior_rule"] = k_prior_rule_to_string(spec.k_prior_rule);
  man["axis_values"] = axis_to_json(spec.axis_values);
  man["trials_per_point"] = spec.trials_per_point;
  man["master_seed"] = spec.master_seed;
  man["solver"] = to_string(spec.solver);
  man["snr_db"] = axis_to_json(spec.snr_db);
  man["alpha_y"] = spec.settings.alpha_y;
  man["max_iters"] = spec.settings.max_iters;
  man["tol"] = spec.settings.tol;
  man["step"] = step_to_string(spec.settings.step);
  man["power_iters"] = spec.settings.power_iters;
  man["resample_x"] = spec.resample_x;
  man["record_wall_time"] = spec.record_wall_time;
  man["snr_definition"] = kSnrDefinition;
  man["seed_derivation"] = kSeedDerivation;

  const std::string mpath = manifest_path_for(path);
  std::ofstream mout(mpath);
  if (!mout) throw std::runtime_error("emit_results: cannot open " + mpath);
  mout << man.dump(2) << '\n';
  if (!mout) throw std::runtime_error("emit_results: write failed for " + mpath);
}

SweepTable parse_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_results: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line != "axis,recovery_rate,mean_nmse,mean_iterations,mean_wall_time_s,trials")
    throw std::runtime_error("parse_results: bad header in " + path);
  SweepTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6)
      throw std::runtime_error("parse_results: bad row in " + path + ": " + line);
    SweepRow r;
    r.axis_value = std::stod(fields[0]);
    r.recovery_rate = std::stod(fields[1]);
    r.mean_nmse = std::stod(fields[2]);
    r.mean_iterations = std::stod(fields[3]);
    r.mean_wall_time_s = std::stod(fields[4]);
    r.trials = std::stoi(fields[5]);
    table.rows.push_back(r);
  }
  return table;
}

SweepSpec spec_from_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("spec_from_manifest: cannot open " + manifest_path);
  nlohmann::json man = nlohmann::json::parse(in);
  if (man.at("format").get<std::string>() != kManifestFormat)
    throw std::runtime_error("spec_from_manifest: unknown manifest format");
  SweepSpec spec;
  spec.experiment = experiment_from_string(man.at("experiment").get<std::string>());
  spec.n = man.at("n").get<int>();
  spec.true_k = man.at("true_k").get<int>();
  spec.k_prior_rule = k_prior_rule_from_string(man.at("k_prior_rule").get<std::string>());
  spec.axis_values = axis_from_json(man.at("axis_values"));
  spec.trials_per_point = man.at("trials_per_point").get<int>();
  spec.master_seed = man.at("master_seed").get<std::uint64_t>();
  spec.solver = solver_kind_from_string(man.at("solver").get<std::string>());
  spec.snr_db = axis_from_json(man.at("snr_db"));
  spec.settings.alpha_y = man.at("alpha_y").get<double>();
  spec.settings.max_iters = man.at("max_iters").get<int>();
  spec.settings.tol = man.at("tol").get<double>();
  spec.settings.step = step_from_string(man.at("step").get<std::string>());
  spec.settings.power_iters = man.at("power_iters").get<int>();
  spec.resample_x = man.at("resample_x").get<bool>();
  spec.record_wall_time = man.at("record_wall_time").get<bool>();
  return spec;
}

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::ratio_sweep: return "ratio_sweep";
    case Experiment::misspec_sweep: return "misspec_sweep";
    case Experiment::sparsity_sweep: return "sparsity_sweep";
    case Experiment::noise_sweep: return "noise_sweep";
    case Experiment::single: return "single";
  }
  return "unknown";
}

const char* to_string(SolverKind s) {
  return s == SolverKind::swf ? "swf" : "wf";
}

Experiment experiment_from_string(const std::string& s) {
  if (s == "ratio_sweep") return Experiment::ratio_sweep;
  if (s == "misspec_sweep") return Experiment::misspec_sweep;
  if (s == "sparsity_sweep") return Experiment::sparsity_sweep;
  if (s == "noise_sweep") return Experiment::noise_sweep;
  if (s == "single") return Experiment::single;
  throw std::invalid_argument("bad experiment name: " + s);
}

SolverKind solver_kind_from_string(const std::string& s) {
  if (s == "swf") return SolverKind::swf;
  if (s == "wf") return SolverKind::wf_baseline;
  throw std::invalid_argument("bad solver name: " + s);
}

}  // namespace swf
