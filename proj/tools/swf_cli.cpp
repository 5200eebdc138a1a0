// Benchmark CLI: single solves and Monte-Carlo sweeps over the sparse
// Wirtinger flow solver, with CSV + manifest output.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swf/harness.hpp"

namespace {

struct CliOptions {
  int n = 1000;
  int k = 10;
  std::string k_prior = "exact";
  std::string axis;
  int trials = 100;
  std::uint64_t seed = 1;
  double alpha_y = 3.0;
  int max_iters = 1000;
  double tol = 1e-7;
  std::string step = "paper";
  std::string solver = "swf";
  std::string snr_db;
  std::string out;
  int workers = 1;
  bool resample_x = false;
  bool no_timing = false;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + token + "'");
    }
  }
  if (values.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
  return values;
}

swf::KPriorRule parse_k_prior(const std::string& s) {
  if (s == "exact") return swf::KPriorRule::exact();
  if (s == "sqrt-n") return swf::KPriorRule::sqrt_n();
  try {
    return swf::KPriorRule::fixed(std::stoi(s));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--k-prior must be 'exact', 'sqrt-n', or an integer");
  }
}

swf::StepSchedule parse_step(const std::string& s) {
  if (s == "paper") return swf::StepSchedule::varying();
  try {
    return swf::StepSchedule::constant(std::stod(s));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--step must be 'paper' or a real step size");
  }
}

void add_common_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--n", o.n, "Signal dimension");
  cmd->add_option("--k", o.k, "True sparsity of the generated signal");
  cmd->add_option("--k-prior", o.k_prior, "Prior sparsity rule: exact|sqrt-n|<int>");
  cmd->add_option("--trials", o.trials, "Monte-Carlo trials per sweep point");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--alpha-y", o.alpha_y, "Spectral truncation threshold");
  cmd->add_option("--max-iters", o.max_iters, "Iteration cap T");
  cmd->add_option("--tol", o.tol, "Stopping tolerance on ||z^t - z^{t-1}||");
  cmd->add_option("--step", o.step, "Step schedule: paper|<real>");
  cmd->add_option("--solver", o.solver, "Solver: swf|wf")
      ->check(CLI::IsMember({"swf", "wf"}));
  cmd->add_option("--out", o.out, "Output CSV path (manifest written alongside)");
  cmd->add_option("--workers", o.workers, "Worker threads for trials");
  cmd->add_flag("--resample-x", o.resample_x, "Fresh signal per trial instead of per sweep");
  cmd->add_flag("--no-timing", o.no_timing,
                "Zero the wall-time column for byte-reproducible output");
}

swf::SweepSpec build_spec(const CliOptions& o, swf::Experiment experiment,
                          const std::vector<double>& axis) {
  swf::SweepSpec spec;
  spec.experiment = experiment;
  spec.n = o.n;
  spec.true_k = o.k;
  spec.k_prior_rule = parse_k_prior(o.k_prior);
  spec.axis_values = axis;
  spec.trials_per_point = o.trials;
  spec.master_seed = o.seed;
  spec.solver = swf::solver_kind_from_string(o.solver);
  spec.settings.alpha_y = o.alpha_y;
  spec.settings.max_iters = o.max_iters;
  spec.settings.tol = o.tol;
  spec.settings.step = parse_step(o.step);
  spec.resample_x = o.resample_x;
  spec.record_wall_time = !o.no_timing;
  return spec;
}

void output_table(const swf::SweepTable& table, const swf::SweepSpec& spec,
                  const CliOptions& o) {
  if (o.out.empty()) {
    swf::write_csv(std::cout, table);
  } else {
    swf::emit_results(table, spec, o.out);
    std::cout << "wrote " << o.out << " and " << swf::manifest_path_for(o.out) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse Wirtinger flow phase retrieval benchmark"};
  app.require_subcommand(1);

  CliOptions o;

  CLI::App* solve = app.add_subcommand("solve", "Solve one random instance");
  add_common_options(solve, o);

  CLI::App* ratio = app.add_subcommand("sweep-ratio", "Recovery rate vs m/n ratio");
  add_common_options(ratio, o);

  CLI::App* misspec =
      app.add_subcommand("sweep-misspec", "Recovery rate vs prior sparsity at m = n");
  add_common_options(misspec, o);

  CLI::App* sparsity =
      app.add_subcommand("sweep-sparsity", "Recovery rate vs true sparsity at m = 1.5n");
  add_common_options(sparsity, o);

  CLI::App* noise = app.add_subcommand("sweep-noise", "Mean NMSE vs SNR at m = 1.5n");
  add_common_options(noise, o);

  std::string axis_text, snr_text;
  for (CLI::App* cmd : {solve, ratio, misspec, sparsity, noise}) {
    cmd->add_option("--axis", axis_text,
                    "Comma-separated axis values (m/n ratios, prior k, or true k)");
    cmd->add_option("--snr-db", snr_text, "Comma-separated SNR values in dB ('inf' = noiseless)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      std::vector<double> axis =
          axis_text.empty() ? std::vector<double>{1.0} : parse_list(axis_text, "--axis");
      if (axis.size() != 1)
        throw std::invalid_argument("solve: --axis must be a single m/n ratio");
      swf::SweepSpec spec = build_spec(o, swf::Experiment::single, axis);
      if (!snr_text.empty()) spec.snr_db = parse_list(snr_text, "--snr-db");
      // One instance unless the user explicitly asked for more trials.
      spec.trials_per_point = solve->count("--trials") ? o.trials : 1;
      const swf::TrialOutcome outcome = swf::run_trial(spec, 0, 0);
      std::printf("nmse=%.17g\n", outcome.nmse);
      std::printf("success=%s\n", outcome.success ? "true" : "false");
      std::printf("iterations=%d\n", outcome.iterations);
      std::printf("wall_time_s=%.6f\n", outcome.wall_time_s);
      std::printf("seed=%llu\n", static_cast<unsigned long long>(outcome.seed));
      if (!o.out.empty()) output_table(swf::run_sweep(spec, o.workers), spec, o);
      return 0;
    }

    swf::SweepSpec spec;
    swf::SweepTable table;
    if (ratio->parsed()) {
      spec = build_spec(o, swf::Experiment::ratio_sweep, parse_list(axis_text, "--axis"));
      table = swf::ratio_sweep(spec, o.workers);
    } else if (misspec->parsed()) {
      spec = build_spec(o, swf::Experiment::misspec_sweep, parse_list(axis_text, "--axis"));
      table = swf::misspec_sweep(spec, o.workers);
    } else if (sparsity->parsed()) {
      spec = build_spec(o, swf::Experiment::sparsity_sweep, parse_list(axis_text, "--axis"));
      table = swf::sparsity_sweep(spec, o.workers);
    } else if (noise->parsed()) {
      spec = build_spec(o, swf::Experiment::noise_sweep,
                        parse_list(snr_text.empty() ? axis_text : snr_text, "--snr-db"));
      spec.snr_db = spec.axis_values;
      table = swf::noise_sweep(spec, o.workers);
    }
    output_table(table, spec, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
