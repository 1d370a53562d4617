#pragma once

#include "psgb/instance.hpp"
#include "psgb/least_squares.hpp"
#include "psgb/solver.hpp"
#include "psgb/trace.hpp"
#include "psgb/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace psgb {

/// Solver knobs shared by the CLI and the suite runner.
struct SolveSettings {
  double lambda = 0.01;
  double mu = 0.01;
  TauPolicy tau_policy;
  double explicit_tau = 0.0;  // consulted when tau_policy is Explicit
  int max_iterations = 100;
  double rel_change_tol = 1e-6;
  double objective_target = -kInfinity;
  std::string x0 = "zeros";  // zeros | ones | neg-ones | randn | file:PATH
  std::uint64_t x0_seed = 0;  // seeds the randn start
  bool record_trace = true;
};

/// One CSV row of a benchmark run.
struct RunRecord {
  int n = 0, m = 0, s = 0, w = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double lambda = 0.0, mu = 0.0, tau = 0.0;
  std::string x0_label;
  std::string box_label;
  int iters = 0;
  double time_s = 0.0;
  double err = 0.0;
  double psnr = 0.0;
  double phi_final = 0.0;
  int support_changes = 0;
  TerminationStatus status = TerminationStatus::MaxIterations;
  bool success = false;  // err <= 0.05
};

std::string run_record_csv_header();
std::string to_csv_row(const RunRecord& record);

/// Writes a trace as "k,phi,step_norm,l0,l20" rows.
void write_trace_csv(const std::string& path, const SolveTrace& trace);

Vector make_x0(const std::string& kind, int n, std::uint64_t seed);

/// Solves one instance; the objective is passed in so repeated solves
/// reuse the cached smoothness constant. time_s covers the solve loop.
RunRecord run_with_objective(const ExperimentInstance& instance,
                             const LeastSquaresObjective& objective,
                             const SolveSettings& settings,
                             SolveTrace* trace_out = nullptr);

RunRecord run_one(const ExperimentInstance& instance, const SolveSettings& settings,
                  SolveTrace* trace_out = nullptr);

struct AutoRegChoice {
  double lambda = 0.0;
  double mu = 0.0;
  double pilot_err = 0.0;
};

/// Grid search for (lambda, mu) over {10^-4, 10^-3.5, ..., 1}^2 on a
/// pilot instance, minimizing the recovery error; mu_zero_only restricts
/// the search to mu = 0 (element-sparsity-only baseline).
AutoRegChoice auto_reg_search(const ExperimentInstance& pilot,
                              const LeastSquaresObjective& objective,
                              const SolveSettings& base, bool mu_zero_only = false);

struct SuiteConfig {
  std::string suite;  // dims | inits | boxes | group_sizes | sparsity

  // Shared instance shape; suites vary one axis and hold the rest.
  double m_ratio = 0.25;
  double sigma = 0.01;
  int group_width = 4;
  double sparsity_ratio = 0.05;
  double box_magnitude = 5.0;
  int n = 1000;

  std::vector<int> n_values;            // dims
  std::vector<std::string> x0_values;   // inits
  std::vector<double> box_magnitudes;   // boxes
  std::vector<int> group_widths;        // group_sizes
  std::vector<double> sparsity_ratios;  // boxes, sparsity

  int repetitions = 1;
  std::uint64_t base_seed = 1;
  SolveSettings settings;
  bool auto_reg = false;
  int threads = 1;
};

/// Runs every (configuration x repetition), audits each run, and writes
/// CSV rows in deterministic order. The sparsity suite emits a mu = 0
/// baseline row next to each group-penalized row. Returns the records.
std::vector<RunRecord> run_suite(const SuiteConfig& config,
                                 const std::string& output_path);

}  // namespace psgb
