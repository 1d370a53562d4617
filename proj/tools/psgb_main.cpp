#include "psgb/bench.hpp"
#include "psgb/instance.hpp"
#include "psgb/least_squares.hpp"
#include "psgb/metrics.hpp"
#include "psgb/model.hpp"
#include "psgb/prox.hpp"
#include "psgb/solver.hpp"
#include "psgb/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace psgb;

struct SolverFlags {
  double lambda = 0.01;
  double mu = 0.01;
  double tau = 0.0;  // explicit step; 0 means "use the fraction policy"
  double tau_frac = 0.99;
  int max_iter = 100;
  double rel_tol = 1e-6;
  double eps_target = -kInfinity;
  std::string x0 = "zeros";
  bool auto_reg = false;
};

void attach_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--lambda", flags.lambda, "Elementwise sparsity weight");
  cmd->add_option("--mu", flags.mu, "Group sparsity weight");
  auto* tau = cmd->add_option("--tau", flags.tau, "Explicit step size");
  auto* frac = cmd->add_option("--tau-frac", flags.tau_frac,
                               "Step size as a fraction of 1/L (default 0.99)");
  tau->excludes(frac);
  cmd->add_option("--max-iter", flags.max_iter, "Iteration cap (default 100)");
  cmd->add_option("--rel-tol", flags.rel_tol, "Relative-change tolerance (default 1e-6)");
  cmd->add_option("--eps-target", flags.eps_target,
                  "Stop when the smooth loss reaches this value (default disabled)");
  cmd->add_option("--x0", flags.x0, "zeros | ones | neg-ones | randn | file:PATH");
  cmd->add_flag("--auto-reg", flags.auto_reg,
                "Tune lambda, mu on a pilot by grid search over {1e-4..1}^2");
}

SolveSettings settings_from(const SolverFlags& flags) {
  SolveSettings settings;
  settings.lambda = flags.lambda;
  settings.mu = flags.mu;
  if (flags.tau > 0.0) {
    settings.tau_policy = TauPolicy::explicit_tau();
    settings.explicit_tau = flags.tau;
  } else {
    settings.tau_policy = TauPolicy::fraction_of_inverse_l(flags.tau_frac);
  }
  settings.max_iterations = flags.max_iter;
  settings.rel_change_tol = flags.rel_tol;
  settings.objective_target = flags.eps_target;
  settings.x0 = flags.x0;
  return settings;
}

BoxConstraint box_from_file(const std::string& path, int n) {
  const Vector values = read_text_vector(path);
  if (values.size() != 2 * n) {
    throw std::runtime_error("box file must hold 2n values (l block then u block)");
  }
  return BoxConstraint(values.head(n), values.tail(n));
}

int cmd_gen(int n, int m, int w, int s, double sigma, double box_mag,
            std::uint64_t seed, const std::string& from_vector,
            const std::string& out, bool m_set, bool w_set, bool s_set) {
  ExperimentInstance instance = [&] {
    if (!from_vector.empty()) {
      const Vector x_star = read_text_vector(from_vector);
      const int dim = static_cast<int>(x_star.size());
      const int width = w_set ? w : 3;
      const int rows = m_set ? m : std::max(1, dim / 6);
      return gen_from_vector(x_star, rows, width, sigma, box_mag, seed);
    }
    if (!m_set) m = std::max(1, n / 4);
    if (!s_set) s = std::max(w, static_cast<int>(std::lround(0.05 * n / w)) * w);
    return gen_e1(n, m, w, s, sigma, box_mag, seed);
  }();
  save_instance(out, instance);
  std::cout << "wrote " << out << " (n=" << instance.A.cols() << ", m=" << instance.A.rows()
            << ", w=" << instance.group_width << ", s=" << instance.element_sparsity
            << ", seed=" << instance.seed << ")\n";
  return 0;
}

int cmd_solve(const std::string& instance_path, const SolverFlags& flags,
              std::uint64_t seed, bool seed_set, double box_mag, bool box_set,
              const std::string& box_file, const std::string& trace_path,
              const std::string& out, bool no_header) {
  ExperimentInstance instance = load_instance(instance_path);
  const int n = static_cast<int>(instance.A.cols());
  if (box_set) instance.box = BoxConstraint::uniform(n, box_mag);
  if (!box_file.empty()) instance.box = box_from_file(box_file, n);

  LeastSquaresObjective objective(instance.A, instance.b);
  SolveSettings settings = settings_from(flags);
  settings.x0_seed = seed_set ? seed : instance.seed;
  settings.record_trace = true;

  if (flags.auto_reg) {
    const AutoRegChoice choice = auto_reg_search(instance, objective, settings);
    settings.lambda = choice.lambda;
    settings.mu = choice.mu;
    std::cerr << "auto-reg chose lambda=" << choice.lambda << " mu=" << choice.mu
              << " (pilot err " << choice.pilot_err << ")\n";
  }

  SolveTrace trace;
  const RunRecord record = run_with_objective(instance, objective, settings, &trace);
  if (!trace_path.empty()) write_trace_csv(trace_path, trace);

  if (out.empty()) {
    if (!no_header) std::cout << run_record_csv_header() << '\n';
    std::cout << to_csv_row(record) << '\n';
  } else {
    const bool fresh = !std::filesystem::exists(out) || std::filesystem::file_size(out) == 0;
    std::ofstream file(out, std::ios::app);
    if (!file) throw std::runtime_error("cannot open " + out + " for writing");
    if (fresh && !no_header) file << run_record_csv_header() << '\n';
    file << to_csv_row(record) << '\n';
  }
  return 0;
}

int cmd_prox(const std::string& in, double lambda, double mu, double tau, int w,
             double box_mag, bool box_set, const std::string& box_file,
             const std::string& out) {
  const Vector s = read_text_vector(in);
  const int n = static_cast<int>(s.size());
  BoxConstraint box = BoxConstraint::unbounded(n);
  if (box_set) box = BoxConstraint::uniform(n, box_mag);
  if (!box_file.empty()) box = box_from_file(box_file, n);
  const GroupPartition partition = GroupPartition::contiguous(n, w);
  const RegularizationParams params{lambda, mu, tau};

  const Vector x = prox_sparse_group(s, params, box, partition);
  const NormCounts counts = count_norms(x, partition);
  std::cerr << "l0=" << counts.l0 << " l20=" << counts.l20 << " psi="
            << 0.5 * (x - s).squaredNorm() + tau * (lambda * counts.l0 + mu * counts.l20)
            << '\n';
  if (out.empty()) {
    std::cout.precision(17);
    for (int i = 0; i < n; ++i) std::cout << x[i] << '\n';
  } else {
    write_text_vector(out, x);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-group l0-regularized least squares over box constraints"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic recovery instance");
  int g_n = 1000, g_m = 0, g_w = 4, g_s = 0;
  double g_sigma = 0.01, g_box = 5.0;
  std::uint64_t g_seed = 1;
  std::string g_out, g_from_vector;
  gen->add_option("--n", g_n, "Dimension (default 1000)");
  auto* g_m_opt = gen->add_option("--m", g_m, "Rows (default n/4)");
  auto* g_w_opt = gen->add_option("--w", g_w, "Group width (default 4; 3 with --from-vector)");
  auto* g_s_opt = gen->add_option("--s", g_s, "Nonzeros (default 0.05n rounded to w)");
  gen->add_option("--sigma", g_sigma, "Noise level (default 0.01)");
  gen->add_option("--box", g_box, "Box magnitude l = u (default 5)");
  gen->add_option("--seed", g_seed, "Generator seed");
  gen->add_option("--from-vector", g_from_vector, "Build around a ground-truth text vector");
  gen->add_option("--out", g_out, "Output instance file")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  std::string s_instance, s_trace, s_out, s_box_file;
  SolverFlags s_flags;
  double s_box = 0.0;
  std::uint64_t s_seed = 0;
  bool s_no_header = false;
  solve_cmd->add_option("instance", s_instance, "Instance file from gen")->required();
  attach_solver_flags(solve_cmd, s_flags);
  auto* s_seed_opt = solve_cmd->add_option("--seed", s_seed, "Seed for the randn start");
  auto* s_box_opt = solve_cmd->add_option("--box", s_box, "Override box magnitude");
  solve_cmd->add_option("--box-file", s_box_file, "Override box from file (l block, u block)");
  solve_cmd->add_option("--trace", s_trace, "Write per-iteration trace CSV");
  solve_cmd->add_option("--out", s_out, "Append the result row to this CSV");
  solve_cmd->add_flag("--no-header", s_no_header, "Suppress the CSV header");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  SuiteConfig suite;
  SolverFlags b_flags;
  std::string b_out;
  bench->add_option("--suite", suite.suite, "dims | inits | boxes | group_sizes | sparsity")
      ->required();
  bench->add_option("--out", b_out, "Output CSV path")->required();
  bench->add_option("--reps", suite.repetitions, "Repetitions per configuration");
  bench->add_option("--seed", suite.base_seed, "Base seed");
  bench->add_option("--n", suite.n, "Dimension for single-n suites");
  bench->add_option("--n-list", suite.n_values, "Dimensions for the dims suite")
      ->delimiter(',');
  auto* b_mratio = bench->add_option("--m-ratio", suite.m_ratio, "Rows as a fraction of n");
  auto* b_sigma = bench->add_option("--sigma", suite.sigma, "Noise level");
  bench->add_option("--w", suite.group_width, "Group width");
  bench->add_option("--w-list", suite.group_widths, "Widths for the group_sizes suite")
      ->delimiter(',');
  bench->add_option("--sparsity", suite.sparsity_ratio, "Nonzero fraction s/n");
  bench->add_option("--sparsity-list", suite.sparsity_ratios,
                    "Nonzero fractions for the boxes/sparsity suites")
      ->delimiter(',');
  bench->add_option("--box", suite.box_magnitude, "Box magnitude");
  bench->add_option("--box-list", suite.box_magnitudes, "Magnitudes for the boxes suite")
      ->delimiter(',');
  bench->add_option("--x0-list", suite.x0_values, "Starts for the inits suite")
      ->delimiter(',');
  bench->add_option("--threads", suite.threads, "Worker threads (default 1)");
  attach_solver_flags(bench, b_flags);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check operators on random instances");
  int v_trials = 200;
  std::uint64_t v_seed = 7;
  verify_cmd->add_option("--trials", v_trials, "Trials per family (default 200)");
  verify_cmd->add_option("--seed", v_seed, "Random seed");

  // prox
  auto* prox_cmd = app.add_subcommand("prox", "One-shot prox evaluation of a vector file");
  std::string p_in, p_out, p_box_file;
  double p_lambda = 0.01, p_mu = 0.01, p_tau = 1.0, p_box = 0.0;
  int p_w = 1;
  prox_cmd->add_option("--in", p_in, "Input text vector")->required();
  prox_cmd->add_option("--lambda", p_lambda, "Elementwise sparsity weight");
  prox_cmd->add_option("--mu", p_mu, "Group sparsity weight");
  prox_cmd->add_option("--tau", p_tau, "Step size scaling the penalties");
  prox_cmd->add_option("--w", p_w, "Group width (default 1)");
  auto* p_box_opt = prox_cmd->add_option("--box", p_box, "Box magnitude (default unbounded)");
  prox_cmd->add_option("--box-file", p_box_file, "Box from file (l block, u block)");
  prox_cmd->add_option("--out", p_out, "Output vector file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(g_n, g_m, g_w, g_s, g_sigma, g_box, g_seed, g_from_vector, g_out,
                     g_m_opt->count() > 0, g_w_opt->count() > 0, g_s_opt->count() > 0);
    }
    if (solve_cmd->parsed()) {
      return cmd_solve(s_instance, s_flags, s_seed, s_seed_opt->count() > 0, s_box,
                       s_box_opt->count() > 0, s_box_file, s_trace, s_out, s_no_header);
    }
    if (bench->parsed()) {
      // Suite-specific defaults mirroring the reference experiments.
      if (suite.suite == "dims" && suite.n_values.empty()) suite.n_values = {1000, 2000};
      if (suite.suite == "inits" && suite.x0_values.empty()) {
        suite.x0_values = {"zeros", "neg-ones", "ones", "randn"};
      }
      if (suite.suite == "boxes" && suite.box_magnitudes.empty()) {
        suite.box_magnitudes = {5.0, 6.0, 10.0};
      }
      if (suite.suite == "group_sizes" && suite.group_widths.empty()) {
        suite.group_widths = {2, 4, 8, 16};
      }
      if (suite.suite == "sparsity" && suite.sparsity_ratios.empty()) {
        suite.sparsity_ratios = {0.05, 0.10, 0.14};
      }
      if (b_mratio->count() == 0 &&
          (suite.suite == "boxes" || suite.suite == "group_sizes" ||
           suite.suite == "sparsity")) {
        suite.m_ratio = 0.5;
      }
      if (b_sigma->count() == 0 &&
          (suite.suite == "boxes" || suite.suite == "sparsity")) {
        suite.sigma = 0.001;
      }
      suite.settings = settings_from(b_flags);
      suite.auto_reg = b_flags.auto_reg;
      const auto records = run_suite(suite, b_out);
      int successes = 0;
      for (const auto& r : records) successes += r.success ? 1 : 0;
      std::cout << "wrote " << b_out << ": " << records.size() << " rows, " << successes
                << " successes\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      const VerificationReport report = run_verification(v_trials, v_seed, std::cout);
      std::cout << (report.ok() ? "all checks passed\n" : "FAILURES detected\n");
      return report.ok() ? 0 : 1;
    }
    if (prox_cmd->parsed()) {
      return cmd_prox(p_in, p_lambda, p_mu, p_tau, p_w, p_box, p_box_opt->count() > 0,
                      p_box_file, p_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
