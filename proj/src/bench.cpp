#include "psgb/bench.hpp"

#include "psgb/metrics.hpp"
#include "psgb/model.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

namespace psgb {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string box_label_of(const BoxConstraint& box) {
  const Vector& l = box.lower_magnitudes();
  const Vector& u = box.upper_magnitudes();
  const double first = l[0];
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l[i] != first || u[i] != first) return "custom";
  }
  return fmt17(first);
}

int round_to_multiple(double value, int multiple) {
  const int rounded = static_cast<int>(std::lround(value / multiple)) * multiple;
  return std::max(multiple, rounded);
}

}  // namespace

std::string run_record_csv_header() {
  return "n,m,s,w,sigma,seed,lambda,mu,tau,x0,box,iters,time_s,err,psnr,"
         "phi_final,support_changes,status,success";
}

std::string to_csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.n << ',' << r.m << ',' << r.s << ',' << r.w << ',' << fmt17(r.sigma) << ','
      << r.seed << ',' << fmt17(r.lambda) << ',' << fmt17(r.mu) << ',' << fmt17(r.tau)
      << ',' << r.x0_label << ',' << r.box_label << ',' << r.iters << ','
      << fmt17(r.time_s) << ',' << fmt17(r.err) << ',' << fmt17(r.psnr) << ','
      << fmt17(r.phi_final) << ',' << r.support_changes << ',' << to_string(r.status)
      << ',' << (r.success ? 1 : 0);
  return out.str();
}

void write_trace_csv(const std::string& path, const SolveTrace& trace) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "k,phi,step_norm,l0,l20\n";
  for (const IterateRecord& rec : trace.records) {
    out << rec.k << ',' << fmt17(rec.phi) << ',' << fmt17(rec.step_norm) << ','
        << rec.l0 << ',' << rec.l20 << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Vector make_x0(const std::string& kind, int n, std::uint64_t seed) {
  if (kind == "zeros") return Vector::Zero(n);
  if (kind == "ones") return Vector::Ones(n);
  if (kind == "neg-ones") return -Vector::Ones(n);
  if (kind == "randn") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = gauss(rng);
    return x;
  }
  if (kind.rfind("file:", 0) == 0) {
    Vector x = read_text_vector(kind.substr(5));
    if (x.size() != n) {
      throw std::invalid_argument("x0 file has " + std::to_string(x.size()) +
                                  " entries, expected " + std::to_string(n));
    }
    return x;
  }
  throw std::invalid_argument("unknown x0 kind: " + kind);
}

namespace {

SolverConfig config_from(const SolveSettings& settings) {
  SolverConfig config;
  config.params.lambda = settings.lambda;
  config.params.mu = settings.mu;
  config.tau_policy = settings.tau_policy;
  if (settings.tau_policy.kind == TauPolicy::Kind::Explicit) {
    config.params.tau = settings.explicit_tau;
  }
  config.rel_change_tol = settings.rel_change_tol;
  config.objective_target = settings.objective_target;
  config.max_iterations = settings.max_iterations;
  config.record_trace = settings.record_trace;
  return config;
}

}  // namespace

RunRecord run_with_objective(const ExperimentInstance& instance,
                             const LeastSquaresObjective& objective,
                             const SolveSettings& settings, SolveTrace* trace_out) {
  const int n = static_cast<int>(instance.A.cols());
  const SolverConfig config = config_from(settings);
  const Vector x0 = make_x0(settings.x0, n, settings.x0_seed);

  const auto start = std::chrono::steady_clock::now();
  SolveTrace trace = solve(objective, config, instance.box, instance.partition, x0);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunRecord record;
  record.n = n;
  record.m = static_cast<int>(instance.A.rows());
  record.s = instance.element_sparsity;
  record.w = instance.group_width;
  record.sigma = instance.sigma;
  record.seed = instance.seed;
  record.lambda = settings.lambda;
  record.mu = settings.mu;
  record.tau = trace.effective_tau;
  record.x0_label = settings.x0;
  record.box_label = box_label_of(instance.box);
  record.iters = trace.iterations;
  record.time_s = elapsed;
  record.err = metric_err(trace.final_iterate, instance.x_star);
  record.psnr = metric_psnr(trace.final_iterate, instance.x_star);
  record.phi_final = trace.phi_final;
  record.support_changes = trace.support_changes;
  record.status = trace.status;
  record.success = record.err <= 0.05;

  if (trace_out != nullptr) *trace_out = std::move(trace);
  return record;
}

RunRecord run_one(const ExperimentInstance& instance, const SolveSettings& settings,
                  SolveTrace* trace_out) {
  LeastSquaresObjective objective(instance.A, instance.b);
  return run_with_objective(instance, objective, settings, trace_out);
}

AutoRegChoice auto_reg_search(const ExperimentInstance& pilot,
                              const LeastSquaresObjective& objective,
                              const SolveSettings& base, bool mu_zero_only) {
  std::vector<double> grid;
  for (int e = -8; e <= 0; ++e) grid.push_back(std::pow(10.0, 0.5 * e));

  SolveSettings settings = base;
  settings.record_trace = false;

  AutoRegChoice best{0.0, 0.0, kInfinity};
  for (double lambda : grid) {
    const std::vector<double> mu_grid = mu_zero_only ? std::vector<double>{0.0} : grid;
    for (double mu : mu_grid) {
      settings.lambda = lambda;
      settings.mu = mu;
      const RunRecord record = run_with_objective(pilot, objective, settings);
      if (record.err < best.pilot_err) {
        best = {lambda, mu, record.err};
      }
    }
  }
  return best;
}

namespace {

struct SuiteTask {
  int n = 0, m = 0, s = 0, w = 0;
  double sigma = 0.0;
  double box_magnitude = 0.0;
  std::string x0 = "zeros";
  std::uint64_t seed = 0;
  double lambda = 0.0, mu = 0.0;
  int group_id = 0;  // tasks sharing a tuned (lambda, mu)
};

struct TaskGroup {
  bool mu_zero_only = false;
  std::vector<std::size_t> task_indices;
};

void audit_row(const ExperimentInstance& instance, const LeastSquaresObjective& objective,
               const SolveTrace& trace, const SolveSettings& settings) {
  const double L = objective.smoothness_constant();
  const double tau = trace.effective_tau;
  if (!(tau * L < 1.0) || trace.records.empty()) return;

  const auto decrease = verify_sufficient_decrease(trace, L, tau);
  if (!decrease.ok) {
    std::cerr << "warning: sufficient decrease violated at iteration "
              << decrease.first_violation << " (seed " << instance.seed << ")\n";
  }
  if (settings.lambda * tau > 0.0) {
    const DeltaBound delta = compute_delta(instance.box, settings.lambda, tau);
    const auto audit = support_change_audit(trace, delta, L, tau);
    if (!audit.within_bound || !audit.magnitudes_above_delta) {
      std::cerr << "warning: support-change audit failed (seed " << instance.seed
                << ", changes " << audit.change_count << ", bound " << audit.bound
                << ")\n";
    }
  }
  if (trace.status == TerminationStatus::RelativeChange) {
    RegularizationParams params{settings.lambda, settings.mu, tau};
    if (!check_tau_stationary(trace.final_iterate, objective, params, instance.box,
                              instance.partition, 1e-6)) {
      std::cerr << "warning: converged iterate is not stationary at 1e-6 (seed "
                << instance.seed << ")\n";
    }
  }
}

}  // namespace

std::vector<RunRecord> run_suite(const SuiteConfig& config,
                                 const std::string& output_path) {
  std::vector<SuiteTask> tasks;
  std::vector<TaskGroup> groups;

  const auto add_group = [&](bool mu_zero_only) {
    groups.push_back(TaskGroup{mu_zero_only, {}});
    return static_cast<int>(groups.size() - 1);
  };
  const auto push_task = [&](SuiteTask task) {
    task.lambda = config.settings.lambda;
    task.mu = task.group_id >= 0 && groups[task.group_id].mu_zero_only
                  ? 0.0
                  : config.settings.mu;
    groups[task.group_id].task_indices.push_back(tasks.size());
    tasks.push_back(std::move(task));
  };
  const auto shape_task = [&](int n, int w, double sparsity_ratio, double sigma,
                              double box_magnitude, const std::string& x0,
                              std::uint64_t seed, int group_id) {
    SuiteTask task;
    task.n = n;
    task.m = std::max(1, static_cast<int>(std::lround(config.m_ratio * n)));
    task.w = w;
    task.s = std::min(n, round_to_multiple(sparsity_ratio * n, w));
    task.sigma = sigma;
    task.box_magnitude = box_magnitude;
    task.x0 = x0;
    task.seed = seed;
    task.group_id = group_id;
    return task;
  };

  if (config.suite == "dims") {
    for (int n : config.n_values) {
      const int g = add_group(false);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        push_task(shape_task(n, config.group_width, config.sparsity_ratio, config.sigma,
                             config.box_magnitude, config.settings.x0,
                             config.base_seed + rep, g));
      }
    }
  } else if (config.suite == "inits") {
    const int g = add_group(false);
    for (const std::string& x0 : config.x0_values) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        push_task(shape_task(config.n, config.group_width, config.sparsity_ratio,
                             config.sigma, config.box_magnitude, x0,
                             config.base_seed + rep, g));
      }
    }
  } else if (config.suite == "boxes") {
    const std::vector<double> ratios = config.sparsity_ratios.empty()
                                           ? std::vector<double>{config.sparsity_ratio}
                                           : config.sparsity_ratios;
    for (double box : config.box_magnitudes) {
      for (double ratio : ratios) {
        const int g = add_group(false);
        for (int rep = 0; rep < config.repetitions; ++rep) {
          push_task(shape_task(config.n, config.group_width, ratio, config.sigma, box,
                               config.settings.x0, config.base_seed + rep, g));
        }
      }
    }
  } else if (config.suite == "group_sizes") {
    for (int w : config.group_widths) {
      const int g = add_group(false);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        push_task(shape_task(config.n, w, config.sparsity_ratio, config.sigma,
                             config.box_magnitude, config.settings.x0,
                             config.base_seed + rep, g));
      }
    }
  } else if (config.suite == "sparsity") {
    for (double ratio : config.sparsity_ratios) {
      const int g_sgb = add_group(false);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        push_task(shape_task(config.n, config.group_width, ratio, config.sigma,
                             config.box_magnitude, config.settings.x0,
                             config.base_seed + rep, g_sgb));
      }
      const int g_piht = add_group(true);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        push_task(shape_task(config.n, config.group_width, ratio, config.sigma,
                             config.box_magnitude, config.settings.x0,
                             config.base_seed + rep, g_piht));
      }
    }
  } else {
    throw std::invalid_argument("unknown suite: " + config.suite);
  }

  // Tune each group's penalties on its first task before fanning out.
  if (config.auto_reg) {
    for (TaskGroup& group : groups) {
      if (group.task_indices.empty()) continue;
      const SuiteTask& pilot_task = tasks[group.task_indices.front()];
      const ExperimentInstance pilot =
          gen_e1(pilot_task.n, pilot_task.m, pilot_task.w, pilot_task.s,
                 pilot_task.sigma, pilot_task.box_magnitude, pilot_task.seed);
      LeastSquaresObjective objective(pilot.A, pilot.b);
      SolveSettings base = config.settings;
      base.x0 = pilot_task.x0;
      base.x0_seed = pilot_task.seed;
      const AutoRegChoice choice =
          auto_reg_search(pilot, objective, base, group.mu_zero_only);
      for (std::size_t idx : group.task_indices) {
        tasks[idx].lambda = choice.lambda;
        tasks[idx].mu = choice.mu;
      }
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      try {
        const SuiteTask& task = tasks[idx];
        const ExperimentInstance instance = gen_e1(task.n, task.m, task.w, task.s,
                                                   task.sigma, task.box_magnitude,
                                                   task.seed);
        LeastSquaresObjective objective(instance.A, instance.b);
        SolveSettings settings = config.settings;
        settings.lambda = task.lambda;
        settings.mu = task.mu;
        settings.x0 = task.x0;
        settings.x0_seed = task.seed;
        settings.record_trace = true;
        SolveTrace trace;
        records[idx] = run_with_objective(instance, objective, settings, &trace);
        audit_row(instance, objective, trace, settings);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int thread_count = std::max(1, config.threads);
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::ofstream out(output_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + output_path + " for writing");
  out << run_record_csv_header() << '\n';
  for (const RunRecord& record : records) out << to_csv_row(record) << '\n';
  if (!out) throw std::runtime_error("write failed for " + output_path);

  return records;
}

}  // namespace psgb
