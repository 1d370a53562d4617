#include "psgb/solver.hpp"

#include "psgb/model.hpp"

#include <chrono>
#include <cmath>

namespace psgb {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

IterateRecord make_record(int k, double phi_value, const Vector& x,
                          const GroupPartition& partition, double wall_time_s) {
  IterateRecord record;
  record.k = k;
  record.phi = phi_value;
  record.support = support_of(x);
  const NormCounts counts = count_norms(x, partition);
  record.l0 = counts.l0;
  record.l20 = counts.l20;
  for (int i : record.support) {
    record.min_nonzero_magnitude = std::min(record.min_nonzero_magnitude, std::abs(x[i]));
  }
  record.wall_time_s = wall_time_s;
  return record;
}

}  // namespace

double resolve_tau(const SolverConfig& config, double smoothness_constant) {
  if (config.tau_policy.kind == TauPolicy::Kind::Explicit) {
    if (!(config.params.tau > 0.0)) throw std::invalid_argument("explicit tau must be > 0");
    return config.params.tau;
  }
  if (!(config.tau_policy.fraction > 0.0 && config.tau_policy.fraction < 1.0)) {
    throw std::invalid_argument("tau fraction must lie in (0, 1)");
  }
  if (!(smoothness_constant > 0.0)) {
    throw std::invalid_argument("smoothness constant must be positive to derive tau");
  }
  return config.tau_policy.fraction / smoothness_constant;
}

StepResult step(const Vector& x, const SmoothObjective& objective,
                const RegularizationParams& params, const BoxConstraint& box,
                const GroupPartition& partition) {
  params.validate();
  Vector grad = objective.gradient(x);
  if (!grad.allFinite()) throw std::runtime_error("non-finite gradient");

  StepResult result;
  result.diag.s_tau = x - params.tau * grad;
  result.x_next = prox_sparse_group(result.diag.s_tau, params, box, partition);
  result.diag.d_tau = project_box(result.diag.s_tau, box) - result.diag.s_tau;
  result.diag.z =
      hard_threshold_l0(result.diag.s_tau, 2.0 * params.lambda * params.tau, box);
  return result;
}

SolveTrace solve(const SmoothObjective& objective, const SolverConfig& config,
                 const BoxConstraint& box, const GroupPartition& partition,
                 const Vector& x0) {
  if (x0.size() != objective.dimension() || x0.size() != box.dimension() ||
      x0.size() != partition.dimension()) {
    throw std::invalid_argument("solve: dimension mismatch");
  }
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(config.rel_change_tol > 0.0)) throw std::invalid_argument("rel_change_tol must be > 0");

  const double L = objective.smoothness_constant();
  const double tau = resolve_tau(config, L);
  RegularizationParams params{config.params.lambda, config.params.mu, tau};
  params.validate();

  SolveTrace trace;
  trace.effective_tau = tau;
  trace.tau_theory_warning = !(tau * L < 1.0);

  const auto start = std::chrono::steady_clock::now();
  Vector x = project_box(x0, box);
  Vector grad(x.size());
  double f_value = objective.value_and_gradient(x, grad);
  NormCounts counts = count_norms(x, partition);
  double phi_value = f_value + params.lambda * counts.l0 + params.mu * counts.l20;
  std::vector<int> support = support_of(x);

  if (config.record_trace) {
    trace.records.push_back(make_record(0, phi_value, x, partition, seconds_since(start)));
  }

  int k = 0;
  while (true) {
    ++k;
    if (!grad.allFinite()) throw std::runtime_error("non-finite gradient at iteration " +
                                                    std::to_string(k));
    const Vector s = x - tau * grad;
    Vector x_next = prox_sparse_group(s, params, box, partition);
    const double step_norm = (x_next - x).norm();

    std::vector<int> support_next = support_of(x_next);
    if (support_next != support) ++trace.support_changes;
    support = std::move(support_next);
    if (config.record_trace) trace.records.back().step_norm = step_norm;

    x = std::move(x_next);
    f_value = objective.value_and_gradient(x, grad);
    counts = count_norms(x, partition);
    phi_value = f_value + params.lambda * counts.l0 + params.mu * counts.l20;
    if (config.record_trace) {
      trace.records.push_back(make_record(k, phi_value, x, partition, seconds_since(start)));
    }

    if (step_norm / std::max(1.0, x.norm()) <= config.rel_change_tol) {
      trace.status = TerminationStatus::RelativeChange;
      break;
    }
    if (f_value <= config.objective_target) {
      trace.status = TerminationStatus::ObjectiveTarget;
      break;
    }
    if (k >= config.max_iterations) {
      trace.status = TerminationStatus::MaxIterations;
      break;
    }
  }

  trace.final_iterate = std::move(x);
  trace.iterations = k;
  trace.phi_final = phi_value;
  return trace;
}

bool check_tau_stationary(const Vector& x, const SmoothObjective& objective,
                          const RegularizationParams& params, const BoxConstraint& box,
                          const GroupPartition& partition, double tol) {
  if (!box.contains(x)) return false;
  const Vector s = x - params.tau * objective.gradient(x);
  const Vector p = prox_sparse_group(s, params, box, partition);
  return (x - p).lpNorm<Eigen::Infinity>() <= tol * (1.0 + x.lpNorm<Eigen::Infinity>());
}

SufficientDecreaseReport verify_sufficient_decrease(const SolveTrace& trace,
                                                    double smoothness_constant,
                                                    double tau) {
  if (trace.records.empty()) {
    throw std::invalid_argument("trace has no recorded iterates");
  }
  const double rate = (1.0 / tau - smoothness_constant) / 2.0;
  SufficientDecreaseReport report;
  for (std::size_t k = 0; k + 1 < trace.records.size(); ++k) {
    const IterateRecord& cur = trace.records[k];
    const IterateRecord& next = trace.records[k + 1];
    const double required = rate * cur.step_norm * cur.step_norm;
    const double slack = 1e-10 * (1.0 + std::abs(cur.phi));
    if (cur.phi - next.phi < required - slack) {
      report.ok = false;
      report.first_violation = cur.k;
      break;
    }
  }
  return report;
}

SupportChangeAudit support_change_audit(const SolveTrace& trace, const DeltaBound& delta,
                                        double smoothness_constant, double tau) {
  if (trace.records.empty()) {
    throw std::invalid_argument("trace has no recorded iterates");
  }
  SupportChangeAudit audit;
  audit.approximate = trace.status == TerminationStatus::MaxIterations;

  for (std::size_t k = 0; k + 1 < trace.records.size(); ++k) {
    const IterateRecord& cur = trace.records[k];
    const IterateRecord& next = trace.records[k + 1];
    if (cur.support != next.support) {
      ++audit.change_count;
      if (!(cur.step_norm > delta.delta)) audit.steps_exceed_delta = false;
    }
  }
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    if (trace.records[k].min_nonzero_magnitude < delta.delta) {
      audit.magnitudes_above_delta = false;
    }
  }

  const double inv_gap = 1.0 / tau - smoothness_constant;
  const double drop = trace.records.front().phi - trace.records.back().phi;
  audit.bound = inv_gap > 0.0 ? 2.0 * drop / (delta.delta * delta.delta * inv_gap)
                              : kInfinity;
  audit.within_bound = audit.change_count <= audit.bound;
  return audit;
}

}  // namespace psgb
