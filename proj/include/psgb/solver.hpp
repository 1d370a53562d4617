#pragma once

#include "psgb/objective.hpp"
#include "psgb/prox.hpp"
#include "psgb/trace.hpp"
#include "psgb/types.hpp"

namespace psgb {

struct TauPolicy {
  enum class Kind { Explicit, FractionOfInverseL };

  Kind kind = Kind::FractionOfInverseL;
  double fraction = 0.99;  // of 1/L; must lie in (0, 1)

  static TauPolicy explicit_tau() { return {Kind::Explicit, 0.0}; }
  static TauPolicy fraction_of_inverse_l(double fraction = 0.99) {
    return {Kind::FractionOfInverseL, fraction};
  }
};

struct SolverConfig {
  RegularizationParams params;  // params.tau is used by the Explicit policy
  double rel_change_tol = 1e-6;
  double objective_target = -kInfinity;  // disabled by default
  int max_iterations = 100;
  TauPolicy tau_policy;
  bool record_trace = true;
  double stationarity_tol = 1e-8;
};

/// Step size implied by the policy. FractionOfInverseL yields
/// fraction/L and guarantees tau*L < 1.
double resolve_tau(const SolverConfig& config, double smoothness_constant);

/// Intermediates of one iteration, mirroring the analysis quantities.
struct IterateDiagnostics {
  Vector s_tau;  // x - tau * grad f(x)
  Vector d_tau;  // project_box(s_tau) - s_tau
  Vector z;      // element-thresholded s_tau
};

struct StepResult {
  Vector x_next;
  IterateDiagnostics diag;
};

/// One iteration: gradient step, element threshold, group threshold.
/// Requires a finite gradient; x is assumed feasible.
StepResult step(const Vector& x, const SmoothObjective& objective,
                const RegularizationParams& params, const BoxConstraint& box,
                const GroupPartition& partition);

/// Iterates from project_box(x0) until the relative change
/// ||x^k - x^{k-1}|| / max(1, ||x^k||) drops to rel_change_tol, the
/// smooth loss reaches objective_target, or max_iterations is hit —
/// whichever happens first.
SolveTrace solve(const SmoothObjective& objective, const SolverConfig& config,
                 const BoxConstraint& box, const GroupPartition& partition,
                 const Vector& x0);

/// Fixed-point test: x feasible and
/// ||x - prox_sparse_group(x - tau*grad f(x))||_inf <= tol*(1 + ||x||_inf).
bool check_tau_stationary(const Vector& x, const SmoothObjective& objective,
                          const RegularizationParams& params,
                          const BoxConstraint& box, const GroupPartition& partition,
                          double tol);

struct SufficientDecreaseReport {
  bool ok = true;
  int first_violation = -1;  // record index k of the first failing step
};

/// Checks phi(x^k) - phi(x^{k+1}) >= ((1/tau - L)/2) * step_norm_k^2 at
/// every recorded step, with additive slack 1e-10*(1 + |phi(x^k)|).
SufficientDecreaseReport verify_sufficient_decrease(const SolveTrace& trace,
                                                    double smoothness_constant,
                                                    double tau);

struct SupportChangeAudit {
  int change_count = 0;
  double bound = 0.0;  // 2*(phi(x^0) - phi_final) / (delta^2 * (1/tau - L))
  bool within_bound = true;
  bool steps_exceed_delta = true;       // step norm > delta at every change
  bool magnitudes_above_delta = true;   // |x_j^k| >= delta for k >= 1
  bool approximate = false;             // phi_final is not a converged limit
};

SupportChangeAudit support_change_audit(const SolveTrace& trace,
                                        const DeltaBound& delta,
                                        double smoothness_constant, double tau);

}  // namespace psgb
