#pragma once

#include "psgb/objective.hpp"
#include "psgb/types.hpp"

namespace psgb {

/// Prox objective Psi(x; s) = 0.5*||x - s||^2 + tau*lambda*||x||_0
/// + tau*mu*||x||_{2,0} + indicator of the box.
double prox_objective(const Vector& x, const Vector& s,
                      const RegularizationParams& params, const BoxConstraint& box,
                      const GroupPartition& partition);

struct ProxOracleResult {
  Vector x;
  double psi = 0.0;
};

/// Exhaustive prox reference for n <= 16: for every support pattern the
/// restricted minimizer is clamp(s) on the pattern and zero elsewhere;
/// returns the pattern with minimal Psi. Ties prefer fewer nonzeros,
/// then fewer nonzero groups, then the lexicographically smaller mask.
ProxOracleResult brute_force_prox(const Vector& s, const RegularizationParams& params,
                                  const BoxConstraint& box,
                                  const GroupPartition& partition);

struct GlobalMinResult {
  Vector x;
  double phi = 0.0;
  std::vector<int> pattern;  // support pattern the minimum was found on
};

/// Exhaustive composite-objective reference for n <= 12 and convex f:
/// for each support pattern, minimizes f over the box restricted to the
/// pattern by projected gradient descent (step 1/L, gradient-map norm
/// <= 1e-12 or 100000 iterations), charges lambda*|S| + mu*groups(S),
/// and returns the best.
GlobalMinResult brute_force_global_min(const SmoothObjective& objective,
                                       const RegularizationParams& params,
                                       const BoxConstraint& box,
                                       const GroupPartition& partition);

/// Support-optimality test: x equals the projection of its own gradient
/// step onto {y in box : supp(y) subseteq supp(x)} within inf-norm tol.
/// Uses the step 1/L internally; for convex objectives this certifies
/// global optimality on that restricted set.
bool so_point_check(const Vector& x, const SmoothObjective& objective,
                    const BoxConstraint& box, double tol);

}  // namespace psgb
