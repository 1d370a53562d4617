#pragma once

#include "psgb/types.hpp"

namespace psgb {

/// Componentwise clamp of s onto [-l, u].
Vector project_box(const Vector& s, const BoxConstraint& box);

/// Element phase shared by the thresholding operators: the projection
/// p = clamp(s), the offset d = p - s, and the per-coordinate score
/// s_i^2 - d_i^2 that decides survival.
struct ElementThreshold {
  Vector z;          // p_i where score_i > gamma, 0 elsewhere
  Vector projected;  // p
  Vector score;      // s_i^2 - d_i^2
};

ElementThreshold element_threshold(const Vector& s, double gamma,
                                   const BoxConstraint& box);

/// Elementwise hard threshold over the box: keeps clamp(s_i) where
/// s_i^2 - (clamp(s_i) - s_i)^2 > gamma, zero otherwise (ties to zero).
/// With gamma = 2*lambda*tau this evaluates the l0-over-box prox.
Vector hard_threshold_l0(const Vector& s, double gamma, const BoxConstraint& box);

/// Group hard threshold: z if ||z||_2 > gamma, else zero (ties to zero).
Vector hard_threshold_group(const Vector& z_group, double gamma);

/// Minimizer of Psi(x; s) = 0.5*||x - s||^2 + tau*lambda*||x||_0
/// + tau*mu*||x||_{2,0} over the box, groupwise.
///
/// Element phase: z = hard_threshold_l0(s, 2*lambda*tau, box). Group
/// phase: a group survives iff its clamp-corrected score
///   sum over kept j of (s_j^2 - d_j^2)
/// exceeds 2*tau*(lambda*||z_G||_0 + mu); the score equals ||z_G||^2
/// whenever no bound is active, recovering the plain ||z_G|| test.
/// Ties go to zero. All output zeros are exact.
Vector prox_sparse_group(const Vector& s, const RegularizationParams& params,
                         const BoxConstraint& box, const GroupPartition& partition);

/// Data-dependent lower bound on the magnitude of any nonzero output of
/// the element threshold with gamma = 2*lambda*tau.
struct DeltaBound {
  double delta = 0.0;            // min over i outside the forced-zero set
  Vector per_coordinate;         // delta_i; +inf on forced-zero coordinates
  std::vector<int> forced_zero;  // {i : l_i = u_i = 0}
};

/// delta_i = min(u_i, sqrt(2*lambda*tau))        if l_i = 0,
///           min(l_i, sqrt(2*lambda*tau))        if u_i = 0,
///           min(l_i, u_i, sqrt(2*lambda*tau))   otherwise.
/// Requires lambda*tau > 0 and at least one coordinate not forced to zero.
DeltaBound compute_delta(const BoxConstraint& box, double lambda, double tau);

}  // namespace psgb
