#pragma once

#include "psgb/objective.hpp"
#include "psgb/types.hpp"

namespace psgb {

struct NormCounts {
  int l0 = 0;   // nonzero coordinates
  int l20 = 0;  // groups with a nonzero coordinate
};

/// Exact-zero counting: a coordinate contributes iff x_i != 0.0. The
/// solver writes literal zeros, so no tolerance is involved.
NormCounts count_norms(const Vector& x, const GroupPartition& partition);

/// Sorted indices of the nonzero coordinates.
std::vector<int> support_of(const Vector& x);

/// Composite objective f(x) + lambda*||x||_0 + mu*||x||_{2,0}, extended
/// by +inf outside the box. Total on vectors of the right dimension.
double phi(const Vector& x, const SmoothObjective& objective,
           const RegularizationParams& params, const BoxConstraint& box,
           const GroupPartition& partition);

}  // namespace psgb
