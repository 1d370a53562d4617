#pragma once

#include "psgb/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>

namespace psgb {

/// Randomized prox test case: group sizes <= max_group, boxes mixing
/// finite, zero, and infinite bounds, penalties log-uniform in [1e-3, 10].
struct RandomProxCase {
  Vector s;
  RegularizationParams params;
  BoxConstraint box;
  GroupPartition partition;
};

GroupPartition make_random_partition(std::mt19937_64& rng, int n, int max_group);
BoxConstraint make_random_box(std::mt19937_64& rng, int n);
RandomProxCase make_random_prox_case(std::mt19937_64& rng, int max_n = 10,
                                     int max_group = 4);

struct VerificationReport {
  int prox_trials = 0, prox_failures = 0;
  int reduction_trials = 0, reduction_failures = 0;
  int projection_trials = 0, projection_failures = 0;
  int gradient_trials = 0, gradient_failures = 0;
  int smoothness_trials = 0, smoothness_failures = 0;
  int chain_trials = 0, chain_failures = 0;

  bool ok() const {
    return prox_failures + reduction_failures + projection_failures +
               gradient_failures + smoothness_failures + chain_failures ==
           0;
  }
};

/// Cross-checks the closed-form operators against the exhaustive
/// references on random small instances, logging one line per family.
VerificationReport run_verification(int trials, std::uint64_t seed, std::ostream& log);

}  // namespace psgb
