#pragma once

#include "psgb/types.hpp"

namespace psgb {

enum class TerminationStatus { RelativeChange, ObjectiveTarget, MaxIterations };

const char* to_string(TerminationStatus status);

struct IterateRecord {
  int k = 0;
  double phi = 0.0;
  double step_norm = 0.0;  // ||x^{k+1} - x^k||; 0 on the final record
  std::vector<int> support;
  int l0 = 0;
  int l20 = 0;
  double min_nonzero_magnitude = kInfinity;
  double wall_time_s = 0.0;
};

struct SolveTrace {
  std::vector<IterateRecord> records;  // empty when recording is off
  TerminationStatus status = TerminationStatus::MaxIterations;
  Vector final_iterate;
  int iterations = 0;
  int support_changes = 0;
  double phi_final = 0.0;
  double effective_tau = 0.0;
  bool tau_theory_warning = false;  // tau*L >= 1: decrease guarantees void
};

}  // namespace psgb
