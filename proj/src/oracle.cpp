#include "psgb/oracle.hpp"

#include "psgb/model.hpp"
#include "psgb/prox.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <tuple>

namespace psgb {

double prox_objective(const Vector& x, const Vector& s,
                      const RegularizationParams& params, const BoxConstraint& box,
                      const GroupPartition& partition) {
  if (!box.contains(x)) return kInfinity;
  const NormCounts counts = count_norms(x, partition);
  return 0.5 * (x - s).squaredNorm() + params.tau * params.lambda * counts.l0 +
         params.tau * params.mu * counts.l20;
}

namespace {

// Projection onto {y in box : supp(y) subseteq pattern}.
Vector project_pattern(const Vector& y, const BoxConstraint& box, std::uint32_t mask) {
  Vector p = Vector::Zero(y.size());
  const Vector& l = box.lower_magnitudes();
  const Vector& u = box.upper_magnitudes();
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (mask & (1u << i)) p[i] = std::min(u[i], std::max(-l[i], y[i]));
  }
  return p;
}

int groups_hit(std::uint32_t mask, const GroupPartition& partition) {
  int hit = 0;
  for (int g = 0; g < partition.group_count(); ++g) {
    for (int i : partition.group(g)) {
      if (mask & (1u << i)) {
        ++hit;
        break;
      }
    }
  }
  return hit;
}

}  // namespace

ProxOracleResult brute_force_prox(const Vector& s, const RegularizationParams& params,
                                  const BoxConstraint& box,
                                  const GroupPartition& partition) {
  params.validate();
  const int n = static_cast<int>(s.size());
  if (n > 16) throw std::invalid_argument("brute_force_prox supports n <= 16");
  if (n != box.dimension() || n != partition.dimension()) {
    throw std::invalid_argument("brute_force_prox: dimension mismatch");
  }

  ProxOracleResult best;
  NormCounts best_counts;
  std::uint32_t best_mask = 0;
  bool have_best = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const Vector candidate = project_pattern(s, box, mask);
    const double psi = prox_objective(candidate, s, params, box, partition);
    const NormCounts counts = count_norms(candidate, partition);
    const bool better =
        !have_best || psi < best.psi ||
        (psi == best.psi &&
         std::tie(counts.l0, counts.l20, mask) < std::tie(best_counts.l0, best_counts.l20, best_mask));
    if (better) {
      best.x = candidate;
      best.psi = psi;
      best_counts = counts;
      best_mask = mask;
      have_best = true;
    }
  }
  return best;
}

GlobalMinResult brute_force_global_min(const SmoothObjective& objective,
                                       const RegularizationParams& params,
                                       const BoxConstraint& box,
                                       const GroupPartition& partition) {
  params.validate();
  const int n = objective.dimension();
  if (n > 12) throw std::invalid_argument("brute_force_global_min supports n <= 12");
  if (n != box.dimension() || n != partition.dimension()) {
    throw std::invalid_argument("brute_force_global_min: dimension mismatch");
  }

  const double tau = 1.0 / objective.smoothness_constant();
  GlobalMinResult best;
  bool have_best = false;
  int best_popcount = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Vector x = Vector::Zero(n);
    for (int iter = 0; iter < 100000; ++iter) {
      const Vector next = project_pattern(x - tau * objective.gradient(x), box, mask);
      const double gap = (x - next).norm() / tau;
      x = next;
      if (gap <= 1e-12) break;
    }
    const int popcount = std::popcount(mask);
    const double value = objective.value(x) + params.lambda * popcount +
                         params.mu * groups_hit(mask, partition);
    if (!have_best || value < best.phi ||
        (value == best.phi && popcount < best_popcount)) {
      best.x = x;
      best.phi = value;
      best.pattern.clear();
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) best.pattern.push_back(i);
      }
      best_popcount = popcount;
      have_best = true;
    }
  }
  return best;
}

bool so_point_check(const Vector& x, const SmoothObjective& objective,
                    const BoxConstraint& box, double tol) {
  if (!box.contains(x)) return false;
  const double tau = 1.0 / objective.smoothness_constant();
  const Vector y = x - tau * objective.gradient(x);
  const Vector& l = box.lower_magnitudes();
  const Vector& u = box.upper_magnitudes();
  double residual = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double pi = x[i] != 0.0 ? std::min(u[i], std::max(-l[i], y[i])) : 0.0;
    residual = std::max(residual, std::abs(x[i] - pi));
  }
  return residual <= tol;
}

}  // namespace psgb
