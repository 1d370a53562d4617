#include "psgb/prox.hpp"

#include <algorithm>
#include <cmath>

namespace psgb {

Vector project_box(const Vector& s, const BoxConstraint& box) {
  if (s.size() != box.dimension()) {
    throw std::invalid_argument("project_box: dimension mismatch");
  }
  Vector p(s.size());
  const Vector& l = box.lower_magnitudes();
  const Vector& u = box.upper_magnitudes();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    p[i] = std::min(u[i], std::max(-l[i], s[i]));
  }
  return p;
}

ElementThreshold element_threshold(const Vector& s, double gamma,
                                   const BoxConstraint& box) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
  ElementThreshold result;
  result.projected = project_box(s, box);
  result.z = Vector::Zero(s.size());
  result.score.resize(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double d = result.projected[i] - s[i];
    result.score[i] = s[i] * s[i] - d * d;
    if (result.score[i] > gamma) result.z[i] = result.projected[i];
  }
  return result;
}

Vector hard_threshold_l0(const Vector& s, double gamma, const BoxConstraint& box) {
  return element_threshold(s, gamma, box).z;
}

Vector hard_threshold_group(const Vector& z_group, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
  if (z_group.norm() > gamma) return z_group;
  return Vector::Zero(z_group.size());
}

Vector prox_sparse_group(const Vector& s, const RegularizationParams& params,
                         const BoxConstraint& box, const GroupPartition& partition) {
  params.validate();
  if (s.size() != box.dimension() || s.size() != partition.dimension()) {
    throw std::invalid_argument("prox_sparse_group: dimension mismatch");
  }
  const ElementThreshold et = element_threshold(s, 2.0 * params.lambda * params.tau, box);

  Vector x = Vector::Zero(s.size());
  for (int g = 0; g < partition.group_count(); ++g) {
    const std::vector<int>& members = partition.group(g);
    int kept = 0;
    double score = 0.0;
    for (int i : members) {
      if (et.z[i] != 0.0) {
        ++kept;
        score += et.score[i];
      }
    }
    if (kept == 0) continue;
    // Every kept coordinate scored strictly above 2*lambda*tau, so with
    // mu = 0 the group comparison can never zero it.
    const bool survives =
        params.mu == 0.0 ||
        score > 2.0 * params.tau * (params.lambda * kept + params.mu);
    if (survives) {
      for (int i : members) x[i] = et.z[i];
    }
  }
  return x;
}

DeltaBound compute_delta(const BoxConstraint& box, double lambda, double tau) {
  if (!(lambda * tau > 0.0)) {
    throw std::invalid_argument("compute_delta requires lambda*tau > 0");
  }
  const double root = std::sqrt(2.0 * lambda * tau);
  const Vector& l = box.lower_magnitudes();
  const Vector& u = box.upper_magnitudes();

  DeltaBound bound;
  bound.per_coordinate = Vector::Constant(box.dimension(), kInfinity);
  bound.delta = kInfinity;
  for (int i = 0; i < box.dimension(); ++i) {
    if (box.is_forced_zero(i)) {
      bound.forced_zero.push_back(i);
      continue;
    }
    double di;
    if (l[i] == 0.0) {
      di = std::min(u[i], root);
    } else if (u[i] == 0.0) {
      di = std::min(l[i], root);
    } else {
      di = std::min({l[i], u[i], root});
    }
    bound.per_coordinate[i] = di;
    bound.delta = std::min(bound.delta, di);
  }
  if (static_cast<int>(bound.forced_zero.size()) == box.dimension()) {
    throw std::invalid_argument("all coordinates are forced to zero; no bound exists");
  }
  return bound;
}

}  // namespace psgb
