#include "psgb/model.hpp"

namespace psgb {

NormCounts count_norms(const Vector& x, const GroupPartition& partition) {
  if (x.size() != partition.dimension()) {
    throw std::invalid_argument("vector dimension does not match partition");
  }
  NormCounts counts;
  for (int g = 0; g < partition.group_count(); ++g) {
    bool group_hit = false;
    for (int i : partition.group(g)) {
      if (x[i] != 0.0) {
        ++counts.l0;
        group_hit = true;
      }
    }
    if (group_hit) ++counts.l20;
  }
  return counts;
}

std::vector<int> support_of(const Vector& x) {
  std::vector<int> support;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) support.push_back(static_cast<int>(i));
  }
  return support;
}

double phi(const Vector& x, const SmoothObjective& objective,
           const RegularizationParams& params, const BoxConstraint& box,
           const GroupPartition& partition) {
  params.validate();
  if (x.size() != objective.dimension() || x.size() != box.dimension() ||
      x.size() != partition.dimension()) {
    throw std::invalid_argument("phi: dimension mismatch");
  }
  if (!box.contains(x)) return kInfinity;
  const NormCounts counts = count_norms(x, partition);
  return objective.value(x) + params.lambda * counts.l0 + params.mu * counts.l20;
}

}  // namespace psgb
