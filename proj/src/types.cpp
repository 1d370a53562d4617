#include "psgb/types.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace psgb {

void validate_partition(int n, const std::vector<std::vector<int>>& groups) {
  if (n <= 0) throw std::invalid_argument("partition dimension must be positive");
  std::vector<int> owner(n, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) {
      throw PartitionError(PartitionError::Kind::EmptyGroup, static_cast<int>(g),
                           "group " + std::to_string(g) + " is empty");
    }
    for (int i : groups[g]) {
      if (i < 0 || i >= n) {
        throw PartitionError(PartitionError::Kind::OutOfRange, i,
                             "coordinate " + std::to_string(i) + " outside 0.." +
                                 std::to_string(n - 1));
      }
      if (owner[i] != -1) {
        throw PartitionError(PartitionError::Kind::Overlap, i,
                             "coordinate " + std::to_string(i) + " appears in groups " +
                                 std::to_string(owner[i]) + " and " + std::to_string(g));
      }
      owner[i] = static_cast<int>(g);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (owner[i] == -1) {
      throw PartitionError(PartitionError::Kind::Gap, i,
                           "coordinate " + std::to_string(i) + " is not covered");
    }
  }
}

GroupPartition::GroupPartition(int n, std::vector<std::vector<int>> groups)
    : n_(n), groups_(std::move(groups)), group_of_(n, -1) {
  validate_partition(n_, groups_);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (int i : groups_[g]) group_of_[i] = static_cast<int>(g);
  }
}

GroupPartition GroupPartition::contiguous(int n, int width) {
  if (width <= 0 || n % width != 0) {
    throw std::invalid_argument("group width " + std::to_string(width) +
                                " must divide the dimension " + std::to_string(n));
  }
  std::vector<std::vector<int>> groups(n / width);
  for (int g = 0; g < n / width; ++g) {
    groups[g].resize(width);
    std::iota(groups[g].begin(), groups[g].end(), g * width);
  }
  return GroupPartition(n, std::move(groups));
}

BoxConstraint::BoxConstraint(Vector lower_magnitudes, Vector upper_magnitudes)
    : lower_(std::move(lower_magnitudes)), upper_(std::move(upper_magnitudes)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("box bound vectors differ in length");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] >= 0.0) || !(upper_[i] >= 0.0)) {
      throw std::invalid_argument("box magnitudes must be non-negative at coordinate " +
                                  std::to_string(i));
    }
  }
}

BoxConstraint BoxConstraint::uniform(int n, double magnitude) {
  return BoxConstraint(Vector::Constant(n, magnitude), Vector::Constant(n, magnitude));
}

bool BoxConstraint::contains(const Vector& x) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

void RegularizationParams::validate() const {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
}

}  // namespace psgb
