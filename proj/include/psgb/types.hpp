#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace psgb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised when a group partition is malformed. `kind()` identifies the
/// defect and `index()` the offending 0-based coordinate or group.
class PartitionError : public std::invalid_argument {
public:
  enum class Kind { Overlap, Gap, EmptyGroup, OutOfRange };

  PartitionError(Kind kind, int index, const std::string& what)
      : std::invalid_argument(what), kind_(kind), index_(index) {}

  Kind kind() const { return kind_; }
  int index() const { return index_; }

private:
  Kind kind_;
  int index_;
};

/// Checks that `groups` forms a partition of {0..n-1}: non-empty groups,
/// pairwise disjoint, covering every coordinate. Throws PartitionError.
void validate_partition(int n, const std::vector<std::vector<int>>& groups);

/// Non-overlapping division of {0..n-1} into q non-empty groups.
/// Immutable after construction; construction validates.
class GroupPartition {
public:
  GroupPartition(int n, std::vector<std::vector<int>> groups);

  /// Contiguous blocks of `width` coordinates; `width` must divide `n`.
  static GroupPartition contiguous(int n, int width);

  int dimension() const { return n_; }
  int group_count() const { return static_cast<int>(groups_.size()); }
  const std::vector<int>& group(int g) const { return groups_[g]; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  int group_of(int coordinate) const { return group_of_[coordinate]; }

private:
  int n_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> group_of_;
};

/// Per-coordinate feasible intervals [-l_i, u_i] with l, u >= 0
/// (+inf allowed). Always contains the origin.
class BoxConstraint {
public:
  BoxConstraint(Vector lower_magnitudes, Vector upper_magnitudes);

  static BoxConstraint uniform(int n, double magnitude);
  static BoxConstraint unbounded(int n) { return uniform(n, kInfinity); }

  int dimension() const { return static_cast<int>(lower_.size()); }
  const Vector& lower_magnitudes() const { return lower_; }
  const Vector& upper_magnitudes() const { return upper_; }

  bool contains(const Vector& x) const;

  /// Coordinates with l_i = u_i = 0 can never be nonzero.
  bool is_forced_zero(int i) const { return lower_[i] == 0.0 && upper_[i] == 0.0; }

private:
  Vector lower_;
  Vector upper_;
};

/// Penalty weights and prox step size: lambda >= 0, mu >= 0, tau > 0.
struct RegularizationParams {
  double lambda = 0.0;
  double mu = 0.0;
  double tau = 1.0;

  void validate() const;
};

}  // namespace psgb
