#pragma once

#include "psgb/types.hpp"

#include <cstdint>
#include <string>

namespace psgb {

/// A synthetic recovery problem: observations b = A*x_star + sigma*xi
/// with unit-norm design columns and group-structured ground truth.
struct ExperimentInstance {
  Matrix A;
  Vector b;
  Vector x_star;
  double sigma = 0.0;
  int group_width = 1;
  int element_sparsity = 0;  // ||x_star||_0
  int group_sparsity = 0;    // nonzero groups of x_star
  BoxConstraint box;
  GroupPartition partition;
  std::uint64_t seed = 0;
};

/// Gaussian design with columns normalized to unit l2 norm; s/w groups
/// chosen uniformly without replacement, each filled with entries
/// 0.1 + 4.9*U(0,1); b = A*x_star + sigma*xi with fresh standard-normal
/// xi; box l = u = box_magnitude. Deterministic in `seed` (mt19937_64).
/// Requires w | n, w | s, s <= n, m >= 1.
ExperimentInstance gen_e1(int n, int m, int w, int s, double sigma,
                          double box_magnitude, std::uint64_t seed);

/// Same design/noise model around a caller-supplied ground truth
/// (e.g. a vectorized multichannel image with w = 3).
ExperimentInstance gen_from_vector(const Vector& x_star, int m, int w, double sigma,
                                   double box_magnitude, std::uint64_t seed);

/// Binary container: magic "PSGB1\n"; little-endian u64 m, n, w, seed;
/// then f64 arrays A (column-major, m*n), b (m), x_star (n), l (n), u (n).
void save_instance(const std::string& path, const ExperimentInstance& instance);

/// Validates magic and total length. sigma is not stored and loads as NaN;
/// sparsity counts are recovered from x_star.
ExperimentInstance load_instance(const std::string& path);

/// Whitespace-separated doubles (used for x0/ground-truth/box files).
Vector read_text_vector(const std::string& path);
void write_text_vector(const std::string& path, const Vector& v);

}  // namespace psgb
