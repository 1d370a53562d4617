#include "psgb/metrics.hpp"

#include <cmath>

namespace psgb {

double metric_err(const Vector& x, const Vector& x_star) {
  if (x.size() != x_star.size()) throw std::invalid_argument("metric_err: dimension mismatch");
  const double denom = x_star.norm();
  if (denom == 0.0) throw std::invalid_argument("metric_err: ground truth is zero");
  return (x - x_star).norm() / denom;
}

double metric_psnr(const Vector& x, const Vector& x_star) {
  if (x.size() != x_star.size()) throw std::invalid_argument("metric_psnr: dimension mismatch");
  const double mse = (x - x_star).squaredNorm() / static_cast<double>(x.size());
  if (mse == 0.0) return kInfinity;
  return -10.0 * std::log10(mse);
}

}  // namespace psgb
