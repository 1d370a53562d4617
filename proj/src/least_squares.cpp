#include "psgb/least_squares.hpp"

#include <cmath>
#include <random>
#include <utility>

namespace psgb {

double estimate_smoothness(const Matrix& A) {
  if (A.size() == 0) throw std::invalid_argument("empty design matrix");
  if (A.norm() == 0.0) {
    throw std::invalid_argument("all-zero design matrix has no valid step size");
  }

  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  v.normalize();

  double eigenvalue = 0.0;
  Vector w(A.cols());
  for (int iter = 0; iter < 1000; ++iter) {
    w.noalias() = A.transpose() * (A * v);
    const double next = v.dot(w);  // Rayleigh quotient of A^T A
    const double nw = w.norm();
    if (nw == 0.0) {
      // v landed in the null space; restart from a fresh direction
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
      v.normalize();
      continue;
    }
    v = w / nw;
    if (std::abs(next - eigenvalue) <= 1e-10 * std::max(1.0, std::abs(next))) {
      eigenvalue = next;
      break;
    }
    eigenvalue = next;
  }
  return eigenvalue * 1.001;
}

LeastSquaresObjective::LeastSquaresObjective(Matrix A, Vector b)
    : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) {
    throw std::invalid_argument("design rows do not match observation length");
  }
  smoothness_ = estimate_smoothness(A_);
}

double LeastSquaresObjective::value(const Vector& x) const {
  return 0.5 * (A_ * x - b_).squaredNorm();
}

Vector LeastSquaresObjective::gradient(const Vector& x) const {
  return A_.transpose() * (A_ * x - b_);
}

double LeastSquaresObjective::value_and_gradient(const Vector& x, Vector& grad) const {
  const Vector residual = A_ * x - b_;
  grad.noalias() = A_.transpose() * residual;
  return 0.5 * residual.squaredNorm();
}

LeastSquaresObjective make_least_squares(Matrix A, Vector b) {
  return LeastSquaresObjective(std::move(A), std::move(b));
}

}  // namespace psgb
