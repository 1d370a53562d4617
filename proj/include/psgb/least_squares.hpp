#pragma once

#include "psgb/objective.hpp"
#include "psgb/types.hpp"

namespace psgb {

/// Certified upper bound on ||A^T A||_2: matrix-free power iteration
/// (x -> A^T (A x)) run to relative eigenvalue change <= 1e-10 or 1000
/// iterations, inflated by 1.001. The Rayleigh quotient approaches the
/// top eigenvalue from below, so the inflation keeps the product with a
/// 0.99/L step strictly inside the smoothness requirement.
/// Throws on an all-zero matrix (no valid step size exists).
double estimate_smoothness(const Matrix& A);

/// f(x) = 0.5*||Ax - b||^2 with dense column-major storage and the
/// smoothness constant cached at construction.
class LeastSquaresObjective : public SmoothObjective {
public:
  LeastSquaresObjective(Matrix A, Vector b);

  int dimension() const override { return static_cast<int>(A_.cols()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  double smoothness_constant() const override { return smoothness_; }

  int rows() const { return static_cast<int>(A_.rows()); }
  const Matrix& design() const { return A_; }
  const Vector& observation() const { return b_; }

private:
  Matrix A_;
  Vector b_;
  double smoothness_;
};

LeastSquaresObjective make_least_squares(Matrix A, Vector b);

}  // namespace psgb
