#pragma once

#include "psgb/types.hpp"

#include <optional>

namespace psgb {

/// A smooth convex loss with a known smoothness (gradient Lipschitz)
/// constant. Implementations must be safe to call concurrently.
class SmoothObjective {
public:
  virtual ~SmoothObjective() = default;

  virtual int dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;

  /// Writes the gradient into `grad` and returns the value. Overridden
  /// where the two share intermediates.
  virtual double value_and_gradient(const Vector& x, Vector& grad) const {
    grad = gradient(x);
    return value(x);
  }

  /// Upper bound L on the spectral norm of the Hessian.
  virtual double smoothness_constant() const = 0;

  /// Strong-convexity modulus, when known.
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }
};

}  // namespace psgb
