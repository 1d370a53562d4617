#pragma once

#include "psgb/types.hpp"

namespace psgb {

/// Relative recovery error ||x - x_star||_2 / ||x_star||_2.
/// Throws when x_star = 0.
double metric_err(const Vector& x, const Vector& x_star);

/// -10*log10(||x - x_star||^2 / n); +inf when x = x_star.
double metric_psnr(const Vector& x, const Vector& x_star);

}  // namespace psgb
