#pragma once

#include <functional>

namespace hetnet {

struct QuadratureTolerance {
  double absolute = 1e-8;
  double relative = 1e-6;
  // Bisection depth of the adaptive Gauss-Kronrod rule; 15 levels of 15-point
  // panels stays under 10^6 integrand evaluations.
  unsigned max_depth = 15;
};

// Adaptive 15-point Gauss-Kronrod integral of f over [a, b]. Throws
// QuadratureFailure when the error estimate exceeds
// max(absolute, relative * |I|) or the result is not finite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureTolerance& tol = {});

}  // namespace hetnet
