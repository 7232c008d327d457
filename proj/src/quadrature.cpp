#include "hetnet/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "hetnet/error.hpp"

namespace hetnet {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureTolerance& tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, tol.max_depth, tol.relative * 1e-2, &error);
  const double allowed = std::max(tol.absolute, tol.relative * std::abs(value));
  if (!std::isfinite(value) || !(error <= allowed)) {
    std::ostringstream msg;
    msg << "integral over [" << a << ", " << b << "] did not converge: value " << value
        << ", error estimate " << error << " > " << allowed;
    throw QuadratureFailure(msg.str());
  }
  return value;
}

}  // namespace hetnet
