#ifndef ZDPP_QUADRATURE_HPP
#define ZDPP_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "zdpp/types.hpp"

namespace zdpp {

struct QuadRule {
    std::vector<double> nodes;    // on [-1,1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule, n nodes on [-1,1].
const QuadRule& gauss_legendre(int n);

/// Gauss-Jacobi rule, weight (1-x)^alpha (1+x)^beta on [-1,1].
QuadRule gauss_jacobi(int n, double alpha, double beta);

/// Integrand receiving the point and its distances to both interval ends.
/// tanh-sinh places nodes closer to an endpoint than 1 ulp of the endpoint
/// itself, so singular factors must be computed from the distances.
using Integrand = std::function<Complex(double x, double dist_left, double dist_right)>;

/// tanh-sinh on [a,b] with level doubling until the difference of successive
/// refinements is below tolerance.  Handles integrable endpoint
/// singularities, including complex exponents.
Complex tanh_sinh(const Integrand& f, double a, double b,
                  const QuadratureSpec& q = {}, double* abs_err = nullptr);

Complex tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                  const QuadratureSpec& q = {}, double* abs_err = nullptr);

/// int_a^b (x-a)^aL (b-x)^aR g(x) dx for smooth g, by Gauss-Jacobi with
/// node doubling.  aL, aR > -1.
Complex gauss_jacobi_integrate(const std::function<Complex(double)>& g,
                               double a, double b, double aL, double aR,
                               const QuadratureSpec& q = {}, double* abs_err = nullptr);

/// Composite Gauss-Legendre over explicit panel breakpoints (smooth f).
Complex panels_integrate(const std::function<Complex(double)>& f,
                         const std::vector<double>& breaks,
                         const QuadratureSpec& q = {}, double* abs_err = nullptr);

}  // namespace zdpp

#endif
