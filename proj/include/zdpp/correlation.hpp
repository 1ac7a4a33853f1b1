#ifndef ZDPP_CORRELATION_HPP
#define ZDPP_CORRELATION_HPP

#include <vector>

#include "zdpp/lauricella.hpp"
#include "zdpp/types.hpp"
#include "zdpp/zmeasure.hpp"

namespace zdpp {

/// Evaluation request for rho_n: all x_i of one sign, sum|x_i| < 1.
struct CorrelationQuery {
    ZParams params;
    std::vector<double> x;

    void validate() const;
    bool negative_octant() const { return !x.empty() && x[0] < 0.0; }
};

/// rho_n by the Lauricella route (n <= 3).  Positive or negative octant
/// (negative handled by the reflection (z,z') -> (-z,-z')).  Returns 0
/// outside the support sum|x_i| >= 1.
EvalResult rho_n_fb(const CorrelationQuery& q);

/// rho_n by direct quadrature of the 2n-fold integral representation,
/// n <= 2.  Accepts raw (z, z') outside the admissible classes --
/// integrability needs Re z < 1, Re z' < 1, t > n.
EvalResult rho_n_integral(Complex z, Complex zprime, const std::vector<double>& x,
                          const QuadratureSpec& q = {});

/// First correlation function in closed form (three-term F_B^[2] formula).
EvalResult rho_1_closed(const ZParams& params, double x);

/// Same with 1-|x| supplied exactly (for quadratures near the support edge).
EvalResult rho_1_closed(const ZParams& params, double x, double one_minus_ax);

/// A_{zz'}(0) = (z-z') sin(pi z) sin(pi z') / (pi sin(pi(z-z'))),
/// with the z'=z limit sin^2(pi z)/pi^2.
double asympt_const_A(const ZParams& params);

/// Moment cross-check: integral of |x| x^l rho_1 over [-1,1] versus the
/// exact moment formula, l = 0..l_max.
struct MomentCheckRow {
    int l;
    double quadrature;
    double exact;
    double rel_dev;
};
struct MomentCheckReport {
    std::vector<MomentCheckRow> rows;
    double max_rel_dev = 0.0;
};
MomentCheckReport controlling_density_check(const ZParams& params, int l_max,
                                            const QuadratureSpec& quad = {});

}  // namespace zdpp

#endif
