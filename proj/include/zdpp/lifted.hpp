#ifndef ZDPP_LIFTED_HPP
#define ZDPP_LIFTED_HPP

#include <functional>
#include <vector>

#include "zdpp/types.hpp"
#include "zdpp/zmeasure.hpp"

namespace zdpp {

struct KernelPoint {
    double x;
    double y;
};

struct LiftSpec {
    double tau;  // > 0; tau = t lifts the process itself
};

/// Whittaker kernel K(x,y) (symmetric, real).  Near the diagonal the
/// l'Hopital form with W' is used.
double whittaker_kernel(const ZParams& params, KernelPoint p);

/// Kernel M(x,y) by 2-d quadrature of its double-integral representation;
/// requires -1 < Re z, Re z' < 1.  Real for complementary parameters; for
/// the principal series it carries the phase (x/y)^{(z-z')/2} of K.
Complex kernel_m(const ZParams& params, KernelPoint p, const QuadratureSpec& q = {});

/// Lifted n-point function det[K(x_i,x_j)].
double lifted_rho_n(const ZParams& params, const std::vector<double>& x);

/// Gamma-mixture lift of a correlation function supported in sum|x| <= 1:
///   int_0^inf s^{tau-1} e^{-s}/Gamma(tau) * rho(x/s) ds / s^n.
/// rho receives (x/s, 1 - sum|x_i|/s) so edge factors stay exact.
using ScaledDensity =
    std::function<double(const std::vector<double>& x, double one_minus_ax)>;
double lift_transform(const ScaledDensity& rho, const LiftSpec& spec,
                      const std::vector<double>& x, const QuadratureSpec& q = {});

/// Poisson-Dirichlet lifted correlations: t^n e^{-sum x} / prod x_i.
double pd_lifted_rho(double t, const std::vector<double>& x);

/// The scale-limit kernel k(ratio) of the origin asymptotics; k(1) equals
/// the constant A_{zz'}(0).
double asympt_kernel_k(const ZParams& params, double ratio);

// ---------------------------------------------------------------------------
// Log-log remainder fit against the predicted origin exponent.
// ---------------------------------------------------------------------------
enum class AsymptRoute { Lifted, NonLifted };

struct AsymptFit {
    double slope = 0.0;            // fitted d log|r| / d log lambda
    double theoretical = 0.0;      // 1, or 1-|z-z'|; log^2 case uses ratio_bound
    bool   log_square_case = false;
    double ratio_bound = 0.0;      // max |r/(lambda ln^2 lambda)| over scales
    std::vector<double> scales;
    std::vector<double> residuals;
};

AsymptFit asympt_remainder_fit(const ZParams& params, AsymptRoute route,
                               int j_min = 5, int j_max = 16);

}  // namespace zdpp

#endif
