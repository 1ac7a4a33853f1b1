#ifndef ZDPP_SPECIAL_HPP
#define ZDPP_SPECIAL_HPP

#include "zdpp/types.hpp"

namespace zdpp {

// Gamma family ---------------------------------------------------------------

/// log Gamma, principal branch on Re x >= 0.5 (Lanczos); reflection below.
Complex log_gamma(Complex x);

/// Gamma(x).  Throws PoleAtNonpositiveInteger at the poles.
Complex gamma(Complex x);

/// 1/Gamma(x); entire, exactly 0 at nonpositive integers.
Complex rgamma(Complex x);

/// (a)_k = a(a+1)...(a+k-1); direct product for k <= 64, gamma ratio above.
Complex pochhammer(Complex a, long k);

/// psi(x) = Gamma'(x)/Gamma(x).
Complex digamma(Complex x);

// Hypergeometric -------------------------------------------------------------

/// Gauss 2F1(a,b;c;x).  Series for |x|<1; Pfaff-transformed series for
/// real x<0 (always convergent there).
EvalResult gauss_2f1(Complex a, Complex b, Complex c, Complex x);

/// 2F1 for real x <= -2 via the two-term inversion expansion in 1/x.
/// Exposed separately so the continuation can be tested against the
/// Euler-integral route.
EvalResult gauss_2f1_continued(Complex a, Complex b, Complex c, double x);

/// Confluent Phi(a,c;x) = sum (a)_k/(c)_k x^k/k!.
EvalResult kummer_phi(Complex a, Complex c, Complex x);

// Whittaker ------------------------------------------------------------------

/// W_{kappa,mu}(x), x>0.  Dispatches between the collapsed closed form
/// (kappa = +-mu + 1/2), the Kummer connection formula (2mu not integer),
/// the logarithmic expansion (mu = 0), and the tau-integral.
EvalResult whittaker_w(Complex kappa, Complex mu, double x);

/// d/dx W_{kappa,mu}(x) by the downward contiguous relation
///   x W' = (kappa - x/2) W_{kappa,mu} - (mu^2 - (kappa-1/2)^2) W_{kappa-1,mu}.
EvalResult whittaker_w_deriv(Complex kappa, Complex mu, double x);

/// Semi-infinite integral route only (requires Re(mu-kappa-1/2) > -1);
/// used as an independent oracle for the dispatcher.
EvalResult whittaker_w_integral(Complex kappa, Complex mu, double x,
                                const QuadratureSpec& q = {});

// Weight functions -----------------------------------------------------------

/// phi_a(u) = u^a/Gamma(a+1) for u>0, 0 for u<=0.  Function regime only:
/// Re a <= -1 signals DistributionalRegime.
Complex phi_weight(Complex a, double u);

/// Stieltjes transform of phi_{-z}(x)phi_{z-1}(1-x):  y^{-z}(1+y)^{z-1}.
Complex stieltjes_phi(Complex z, double y);

}  // namespace zdpp

#endif
