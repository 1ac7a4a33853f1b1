#include "zdpp/special.hpp"

#include <cmath>

#include "zdpp/quadrature.hpp"

namespace zdpp {

static const double PI = 3.14159265358979323846;

const char* method_name(Method m) {
    switch (m) {
        case Method::Series: return "series";
        case Method::EulerIntegral: return "euler_integral";
        case Method::MellinBarnesContinuation: return "mellin_barnes";
        case Method::Determinant: return "determinant";
        case Method::DirectQuadrature: return "direct_quadrature";
        case Method::ClosedForm: return "closed_form";
    }
    return "?";
}

double EvalResult::real_checked(double rel_slack, double abs_slack) const {
    double lim = std::max(abs_slack, rel_slack * std::abs(value.real()));
    if (std::abs(value.imag()) > lim)
        throw DomainError("EvalResult: imaginary residue " + std::to_string(value.imag()) +
                          " exceeds tolerance for nominally real quantity");
    return value.real();
}

// ---------------------------------------------------------------------------
// Lanczos log-gamma (g = 7, 9 coefficients).
// ---------------------------------------------------------------------------
static const double LANCZOS_P[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

static Complex log_gamma_core(Complex z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    Complex x = LANCZOS_P[0];
    for (int i = 1; i < 9; ++i) x += LANCZOS_P[i] / (z + static_cast<double>(i));
    Complex t = z + 7.5;
    return 0.9189385332046727 + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleAtNonpositiveInteger("log_gamma at nonpositive integer");
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection; branch chosen by direct logs (consistent under exp)
    return std::log(PI) - std::log(std::sin(PI * z)) - log_gamma_core(1.0 - z);
}

Complex gamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleAtNonpositiveInteger("gamma at nonpositive integer");
    if (z.real() >= 0.5) return std::exp(log_gamma_core(z));
    return PI / (std::sin(PI * z) * std::exp(log_gamma_core(1.0 - z)));
}

Complex rgamma(Complex z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (z.real() >= 0.5) return std::exp(-log_gamma_core(z));
    return std::sin(PI * z) * std::exp(log_gamma_core(1.0 - z)) / PI;
}

Complex pochhammer(Complex a, long k) {
    if (k < 0) throw DomainError("pochhammer: negative k");
    if (k == 0) return 1.0;
    if (k <= 64 || is_nonpositive_integer(a)) {
        // the zero factor, if any, sits within the first -Re(a)+1 steps
        if (is_nonpositive_integer(a) && static_cast<double>(k) > -a.real())
            return 0.0;
        Complex p = 1.0;
        for (long i = 0; i < k; ++i) p *= a + static_cast<double>(i);
        return p;
    }
    return std::exp(log_gamma(a + static_cast<double>(k)) - log_gamma(a));
}

// ---------------------------------------------------------------------------
// digamma: reflection + upward recurrence + Stirling tail.
// ---------------------------------------------------------------------------
Complex digamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleAtNonpositiveInteger("digamma at nonpositive integer");
    Complex acc = 0.0;
    if (z.real() < 0.5) {
        // psi(z) = psi(1-z) - pi cot(pi z)
        acc = -PI / std::tan(PI * z);
        z = 1.0 - z;
    }
    while (z.real() < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // B_{2n}/(2n x^{2n}) terms
    static const double C[7] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                1.0 / 132, -691.0 / 32760, 1.0 / 12};
    Complex inv2 = 1.0 / (z * z);
    Complex s = std::log(z) - 0.5 / z;
    Complex p = inv2;
    for (int n = 0; n < 7; ++n) {
        s -= C[n] * p;
        p *= inv2;
    }
    return acc + s;
}

// ---------------------------------------------------------------------------
// Series engine with the 3-consecutive-small-terms stopping rule.
// ---------------------------------------------------------------------------
namespace {

struct SeriesSum {
    Complex sum = 0.0;
    int small_run = 0;
    long terms = 0;
    double rel_tol;
    explicit SeriesSum(double tol) : rel_tol(tol) {}
    // returns true when converged
    bool push(Complex term) {
        sum += term;
        ++terms;
        if (std::abs(term) < rel_tol * std::abs(sum))
            ++small_run;
        else
            small_run = 0;
        if (terms > 1000000)
            throw NoConvergentRoute("series exceeded 1e6 terms");
        return small_run >= 3;
    }
};

}  // namespace

static Complex gauss_series(Complex a, Complex b, Complex c, Complex x, double tol) {
    SeriesSum s(tol);
    Complex term = 1.0;
    for (long k = 0;; ++k) {
        if (s.push(term)) break;
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * (k + 1.0)) * x;
    }
    return s.sum;
}

EvalResult gauss_2f1(Complex a, Complex b, Complex c, Complex x) {
    if (is_nonpositive_integer(c)) throw ParameterPole("2F1: c is a nonpositive integer");
    const double tol = 1e-15;
    if (std::abs(x) < 0.9) {
        Complex v = gauss_series(a, b, c, x, tol);
        return {v, 8.0 * std::abs(v) * 1e-15, Method::Series};
    }
    if (x.imag() == 0.0 && x.real() < 0.0) {
        // Pfaff: F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1))
        Complex u = x / (x - 1.0);
        Complex v = std::pow(1.0 - x, -a) * gauss_series(a, c - b, c, u, tol);
        return {v, 8.0 * std::abs(v) * 1e-15, Method::Series};
    }
    throw NoConvergentRoute("2F1: |x| >= 0.9 and x not real negative");
}

EvalResult gauss_2f1_continued(Complex a, Complex b, Complex c, double x) {
    if (is_nonpositive_integer(c)) throw ParameterPole("2F1: c is a nonpositive integer");
    if (x > -2.0) throw PreconditionViolated("2F1 continuation wants x <= -2");
    Complex amb = a - b;
    if (is_nonpositive_integer(amb) || is_nonpositive_integer(-amb))
        throw DegenerateDifference("2F1 continuation: a-b integer");
    Complex inv = 1.0 / x;
    Complex t1 = gamma(c) * gamma(b - a) * rgamma(b) * rgamma(c - a) *
                 std::pow(-x, -a) * gauss_series(a, 1.0 - c + a, 1.0 - b + a, inv, 1e-15);
    Complex t2 = gamma(c) * gamma(a - b) * rgamma(a) * rgamma(c - b) *
                 std::pow(-x, -b) * gauss_series(b, 1.0 - c + b, 1.0 - a + b, inv, 1e-15);
    Complex v = t1 + t2;
    return {v, 8.0 * std::abs(v) * 1e-15, Method::MellinBarnesContinuation};
}

EvalResult kummer_phi(Complex a, Complex c, Complex x) {
    if (is_nonpositive_integer(c)) throw ParameterPole("Phi: c is a nonpositive integer");
    SeriesSum s(1e-16);
    Complex term = 1.0;
    for (long k = 0;; ++k) {
        if (s.push(term)) break;
        term *= (a + static_cast<double>(k)) / ((c + static_cast<double>(k)) * (k + 1.0)) * x;
    }
    return {s.sum, 8.0 * std::abs(s.sum) * 1e-16, Method::Series};
}

// ---------------------------------------------------------------------------
// phi weights.
// ---------------------------------------------------------------------------
Complex phi_weight(Complex a, double u) {
    if (a.real() <= -1.0)
        throw DistributionalRegime("phi_a with Re a <= -1 is not a pointwise function");
    if (u <= 0.0) return 0.0;
    return std::pow(Complex(u), a) * rgamma(a + 1.0);
}

Complex stieltjes_phi(Complex z, double y) {
    if (y <= 0.0) throw DomainError("stieltjes_phi: y must be positive");
    return std::pow(Complex(y), -z) * std::pow(Complex(1.0 + y), z - 1.0);
}

// ---------------------------------------------------------------------------
// Whittaker W.
// ---------------------------------------------------------------------------
EvalResult whittaker_w_integral(Complex kappa, Complex mu, double x,
                                const QuadratureSpec& q0) {
    if (x <= 0.0) throw DomainError("whittaker_w: x must be positive");
    Complex ex = mu - kappa - 0.5;  // exponent at tau = 0
    // formally integrable down to -1, but double-precision tanh-sinh cannot
    // resolve exponents within ~0.08 of -1 (node distances underflow)
    if (ex.real() <= -0.92)
        throw NoConvergentRoute("whittaker integral: Re(mu-kappa-1/2) <= -0.92");
    // tau = e^s - 1; integral over s in (0, s_max]
    double smax = std::log(45.0 / x + 1.0);
    QuadratureSpec q = q0;
    q.exponent_left = ex.real();
    Complex tail = mu + kappa - 0.5;
    double err = 0.0;
    Complex I = tanh_sinh(
        [&](double s, double dl, double) -> Complex {
            double tau = std::expm1(s);
            double dtau = std::exp(s);
            // near s=0, tau ~ s: use dl for the singular factor
            double tau_s = (s < 1e-8) ? dl : tau;
            return std::pow(Complex(tau_s), ex) * std::pow(Complex(1.0 + tau), tail) *
                   std::exp(-tau * x) * dtau;
        },
        0.0, smax, q, &err);
    Complex v = std::exp(-0.5 * x) * std::pow(Complex(x), mu + 0.5) * rgamma(ex + 1.0) * I;
    return {v, err * std::abs(std::exp(-0.5 * x) * std::pow(Complex(x), mu + 0.5)),
            Method::DirectQuadrature};
}

// Kummer connection; requires 2mu not an integer.
static Complex whittaker_w_kummer(Complex kappa, Complex mu, double x) {
    Complex xp = Complex(x);
    Complex t1 = gamma(-2.0 * mu) * rgamma(0.5 - kappa - mu) *
                 std::pow(xp, mu + 0.5) *
                 kummer_phi(0.5 - kappa + mu, 2.0 * mu + 1.0, x).value;
    Complex t2 = gamma(2.0 * mu) * rgamma(0.5 - kappa + mu) *
                 std::pow(xp, -mu + 0.5) *
                 kummer_phi(0.5 - kappa - mu, -2.0 * mu + 1.0, x).value;
    return std::exp(-0.5 * x) * (t1 + t2);
}

// logarithmic case mu = 0
static Complex whittaker_w_log(Complex kappa, double x) {
    Complex a = 0.5 - kappa;
    Complex lnx = std::log(x);
    SeriesSum s(1e-16);
    Complex num = 1.0;  // (a)_r / (r!)^2 x^r
    for (long r = 0;; ++r) {
        Complex h = digamma(a + static_cast<double>(r)) - 2.0 * digamma(Complex(r + 1.0));
        if (s.push(num * (lnx + h))) break;
        num *= (a + static_cast<double>(r)) * x / ((r + 1.0) * (r + 1.0));
    }
    return -std::exp(-0.5 * x) * std::sqrt(x) * rgamma(a) * s.sum;
}

EvalResult whittaker_w(Complex kappa, Complex mu, double x) {
    if (x <= 0.0) throw DomainError("whittaker_w: x must be positive");
    // collapsed closed form W_{mu+1/2, mu} = e^{-x/2} x^{mu+1/2}
    auto near_int = [](Complex w) {
        return std::abs(w.imag()) < 1e-13 &&
               std::abs(w.real() - std::round(w.real())) < 1e-13;
    };
    if (std::abs(kappa - (mu + 0.5)) < 1e-14) {
        Complex v = std::exp(-0.5 * x) * std::pow(Complex(x), mu + 0.5);
        return {v, std::abs(v) * 1e-15, Method::ClosedForm};
    }
    if (std::abs(kappa - (-mu + 0.5)) < 1e-14) {
        Complex v = std::exp(-0.5 * x) * std::pow(Complex(x), -mu + 0.5);
        return {v, std::abs(v) * 1e-15, Method::ClosedForm};
    }
    if (std::abs(mu) < 1e-12) {
        Complex v = whittaker_w_log(kappa, x);
        return {v, std::abs(v) * 1e-13, Method::Series};
    }
    if (!near_int(2.0 * mu)) {
        if (x > 35.0) {
            // Kummer connection cancels catastrophically; integral if usable
            for (Complex m : {mu, -mu})
                if ((m - kappa - 0.5).real() > -0.92)
                    return whittaker_w_integral(kappa, m, x);
            throw NoConvergentRoute("whittaker_w: x too large for the series connection");
        }
        Complex v = whittaker_w_kummer(kappa, mu, x);
        double cancel = std::exp(std::max(0.0, 1.5 * x - 3.0)) * 1e-15;
        return {v, std::abs(v) * std::max(1e-14, cancel), Method::Series};
    }
    // 2mu a nonzero integer: only the integral route (either sign of mu)
    for (Complex m : {mu, -mu})
        if ((m - kappa - 0.5).real() > -0.92)
            return whittaker_w_integral(kappa, m, x);
    throw NoConvergentRoute("whittaker_w: 2mu integer and integral route closed");
}

EvalResult whittaker_w_deriv(Complex kappa, Complex mu, double x) {
    if (x <= 0.0) throw DomainError("whittaker_w_deriv: x must be positive");
    EvalResult w0 = whittaker_w(kappa, mu, x);
    EvalResult w1 = whittaker_w(kappa - 1.0, mu, x);
    Complex v = ((kappa / x - 0.5) * w0.value -
                 (mu * mu - (kappa - 0.5) * (kappa - 0.5)) / x * w1.value);
    double err = std::abs((kappa / x - 0.5)) * w0.abs_err +
                 std::abs((mu * mu - (kappa - 0.5) * (kappa - 0.5)) / x) * w1.abs_err;
    return {v, err, w0.method};
}

}  // namespace zdpp
