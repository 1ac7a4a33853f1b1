#include "zdpp/lifted.hpp"

#include <algorithm>
#include <cmath>

#include "zdpp/quadrature.hpp"
#include "zdpp/special.hpp"
#include "zdpp/correlation.hpp"

namespace zdpp {

static const double PI = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Whittaker kernel.
// ---------------------------------------------------------------------------
namespace {

struct KernelParts {
    Complex kappa1, kappa2, mu, norm;  // norm = 1/(Gamma(z) Gamma(z'))
};

KernelParts kernel_parts(const ZParams& zp) {
    KernelParts k;
    k.kappa1 = (zp.z + zp.zprime + 1.0) / 2.0;
    k.kappa2 = (zp.z + zp.zprime - 1.0) / 2.0;
    k.mu = (zp.z - zp.zprime) / 2.0;
    k.norm = rgamma(zp.z) * rgamma(zp.zprime);
    return k;
}

Complex phi_fn(const KernelParts& k, int which, double x) {
    Complex w = whittaker_w(which == 1 ? k.kappa1 : k.kappa2, k.mu, x).value;
    return w / std::sqrt(x);
}

Complex phi_fn_deriv(const KernelParts& k, int which, double x) {
    Complex kap = (which == 1) ? k.kappa1 : k.kappa2;
    Complex w = whittaker_w(kap, k.mu, x).value;
    Complex wd = whittaker_w_deriv(kap, k.mu, x).value;
    return wd / std::sqrt(x) - 0.5 * w / (x * std::sqrt(x));
}

}  // namespace

double whittaker_kernel(const ZParams& params, KernelPoint p) {
    if (p.x <= 0.0 || p.y <= 0.0)
        throw DomainError("whittaker_kernel: x, y must be positive");
    KernelParts k = kernel_parts(params);
    Complex v;
    if (std::abs(p.x - p.y) < 1e-6 * std::abs(p.x)) {
        double x = 0.5 * (p.x + p.y);
        v = (phi_fn_deriv(k, 1, x) * phi_fn(k, 2, x) -
             phi_fn(k, 1, x) * phi_fn_deriv(k, 2, x)) *
            k.norm;
    } else {
        v = (phi_fn(k, 1, p.x) * phi_fn(k, 2, p.y) -
             phi_fn(k, 1, p.y) * phi_fn(k, 2, p.x)) /
            (p.x - p.y) * k.norm;
    }
    if (std::abs(v.imag()) > 1e-8 * (1.0 + std::abs(v.real())))
        throw DomainError("whittaker_kernel: imaginary residue too large");
    return v.real();
}

// ---------------------------------------------------------------------------
// M(x,y) by 2-d quadrature; t_i = e^{s_i} - 1 maps the half-line onto a
// truncatable interval with the algebraic singularity kept at s = 0.
// ---------------------------------------------------------------------------
Complex kernel_m(const ZParams& params, KernelPoint p, const QuadratureSpec& q) {
    if (p.x <= 0.0 || p.y <= 0.0) throw DomainError("kernel_m: x, y must be positive");
    const Complex z = params.z, zp = params.zprime;
    if (z.real() <= -1.0 || z.real() >= 1.0 || zp.real() <= -1.0 || zp.real() >= 1.0)
        throw RegimeError("kernel_m: needs -1 < Re z, Re z' < 1 "
                          "(principal, or complementary with m in {-1, 0})");
    const double smax1 = std::log(45.0 / p.x + 1.0);
    const double smax2 = std::log(45.0 / p.y + 1.0);
    QuadratureSpec q1 = q;
    q1.rel_tol = std::max(q.rel_tol, 1e-9);
    q1.exponent_left = -z.real();
    QuadratureSpec q2 = q1;
    q2.exponent_left = -zp.real();

    double err = 0.0;
    Complex I = tanh_sinh(
        [&](double, double s1v, double) -> Complex {
            double t1 = std::expm1(s1v);
            Complex f1 = std::pow(Complex(t1), -z) * std::pow(Complex(1.0 + t1), zp) *
                         std::exp(-p.x * t1) * (1.0 + t1);
            double e2 = 0.0;
            Complex inner = tanh_sinh(
                [&](double, double s2v, double) -> Complex {
                    double t2 = std::expm1(s2v);
                    return std::pow(Complex(t2), -zp) *
                           std::pow(Complex(1.0 + t2), z) * std::exp(-p.y * t2) *
                           (1.0 + t2) / (t1 + t2 + 1.0);
                },
                0.0, smax2, q2, &e2);
            return f1 * inner;
        },
        0.0, smax1, q1, &err);
    Complex v = params.t * std::exp(-0.5 * (p.x + p.y)) * I * rgamma(1.0 - z) *
                rgamma(1.0 + zp) * rgamma(1.0 - zp) * rgamma(1.0 + z);
    if (params.is_real_pair() &&
        std::abs(v.imag()) > 1e-7 * (1.0 + std::abs(v.real())))
        throw DomainError("kernel_m: imaginary residue too large for real parameters");
    return v;
}

// ---------------------------------------------------------------------------
double lifted_rho_n(const ZParams& params, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw DomainError("lifted_rho_n: empty x");
    for (double v : x)
        if (v <= 0.0) throw DomainError("lifted_rho_n: x_i must be positive");
    std::vector<std::vector<double>> K(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double kij = whittaker_kernel(params, {x[i], x[j]});
            K[i][j] = kij;
            K[j][i] = kij;
        }
    // LU with partial pivoting
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(K[r][col]) > std::abs(K[piv][col])) piv = r;
        if (K[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(K[piv], K[col]);
            det = -det;
        }
        det *= K[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = K[r][col] / K[col][col];
            for (int cc = col; cc < n; ++cc) K[r][cc] -= f * K[col][cc];
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
double lift_transform(const ScaledDensity& rho, const LiftSpec& spec,
                      const std::vector<double>& x, const QuadratureSpec& q) {
    if (spec.tau <= 0.0) throw DomainError("lift_transform: tau > 0");
    const int n = static_cast<int>(x.size());
    double ax = 0.0;
    for (double v : x) ax += std::abs(v);
    if (ax <= 0.0) throw DomainError("lift_transform: sum|x| > 0 required");
    const double tau = spec.tau;
    const double rg = rgamma(Complex(tau)).real();

    // s = ax + v; rho vanishes for s < ax.  Edge exponent (in v) comes from
    // the caller through q.exponent_left.
    const double smax = std::max(ax, tau) + 50.0;
    std::vector<double> seg{0.0, 2.0, 8.0, 24.0, smax - ax};
    while (seg.size() > 2 && seg[seg.size() - 2] >= seg.back()) seg.erase(seg.end() - 2);
    double total = 0.0;
    std::vector<double> xs(n);
    auto integrand = [&](double v) -> double {
        double s = ax + v;
        double edge = v / s;  // 1 - ax/s
        for (int i = 0; i < n; ++i) xs[i] = x[i] / s;
        return std::pow(s, tau - 1.0 - n) * std::exp(-s) * rho(xs, edge);
    };
    {
        QuadratureSpec qs = q;
        qs.rel_tol = std::max(q.rel_tol, 1e-9);
        double e = 0.0;
        Complex part = tanh_sinh(
            [&](double, double dl, double) -> Complex { return integrand(dl); },
            0.0, seg[1], qs, &e);
        total += part.real();
    }
    if (seg.size() > 2) {
        QuadratureSpec qs = q;
        qs.rel_tol = std::max(q.rel_tol, 1e-9);
        std::vector<double> rest(seg.begin() + 1, seg.end());
        Complex part = panels_integrate(
            [&](double v) -> Complex { return integrand(v); }, rest, qs, nullptr);
        total += part.real();
    }
    return total * rg;
}

double pd_lifted_rho(double t, const std::vector<double>& x) {
    if (t <= 0.0) throw DomainError("pd_lifted_rho: t > 0");
    double v = 1.0, sx = 0.0;
    for (double xi : x) {
        if (xi <= 0.0) throw DomainError("pd_lifted_rho: x_i > 0");
        v *= t / xi;
        sx += xi;
    }
    return v * std::exp(-sx);
}

// ---------------------------------------------------------------------------
double asympt_kernel_k(const ZParams& params, double ratio) {
    if (ratio <= 0.0) throw DomainError("asympt_kernel_k: ratio > 0");
    const Complex z = params.z, zp = params.zprime;
    const Complex mu = (z - zp) / 2.0;
    const double L = std::log(ratio);
    Complex v;
    if (std::abs(z - zp) < 1e-8) {
        Complex s = std::sin(PI * z);
        double shape = (std::abs(L) < 1e-6)
                           ? 1.0 + L * L * (1.0 / 6.0 - 1.0 / 24.0)
                           : L / (2.0 * std::sinh(0.5 * L));
        v = s * s / (PI * PI) * shape;
    } else {
        Complex pref = std::sin(PI * z) * std::sin(PI * zp) /
                       (PI * std::sin(PI * (z - zp)));
        Complex shape;
        if (std::abs(L) < 1e-6) {
            shape = 2.0 * mu * (1.0 + L * L * (mu * mu / 6.0 - 1.0 / 24.0));
        } else {
            shape = std::sinh(mu * L) / std::sinh(0.5 * L);
        }
        v = pref * shape;
    }
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw DomainError("asympt_kernel_k: non-real value");
    return v.real();
}

// ---------------------------------------------------------------------------
namespace {

// Least-squares slope of ln|r| against ln(lambda), with one exclusion round:
// principal-series remainders carry log-periodic factors x^{+-i Im(z-z')}
// whose nulls would otherwise poison the fit.
double robust_loglog_slope(const std::vector<double>& scales,
                           const std::vector<double>& residuals) {
    std::vector<char> keep(scales.size(), 1);
    double slope = 0.0;
    for (int round = 0; round < 2; ++round) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        size_t used = 0;
        for (size_t i = 0; i < scales.size(); ++i) {
            if (!keep[i] || residuals[i] <= 0.0) continue;
            double X = std::log(scales[i]);
            double Y = std::log(residuals[i]);
            sx += X; sy += Y; sxx += X * X; sxy += X * Y;
            ++used;
        }
        if (used < 4) throw FitFailure("asympt_remainder_fit: too few usable residuals");
        slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
        double icpt = (sy - slope * sx) / used;
        if (round == 1) break;
        for (size_t i = 0; i < scales.size(); ++i) {
            if (residuals[i] <= 0.0) { keep[i] = 0; continue; }
            double pred = icpt + slope * std::log(scales[i]);
            if (std::log(residuals[i]) < pred - 0.9) keep[i] = 0;
        }
    }
    return slope;
}

}  // namespace

AsymptFit asympt_remainder_fit(const ZParams& params, AsymptRoute route,
                               int j_min, int j_max) {
    if (j_min < 1 || j_max <= j_min) throw DomainError("asympt_remainder_fit: bad range");
    AsymptFit fit;
    const bool equal_z = std::abs(params.z - params.zprime) < 1e-12;
    fit.log_square_case = equal_z;
    if (params.series == ZParams::Series::Principal || equal_z)
        fit.theoretical = 1.0;  // equal-z case up to ln^2 factors
    else
        fit.theoretical = 1.0 - std::abs(params.z.real() - params.zprime.real());

    const double x0 = 0.8, y0 = 0.4;  // ratio 2
    const double kref = (route == AsymptRoute::Lifted)
                            ? asympt_kernel_k(params, x0 / y0)
                            : asympt_kernel_k(params, 1.0);
    for (int j = j_min; j <= j_max; ++j) {
        double lam = std::ldexp(1.0, -j);
        double r;
        if (route == AsymptRoute::Lifted) {
            double xx = lam * x0, yy = lam * y0;
            r = std::sqrt(xx * yy) * whittaker_kernel(params, {xx, yy}) - kref;
        } else {
            double xx = lam * x0;
            r = xx * rho_1_closed(params, xx).value.real() - kref;
        }
        fit.scales.push_back(lam);
        fit.residuals.push_back(std::abs(r));
    }
    // bounded-ratio diagnostic for the z = z' log^2 case
    double rb = 0.0;
    for (size_t i = 0; i < fit.scales.size(); ++i) {
        double lx = fit.scales[i] * x0;
        double den = lx * std::log(lx) * std::log(lx);
        rb = std::max(rb, fit.residuals[i] / std::abs(den));
    }
    fit.ratio_bound = rb;
    const double osc = std::abs((params.z - params.zprime).imag());
    if (osc > 1e-10) {
        // principal series: the remainder carries log-periodic factors
        // lambda^{+-i Im(z-z')}.  Iteratively de-trend: divide out the
        // current slope, RMS-average over half an oscillation period, and
        // correct until the windowed RMS is flat in log(lambda).
        int W = static_cast<int>(std::lround(3.14159265358979 / (osc * 0.6931471805599453)));
        W = std::max(4, std::min(8, W));
        double s = robust_loglog_slope(fit.scales, fit.residuals);
        for (int iter = 0; iter < 4; ++iter) {
            std::vector<double> sc, rm;
            for (size_t i = 0; i + W <= fit.residuals.size(); ++i) {
                double acc = 0.0, lmid = 0.0;
                for (int k = 0; k < W; ++k) {
                    double u = fit.residuals[i + k] *
                               std::pow(fit.scales[i + k], -s);
                    acc += u * u;
                    lmid += std::log(fit.scales[i + k]);
                }
                sc.push_back(std::exp(lmid / W));
                rm.push_back(std::sqrt(acc / W));
            }
            if (sc.size() < 3) break;
            double ds = robust_loglog_slope(sc, rm);
            s += ds;
            if (std::abs(ds) < 1e-3) break;
        }
        fit.slope = s;
    } else {
        fit.slope = robust_loglog_slope(fit.scales, fit.residuals);
    }
    // overall decay sanity (skipped in the log^2 case where only the ratio
    // bound is claimed)
    if (!equal_z && fit.residuals.front() <= fit.residuals.back())
        throw FitFailure("asympt_remainder_fit: residuals do not decrease");
    return fit;
}

}  // namespace zdpp
