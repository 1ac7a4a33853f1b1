#include "zdpp/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zdpp/quadrature.hpp"
#include "zdpp/special.hpp"

namespace zdpp {

void CorrelationQuery::validate() const {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw DomainError("CorrelationQuery: empty x");
    bool pos = x[0] > 0.0;
    for (double v : x) {
        if (v == 0.0) throw DomainError("CorrelationQuery: x_i must be nonzero");
        if ((v > 0.0) != pos)
            throw DomainError("CorrelationQuery: x_i must all have one sign");
    }
}

// ---------------------------------------------------------------------------
// Lauricella route:
//   rho_n = Gamma(t) prod_i x_i^{z+z'-2} rg(z)^n rg(z')^n
//           * S^{c-1} rg(c) * sum_sigma sgn(sigma) f_n(y; y_sigma)
// with S = 1-|x|, y_i = -S/x_i, c = t - n(z+z'-1).  S is passed through
// exactly so that quadratures against the (1-x) endpoint stay accurate.
// ---------------------------------------------------------------------------
static EvalResult rho_n_fb_positive(const ZParams& zp, const std::vector<double>& x,
                                    double S) {
    const int n = static_cast<int>(x.size());
    if (n > 3) throw SizeGuard("rho_n_fb: n <= 3");
    if (S <= 0.0) return {0.0, 0.0, Method::ClosedForm};

    std::vector<double> y(n);
    double ymax = 0.0;
    for (int i = 0; i < n; ++i) {
        y[i] = -S / x[i];
        ymax = std::max(ymax, -y[i]);
    }

    const Complex z = zp.z, zpr = zp.zprime;
    const Complex c = zp.t - static_cast<double>(n) * (z + zpr - 1.0);

    Complex sum = 0.0;
    double abs_err = 0.0;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        FNArgs fa;
        fa.params = zp;
        fa.n = n;
        fa.yprime = y;
        fa.ydoubleprime.resize(n);
        for (int i = 0; i < n; ++i) fa.ydoubleprime[i] = y[perm[i]];
        Complex fval = f_n(fa);
        sum += ((inv % 2) ? -1.0 : 1.0) * fval;
        // branch terms cancel increasingly as |y| grows
        abs_err += std::abs(fval) * 1e-14 * (1.0 + ymax);
    } while (std::next_permutation(perm.begin(), perm.end()));

    Complex pref = gamma(Complex(zp.t)) * rgamma(c) * std::pow(Complex(S), c - 1.0);
    for (int i = 0; i < n; ++i)
        pref *= std::pow(Complex(x[i]), z + zpr - 2.0) * rgamma(z) * rgamma(zpr);
    Complex v = pref * sum;
    EvalResult r{v, std::abs(pref) * abs_err + std::abs(v) * 1e-10,
                 Method::MellinBarnesContinuation};
    double re = r.real_checked(1e-8, 1e-10);
    r.value = re;
    return r;
}

EvalResult rho_n_fb(const CorrelationQuery& q) {
    q.validate();
    std::vector<double> ax(q.x.size());
    double sum = 0.0;
    for (size_t i = 0; i < q.x.size(); ++i) {
        ax[i] = std::abs(q.x[i]);
        sum += ax[i];
    }
    if (sum >= 1.0) return {0.0, 0.0, Method::ClosedForm};
    const ZParams zp = q.negative_octant() ? q.params.reflected() : q.params;
    return rho_n_fb_positive(zp, ax, 1.0 - sum);
}

EvalResult rho_1_closed(const ZParams& params, double x, double one_minus_ax) {
    if (x == 0.0) throw DomainError("rho_1_closed: x must be nonzero");
    if (one_minus_ax <= 0.0) throw DomainError("rho_1_closed: |x| < 1 required");
    const ZParams zp = (x < 0.0) ? params.reflected() : params;
    EvalResult r = rho_n_fb_positive(zp, {std::abs(x)}, one_minus_ax);
    r.method = Method::ClosedForm;
    return r;
}

EvalResult rho_1_closed(const ZParams& params, double x) {
    if (std::abs(x) >= 1.0) throw DomainError("rho_1_closed: need 0 < |x| < 1");
    return rho_1_closed(params, x, 1.0 - std::abs(x));
}

// ---------------------------------------------------------------------------
// Direct quadrature of the 2n-fold representation.  After a_i = S u_i / x_i,
// b_i = S v_i / x_i (S = 1-|x|) the region is the 2n-simplex sum(u+v) < 1
// and the last weight becomes (S(1-s))^{t-n-1} on the Duffy scale s.
// ---------------------------------------------------------------------------
EvalResult rho_n_integral(Complex z, Complex zprime, const std::vector<double>& x,
                          const QuadratureSpec& q) {
    const int n = static_cast<int>(x.size());
    if (n < 1 || n > 2)
        throw SizeGuard("rho_n_integral: n <= 2 (the 2n-fold quadrature above that "
                        "is not feasible at the required tolerance)");
    for (double v : x)
        if (v <= 0.0) throw DomainError("rho_n_integral: x_i > 0 (reflect first)");
    Complex tt = z * zprime;
    if (std::abs(tt.imag()) > 1e-10)
        throw RegimeError("rho_n_integral: z z' must be real");
    const double t = tt.real();
    if (z.real() >= 1.0 || zprime.real() >= 1.0 || t <= static_cast<double>(n))
        throw RegimeError(
            "rho_n_integral: integrable regime needs Re z < 1, Re z' < 1, t > n");
    double axsum = 0.0;
    for (double v : x) axsum += v;
    if (axsum >= 1.0) return {0.0, 0.0, Method::DirectQuadrature};
    const double S = 1.0 - axsum;

    Complex pref = std::pow(Complex(t), n) * gamma(Complex(t)) *
                   std::pow(rgamma(1.0 - z) * rgamma(1.0 + zprime) *
                                rgamma(1.0 - zprime) * rgamma(1.0 + z),
                            n) *
                   rgamma(Complex(t - n));

    double err = 0.0;
    Complex I = 0.0;
    if (n == 1) {
        const double r = S / x[0];
        QuadratureSpec qs = q;
        qs.exponent_left = 1.0 - z.real() - zprime.real();
        qs.exponent_right = t - 2.0;
        QuadratureSpec qw = q;
        qw.exponent_left = -z.real();
        qw.exponent_right = -zprime.real();
        I = tanh_sinh(
            [&](double, double s, double s1) -> Complex {
                double werr = 0.0;
                Complex inner = tanh_sinh(
                    [&](double, double w, double w1) -> Complex {
                        double a = r * s * w, b = r * s * w1;
                        return std::pow(Complex(a), -z) *
                               std::pow(Complex(1.0 + a), zprime) *
                               std::pow(Complex(b), -zprime) *
                               std::pow(Complex(1.0 + b), z) / (a + b + 1.0);
                    },
                    0.0, 1.0, qw, &werr);
                return inner * s * std::pow(Complex(S * s1), t - 2.0);
            },
            0.0, 1.0, qs, &err);
        I *= r * r;
    } else {
        if (std::abs(z.imag()) > 1e-13 || std::abs(zprime.imag()) > 1e-13)
            throw RegimeError("rho_n_integral: n = 2 supports real (z, z') only");
        const double zr = z.real(), zpr = zprime.real();
        const double r1 = S / x[0], r2 = S / x[1];
        QuadratureSpec qb = q;
        qb.max_doublings = std::min(q.max_doublings, 4);
        qb.rel_tol = std::max(q.rel_tol, 1e-8);
        QuadratureSpec qw = qb;
        qw.exponent_left = -zr;
        qw.exponent_right = -zpr;
        QuadratureSpec qv = qb;
        qv.exponent_left = 1.0 - zr - zpr;
        qv.exponent_right = 1.0 - zr - zpr;
        QuadratureSpec qouter = qb;
        qouter.exponent_left = 3.0 - 2.0 * (zr + zpr);
        qouter.exponent_right = t - 3.0;

        // diagonal coupling 1/((a1+b1+1)(a2+b2+1)): pair integrals separate
        auto pair_term = [&](double rr, double scale) -> Complex {
            double e = 0.0;
            return tanh_sinh(
                [&](double, double w, double w1) -> Complex {
                    double a = rr * scale * w, b = rr * scale * w1;
                    return std::pow(Complex(a), -zr) * std::pow(Complex(1.0 + a), zpr) *
                           std::pow(Complex(b), -zpr) * std::pow(Complex(1.0 + b), zr) /
                           (a + b + 1.0);
                },
                0.0, 1.0, qw, &e);
        };
        Complex Idiag = tanh_sinh(
            [&](double, double s, double s1) -> Complex {
                double e1 = 0.0;
                Complex inner = tanh_sinh(
                    [&](double, double v, double v1) -> Complex {
                        double p1 = s * v, p2 = s * v1;
                        return pair_term(r1, p1) * pair_term(r2, p2) * p1 * p2;
                    },
                    0.0, 1.0, qv, &e1);
                return inner * s * std::pow(Complex(S * s1), t - 3.0);
            },
            0.0, 1.0, qouter, &err);

        // swapped coupling 1/((a1+b2+1)(a2+b1+1)): full 4-level nesting
        double err2 = 0.0;
        Complex Icross = tanh_sinh(
            [&](double, double s, double s1) -> Complex {
                double e1 = 0.0;
                Complex inner = tanh_sinh(
                    [&](double, double v, double v1) -> Complex {
                        double p1 = s * v, p2 = s * v1;
                        double e2 = 0.0;
                        Complex lvl2 = tanh_sinh(
                            [&](double, double w1, double w11) -> Complex {
                                double a1 = r1 * p1 * w1, b1 = r1 * p1 * w11;
                                double e3 = 0.0;
                                Complex lvl3 = tanh_sinh(
                                    [&](double, double w2, double w21) -> Complex {
                                        double a2 = r2 * p2 * w2, b2 = r2 * p2 * w21;
                                        return std::pow(Complex(a2), -zr) *
                                               std::pow(Complex(1.0 + a2), zpr) *
                                               std::pow(Complex(b2), -zpr) *
                                               std::pow(Complex(1.0 + b2), zr) /
                                               ((a1 + b2 + 1.0) * (a2 + b1 + 1.0));
                                    },
                                    0.0, 1.0, qw, &e3);
                                return lvl3 * std::pow(Complex(a1), -zr) *
                                       std::pow(Complex(1.0 + a1), zpr) *
                                       std::pow(Complex(b1), -zpr) *
                                       std::pow(Complex(1.0 + b1), zr);
                            },
                            0.0, 1.0, qw, &e2);
                        return lvl2 * p1 * p2;
                    },
                    0.0, 1.0, qv, &e1);
                return inner * s * std::pow(Complex(S * s1), t - 3.0);
            },
            0.0, 1.0, qouter, &err2);
        I = (Idiag - Icross) * (r1 * r1 * r2 * r2);
        err = (err + err2) * (r1 * r1 * r2 * r2);
    }
    Complex v = pref * I;
    return {v, err * std::abs(pref) + std::abs(v) * 1e-9, Method::DirectQuadrature};
}

// ---------------------------------------------------------------------------
double asympt_const_A(const ZParams& params) {
    const double PI = 3.14159265358979323846;
    Complex z = params.z, zp = params.zprime;
    Complex diff = z - zp;
    Complex v;
    if (std::abs(diff) < 1e-8) {
        Complex s = std::sin(PI * z);
        v = s * s / (PI * PI);
    } else {
        v = diff * std::sin(PI * z) * std::sin(PI * zp) / (PI * std::sin(PI * diff));
    }
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
        throw DomainError("asympt_const_A: non-real value");
    return v.real();
}

// ---------------------------------------------------------------------------
// Moment identity.  The rho_1 node values are cached and shared across l
// (the node set is identical once the endpoint exponents are fixed at the
// l = 0 worst case).
// ---------------------------------------------------------------------------
MomentCheckReport controlling_density_check(const ZParams& params, int l_max,
                                            const QuadratureSpec& quad) {
    if (l_max < 0 || l_max > 6)
        throw SizeGuard("controlling_density_check: l_max <= 6");
    // x rho_1(x) -> A_{zz'}(0) at the origin, so the head [0, eps] contributes
    // A eps^{l+1}/(l+1) + O(eps^{l+2-|z-z'|}); the cut keeps the quadrature
    // out of the deep-x regime where the branch cancellation in f_1 exceeds
    // double precision.
    const double eps = 1e-8;
    using NodeKey = std::pair<double, double>;  // (x, 1-x) both exact
    auto octant = [&](const ZParams& zp, int l, std::map<NodeKey, double>& cache) {
        const Complex c = zp.t - (zp.z + zp.zprime - 1.0);
        QuadratureSpec qs = quad;
        qs.rel_tol = std::max(quad.rel_tol, 1e-9);
        qs.exponent_left = 0.0;  // x^{l+1} rho_1 is bounded at the origin
        qs.exponent_right = c.real() - 1.0;
        double head = asympt_const_A(zp) * std::pow(eps, l + 1) / (l + 1);
        return head + tanh_sinh(
                          [&](double, double dl, double dr) -> Complex {
                              double xv = eps + dl;
                              NodeKey key{xv, dr};
                              auto it = cache.find(key);
                              double rho;
                              if (it != cache.end()) {
                                  rho = it->second;
                              } else {
                                  rho = rho_1_closed(zp, xv, dr).value.real();
                                  cache.emplace(key, rho);
                              }
                              return std::pow(xv, l + 1) * rho;
                          },
                          eps, 1.0, qs, nullptr)
                          .real();
    };
    MomentCheckReport rep;
    std::map<NodeKey, double> cache_pos, cache_neg;
    const ZParams refl = params.reflected();
    for (int l = 0; l <= l_max; ++l) {
        double pos = octant(params, l, cache_pos);
        double neg = octant(refl, l, cache_neg) * ((l % 2) ? -1.0 : 1.0);
        double quad_val = pos + neg;
        double exact = controlling_moment(params, {l});
        double dev = std::abs(quad_val - exact) /
                     std::max({std::abs(exact), std::abs(quad_val), 1e-30});
        rep.rows.push_back({l, quad_val, exact, dev});
        rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
    }
    return rep;
}

}  // namespace zdpp
