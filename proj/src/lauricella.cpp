#include "zdpp/lauricella.hpp"

#include <algorithm>
#include <cmath>

#include "zdpp/quadrature.hpp"
#include "zdpp/special.hpp"

namespace zdpp {

void FBParams::validate() const {
    if (a.size() != b.size() || a.empty())
        throw DomainError("FBParams: a and b must have equal positive length");
    if (is_nonpositive_integer(c))
        throw ParameterPole("FBParams: c is a nonpositive integer");
}

void FNArgs::validate() const {
    if (n < 1 || n > 3) throw SizeGuard("f_n: 1 <= n <= 3");
    if (static_cast<int>(yprime.size()) != n ||
        static_cast<int>(ydoubleprime.size()) != n)
        throw DomainError("f_n: y' and y'' must have length n");
    for (double v : yprime)
        if (v >= 0.0) throw DomainError("f_n: y' entries must be negative");
    for (double v : ydoubleprime)
        if (v >= 0.0) throw DomainError("f_n: y'' entries must be negative");
}

// ---------------------------------------------------------------------------
// Series route.  Only the total degree couples the slots (through 1/(c)_N),
// so the per-slot coefficient arrays are convolved.  Entries grow like k!,
// which stays inside double range up to degree ~160; closer to the polydisc
// boundary an m<=2 lattice recurrence with ratio updates takes over.
// ---------------------------------------------------------------------------
static std::vector<Complex> conv(const std::vector<Complex>& u,
                                 const std::vector<Complex>& v, size_t cap) {
    std::vector<Complex> w(std::min(cap, u.size() + v.size() - 1), 0.0);
    for (size_t i = 0; i < u.size() && i < w.size(); ++i) {
        if (u[i] == 0.0) continue;
        for (size_t j = 0; j < v.size() && i + j < w.size(); ++j)
            w[i + j] += u[i] * v[j];
    }
    return w;
}

static Complex fb_series_lattice2(const FBParams& p, const std::vector<Complex>& y,
                                  double tol) {
    // m = 2, terms by total degree N; running ratios keep magnitudes tame
    Complex sum = 0.0;
    int small_run = 0;
    Complex diag = 1.0;  // term at (0, N) built recursively
    for (long N = 0; N < 20000; ++N) {
        Complex term = diag;  // k = (0, N)
        Complex layer = term;
        for (long k = 0; k < N; ++k) {
            // (k, N-k) -> (k+1, N-k-1)
            term *= (p.a[0] + static_cast<double>(k)) * (p.b[0] + static_cast<double>(k)) *
                    y[0] * (static_cast<double>(N - k)) /
                    ((static_cast<double>(k) + 1.0) *
                     (p.a[1] + static_cast<double>(N - k - 1)) *
                     (p.b[1] + static_cast<double>(N - k - 1)) * y[1]);
            layer += term;
        }
        sum += layer;
        if (N > 3 && std::abs(layer) < tol * (1.0 + std::abs(sum))) {
            if (++small_run >= 3) return sum;
        } else {
            small_run = 0;
        }
        // term(0, N+1) = term(0, N) * (a2+N)(b2+N) y2 / ((N+1)(c+N))
        diag *= (p.a[1] + static_cast<double>(N)) * (p.b[1] + static_cast<double>(N)) /
                ((static_cast<double>(N) + 1.0) * (p.c + static_cast<double>(N))) * y[1];
    }
    throw NoConvergentRoute("fb_series: lattice sum did not converge");
}

EvalResult fb_series(const FBParams& p, const std::vector<Complex>& y) {
    p.validate();
    const int m = p.m();
    if (static_cast<int>(y.size()) != m) throw DomainError("fb_series: y size mismatch");
    double ymax = 0.0;
    for (const Complex& v : y) ymax = std::max(ymax, std::abs(v));
    if (ymax > 0.95) throw OutsidePolydisc("fb_series: max|y_i| > 0.95");

    const double tol = 1e-15;
    size_t deg = 40;
    if (ymax > 1e-12)
        deg = static_cast<size_t>(
            std::min(4000.0, 48.0 + 1.25 * std::log(tol) / std::log(ymax)));

    if (deg > 160) {
        if (m == 1) {
            Complex v = gauss_2f1(p.a[0], p.b[0], p.c, y[0]).value;
            return {v, 8.0 * std::abs(v) * 1e-15, Method::Series};
        }
        if (m == 2) {
            Complex v = fb_series_lattice2(p, y, tol);
            return {v, 8.0 * std::abs(v) * 1e-14, Method::Series};
        }
        throw NoConvergentRoute(
            "fb_series: arguments too close to the polydisc boundary for m > 2");
    }

    std::vector<Complex> acc{1.0};
    for (int i = 0; i < m; ++i) {
        std::vector<Complex> ci(deg + 1);
        Complex term = 1.0;
        for (size_t k = 0; k <= deg; ++k) {
            ci[k] = term;
            term *= (p.a[i] + static_cast<double>(k)) * (p.b[i] + static_cast<double>(k)) /
                    (static_cast<double>(k) + 1.0) * y[i];
        }
        acc = conv(acc, ci, deg + 1);
    }
    Complex sum = 0.0, cpoch = 1.0;
    int small_run = 0;
    double last = 0.0;
    for (size_t N = 0; N < acc.size(); ++N) {
        Complex layer = acc[N] / cpoch;
        sum += layer;
        last = std::abs(layer);
        cpoch *= (p.c + static_cast<double>(N));
        if (N > 3 && last < tol * (1.0 + std::abs(sum))) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    if (last > 1e3 * tol * (1.0 + std::abs(sum)))
        throw NoConvergentRoute("fb_series: truncated before convergence");
    return {sum, last + 8.0 * std::abs(sum) * 1e-15, Method::Series};
}

// ---------------------------------------------------------------------------
// Euler-Laplace integral, m <= 2.
// ---------------------------------------------------------------------------
EvalResult fb_euler_integral(const FBParams& p, const std::vector<double>& y,
                             const QuadratureSpec& q0) {
    p.validate();
    const int m = p.m();
    if (static_cast<int>(y.size()) != m)
        throw DomainError("fb_euler_integral: y size mismatch");
    for (double v : y)
        if (v >= 0.0) throw PreconditionViolated("fb_euler_integral: y_i must be negative");
    Complex bsum = 0.0;
    for (const Complex& bi : p.b) {
        if (bi.real() <= 0.0)
            throw PreconditionViolated("fb_euler_integral: Re b_i must be positive");
        bsum += bi;
    }
    const Complex cend = p.c - bsum;
    if (cend.real() <= 0.0)
        throw PreconditionViolated("fb_euler_integral: Re(c - sum b) must be positive");

    double err = 0.0;
    Complex I;
    if (m == 1) {
        QuadratureSpec q = q0;
        q.exponent_left = p.b[0].real() - 1.0;
        q.exponent_right = cend.real() - 1.0;
        I = tanh_sinh(
            [&](double, double dl, double dr) -> Complex {
                return std::pow(Complex(dl), p.b[0] - 1.0) *
                       std::pow(Complex(dr), cend - 1.0) *
                       std::pow(Complex(1.0 - dl * y[0]), -p.a[0]);
            },
            0.0, 1.0, q, &err);
        I *= rgamma(p.b[0]) * rgamma(cend);
    } else if (m == 2) {
        // Duffy map u1 = s w, u2 = s (1-w); the s- and w-factors separate
        QuadratureSpec qs = q0;
        qs.rel_tol = std::max(q0.rel_tol, 1e-11);
        qs.exponent_left = p.b[0].real() + p.b[1].real() - 1.0;
        qs.exponent_right = cend.real() - 1.0;
        QuadratureSpec qw = qs;
        qw.exponent_left = p.b[0].real() - 1.0;
        qw.exponent_right = p.b[1].real() - 1.0;
        double err_outer = 0.0;
        I = tanh_sinh(
            [&](double, double s, double s1) -> Complex {
                double werr = 0.0;
                Complex inner = tanh_sinh(
                    [&](double, double w, double w1) -> Complex {
                        return std::pow(Complex(w), p.b[0] - 1.0) *
                               std::pow(Complex(w1), p.b[1] - 1.0) *
                               std::pow(Complex(1.0 - s * w * y[0]), -p.a[0]) *
                               std::pow(Complex(1.0 - s * w1 * y[1]), -p.a[1]);
                    },
                    0.0, 1.0, qw, &werr);
                return inner * std::pow(Complex(s), p.b[0] + p.b[1] - 1.0) *
                       std::pow(Complex(s1), cend - 1.0);
            },
            0.0, 1.0, qs, &err_outer);
        err = err_outer;
        I *= rgamma(p.b[0]) * rgamma(p.b[1]) * rgamma(cend);
    } else {
        throw SizeGuard("fb_euler_integral: m <= 2");
    }
    Complex v = gamma(p.c) * I;
    return {v, (err + 1e-11 * std::abs(I)) * std::abs(gamma(p.c)),
            Method::EulerIntegral};
}

// ---------------------------------------------------------------------------
// Mellin-Barnes with residue-corrected straight contours.
// ---------------------------------------------------------------------------
namespace {

struct CrossedPole {
    Complex pos;
    Complex coeff;
};

Complex slot_factor(const Complex& a, const Complex& b, double y, const Complex& s) {
    return std::exp(log_gamma(a + s) + log_gamma(b + s) + log_gamma(-s) +
                    s * std::log(-y));
}

double pole_distance(double c, const Complex& a, const Complex& b) {
    double dmin = 1e9;
    for (int k = 0; k < 16; ++k) {  // Gamma(-s) poles at 0,1,2,...
        dmin = std::min(dmin, std::abs(c - k));
        if (k > c + 2.0) break;
    }
    for (const Complex& e : {a, b})
        for (int k = 0; k < 64; ++k) {
            double re = -e.real() - k;
            dmin = std::min(dmin, std::hypot(c - re, e.imag()));
            if (re < c - 2.0) break;
        }
    return dmin;
}

double choose_abscissa(const Complex& a, const Complex& b, double min_dist) {
    double best = -0.5, bestd = -1.0;
    for (int i = 1; i < 190; ++i) {
        double c = -0.005 * i;
        double d = pole_distance(c, a, b);
        if (d > bestd) { bestd = d; best = c; }
    }
    if (bestd < min_dist)
        throw PoleOnContour("fb_mellin_barnes: no straight contour separates the poles");
    return best;
}

std::vector<CrossedPole> crossed_poles(const Complex& a, const Complex& b,
                                       double y, double c_line) {
    std::vector<CrossedPole> out;
    const Complex pair[2] = {a, b};
    for (int which = 0; which < 2; ++which) {
        const Complex e = pair[which];
        const Complex other = pair[1 - which];
        for (int k = 0;; ++k) {
            Complex pos = -e - static_cast<double>(k);
            if (pos.real() <= c_line) break;
            if (std::abs(other + pos) < 1e-9 || is_nonpositive_integer(-pos, 1e-9))
                throw PoleOnContour(
                    "fb_mellin_barnes: a crossed pole coincides with another pole");
            double sgn = (k % 2) ? -1.0 : 1.0;
            double kfact = 1.0;
            for (int j = 2; j <= k; ++j) kfact *= j;
            Complex coeff = sgn / kfact * gamma(other + pos) * gamma(-pos) *
                            std::pow(Complex(-y), pos);
            out.push_back({pos, coeff});
        }
    }
    return out;
}

Complex mb_line(const std::function<Complex(Complex)>& f, double c, double width,
                double T) {
    double h = std::min(width / 5.6, 0.22);
    long n = static_cast<long>(T / h) + 1;
    Complex sum = f(Complex(c, 0.0));
    for (long j = 1; j <= n; ++j)
        sum += f(Complex(c, j * h)) + f(Complex(c, -j * h));
    return sum * h;
}

}  // namespace

EvalResult fb_mellin_barnes(const FBParams& p, const std::vector<double>& y,
                            const ContourSpec& contour) {
    p.validate();
    const int m = p.m();
    if (m > 2) throw SizeGuard("fb_mellin_barnes: m <= 2");
    if (static_cast<int>(y.size()) != m)
        throw DomainError("fb_mellin_barnes: y size mismatch");
    for (double v : y)
        if (v >= 0.0) throw PreconditionViolated("fb_mellin_barnes: y_i must be negative");
    for (int i = 0; i < m; ++i)
        if (is_nonpositive_integer(p.a[i]) || is_nonpositive_integer(p.b[i]))
            throw ParameterPole("fb_mellin_barnes: a_i, b_i must avoid 0, -1, -2, ...");

    const double TWO_PI = 6.28318530717958647692;
    std::vector<double> cs(m), ws(m);
    for (int i = 0; i < m; ++i) {
        if (contour.choose_auto) {
            cs[i] = choose_abscissa(p.a[i], p.b[i], contour.min_pole_distance);
        } else {
            cs[i] = contour.abscissa;
            if (cs[i] >= 0.0)
                throw PoleOnContour("fb_mellin_barnes: contour must have Re s < 0");
            if (pole_distance(cs[i], p.a[i], p.b[i]) < contour.min_pole_distance)
                throw PoleOnContour("fb_mellin_barnes: requested contour sits on a pole");
        }
        ws[i] = std::min(1.0, pole_distance(cs[i], p.a[i], p.b[i]));
    }

    Complex pref = gamma(p.c);
    for (int i = 0; i < m; ++i) pref *= rgamma(p.a[i]) * rgamma(p.b[i]);
    const double T = contour.im_cutoff;

    Complex v;
    if (m == 1) {
        auto f = [&](Complex s) {
            return slot_factor(p.a[0], p.b[0], y[0], s) * rgamma(p.c + s);
        };
        Complex I = mb_line(f, cs[0], ws[0], T) / TWO_PI;
        Complex R = 0.0;
        for (const auto& cp : crossed_poles(p.a[0], p.b[0], y[0], cs[0]))
            R += cp.coeff * rgamma(p.c + cp.pos);
        v = pref * (I + R);
    } else {
        auto cross1 = crossed_poles(p.a[0], p.b[0], y[0], cs[0]);
        auto cross2 = crossed_poles(p.a[1], p.b[1], y[1], cs[1]);
        auto f1 = [&](Complex s1) {
            Complex inner = mb_line(
                [&](Complex s2) {
                    return slot_factor(p.a[1], p.b[1], y[1], s2) * rgamma(p.c + s1 + s2);
                },
                cs[1], ws[1], T);
            return slot_factor(p.a[0], p.b[0], y[0], s1) * inner;
        };
        Complex I00 = mb_line(f1, cs[0], ws[0], T) / (TWO_PI * TWO_PI);
        Complex I10 = 0.0;
        for (const auto& cp : cross1)
            I10 += cp.coeff *
                   mb_line(
                       [&](Complex s2) {
                           return slot_factor(p.a[1], p.b[1], y[1], s2) *
                                  rgamma(p.c + cp.pos + s2);
                       },
                       cs[1], ws[1], T) /
                   TWO_PI;
        Complex I01 = 0.0;
        for (const auto& cp : cross2)
            I01 += cp.coeff *
                   mb_line(
                       [&](Complex s1) {
                           return slot_factor(p.a[0], p.b[0], y[0], s1) *
                                  rgamma(p.c + cp.pos + s1);
                       },
                       cs[0], ws[0], T) /
                   TWO_PI;
        Complex I11 = 0.0;
        for (const auto& c1 : cross1)
            for (const auto& c2 : cross2)
                I11 += c1.coeff * c2.coeff * rgamma(p.c + c1.pos + c2.pos);
        v = pref * (I00 + I10 + I01 + I11);
    }
    return {v, std::abs(v) * 1e-11, Method::MellinBarnesContinuation};
}

// ---------------------------------------------------------------------------
// Large-argument expansion.  Branch for subset mask: slots with the bit set
// use the a-exponent.  Gamma(e) factors are folded against the 1/Gamma(e)
// prefactor so parameter poles cancel analytically:
//   branch = prod_slots [ (-y)^{-e} Gamma(o-e) / Gamma(o) ]
//            * sum_K conv(...)[K] / Gamma(c - shift - K)
// and fb_continuation = Gamma(c) * sum_branches.
// ---------------------------------------------------------------------------
Complex fb_continuation_branch(const FBParams& p, const std::vector<double>& y,
                               unsigned mask, const SeriesTrunc& terms) {
    const int m = p.m();
    const size_t deg = static_cast<size_t>(terms.max_degree);
    Complex lead = 1.0, shift = 0.0;
    std::vector<Complex> acc{1.0};
    for (int i = 0; i < m; ++i) {
        const bool use_a = (mask >> i) & 1u;
        const Complex e = use_a ? p.a[i] : p.b[i];
        const Complex o = use_a ? p.b[i] : p.a[i];
        lead *= std::pow(Complex(-y[i]), -e) * gamma(o - e) * rgamma(o);
        shift += e;
        // normalized inner coefficients: start 1, ratio (e+k)/((o-e-1-k)(k+1)y)
        std::vector<Complex> ci(deg + 1);
        Complex term = 1.0;
        for (size_t k = 0; k <= deg; ++k) {
            ci[k] = term;
            term *= (e + static_cast<double>(k)) /
                    ((o - e - 1.0 - static_cast<double>(k)) *
                     (static_cast<double>(k) + 1.0) * y[i]);
        }
        acc = conv(acc, ci, deg + 1);
    }
    Complex sum = 0.0;
    int small_run = 0;
    bool converged = false;
    double last = 0.0;
    for (size_t K = 0; K < acc.size(); ++K) {
        Complex rg = rgamma(p.c - shift - static_cast<double>(K));
        // the convolution entries decay like 1/K! while the gamma factor
        // grows like K!; past ~10^280 the product is 0 * inf
        if (std::abs(acc[K]) < 1e-280 ||
            !(std::isfinite(rg.real()) && std::isfinite(rg.imag())))
            break;
        Complex layer = acc[K] * rg;
        sum += layer;
        last = std::abs(layer);
        if (K > 2 && last < terms.rel_tol * (1.0 + std::abs(sum))) {
            if (++small_run >= 3) {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if (!converged && last > 1e2 * terms.rel_tol * (1.0 + std::abs(sum)))
        throw NoConvergentRoute("fb_continuation: inner series not converging");
    return lead * sum;
}

EvalResult fb_continuation(const FBParams& p, const std::vector<double>& y,
                           const SeriesTrunc& terms) {
    p.validate();
    const int m = p.m();
    if (static_cast<int>(y.size()) != m)
        throw DomainError("fb_continuation: y size mismatch");
    for (double v : y)
        if (v > -2.0) throw PreconditionViolated("fb_continuation: y_i <= -2 required");
    for (int i = 0; i < m; ++i) {
        Complex d = p.a[i] - p.b[i];
        if (std::abs(d.imag()) < 1e-12 &&
            std::abs(d.real() - std::round(d.real())) < 1e-12)
            throw DegenerateDifference("fb_continuation: a_i - b_i is an integer");
    }
    Complex total = 0.0;
    for (unsigned mask = 0; mask < (1u << m); ++mask)
        total += fb_continuation_branch(p, y, mask, terms);
    Complex v = gamma(p.c) * total;
    return {v, std::abs(v) * terms.rel_tol * 10.0, Method::MellinBarnesContinuation};
}

// ---------------------------------------------------------------------------
// Polygamma, order 1..8.
// ---------------------------------------------------------------------------
Complex polygamma(int k, Complex x) {
    if (k == 0) return digamma(x);
    if (k < 0 || k > 8) throw DomainError("polygamma: order 0..8");
    if (is_nonpositive_integer(x))
        throw PoleAtNonpositiveInteger("polygamma at nonpositive integer");
    if (x.real() < 0.5) {
        // psi^(k)(x) = (-1)^k psi^(k)(1-x) - pi^{k+1} cot^(k)(pi x);
        // derivatives of cot as polynomials in u = cot via P' -> -(1+u^2) P'
        const double PI_ = 3.14159265358979323846;
        std::vector<double> P{0.0, 1.0};  // P_0(u) = u
        for (int j = 0; j < k; ++j) {
            std::vector<double> D(P.size() - 1, 0.0);
            for (size_t i = 1; i < P.size(); ++i)
                D[i - 1] = P[i] * static_cast<double>(i);
            std::vector<double> Q(D.size() + 2, 0.0);
            for (size_t i = 0; i < D.size(); ++i) {
                Q[i] -= D[i];
                Q[i + 2] -= D[i];
            }
            P = std::move(Q);
        }
        Complex u = std::cos(PI_ * x) / std::sin(PI_ * x);
        Complex cotk = 0.0;
        for (size_t i = P.size(); i-- > 0;) cotk = cotk * u + P[i];
        Complex refl = polygamma(k, 1.0 - x);
        double sgn_k = (k % 2) ? -1.0 : 1.0;
        return sgn_k * refl - std::pow(PI_, k + 1) * cotk;
    }
    double kfact = 1.0;
    for (int j = 2; j <= k; ++j) kfact *= j;
    const double sgn = (k % 2) ? 1.0 : -1.0;  // (-1)^{k+1} = (-1)^{k-1}
    Complex acc = 0.0;
    while (x.real() < 18.0) {
        acc += sgn * kfact / std::pow(x, k + 1);
        x += 1.0;
    }
    // psi^(k)(x) = (-1)^{k-1} [ (k-1)!/x^k + k!/(2x^{k+1})
    //            + sum_j B_{2j} (2j+k-1)!/(2j)! x^{-2j-k} ]
    static const double B2[8] = {1.0 / 6,  -1.0 / 30,      1.0 / 42, -1.0 / 30,
                                 5.0 / 66, -691.0 / 2730,  7.0 / 6,  -3617.0 / 510};
    Complex T = (kfact / static_cast<double>(k)) * std::pow(x, -k) +
                0.5 * kfact * std::pow(x, -(k + 1));
    for (int j = 1; j <= 8; ++j) {
        double ratio = 1.0;  // (2j+k-1)!/(2j)!
        for (int i = 2 * j + 1; i <= 2 * j + k - 1; ++i) ratio *= i;
        T += B2[j - 1] * ratio * std::pow(x, -(2.0 * j + k));
    }
    return acc + sgn * T;
}

// ---------------------------------------------------------------------------
// Logarithmic expansion (b = a).  The Mellin-Barnes integrand has double
// poles in every slot; the iterated residue brings in polygamma cross-terms
// through the coupled 1/Gamma(c + s_1 + ... + s_m):
//
//   term(k) = rgamma(w) * sum_{r=0}^m e_r({B_i}) D_{m-r}(w),
//   w   = c - sum(a_i + k_i),
//   B_i = ln(-y_i) + 2 psi(k_i+1) - psi(a_i+k_i) - psi(w),
//   D_r = r! [delta^r] exp( - sum_{j>=2} psi^{(j-1)}(w) delta^j / j! ).
//
// (The product formula without the D-corrections is exact only for m = 1.)
// ---------------------------------------------------------------------------
EvalResult fb_continuation_log(const std::vector<Complex>& a, Complex c,
                               const std::vector<double>& y,
                               const SeriesTrunc& terms) {
    const int m = static_cast<int>(a.size());
    if (m < 1 || m > 6) throw SizeGuard("fb_continuation_log: 1 <= m <= 6");
    if (static_cast<int>(y.size()) != m)
        throw DomainError("fb_continuation_log: y size mismatch");
    for (double v : y)
        if (v > -2.0) throw PreconditionViolated("fb_continuation_log: y_i <= -2 required");

    const size_t deg = std::min<size_t>(terms.max_degree, 150);
    // per-slot arrays, normalized by Gamma(a_i):
    //   C_i[k] = (a_i)_k / ((k!)^2 (-y_i)^k),  L_i[k] = ln(-y_i)+2psi(k+1)-psi(a_i+k)
    std::vector<std::vector<Complex>> C(m), Lc(m);
    for (int i = 0; i < m; ++i) {
        C[i].resize(deg + 1);
        Lc[i].resize(deg + 1);
        Complex g = 1.0;
        for (size_t k = 0; k <= deg; ++k) {
            C[i][k] = g;
            Lc[i][k] = std::log(-y[i]) + 2.0 * digamma(Complex(k + 1.0)) -
                       digamma(a[i] + static_cast<double>(k));
            g *= (a[i] + static_cast<double>(k)) /
                 ((static_cast<double>(k) + 1.0) * (static_cast<double>(k) + 1.0) *
                  (-y[i]));
        }
    }
    // acc[r][K] = sum_{|k|=K} e_r({L_i[k_i]}) prod_i C_i[k_i]
    std::vector<std::vector<Complex>> acc(1, std::vector<Complex>{1.0});
    for (int i = 0; i < m; ++i) {
        std::vector<std::vector<Complex>> nxt(acc.size() + 1,
                                              std::vector<Complex>(deg + 1, 0.0));
        for (size_t r = 0; r < acc.size(); ++r)
            for (size_t K = 0; K < acc[r].size(); ++K) {
                if (acc[r][K] == 0.0) continue;
                for (size_t k = 0; K + k <= deg; ++k) {
                    Complex base = acc[r][K] * C[i][k];
                    nxt[r][K + k] += base;
                    nxt[r + 1][K + k] += base * Lc[i][k];
                }
            }
        acc = std::move(nxt);
    }
    Complex ashift = 0.0;
    for (const Complex& ai : a) ashift += ai;
    Complex pref = gamma(c);
    Complex lead = 1.0;
    for (int i = 0; i < m; ++i) {
        pref *= rgamma(a[i]);  // one 1/Gamma(a_i) cancelled into (a_i)_k
        lead *= std::pow(Complex(-y[i]), -a[i]);
    }

    Complex sum = 0.0;
    int small_run = 0;
    bool converged = false;
    double last = 0.0;
    for (size_t K = 0; K <= deg; ++K) {
        Complex w = c - ashift - static_cast<double>(K);
        if (is_nonpositive_integer(w, 1e-7))
            throw NoConvergentRoute(
                "fb_continuation_log: c - sum(a) - K hits a gamma pole; perturb c");
        {
            double amax = 0.0;
            for (size_t r = 0; r < acc.size(); ++r)
                if (K < acc[r].size()) amax = std::max(amax, std::abs(acc[r][K]));
            if (amax < 1e-280) break;  // underflow floor, same as the generic route
        }
        Complex psi0 = digamma(w);
        // D_r from the exponential of the polygamma series
        std::vector<Complex> D(m + 1, 0.0);
        {
            std::vector<Complex> lcoef(m + 1, 0.0);
            double jfact = 1.0;
            for (int j = 2; j <= m; ++j) {
                jfact *= j;
                lcoef[j] = -polygamma(j - 1, w) / jfact;
            }
            std::vector<Complex> e(m + 1, 0.0);
            e[0] = 1.0;
            for (int N = 1; N <= m; ++N) {
                Complex s2 = 0.0;
                for (int j = 2; j <= N; ++j)
                    s2 += static_cast<double>(j) * lcoef[j] * e[N - j];
                e[N] = s2 / static_cast<double>(N);
            }
            double rf = 1.0;
            for (int r = 0; r <= m; ++r) {
                if (r >= 2) rf *= r;
                D[r] = e[r] * rf;
            }
            D[0] = 1.0;
            if (m >= 1) D[1] = 0.0;
        }
        // e_r({L_i - psi0}) = sum_j e_j(L) C(m-j, r-j) (-psi0)^{r-j}
        Complex layer = 0.0;
        for (int r = 0; r <= m; ++r) {
            Complex Sr = 0.0;
            for (int j = 0; j <= r; ++j) {
                if (static_cast<size_t>(j) >= acc.size() || K >= acc[j].size()) continue;
                double binom = 1.0;
                for (int i2 = 0; i2 < r - j; ++i2)
                    binom = binom * (m - j - i2) / (i2 + 1.0);
                Sr += acc[j][K] * binom * std::pow(-psi0, r - j);
            }
            layer += Sr * D[m - r];
        }
        Complex rg = rgamma(w);
        if (!(std::isfinite(rg.real()) && std::isfinite(rg.imag()))) break;
        layer *= rg;
        sum += layer;
        last = std::abs(layer);
        if (K > 2 && last < terms.rel_tol * (1.0 + std::abs(sum))) {
            if (++small_run >= 3) {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if (!converged && last > 1e2 * terms.rel_tol * (1.0 + std::abs(sum)))
        throw NoConvergentRoute("fb_continuation_log: series not converging");
    Complex v = pref * lead * sum;
    return {v, std::abs(v) * terms.rel_tol * 10.0, Method::MellinBarnesContinuation};
}

// ---------------------------------------------------------------------------
// Dispatcher.
// ---------------------------------------------------------------------------
EvalResult fb_eval(const FBParams& p, const std::vector<double>& y) {
    p.validate();
    const int m = p.m();
    double ymax = 0.0, ymin = 1e300;
    for (double v : y) {
        if (v >= 0.0) throw DomainError("fb_eval: y_i must be negative");
        ymax = std::max(ymax, std::abs(v));
        ymin = std::min(ymin, std::abs(v));
    }
    if (ymax <= 0.95) {
        std::vector<Complex> yc(y.begin(), y.end());
        return fb_series(p, yc);
    }
    // near |y| = 2 the expansions converge too slowly to beat the underflow
    // floor; Mellin-Barnes covers that band for m <= 2
    const double contin_floor = (m <= 2) ? 4.0 : 2.0;
    if (ymin >= contin_floor) {
        bool log_case = true;
        for (int i = 0; i < m; ++i)
            if (std::abs(p.a[i] - p.b[i]) > 1e-13) { log_case = false; break; }
        try {
            if (log_case) return fb_continuation_log(p.a, p.c, y);
            return fb_continuation(p, y);
        } catch (const NoConvergentRoute&) {
        } catch (const DegenerateDifference&) {
        }
    }
    if (m <= 2) return fb_mellin_barnes(p, y);
    throw NoConvergentRoute(
        "fb_eval: no convergent route (m > 2 between series and expansion domains)");
}

// ---------------------------------------------------------------------------
// f_n of Eq (2.9)/(2.9').  Coincident coordinates are handled exactly: the
// epsilon-sum vanishes on each diagonal, so the limit is the mixed
// derivative, computed with the contiguous relation for d/dy_k F_B.
// ---------------------------------------------------------------------------
namespace {

FBParams fn_params(const ZParams& zp, const std::vector<int>& eps) {
    const int n = static_cast<int>(eps.size());
    FBParams p;
    p.a.resize(2 * n);
    p.b.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        p.a[i] = 1.0 - static_cast<double>(eps[i]) - zp.zprime;
        p.b[i] = 1.0 - static_cast<double>(eps[i]) - zp.z;
        p.a[n + i] = static_cast<double>(eps[i]) - zp.z;
        p.b[n + i] = static_cast<double>(eps[i]) - zp.zprime;
    }
    p.c = zp.t - static_cast<double>(n) * (zp.z + zp.zprime - 1.0);
    return p;
}

}  // namespace

Complex f_n(const FNArgs& args) {
    args.validate();
    const int n = args.n;
    const ZParams& zp = args.params;
    const double delta = 1e-4;

    std::vector<char> coin(n, 0);
    std::vector<int> coincident;
    for (int i = 0; i < n; ++i)
        if (std::abs(args.yprime[i] - args.ydoubleprime[i]) <
            delta * std::abs(args.yprime[i])) {
            coin[i] = 1;
            coincident.push_back(i);
        }

    std::vector<double> yfull(2 * n);
    for (int i = 0; i < n; ++i) {
        yfull[i] = args.yprime[i];
        yfull[n + i] = coin[i] ? args.yprime[i] : args.ydoubleprime[i];
    }

    const int csize = static_cast<int>(coincident.size());
    Complex total = 0.0;
    std::vector<int> eps(n, 0);
    for (unsigned em = 0; em < (1u << n); ++em) {
        int epssum = 0;
        for (int i = 0; i < n; ++i) {
            eps[i] = (em >> i) & 1;
            epssum += eps[i];
        }
        for (unsigned dm = 0; dm < (1u << csize); ++dm) {
            Complex factor = (epssum % 2) ? -1.0 : 1.0;
            int dsize = 0;
            bool dead = false;
            for (int ci = 0; ci < csize; ++ci) {
                int i = coincident[ci];
                if ((dm >> ci) & 1u) {
                    ++dsize;
                    factor *= args.yprime[i] *
                              (static_cast<double>(eps[i]) - zp.z) *
                              (static_cast<double>(eps[i]) - zp.zprime);
                } else if (eps[i] == 0) {
                    dead = true;  // d/dy'' of (y'')^0 vanishes
                    break;
                }
            }
            if (dead) continue;
            for (int i = 0; i < n; ++i) {
                if (coin[i]) continue;
                factor *= (eps[i] == 0) ? args.yprime[i] : args.ydoubleprime[i];
            }
            FBParams p = fn_params(zp, eps);
            factor /= pochhammer(p.c, dsize);
            p.c += static_cast<double>(dsize);
            for (int ci = 0; ci < csize; ++ci) {
                if (!((dm >> ci) & 1u)) continue;
                int i = coincident[ci];
                p.a[n + i] += 1.0;
                p.b[n + i] += 1.0;
            }
            total += factor * fb_eval(p, yfull).value;
        }
    }
    if (csize % 2) total = -total;
    Complex denom = 1.0;
    for (int i = 0; i < n; ++i)
        if (!coin[i]) denom *= args.yprime[i] - args.ydoubleprime[i];
    return total / denom;
}

}  // namespace zdpp
