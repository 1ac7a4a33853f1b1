#include "zdpp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace zdpp {

// ---------------------------------------------------------------------------
// Gauss-Legendre (Newton iteration on the recurrence).
// ---------------------------------------------------------------------------
static QuadRule make_gauss_legendre(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi via Golub-Welsch.  Symmetric tridiagonal QL with implicit
// shifts, tracking only the first row of the eigenvector matrix.
// ---------------------------------------------------------------------------
static void tql_first_row(std::vector<double>& d, std::vector<double>& e,
                          std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw QuadratureFailure("gauss_jacobi: eigenvalue iteration stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double rr = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(rr) : -std::abs(rr)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    rr = std::hypot(f, g);
                    e[i + 1] = rr;
                    if (rr == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / rr;
                    c = g / rr;
                    g = d[i + 1] - p;
                    rr = (d[i] - g) * s + 2.0 * c * b;
                    p = s * rr;
                    d[i + 1] = g + p;
                    g = c * rr - b;
                    double zi = z[i + 1];
                    z[i + 1] = s * z[i] + c * zi;
                    z[i] = c * z[i] - s * zi;
                }
                if (rr == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

QuadRule gauss_jacobi(int n, double alpha, double beta) {
    if (alpha <= -1.0 || beta <= -1.0)
        throw DomainError("gauss_jacobi: exponents must be > -1");
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0), z(n, 0.0);
    z[0] = 1.0;
    const double ab = alpha + beta;
    for (int k = 0; k < n; ++k) {
        if (k == 0)
            d[k] = (beta - alpha) / (ab + 2.0);
        else {
            double kk = k;
            d[k] = (beta * beta - alpha * alpha) /
                   ((2.0 * kk + ab) * (2.0 * kk + ab + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        double kk = k;
        double num;
        if (k == 1)
            num = 4.0 * (1.0 + alpha) * (1.0 + beta) /
                  ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            num = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) /
                  ((2.0 * kk + ab) * (2.0 * kk + ab) * (2.0 * kk + ab + 1.0) *
                   (2.0 * kk + ab - 1.0));
        e[k - 1] = std::sqrt(num);
    }
    tql_first_row(d, e, z);
    // mu0 = 2^(a+b+1) B(a+1, b+1)
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                          std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    std::vector<std::pair<double, double>> pairs(n);
    for (int i = 0; i < n; ++i) pairs[i] = {d[i], mu0 * z[i] * z[i]};
    std::sort(pairs.begin(), pairs.end());
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = pairs[i].first;
        r.weights[i] = pairs[i].second;
    }
    return r;
}

// ---------------------------------------------------------------------------
// tanh-sinh.
// ---------------------------------------------------------------------------
namespace {

struct TsNode {
    double u;   // distance from the nearer endpoint, in [-1,1] geometry: 1-|x|
    double x;   // abscissa in [-1,1]
    double w;   // weight
};

// Nodes for one refinement level: spacing h, only the new points of this
// level (odd multiples of h relative to the previous level), t > 0 half.
std::vector<TsNode> ts_level(double h, int level, double tmax) {
    std::vector<TsNode> out;
    const double pi2 = 1.57079632679489661923;
    int jstep = (level == 0) ? 1 : 2;
    int jstart = (level == 0) ? 0 : 1;
    for (int j = jstart;; j += jstep) {
        double t = j * h;
        if (t > tmax) break;
        double sh = std::sinh(t);
        double ch = std::cosh(t);
        double g = pi2 * sh;
        double x = std::tanh(g);
        // 1 - tanh(g) = 2 e^{-2g} / (1 + e^{-2g})
        double em = std::exp(-2.0 * g);
        double u = 2.0 * em / (1.0 + em);
        double w = pi2 * ch / (std::cosh(g) * std::cosh(g));
        if (u < 1e-290) break;
        out.push_back({u, x, w});
        if (j == 0) break;  // centre point emitted once at level 0 head
    }
    return out;
}

}  // namespace

Complex tanh_sinh(const Integrand& f, double a, double b,
                  const QuadratureSpec& q, double* abs_err) {
    q.validate();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    // needed t-range grows as endpoint exponents approach -1
    double worst = std::min(q.exponent_left, q.exponent_right);
    double tmax = 4.3;
    if (worst < -0.25) {
        double need = std::log(2.0 * 45.0 / (3.14159265358979 * (1.0 + worst)));
        tmax = std::max(tmax, std::min(6.6, need + 0.5));
    }

    double h = 0.5;
    Complex sum = 0.0;
    // level 0: j = 0, 1, 2, ... with h
    {
        const double pi2 = 1.57079632679489661923;
        for (int j = 0;; ++j) {
            double t = j * h;
            if (t > tmax) break;
            double g = pi2 * std::sinh(t);
            double x = std::tanh(g);
            double em = std::exp(-2.0 * g);
            double u = 2.0 * em / (1.0 + em);
            if (u < 1e-290) break;
            double w = pi2 * std::cosh(t) / (std::cosh(g) * std::cosh(g));
            if (j == 0) {
                sum += w * f(mid, half, half);
            } else {
                // x > 0 side: dist to b is half*u ; x < 0 side symmetric
                sum += w * f(mid + half * x, half * (1.0 + x), half * u);
                sum += w * f(mid - half * x, half * u, half * (1.0 + x));
            }
        }
        sum *= h;
    }

    Complex prev = sum;
    double err = std::abs(sum);
    for (int lev = 1; lev <= q.max_doublings; ++lev) {
        h *= 0.5;
        Complex add = 0.0;
        auto pts = ts_level(h, 1, tmax);  // odd multiples of current h
        for (const auto& p : pts) {
            add += p.w * f(mid + half * p.x, half * (1.0 + p.x), half * p.u);
            add += p.w * f(mid - half * p.x, half * p.u, half * (1.0 + p.x));
        }
        Complex cur = prev * 0.5 + h * add;
        err = std::abs(cur - prev);
        prev = cur;
        if (err < q.rel_tol * std::abs(cur) + q.abs_tol) break;
    }
    prev *= half;
    err *= std::abs(half);
    if (abs_err) *abs_err = err;
    if (!(std::isfinite(prev.real()) && std::isfinite(prev.imag())))
        throw QuadratureFailure("tanh_sinh: non-finite result");
    return prev;
}

Complex tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                  const QuadratureSpec& q, double* abs_err) {
    return tanh_sinh([&f](double x, double, double) { return f(x); }, a, b, q, abs_err);
}

Complex gauss_jacobi_integrate(const std::function<Complex(double)>& g,
                               double a, double b, double aL, double aR,
                               const QuadratureSpec& q, double* abs_err) {
    q.validate();
    if (aL <= -1.0 || aR <= -1.0)
        throw DomainError("gauss_jacobi_integrate: exponent <= -1");
    const double half = 0.5 * (b - a);
    auto eval = [&](int n) {
        QuadRule r = gauss_jacobi(n, aR, aL);  // (1-x)^aR (1+x)^aL
        Complex s = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = a + half * (1.0 + r.nodes[i]);
            s += r.weights[i] * g(x);
        }
        // dx = half dxi; (x-a) = half(1+xi), (b-x) = half(1-xi)
        return s * std::pow(half, aL + aR + 1.0);
    };
    int n = q.base_nodes;
    Complex prev = eval(n);
    for (int d = 0; d < q.max_doublings; ++d) {
        n *= 2;
        Complex cur = eval(n);
        double err = std::abs(cur - prev);
        prev = cur;
        if (err < q.rel_tol * std::abs(cur) + q.abs_tol) {
            if (abs_err) *abs_err = err;
            return cur;
        }
    }
    if (abs_err) *abs_err = std::abs(prev) * q.rel_tol * 10;
    return prev;
}

Complex panels_integrate(const std::function<Complex(double)>& f,
                         const std::vector<double>& breaks,
                         const QuadratureSpec& q, double* abs_err) {
    q.validate();
    double total_err = 0.0;
    Complex total = 0.0;
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
        double a = breaks[k], b = breaks[k + 1];
        double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        int n = q.base_nodes;
        auto eval = [&](int m) {
            const QuadRule& r = gauss_legendre(m);
            Complex s = 0.0;
            for (int i = 0; i < m; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
            return s * half;
        };
        Complex prev = eval(n);
        double err = std::abs(prev);
        for (int d = 0; d < q.max_doublings; ++d) {
            n *= 2;
            Complex cur = eval(n);
            err = std::abs(cur - prev);
            prev = cur;
            if (err < q.rel_tol * std::abs(cur) + q.abs_tol) break;
        }
        total += prev;
        total_err += err;
    }
    if (abs_err) *abs_err = total_err;
    return total;
}

}  // namespace zdpp
