#include "zdpp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "zdpp/correlation.hpp"
#include "zdpp/lauricella.hpp"
#include "zdpp/lifted.hpp"
#include "zdpp/quadrature.hpp"
#include "zdpp/special.hpp"
#include "zdpp/structures.hpp"

namespace zdpp {

double FiniteNReport::mass_in(double lo, double hi) const {
    double m = 0.0;
    for (const auto& [pos, mass] : atoms)
        if (pos >= lo && pos <= hi) m += mass;
    return m;
}

static std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << "check,name,route_a,route_b,deviation,tolerance,pass\n";
    for (const auto& r : reports)
        os << r.check << ',' << r.name << ',' << fmt17(r.route_a) << ','
           << fmt17(r.route_b) << ',' << fmt17(r.deviation) << ','
           << fmt17(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
    return os.str();
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports)
        arr.push_back({{"check", r.check},
                       {"name", r.name},
                       {"route_a", r.route_a},
                       {"route_b", r.route_b},
                       {"deviation", r.deviation},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    return arr.dump(2);
}

static CheckReport make_report(std::string check, std::string name, double a,
                               double b, double tol) {
    CheckReport r;
    r.check = std::move(check);
    r.name = std::move(name);
    r.route_a = a;
    r.route_b = b;
    r.deviation = std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
    r.tolerance = tol;
    r.pass = r.deviation <= tol;
    return r;
}

static CheckReport make_abs_report(std::string check, std::string name, double a,
                                   double b, double tol) {
    CheckReport r;
    r.check = std::move(check);
    r.name = std::move(name);
    r.route_a = a;
    r.route_b = b;
    r.deviation = std::abs(a - b);
    r.tolerance = tol;
    r.pass = r.deviation <= tol;
    return r;
}

// ---------------------------------------------------------------------------
FiniteNReport finite_n_table(const ZParams& params, int n) {
    if (n < 1 || n > 30) throw SizeGuard("finite_n_table: 1 <= n <= 30");
    FiniteNReport rep;
    rep.n = n;
    double mass = 0.0;
    std::vector<std::pair<double, double>> atoms;
    for (const Partition& lam : enumerate_partitions(n)) {
        double pr = z_measure_prob(params, lam);
        mass += pr;
        FrobeniusCoords fc = frobenius(lam);
        for (int i = 0; i < fc.d(); ++i) {
            atoms.emplace_back((fc.p[i] + 0.5) / n, pr);
            atoms.emplace_back(-(fc.q[i] + 0.5) / n, pr);
        }
        rep.probabilities.emplace_back(lam, pr);
    }
    std::sort(atoms.begin(), atoms.end());
    // merge equal positions
    for (const auto& [pos, m] : atoms) {
        if (!rep.atoms.empty() && rep.atoms.back().first == pos)
            rep.atoms.back().second += m;
        else
            rep.atoms.emplace_back(pos, m);
    }
    rep.total_mass_error = std::abs(mass - 1.0);
    return rep;
}

// ---------------------------------------------------------------------------
static double rho1_bin_mass(const ZParams& params, double lo, double hi) {
    // integral of rho_1 over [lo, hi]; bins keep away from 0 and 1
    QuadratureSpec q;
    q.rel_tol = 1e-9;
    return tanh_sinh(
               [&](double xx, double, double) -> Complex {
                   return rho_1_closed(params, xx).value.real();
               },
               lo, hi, q, nullptr)
        .real();
}

std::vector<CheckReport> convergence_check(
    const ZParams& params, const std::vector<int>& n_list,
    const std::vector<std::pair<double, double>>& bins) {
    std::vector<CheckReport> out;
    std::vector<FiniteNReport> tables;
    tables.reserve(n_list.size());
    for (int n : n_list) tables.push_back(finite_n_table(params, n));
    for (const auto& [lo, hi] : bins) {
        if (lo >= hi || lo * hi <= 0.0)
            throw DomainError("convergence_check: bin must sit inside one octant");
        if (std::min(std::abs(lo), std::abs(hi)) < 0.05)
            throw DomainError("convergence_check: bin too close to the origin");
        double limit;
        if (lo > 0.0)
            limit = rho1_bin_mass(params, lo, hi);
        else
            limit = rho1_bin_mass(params.reflected(), -hi, -lo);
        double prev_dev = 1e300;
        for (size_t k = 0; k < n_list.size(); ++k) {
            double emp = tables[k].mass_in(lo, hi);
            CheckReport r = make_report(
                "convergence",
                "bin[" + std::to_string(lo) + "," + std::to_string(hi) + "]@n=" +
                    std::to_string(n_list[k]),
                emp, limit, 0.10);
            // trend information: pass means deviation did not grow
            if (k > 0 && r.deviation > prev_dev * 1.25) r.pass = false;
            prev_dev = r.deviation;
            out.push_back(r);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
std::vector<CheckReport> suite_characters(int nmax, const ToleranceOverrides&) {
    std::vector<CheckReport> out;
    for (int n = 1; n <= nmax; ++n) {
        long long checked = 0, agree = 0;
        for (const Partition& rho_part : enumerate_partitions(n)) {
            CycleType rho{rho_part.parts};
            auto table = structure_character_table(rho);
            for (const Partition& lam : enumerate_partitions(n)) {
                FrobeniusCoords fc = frobenius(lam);
                long long want = mn_character(lam, rho);
                auto it = table.find({fc.p, fc.q});
                long long got = (it == table.end()) ? 0 : it->second;
                ++checked;
                if (want == got) ++agree;
            }
        }
        CheckReport r;
        r.check = "characters";
        r.name = "n=" + std::to_string(n) + " (" + std::to_string(checked) + " pairs)";
        r.route_a = static_cast<double>(agree);
        r.route_b = static_cast<double>(checked);
        r.deviation = static_cast<double>(checked - agree);
        r.tolerance = 0.0;
        r.pass = (agree == checked);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> suite_normalization(const ZParams& params, int nmax,
                                             const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    for (int n = 1; n <= nmax; ++n) {
        double mass = 0.0;
        for (const Partition& lam : enumerate_partitions(n))
            mass += z_measure_prob(params, lam);
        out.push_back(make_abs_report("normalization", "n=" + std::to_string(n),
                                      mass, 1.0, 1e-10 * tol.scale));
    }
    return out;
}

std::vector<CheckReport> suite_moments(const ZParams& params, int l_max,
                                       const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    MomentCheckReport rep = controlling_density_check(params, l_max);
    for (const auto& row : rep.rows)
        out.push_back(make_report("moments", "l=" + std::to_string(row.l),
                                  row.quadrature, row.exact, 1e-5 * tol.scale));
    return out;
}

// ---------------------------------------------------------------------------
std::vector<CheckReport> suite_fb_routes(const ZParams& params,
                                         const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    const double T = 1e-6 * tol.scale;
    auto add = [&](const std::string& name, double a, double b) {
        out.push_back(make_report("fb_routes", name, a, b, T));
    };

    // m=1 Gauss grid: series vs Euler vs MB vs continuation
    {
        FBParams p{{0.7}, {0.5}, 1.3};
        for (double y : {-0.5, -0.9}) {
            double s = fb_series(p, {Complex(y)}).value.real();
            double e = fb_euler_integral(p, {y}).value.real();
            double mb = fb_mellin_barnes(p, {y}).value.real();
            add("m1 series/euler y=" + std::to_string(y), s, e);
            add("m1 series/mb y=" + std::to_string(y), s, mb);
        }
        for (double y : {-2.5, -10.0, -40.0}) {
            double e = fb_euler_integral(p, {y}).value.real();
            double mb = fb_mellin_barnes(p, {y}).value.real();
            double c = fb_continuation(p, {y}).value.real();
            add("m1 euler/contin y=" + std::to_string(y), e, c);
            add("m1 mb/contin y=" + std::to_string(y), mb, c);
        }
    }
    // m=2 instances
    {
        FBParams p{{0.3, 0.4}, {0.5, 0.6}, 2.3};
        {
            std::vector<Complex> yc{-0.5, -0.7};
            double s = fb_series(p, yc).value.real();
            double e = fb_euler_integral(p, {-0.5, -0.7}).value.real();
            double mb = fb_mellin_barnes(p, {-0.5, -0.7}).value.real();
            add("m2 series/euler", s, e);
            add("m2 series/mb", s, mb);
        }
        for (auto [y1, y2] : {std::pair{-3.0, -7.0}, std::pair{-5.0, -9.0}}) {
            double e = fb_euler_integral(p, {y1, y2}).value.real();
            double c = fb_continuation(p, {y1, y2}).value.real();
            double mb = fb_mellin_barnes(p, {y1, y2}).value.real();
            add("m2 euler/contin y=(" + std::to_string(y1) + "," + std::to_string(y2) + ")",
                e, c);
            add("m2 euler/mb y=(" + std::to_string(y1) + "," + std::to_string(y2) + ")",
                e, mb);
        }
    }
    // z-measure-shaped parameters in the gap region: series vs MB at one
    // argument, continuation vs MB at another
    {
        const Complex z = params.z, zp = params.zprime;
        FBParams pA{{1.0 - zp, -z}, {1.0 - z, -zp}, (1.0 - z) * (1.0 - zp)};
        bool log_case = std::abs(z - zp) < 1e-12;
        if (!log_case) {
            {
                std::vector<double> y{-0.8, -0.8};
                std::vector<Complex> yc{-0.8, -0.8};
                double s = fb_series(pA, yc).value.real();
                double mb = fb_mellin_barnes(pA, y).value.real();
                add("params series/mb y=-0.8", s, mb);
            }
            {
                std::vector<double> y{-3.0, -3.0};
                double c = fb_continuation(pA, y).value.real();
                double mb = fb_mellin_barnes(pA, y).value.real();
                add("params contin/mb y=-3", c, mb);
            }
        }
    }
    // logarithmic instance a = b
    {
        std::vector<Complex> a{0.6};
        double e = fb_euler_integral({{0.6}, {0.6}, 1.4}, {-8.0}).value.real();
        double lg = fb_continuation_log(a, 1.4, {-8.0}).value.real();
        add("log m1 euler/logcontin", e, lg);
        std::vector<Complex> a2{0.6, 0.3};
        double e2 = fb_euler_integral({{0.6, 0.3}, {0.6, 0.3}, 2.1}, {-8.0, -5.0})
                        .value.real();
        double lg2 = fb_continuation_log(a2, 2.1, {-8.0, -5.0}).value.real();
        add("log m2 euler/logcontin", e2, lg2);
    }
    return out;
}

std::vector<CheckReport> suite_kernel_routes(const ZParams& params,
                                             const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    const double T = 1e-6 * tol.scale;
    const Complex z = params.z, zp = params.zprime;
    if (z.real() <= -1.0 || z.real() >= 1.0 || zp.real() <= -1.0 || zp.real() >= 1.0) {
        CheckReport r;
        r.check = "kernel_routes";
        r.name = "skipped: M(x,y) needs -1 < Re z, Re z' < 1";
        r.pass = true;
        out.push_back(r);
        return out;
    }
    for (double x : {0.15, 0.3, 0.5, 0.7, 0.9})
        for (double y : {0.2, 0.4, 0.55, 0.75, 0.85}) {
            Complex m = kernel_m(params, {x, y});
            Complex pref = std::pow(Complex(x / y), (z - zp) / 2.0);
            Complex rhs = pref * whittaker_kernel(params, {x, y});
            CheckReport r;
            r.check = "kernel_routes";
            r.name = "M vs K x=" + std::to_string(x) + " y=" + std::to_string(y);
            r.route_a = m.real();
            r.route_b = rhs.real();
            r.deviation = std::abs(m - rhs) / std::max({std::abs(m), std::abs(rhs), 1e-30});
            r.tolerance = T;
            r.pass = r.deviation <= r.tolerance;
            out.push_back(r);
        }
    return out;
}

std::vector<CheckReport> suite_lifting(const ZParams& params,
                                       const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    // Poisson-Dirichlet: lift of t^n (1-sum x)_+^{t-1} / prod x  ->  t^n e^{-sum x}/prod x
    {
        const double t = params.t;
        ScaledDensity pd = [t](const std::vector<double>& u, double edge) {
            double v = 1.0;
            for (double ui : u) v *= t / ui;
            return v * std::pow(edge, t - 1.0);
        };
        QuadratureSpec q;
        q.exponent_left = t - 1.0;
        for (const std::vector<double>& x :
             {std::vector<double>{0.7}, std::vector<double>{1.0, 2.0}}) {
            double got = lift_transform(pd, {t}, x, q);
            double want = pd_lifted_rho(t, x);
            out.push_back(make_report(
                "lifting", "poisson-dirichlet n=" + std::to_string(x.size()), got,
                want, 1e-8 * tol.scale));
        }
    }
    // z-measure: lift of rho_1 equals K(x,x)
    {
        const Complex c = params.t - (params.z + params.zprime - 1.0);
        ScaledDensity rho = [&](const std::vector<double>& u, double edge) {
            return rho_1_closed(params, u[0], edge).value.real();
        };
        QuadratureSpec q;
        q.exponent_left = c.real() - 1.0;
        for (double x : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
            double got = lift_transform(rho, {params.t}, {x}, q);
            double want = whittaker_kernel(params, {x, x});
            out.push_back(make_report("lifting", "rho1->K x=" + std::to_string(x),
                                      got, want, 1e-4 * tol.scale));
        }
    }
    return out;
}

std::vector<CheckReport> suite_asymptotics(const ZParams& params,
                                           const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    // k(1) = A_{zz'}(0)
    out.push_back(make_abs_report("asymptotics", "k(1)=A", asympt_kernel_k(params, 1.0),
                                  asympt_const_A(params), 1e-12 * tol.scale));
    for (AsymptRoute route : {AsymptRoute::Lifted, AsymptRoute::NonLifted}) {
        const char* rn = (route == AsymptRoute::Lifted) ? "lifted" : "non-lifted";
        AsymptFit fit = asympt_remainder_fit(params, route);
        CheckReport r;
        r.check = "asymptotics";
        if (fit.log_square_case) {
            r.name = std::string(rn) + " log^2 ratio bound";
            r.route_a = fit.ratio_bound;
            r.route_b = 0.0;
            r.deviation = fit.ratio_bound;
            r.tolerance = 50.0;  // boundedness, not smallness
            r.pass = std::isfinite(fit.ratio_bound) && fit.ratio_bound < r.tolerance;
        } else {
            r.name = std::string(rn) + " slope";
            r.route_a = fit.slope;
            r.route_b = fit.theoretical;
            r.deviation = std::abs(fit.slope - fit.theoretical);
            r.tolerance = 0.15;
            r.pass = r.deviation <= r.tolerance;
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
std::vector<CheckReport> route_matrix(const ZParams& params,
                                      const ToleranceOverrides& tol) {
    std::vector<CheckReport> out;
    auto append = [&](std::vector<CheckReport> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    append(suite_characters(6, tol));
    append(suite_normalization(params, 10, tol));
    append(suite_moments(params, 4, tol));
    append(suite_fb_routes(params, tol));
    append(suite_kernel_routes(params, tol));
    append(suite_lifting(params, tol));
    append(suite_asymptotics(params, tol));
    return out;
}

}  // namespace zdpp
