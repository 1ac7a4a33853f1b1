#include "zdpp/zmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "zdpp/special.hpp"

namespace zdpp {

ZParams ZParams::make(Complex z, Complex zprime) {
    ZParams p;
    p.z = z;
    p.zprime = zprime;
    Complex tt = z * zprime;
    if (std::abs(tt.imag()) > 1e-12 * (1.0 + std::abs(tt)))
        throw InadmissibleParams("ZParams: z*z' is not real");
    p.t = tt.real();
    if (p.t <= 0.0) throw InadmissibleParams("ZParams: t = z z' must be positive");

    const bool real_pair = std::abs(z.imag()) < 1e-14 && std::abs(zprime.imag()) < 1e-14;
    if (real_pair) {
        double a = z.real(), b = zprime.real();
        double fa = std::floor(a), fb = std::floor(b);
        if (a == fa || b == fb)
            throw InadmissibleParams("ZParams: complementary series needs non-integer z, z'");
        if (fa != fb)
            throw InadmissibleParams("ZParams: complementary series needs m < z, z' < m+1");
        p.series = Series::Complementary;
        p.m = static_cast<int>(fa);
    } else {
        if (std::abs(zprime - std::conj(z)) > 1e-12 * (1.0 + std::abs(z)))
            throw InadmissibleParams("ZParams: principal series needs z' = conj(z)");
        if (std::abs(z.imag()) < 1e-14 &&
            std::abs(z.real() - std::round(z.real())) < 1e-14)
            throw InadmissibleParams("ZParams: z must not be an integer");
        p.series = Series::Principal;
    }
    return p;
}

ZParams ZParams::unchecked(Complex z, Complex zprime) {
    ZParams p;
    p.z = z;
    p.zprime = zprime;
    Complex tt = z * zprime;
    if (std::abs(tt.imag()) > 1e-10 * (1.0 + std::abs(tt)) || tt.real() <= 0.0)
        throw InadmissibleParams("ZParams::unchecked: z z' must still be real positive");
    p.t = tt.real();
    const bool real_pair =
        std::abs(z.imag()) < 1e-14 && std::abs(zprime.imag()) < 1e-14;
    p.series = real_pair ? Series::Complementary : Series::Principal;
    p.m = real_pair ? static_cast<int>(std::floor(z.real())) : 0;
    return p;
}

double z_measure_prob(const ZParams& params, const Partition& lam) {
    const int n = lam.size();
    if (n < 1) throw DomainError("z_measure_prob: |lambda| >= 1");
    FrobeniusCoords fc = frobenius(lam);
    const int d = fc.d();
    const Complex z = params.z, zp = params.zprime;
    const double t = params.t;

    Complex val = pochhammer(Complex(t), n);
    val = std::pow(t, d) / val;
    for (int k = 2; k <= n; ++k) val *= static_cast<double>(k);  // n!
    for (int i = 0; i < d; ++i) {
        Complex row = pochhammer(z + 1.0, fc.p[i]) * pochhammer(zp + 1.0, fc.p[i]) *
                      pochhammer(-z + 1.0, fc.q[i]) * pochhammer(-zp + 1.0, fc.q[i]);
        double fact = 1.0;
        for (int k = 2; k <= fc.p[i]; ++k) fact *= k;
        for (int k = 2; k <= fc.q[i]; ++k) fact *= k;
        val *= row / (fact * fact);
    }
    // squared Cauchy determinant via the product formula
    double num = 1.0, den = 1.0;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j)
            num *= static_cast<double>(fc.p[i] - fc.p[j]) * (fc.q[i] - fc.q[j]);
        for (int j = 0; j < d; ++j) den *= fc.p[i] + fc.q[j] + 1;
    }
    double cauchy = num / den;
    val *= cauchy * cauchy;
    if (std::abs(val.imag()) > 1e-10 * (1.0 + std::abs(val.real())))
        throw InadmissibleParams("z_measure_prob: non-real probability (inadmissible z, z')");
    if (val.real() <= 0.0)
        throw InadmissibleParams("z_measure_prob: non-positive probability (inadmissible z, z')");
    return val.real();
}

std::vector<std::vector<int>> phi_maps(int n, int d) {
    if (n < 1 || d < 1) return {};
    if (d > n || 2 * d < n) return {};
    std::vector<std::vector<int>> out;
    std::vector<int> phi(n, -1);
    std::vector<char> used(2 * d, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            for (int m = 0; m < d; ++m)
                if (!used[2 * m] && !used[2 * m + 1]) return;
            out.push_back(phi);
            return;
        }
        for (int v = 0; v < 2 * d; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            phi[k] = v;
            rec(k + 1);
            used[v] = 0;
        }
    };
    rec(0);
    return out;
}

double controlling_moment(const ZParams& params, const std::vector<int>& l) {
    const int n = static_cast<int>(l.size());
    if (n < 1 || n > 4) throw SizeGuard("controlling_moment: 1 <= n <= 4");
    for (int li : l)
        if (li < 0 || li > 8) throw SizeGuard("controlling_moment: 0 <= l_i <= 8");
    int L = n;
    for (int li : l) L += li;

    CycleType rho;
    for (int li : l) rho.rho.push_back(li + 1);
    std::sort(rho.rho.rbegin(), rho.rho.rend());

    const Complex z = params.z, zp = params.zprime;
    const Complex tL = pochhammer(Complex(params.t), L);
    Complex total = 0.0;
    for (const Partition& lam : enumerate_partitions(L)) {
        long long chi = mn_character(lam, rho);
        if (chi == 0) continue;
        FrobeniusCoords fc = frobenius(lam);
        const int d = fc.d();
        Complex w = std::pow(params.t, d) / tL;
        for (int i = 0; i < d; ++i) {
            double fact = 1.0;
            for (int k = 2; k <= fc.p[i]; ++k) fact *= k;
            for (int k = 2; k <= fc.q[i]; ++k) fact *= k;
            w *= pochhammer(z + 1.0, fc.p[i]) * pochhammer(zp + 1.0, fc.p[i]) *
                 pochhammer(-z + 1.0, fc.q[i]) * pochhammer(-zp + 1.0, fc.q[i]) / fact;
        }
        double num = 1.0, den = 1.0;
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j)
                num *= static_cast<double>(fc.p[i] - fc.p[j]) * (fc.q[i] - fc.q[j]);
            for (int j = 0; j < d; ++j) den *= fc.p[i] + fc.q[j] + 1;
        }
        total += w * static_cast<double>(chi) * (num / den);
    }
    if (std::abs(total.imag()) > 1e-9 * (1.0 + std::abs(total.real())))
        throw DomainError("controlling_moment: imaginary residue too large");
    return total.real();
}

}  // namespace zdpp
