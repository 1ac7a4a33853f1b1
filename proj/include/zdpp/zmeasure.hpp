#ifndef ZDPP_ZMEASURE_HPP
#define ZDPP_ZMEASURE_HPP

#include <vector>

#include "zdpp/partitions.hpp"
#include "zdpp/types.hpp"

namespace zdpp {

// ---------------------------------------------------------------------------
// Admissible parameter pairs.  Either z' = conj(z) with z not an integer
// (principal series), or z, z' real inside a common unit interval (m, m+1)
// (complementary series).  In both cases t = z z' is real and positive.
// ---------------------------------------------------------------------------
struct ZParams {
    enum class Series { Principal, Complementary };

    Complex z;
    Complex zprime;
    double  t = 0.0;
    Series  series = Series::Principal;
    int     m = 0;  // complementary interval index

    /// Classify and validate; throws InadmissibleParams.
    static ZParams make(Complex z, Complex zprime);
    static ZParams principal(Complex z) { return make(z, std::conj(z)); }
    static ZParams complementary(double z, double zp) { return make(z, zp); }

    /// Fill fields without the admissibility classification (z z' must still
    /// be real positive).  Used by the relaxed-regime integral cross-checks.
    static ZParams unchecked(Complex z, Complex zprime);

    /// (z, z') -> (-z, -z'), the reflection of Eq-style x -> -x identities.
    ZParams reflected() const { return make(-z, -zprime); }

    bool is_real_pair() const { return series == Series::Complementary; }
};

/// P^(n)_{zz'}(lambda): probability of a Young diagram of order n.
/// Cauchy determinant squared computed through the closed product formula.
double z_measure_prob(const ZParams& params, const Partition& lam);

/// Phi_{n,d}: injective maps {1..n} -> {1,1',...,d,d'} hitting every pair.
/// Encoding: phi[k] in [0, 2d), value 2(i-1) for i, 2(i-1)+1 for i'.
std::vector<std::vector<int>> phi_maps(int n, int d);

/// Moment of the n-th controlling measure, n = l.size() <= 4, l_i <= 8.
double controlling_moment(const ZParams& params, const std::vector<int>& l);

}  // namespace zdpp

#endif
