#ifndef ZDPP_LAURICELLA_HPP
#define ZDPP_LAURICELLA_HPP

#include <vector>

#include "zdpp/types.hpp"
#include "zdpp/zmeasure.hpp"

namespace zdpp {

// ---------------------------------------------------------------------------
// F_B^[m](a, b; c | y) = sum_k prod_i (a_i)_{k_i} (b_i)_{k_i} / k_i!
//                        * y_i^{k_i} / (c)_{|k|}
// ---------------------------------------------------------------------------
struct FBParams {
    std::vector<Complex> a;
    std::vector<Complex> b;
    Complex c;

    int m() const { return static_cast<int>(a.size()); }
    void validate() const;
};

/// Straight vertical contours for the Mellin-Barnes route.  Poles that a
/// straight line cannot separate are picked up as explicit residues.
struct ContourSpec {
    double abscissa = 0.0;   // 0 => choose per slot (max-min-distance to poles)
    bool   choose_auto = true;
    double im_cutoff = 14.0; // |Im s| truncation
    double min_pole_distance = 0.02;  // below this: PoleOnContour
};

/// Truncation control for the large-argument expansions.
struct SeriesTrunc {
    int    max_degree = 400;  // total-degree cap for the inner series
    double rel_tol = 1e-12;
};

/// Power series (2.7)-style, diagonal-by-total-degree; max|y_i| <= 0.95.
EvalResult fb_series(const FBParams& p, const std::vector<Complex>& y);

/// Euler-Laplace simplex integral; m <= 2, Re b_i > 0, Re(c - sum b) > 0,
/// y_i < 0.
EvalResult fb_euler_integral(const FBParams& p, const std::vector<double>& y,
                             const QuadratureSpec& q = {});

/// m-fold vertical-line integral with pole separation (m <= 2), y_i < 0.
EvalResult fb_mellin_barnes(const FBParams& p, const std::vector<double>& y,
                            const ContourSpec& contour = {});

/// Large-negative-y expansion over the 2^m branch subsets; y_i <= -2,
/// a_i - b_i not an integer.
EvalResult fb_continuation(const FBParams& p, const std::vector<double>& y,
                           const SeriesTrunc& terms = {});

/// One branch subset of the continuation (I = bitmask of slots using the
/// a-exponent).  Sum over all 2^m masks equals fb_continuation.
Complex fb_continuation_branch(const FBParams& p, const std::vector<double>& y,
                               unsigned mask, const SeriesTrunc& terms = {});

/// Logarithmic version for b = a: double poles produce ln(-y) factors and
/// polygamma cross-terms coupling the slots through c - sum(a_i + k_i).
EvalResult fb_continuation_log(const std::vector<Complex>& a, Complex c,
                               const std::vector<double>& y,
                               const SeriesTrunc& terms = {});

/// Route dispatcher for real negative arguments.
EvalResult fb_eval(const FBParams& p, const std::vector<double>& y);

/// Polygamma psi^(k), k <= 8 (used by the logarithmic expansion).
Complex polygamma(int k, Complex x);

// ---------------------------------------------------------------------------
// The combination f_n of Eq (2.9)/(2.9'): the epsilon-sum over F_B^[2n]
// divided by prod(y'_i - y''_i), with exact contiguous-derivative
// continuation at coincident coordinates.
// ---------------------------------------------------------------------------
struct FNArgs {
    ZParams params;
    int n = 1;
    std::vector<double> yprime;        // all < 0
    std::vector<double> ydoubleprime;  // all < 0

    void validate() const;
};

Complex f_n(const FNArgs& args);

}  // namespace zdpp

#endif
