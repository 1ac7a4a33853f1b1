#ifndef ZDPP_TYPES_HPP
#define ZDPP_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace zdpp {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors.  Every failure mode named in the public contracts maps to one of
// these; nothing numeric escapes as a silent NaN.
// ---------------------------------------------------------------------------
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleAtNonpositiveInteger : Error { using Error::Error; };
struct ParameterPole            : Error { using Error::Error; };
struct NoConvergentRoute        : Error { using Error::Error; };
struct DomainError              : Error { using Error::Error; };
struct DistributionalRegime     : Error { using Error::Error; };
struct RegimeError              : Error { using Error::Error; };
struct QuadratureFailure        : Error { using Error::Error; };
struct OutsidePolydisc          : Error { using Error::Error; };
struct PreconditionViolated     : Error { using Error::Error; };
struct PoleOnContour            : Error { using Error::Error; };
struct DegenerateDifference     : Error { using Error::Error; };
struct SizeGuard                : Error { using Error::Error; };
struct SizeMismatch             : Error { using Error::Error; };
struct InvalidCoords            : Error { using Error::Error; };
struct InadmissibleParams       : Error { using Error::Error; };
struct FitFailure               : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Evaluation bookkeeping.
// ---------------------------------------------------------------------------
enum class Method {
    Series,
    EulerIntegral,
    MellinBarnesContinuation,
    Determinant,
    DirectQuadrature,
    ClosedForm,
};

const char* method_name(Method m);

/// Numeric value together with an error estimate and the route that
/// produced it.
struct EvalResult {
    Complex value{};
    double  abs_err = 0.0;
    Method  method = Method::Series;

    double real_checked(double rel_slack = 1e-8, double abs_slack = 1e-10) const;
};

// ---------------------------------------------------------------------------
// Quadrature control.  One struct drives every integral in the library.
// ---------------------------------------------------------------------------
struct QuadratureSpec {
    int    base_nodes    = 48;
    int    max_doublings = 6;
    double rel_tol       = 1e-10;
    double abs_tol       = 1e-14;
    // algebraic singularity strengths at the two interval ends (>-1)
    double exponent_left  = 0.0;
    double exponent_right = 0.0;

    void validate() const {
        if (rel_tol < 1e-14) throw DomainError("QuadratureSpec: rel_tol below 1e-14");
        if (base_nodes < 2) throw DomainError("QuadratureSpec: base_nodes < 2");
        if (exponent_left <= -1.0 || exponent_right <= -1.0)
            throw DomainError("QuadratureSpec: endpoint exponent <= -1");
    }
};

inline bool is_nonpositive_integer(const Complex& x, double tol = 1e-13) {
    if (x.imag() != 0.0 && std::abs(x.imag()) > tol) return false;
    double r = x.real();
    if (r > 0.5) return false;
    return std::abs(r - std::round(r)) <= tol;
}

}  // namespace zdpp

#endif
