#ifndef ZDPP_VERIFY_HPP
#define ZDPP_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "zdpp/partitions.hpp"
#include "zdpp/types.hpp"
#include "zdpp/zmeasure.hpp"

namespace zdpp {

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------
struct FiniteNReport {
    int n = 0;
    std::vector<std::pair<Partition, double>> probabilities;
    // first correlation measure of the scaled configuration: atoms at
    // (p_i+1/2)/n and -(q_i+1/2)/n carrying probability mass
    std::vector<std::pair<double, double>> atoms;  // (position, mass), sorted
    double total_mass_error = 0.0;

    double mass_in(double lo, double hi) const;  // closed interval
};

struct CheckReport {
    std::string check;      // suite
    std::string name;       // instance
    double route_a = 0.0;
    double route_b = 0.0;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

std::string reports_to_csv(const std::vector<CheckReport>& reports);
std::string reports_to_json(const std::vector<CheckReport>& reports);

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------
FiniteNReport finite_n_table(const ZParams& params, int n);  // n <= 30

/// Binned empirical first-correlation mass at sizes n_list against the
/// integral of rho_1 over each bin.  Report-only: failures come back as
/// red rows.
std::vector<CheckReport> convergence_check(const ZParams& params,
                                           const std::vector<int>& n_list,
                                           const std::vector<std::pair<double, double>>& bins);

struct ToleranceOverrides {
    double scale = 1.0;  // multiply every default tolerance
};

/// The full cross-check battery at one parameter set.
std::vector<CheckReport> route_matrix(const ZParams& params,
                                      const ToleranceOverrides& tol = {});

// individual suites (also reachable from the CLI)
std::vector<CheckReport> suite_characters(int nmax, const ToleranceOverrides& tol = {});
std::vector<CheckReport> suite_normalization(const ZParams& params, int nmax,
                                             const ToleranceOverrides& tol = {});
std::vector<CheckReport> suite_moments(const ZParams& params, int l_max,
                                       const ToleranceOverrides& tol = {});
std::vector<CheckReport> suite_fb_routes(const ZParams& params,
                                         const ToleranceOverrides& tol = {});
std::vector<CheckReport> suite_kernel_routes(const ZParams& params,
                                             const ToleranceOverrides& tol = {});
std::vector<CheckReport> suite_lifting(const ZParams& params,
                                       const ToleranceOverrides& tol = {});
std::vector<CheckReport> suite_asymptotics(const ZParams& params,
                                           const ToleranceOverrides& tol = {});

}  // namespace zdpp

#endif
