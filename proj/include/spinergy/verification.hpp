#ifndef SPINERGY_VERIFICATION_HPP
#define SPINERGY_VERIFICATION_HPP

#include <limits>
#include <string>
#include <vector>

#include "spinergy/families.hpp"

namespace spinergy {

// residual census of the pointwise identities over random smooth unit spinors
struct IdentityTable {
    std::string name;
    std::vector<int> grid_sizes;
    std::vector<double> residuals;      // max over samples and spin structures
    std::vector<double> orders;         // log2 ratios between consecutive sizes
    bool exact = false;                 // everything at the rounding floor
    bool passed = false;
};

struct IdentitySuiteConfig {
    std::vector<int> grid_sizes{32, 64, 128, 256};
    int samples_per_structure = 50;
    std::uint64_t seed = 1;
    double residual_floor = 1e-10;      // below this the order test is moot
    double min_order = 2.5;
    // acceptance pins 1e-4 at N=256; the order test is the default gate
    double max_residual_finest = std::numeric_limits<double>::infinity();
};

// names: gradient_two_route, trace_quarter_curl, dirac_square, gauss_from_pair,
// pair_integrability, lichnerowicz_integral, scale_invariance, circle_action
std::vector<IdentityTable> run_identity_suite(const IdentitySuiteConfig& cfg);

double circle_action_residual(const SpinorField& phi);     // Eq-(6) pointwise
double integrated_dirac_energy_gap(const SpinorField& phi); // |int|Dphi|^2 - int|grad phi|^2|

} // namespace spinergy

#endif
