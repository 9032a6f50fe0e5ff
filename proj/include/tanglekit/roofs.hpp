#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "core.hpp"

namespace tk {

struct NormalFormResult {
    DensityMatrix state;      // unnormalized image, trace in [0,1]
    double trace = 0.0;
    LocalOperator transforms; // accumulated per-party factors, det 1 each
    bool converged = false;
    int iterations = 0;
};

// Iterate per-party inverse-root filters until every single-party reduction
// is proportional to the identity (tol) or the trace decays to the nullcone.
NormalFormResult normal_form(const DensityMatrix& rho, double tol = 1e-10,
                             int max_iter = 10000);

// A measure together with the metadata the evaluators need: homogeneity
// degree alpha in the density matrix, SL invariance, and evaluation hooks.
// mixed_eval may be empty; evaluators that need it fall back to pure_eval
// when the state is numerically pure, and reject otherwise.
struct MeasureHandle {
    std::string name;
    double rho_degree = std::numeric_limits<double>::quiet_NaN();
    bool sl_invariant = false;
    std::function<double(const PureState&)> pure_eval;
    std::function<double(const DensityMatrix&)> mixed_eval;
};

// mu(rho) = trace^alpha * mu(NF / trace); zero on the nullcone.
double evaluate_via_normal_form(const MeasureHandle& measure, const DensityMatrix& rho);

// Seeded decomposition search: minimize sum p_i mu(psi_i) over length-ell
// decompositions reached through mixing isometries.  Upper-bound kind.
// ell = 0 selects the default 2 * rank.
BoundValue convex_roof_upper(const MeasureHandle& measure, const DensityMatrix& rho,
                             int ell = 0, std::uint64_t seed = 11);

// Exhaustive length-2 search for rank <= 2 states: grid_n^2 mixing angles
// plus local refinement.  Test oracle, not a production path.
double convex_roof_bruteforce(const MeasureHandle& measure, const DensityMatrix& rho,
                              int grid_n = 48);

// Convex-roof extension of the negativity across the party-0 cut.
BoundValue cren_upper(const DensityMatrix& rho, std::uint64_t seed = 11);

struct MonotoneCheck {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // largest violation seen (0 when clean)
};

struct MonotoneReport {
    std::vector<MonotoneCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const MonotoneCheck& at(const std::string& name) const;
};

// Numerical monotone-axiom harness over a fixture set: average non-increase
// under random two-outcome local filters, zero on separable fixtures,
// convexity, homogeneity-exponent recovery, SL invariance when declared.
MonotoneReport monotone_property_checks(const MeasureHandle& measure,
                                        const std::vector<DensityMatrix>& fixtures,
                                        std::uint64_t seed = 5);

// Ready-made handles for the standard measures.
MeasureHandle measure_wootters_concurrence();
MeasureHandle measure_pure_concurrence();   // I-concurrence on pure states
MeasureHandle measure_tau3();
MeasureHandle measure_residual_tangle();
MeasureHandle measure_g_concurrence(int d);
MeasureHandle measure_negativity();
MeasureHandle measure_purity_fake();        // harness sanity check, not a monotone

}  // namespace tk
