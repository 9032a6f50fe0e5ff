#pragma once

#include <string>

#include "core.hpp"

namespace tk {

// Canonical five-parameter form of a three-qubit pure state:
// l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>.
struct AcinParams {
    double l0, l1, l2, l3, l4;
    double phi;

    AcinParams(double l0_, double l1_, double l2_, double l3_, double l4_, double phi_);
    PureState state() const;
};

struct AcinMeasures {
    double tau3;
    double c_ab, c_ac, c_bc;
    double c_a_bc;
};
// Closed forms in the canonical parameters, cross-checked against direct
// evaluation on the constructed state (1e-10).
AcinMeasures acin_measures(const AcinParams& p);

enum class Class3 { GHZ, W, BisepA_BC, BisepB_AC, BisepC_AB, Separable };
std::string class3_name(Class3 c);

// SLOCC class of a pure three-qubit state, by numerical thresholds (1e-8)
// on tau3 and the pairwise concurrences.
Class3 pure_class3(const PureState& psi);

// Tangle of sqrt(p) GHZ - e^{i phi} sqrt(1-p) W, closed form.
double ghzw_superposition_tangle(double p, double phi);

struct WitnessOperator {
    Mat w;
    std::string name;
};

enum class WitnessKind {
    Proj2Qubit,  // 1/2 - |phi+><phi+|, two qubits
    GhzProj,     // 3/4 - P_GHZ+
    GhzOpt,      // 3/4 - P_GHZ+ - (3/7) P_GHZ-
};

WitnessOperator make_witness(WitnessKind kind);
double witness_value(const DensityMatrix& rho, WitnessKind kind);

// Analytic witness-based lower bound on the mixed-state tangle; the sign
// ambiguity of the off-diagonal term is resolved by taking the better value.
double tau3_witness_bound(const DensityMatrix& rho);

// Lower bound on the mixed-state tangle: normal form, seeded local-unitary
// optimization, GHZ twirl, exact family value, rescaled by the recorded trace.
BoundValue tau3_mixed_lower_bound(const DensityMatrix& rho, std::uint64_t seed = 7);

}  // namespace tk
