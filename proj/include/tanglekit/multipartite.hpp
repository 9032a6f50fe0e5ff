#pragma once

#include <string>
#include <vector>

#include "core.hpp"

namespace tk {

// Nonempty proper subset of parties; the complement is implied.  Canonical
// form keeps the lexicographically smaller of block/complement.
struct Bipartition {
    std::vector<int> block;

    static Bipartition canonical(std::vector<int> block, int nparties);
};

// All 2^{N-1}-1 bipartitions, N <= 12.
std::vector<Bipartition> all_bipartitions(int nparties);

// tau_{A_j} = C^2 = 2(1 - tr rho_j^2), and the Meyer-Wallach average.
double one_tangle(const PureState& psi, int j);
double global_entanglement(const PureState& psi);

double pairwise_concurrence(const PureState& psi, int j, int k);
double pairwise_concurrence(const DensityMatrix& rho, int j, int k);

struct MonogamyAudit {
    std::string relation;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // lhs - rhs
};

// Monogamy slacks anchored at party j: one-tangle vs summed squared pairwise
// concurrences (inequality), the three-qubit equality with its residual, the
// negativity version, and for four qubits the degree-2 invariant identity.
std::vector<MonogamyAudit> monogamy_audit(const PureState& psi, int j);

// min over bipartitions of sqrt(2(1 - tr rho_P^2)); >= 3 parties.
double gme_concurrence_pure(const PureState& psi);

// Off-diagonal index pair (flat row/column) feeding the biseparability bound.
struct GmePair {
    std::size_t m = 0;
    std::size_t mt = 0;
};

// Lower bound on the convex-roof GME concurrence from the listed coherences:
// 2 max(0, sum |rho_{m,mt}| - sum over distinct split diagonal terms), where
// each split term is counted at most as often as it occurs within a single
// bipartition.  ghz_pairs(n) reproduces the closed three-qubit form.
BoundValue gme_concurrence_bound(const DensityMatrix& rho,
                                 const std::vector<GmePair>& pairs);
std::vector<GmePair> gme_ghz_pairs(int nqubits);
std::vector<GmePair> gme_dicke_pairs(int nqubits);  // one-excitation block

// min over bipartitions of the bipartite negativity.  This skips the convex
// hull minimization, so it is an upper bound on the genuine multipartite
// negativity (exact on pure states).
double min_bipartition_negativity(const DensityMatrix& rho);

// |jkl> -> |jkll>
PureState telescope(const PureState& psi3);

}  // namespace tk
