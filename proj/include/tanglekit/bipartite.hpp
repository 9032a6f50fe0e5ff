#pragma once

#include <array>
#include <cstdint>

#include "core.hpp"

namespace tk {

// blockA: party indices of the first block; complement forms the second.
SchmidtData schmidt(const PureState& psi, const std::vector<int>& blockA);

enum class KNorm { Gour, DimensionFree };

// Elementary-symmetric-function concurrence C_k of the Schmidt probabilities;
// Gour norm gives 1 on Psi_d for every k, dimension-free makes k=2 the
// I-concurrence sqrt(2(1 - tr rho_A^2)).
double k_concurrence(const PureState& psi, int k, KNorm norm = KNorm::DimensionFree,
                     const std::vector<int>& blockA = {0});
double i_concurrence(const PureState& psi, const std::vector<int>& blockA = {0});
double g_concurrence(const PureState& psi, const std::vector<int>& blockA = {0});

// Root of the summed squared 2x2 minors of the coefficient matrix; equals the
// k=2 dimension-free concurrence.
double concurrence_vector_norm(const PureState& psi, const std::vector<int>& blockA = {0});

double negativity(const DensityMatrix& rho, int party = 0);
double negativity_block(const DensityMatrix& rho, const std::vector<int>& block);
double log_negativity(const DensityMatrix& rho, int party = 0);

// sqrt-eigenvalues of the R matrix, descending (via SVD of sqrt(rho~)sqrt(rho))
Eigen::Vector4d wootters_r_values(const DensityMatrix& rho);
double wootters_concurrence(const DensityMatrix& rho);
double concurrence_of_assistance(const DensityMatrix& rho);
double pure_concurrence2(const PureState& psi);  // 2|ad - bc| on 2 qubits

struct EofPair {
    double eof;   // entanglement of formation
    double geom;  // geometric measure
};
EofPair eof_geometric_from_concurrence(double c);

double fully_entangled_fraction(const DensityMatrix& rho, std::uint64_t seed);

BoundValue sl_optimized_concurrence(const DensityMatrix& rho, std::uint64_t seed);

struct SchmidtNumberBounds {
    int r_from_negativity;
    int r_from_concurrence;
};
SchmidtNumberBounds schmidt_number_bounds(const DensityMatrix& rho);

// Index pair (j,l | k,m): term |rho_{jk,lm}| - sqrt(rho_{jm,jm} rho_{lk,lk}).
struct HuberPair {
    int j, k, l, m;
};
BoundValue huber_concurrence_bound(const DensityMatrix& rho,
                                   const std::vector<HuberPair>& pairs,
                                   std::optional<std::uint64_t> lu_opt_seed = std::nullopt);
std::vector<HuberPair> huber_default_pairs(int d);  // all {jj,kk}, j<k

double geometric_measure_pure(const PureState& psi, std::uint64_t seed);

struct BellDiagonalMonotones {
    double e1;
    std::optional<double> e2, e3;  // absent when p3 (resp. p4) vanishes
    double et1;
    std::optional<double> et2, et3;
};
BellDiagonalMonotones bell_diagonal_monotones(const std::array<double, 4>& p);

struct LorentzData {
    double s0, s1, s2, s3;  // s0 >= s1 >= s2 >= |s3|
    double monotone;        // max{0, -s0+s1+s2}
};
LorentzData lorentz_singular_monotone(const DensityMatrix& rho);

}  // namespace tk
