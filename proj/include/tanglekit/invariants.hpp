#pragma once

#include "core.hpp"

namespace tk {

// Pauli index string, one entry in {0,1,2,3} per qubit.
using PauliString = std::vector<int>;

// Antilinear expectation <psi*| sigma_{s1} x ... x sigma_{sN} |psi>.
cx comb_expectation(const PureState& psi, const PauliString& s);

// residual tangle tau_res = 4|d1 - 2 d2 + 4 d3| and tau3 = sqrt(tau_res);
// computed from the coefficient form and cross-checked against the comb form.
double residual_tangle(const PureState& psi);
double tau3(const PureState& psi);
double residual_tangle_comb(const PureState& psi);  // |B^{(3)}_1|, comb route

struct FourQubitGenerators {
    cx h, l, m, n;
    cx b12, b13, b14;
    cx w, dxy, dxz, dxt;
};
// raw = evaluate on the amplitudes as given (Table-style unnormalized
// representatives); otherwise the state must be normalized.
FourQubitGenerators four_qubit_generators(const PureState& psi, bool raw = false);

struct FilterInvariants {
    cx f1, f2, f3;
};
FilterInvariants filters(const PureState& psi);

cx hyperdeterminant4(const PureState& psi);

// degree-2/4 families for N <= 10 qubits
cx h_even(const PureState& psi);                    // <sigma2 ... sigma2>, N even
cx b_degree4(const PureState& psi, int a);          // odd N, contraction at a
cx b_degree4(const PureState& psi, int a, int b);   // even N, contractions at a,b
cx b_sym(const PureState& psi);                     // permutation-invariant sum

struct BlochData {
    std::vector<double> tensor;  // flattened, index base 4 per qubit
    double mink_len2;
    double purity;
};
BlochData bloch_minkowski(const DensityMatrix& rho);

double concurrence_from_correlations(const PureState& psi);  // 2-qubit pure

// Homogeneity degree of each invariant in the state-vector amplitudes.
// Unnormalized inputs rescale by norm^degree.
namespace degree {
inline constexpr int h = 2;
inline constexpr int lmn = 4;
inline constexpr int b = 4;
inline constexpr int tau_res = 4;
inline constexpr int w = 6;
inline constexpr int dxy = 6;
inline constexpr int f1 = 6;
inline constexpr int f2 = 8;
inline constexpr int f3 = 12;
inline constexpr int hyperdet4 = 24;
}  // namespace degree

}  // namespace tk
