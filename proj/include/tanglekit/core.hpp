#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>

#include "rng.hpp"
#include "types.hpp"

namespace tk {

// ---------------------------------------------------------------- algebra
Mat kron(const Mat& a, const Mat& b);
Mat kron_list(const std::vector<Mat>& ms);

PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix dm(const PureState& psi);

// keep: party indices retained (order-preserving); trace preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
Mat partial_trace_mat(const Mat& rho, const Dims& dims, const std::vector<int>& keep);

// Result is Hermitian but in general not PSD, so it is a raw matrix.
Mat partial_transpose(const DensityMatrix& rho, int party);
Mat partial_transpose_block(const Mat& rho, const Dims& dims, const std::vector<int>& block);

double trace_norm(const Mat& m);

PureState permute_parties(const PureState& psi, const std::vector<int>& perm);

// ------------------------------------------------- local operator action
template <typename StateT>
struct ApplyResult {
    StateT state;
    double weight;  // pre-normalization norm^2 / trace (1 when renormalize=false)
};

ApplyResult<PureState> apply_local_operator(const PureState& psi, const LocalOperator& op,
                                            bool renormalize);
ApplyResult<DensityMatrix> apply_local_operator(const DensityMatrix& rho,
                                                const LocalOperator& op, bool renormalize);

// HJW mixing: entries'_k = sum_j u(k,j) sqrt(p_j) psi_j; u has orthonormal
// columns, at least as many as the decomposition length.
Decomposition mix_decomposition(const Decomposition& d, const Mat& u);
DensityMatrix decomposition_density(const Decomposition& d);
Decomposition eigen_decomposition(const DensityMatrix& rho, double cutoff = 1e-12);

// ------------------------------------------------------------- spectra etc
struct Eigh {
    Eigen::VectorXd w;  // ascending
    Mat v;
};
Eigh eigh(const Mat& m);

Mat sqrtm_psd(const Mat& m);
Mat invsqrt_psd(const Mat& m, double reg = 0.0);

double purity(const DensityMatrix& rho);
double vn_entropy(const DensityMatrix& rho);           // base-2
double shannon(const Eigen::VectorXd& p);              // base-2, ignores p<=1e-15
double binary_entropy(double q);
double fidelity_with_pure(const PureState& psi, const DensityMatrix& rho);
double hs_distance(const Mat& a, const Mat& b);

// --------------------------------------------------------------- named states
PureState basis_state(const Dims& dims, const std::vector<int>& idxs);
PureState ghz(int n);
PureState wstate(int n);
PureState wbar(int n);  // bit-flipped W
PureState dicke(int n, int k);
PureState psi_d(int d);  // maximally entangled, two qudits
PureState bell();
PureState xstate4();
PureState cluster4();
PureState ghzw_superposition(double p, double phi);  // sqrt(p) GHZ3 - e^{i phi} sqrt(1-p) W3
// Acin canonical 3-qubit form: l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
PureState acin_state(double l0, double l1, double l2, double l3, double l4, double phi,
                     bool unnormalized = false);

PureState random_pure_state(const Dims& dims, std::uint64_t seed);
PureState random_pure_state(const Dims& dims, Rng& rng);
// product state across given blocks, each block one party of block_dims
PureState random_product_state(const Dims& dims, Rng& rng);

LocalOperator random_local_unitary(const Dims& dims, Rng& rng);
LocalOperator random_local_sl(const Dims& dims, Rng& rng);
Mat random_unitary(int d, Rng& rng);

// ------------------------------------------------------------------ state I/O
using AnyState = std::variant<PureState, DensityMatrix>;

// JSON {"kind":"pure"|"mixed","dims":[...],"data":...}; pure data = [re,im]
// pairs, mixed data = rows of [re,im] pairs.  Norm/trace tolerance 1e-6, then
// renormalized.  Throws std::runtime_error with a diagnostic on bad input.
AnyState load_state_json(std::istream& in);
AnyState load_state_file(const std::string& path);
void save_state_json(const AnyState& st, std::ostream& out);

Dims state_dims(const AnyState& st);
DensityMatrix as_density(const AnyState& st);

}  // namespace tk
