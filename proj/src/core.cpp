#include "tanglekit/core.hpp"

#include <algorithm>
#include <cmath>

namespace tk {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron_list(const std::vector<Mat>& ms) {
    Mat out = Mat::Ones(1, 1);
    for (const Mat& m : ms) out = kron(out, m);
    return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    Vec v(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        v.segment(i * b.dim(), b.dim()) = a.a(i) * b.a;
    Dims d = a.dims;
    d.insert(d.end(), b.dims.begin(), b.dims.end());
    return PureState(std::move(v), std::move(d), a.unnormalized || b.unnormalized);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    Dims d = a.dims;
    d.insert(d.end(), b.dims.begin(), b.dims.end());
    return DensityMatrix::trusted(kron(a.m, b.m), std::move(d),
                                  a.unnormalized || b.unnormalized);
}

DensityMatrix dm(const PureState& psi) {
    return DensityMatrix::trusted(psi.a * psi.a.adjoint(), psi.dims, psi.unnormalized);
}

namespace {

std::vector<int> strides_of(const Dims& dims) {
    std::vector<int> s(dims.size());
    int acc = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        s[i] = acc;
        acc *= dims[i];
    }
    return s;
}

}  // namespace

Mat partial_trace_mat(const Mat& rho, const Dims& dims, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    const int n = static_cast<int>(dims.size());
    std::vector<int> kp = keep;
    std::sort(kp.begin(), kp.end());
    for (int q : kp)
        if (q < 0 || q >= n) throw std::invalid_argument("partial_trace: bad index");
    std::vector<int> drop;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(kp.begin(), kp.end(), i)) drop.push_back(i);

    const std::vector<int> str = strides_of(dims);
    int dK = 1, dT = 1;
    for (int q : kp) dK *= dims[q];
    for (int q : drop) dT *= dims[q];

    // flat index offsets of every (kept, dropped) sub-index combination
    std::vector<int> koff(dK, 0), toff(dT, 0);
    for (int c = 0; c < dK; ++c) {
        int rest = c;
        for (int i = static_cast<int>(kp.size()) - 1; i >= 0; --i) {
            koff[c] += (rest % dims[kp[i]]) * str[kp[i]];
            rest /= dims[kp[i]];
        }
    }
    for (int c = 0; c < dT; ++c) {
        int rest = c;
        for (int i = static_cast<int>(drop.size()) - 1; i >= 0; --i) {
            toff[c] += (rest % dims[drop[i]]) * str[drop[i]];
            rest /= dims[drop[i]];
        }
    }

    Mat out = Mat::Zero(dK, dK);
    for (int r = 0; r < dK; ++r)
        for (int c = 0; c < dK; ++c) {
            cx acc = 0.0;
            for (int t = 0; t < dT; ++t) acc += rho(koff[r] + toff[t], koff[c] + toff[t]);
            out(r, c) = acc;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    std::vector<int> kp = keep;
    std::sort(kp.begin(), kp.end());
    Dims d;
    for (int q : kp) d.push_back(rho.dims[q]);
    return DensityMatrix::trusted(partial_trace_mat(rho.m, rho.dims, kp), std::move(d),
                                  rho.unnormalized);
}

Mat partial_transpose_block(const Mat& rho, const Dims& dims, const std::vector<int>& block) {
    const int n = static_cast<int>(dims.size());
    for (int q : block)
        if (q < 0 || q >= n) throw std::invalid_argument("partial_transpose: bad index");
    const std::vector<int> str = strides_of(dims);
    const int D = dim_prod(dims);

    int bmask_dim = 1;
    for (int q : block) bmask_dim *= dims[q];

    // row/col flat index decomposition: i = ib + ir (block part + rest part)
    std::vector<int> boff(bmask_dim, 0);
    for (int c = 0; c < bmask_dim; ++c) {
        int rest = c;
        for (int i = static_cast<int>(block.size()) - 1; i >= 0; --i) {
            boff[c] += (rest % dims[block[i]]) * str[block[i]];
            rest /= dims[block[i]];
        }
    }
    std::vector<int> roff;  // all flat offsets with zero block sub-index
    {
        std::vector<bool> inb(n, false);
        for (int q : block) inb[q] = true;
        int dR = D / bmask_dim;
        roff.resize(dR, 0);
        std::vector<int> rest_parties;
        for (int i = 0; i < n; ++i)
            if (!inb[i]) rest_parties.push_back(i);
        for (int c = 0; c < dR; ++c) {
            int rest = c;
            for (int i = static_cast<int>(rest_parties.size()) - 1; i >= 0; --i) {
                roff[c] += (rest % dims[rest_parties[i]]) * str[rest_parties[i]];
                rest /= dims[rest_parties[i]];
            }
        }
    }

    Mat out(D, D);
    for (std::size_t r = 0; r < roff.size(); ++r)
        for (std::size_t c = 0; c < roff.size(); ++c)
            for (int br = 0; br < bmask_dim; ++br)
                for (int bc = 0; bc < bmask_dim; ++bc)
                    out(roff[r] + boff[bc], roff[c] + boff[br]) =
                        rho(roff[r] + boff[br], roff[c] + boff[bc]);
    return out;
}

Mat partial_transpose(const DensityMatrix& rho, int party) {
    return partial_transpose_block(rho.m, rho.dims, {party});
}

double trace_norm(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: non-square");
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

PureState permute_parties(const PureState& psi, const std::vector<int>& perm) {
    const int n = psi.nparties();
    const std::vector<int> str = strides_of(psi.dims);
    Dims nd(n);
    for (int i = 0; i < n; ++i) nd[i] = psi.dims[perm[i]];
    const std::vector<int> nstr = strides_of(nd);
    Vec out(psi.dim());
    for (int i = 0; i < psi.dim(); ++i) {
        int flat = 0;
        for (int q = 0; q < n; ++q) {
            int iq = (i / str[perm[q]]) % psi.dims[perm[q]];
            flat += iq * nstr[q];
        }
        out(flat) = psi.a(i);
    }
    return PureState(std::move(out), std::move(nd), psi.unnormalized);
}

ApplyResult<PureState> apply_local_operator(const PureState& psi, const LocalOperator& op,
                                            bool renormalize) {
    if (op.factors.size() != psi.dims.size())
        throw std::invalid_argument("apply_local_operator: factor count mismatch");
    for (std::size_t i = 0; i < op.factors.size(); ++i)
        if (op.factors[i].rows() != psi.dims[i])
            throw std::invalid_argument("apply_local_operator: factor dim mismatch");
    Vec v = kron_list(op.factors) * psi.a;
    if (!renormalize) return {PureState(std::move(v), psi.dims, true), 1.0};
    const double w = v.squaredNorm();
    if (w < 1e-300) throw annihilation_error("local filter annihilated the state");
    v /= std::sqrt(w);
    return {PureState(std::move(v), psi.dims, false), w};
}

ApplyResult<DensityMatrix> apply_local_operator(const DensityMatrix& rho,
                                                const LocalOperator& op, bool renormalize) {
    if (op.factors.size() != rho.dims.size())
        throw std::invalid_argument("apply_local_operator: factor count mismatch");
    Mat g = kron_list(op.factors);
    Mat out = g * rho.m * g.adjoint();
    if (!renormalize) return {DensityMatrix::trusted(std::move(out), rho.dims, true), 1.0};
    const double w = out.trace().real();
    if (w < 1e-300) throw annihilation_error("local filter annihilated the state");
    out /= w;
    return {DensityMatrix::trusted(std::move(out), rho.dims, false), w};
}

Decomposition mix_decomposition(const Decomposition& d, const Mat& u) {
    const int ell = static_cast<int>(d.entries.size());
    if (u.cols() < ell)
        throw std::invalid_argument("mix_decomposition: u has too few columns");
    Mat ortho = u.adjoint() * u;
    ortho.diagonal().array() -= 1.0;
    if (ortho.cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("mix_decomposition: columns not orthonormal");

    Decomposition out;
    const Dims& dims = d.entries.front().second.dims;
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
        Vec v = Vec::Zero(dim_prod(dims));
        for (int j = 0; j < ell; ++j)
            v += u(k, j) * std::sqrt(d.entries[j].first) * d.entries[j].second.a;
        const double w = v.squaredNorm();
        if (w < 1e-14) continue;
        v /= std::sqrt(w);
        out.entries.emplace_back(w, PureState(std::move(v), dims));
    }
    return out;
}

DensityMatrix decomposition_density(const Decomposition& d) {
    const Dims& dims = d.entries.front().second.dims;
    Mat acc = Mat::Zero(dim_prod(dims), dim_prod(dims));
    for (const auto& [p, psi] : d.entries) acc += p * (psi.a * psi.a.adjoint());
    return DensityMatrix::trusted(std::move(acc), dims);
}

Decomposition eigen_decomposition(const DensityMatrix& rho, double cutoff) {
    Eigh e = eigh(rho.m);
    Decomposition out;
    for (int i = rho.dim() - 1; i >= 0; --i) {
        if (e.w(i) <= cutoff) continue;
        out.entries.emplace_back(e.w(i), PureState(e.v.col(i), rho.dims));
    }
    return out;
}

Eigh eigh(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    return {es.eigenvalues(), es.eigenvectors()};
}

Mat sqrtm_psd(const Mat& m) {
    Eigh e = eigh(m);
    Eigen::VectorXd w = e.w.cwiseMax(0.0).cwiseSqrt();
    return e.v * w.asDiagonal() * e.v.adjoint();
}

Mat invsqrt_psd(const Mat& m, double reg) {
    Eigh e = eigh(m + reg * Mat::Identity(m.rows(), m.cols()));
    Eigen::VectorXd w = e.w.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return e.v * w.asDiagonal() * e.v.adjoint();
}

double purity(const DensityMatrix& rho) { return (rho.m * rho.m).trace().real(); }

double shannon(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p(i) > 1e-15) s -= p(i) * std::log2(p(i));
    return s;
}

double vn_entropy(const DensityMatrix& rho) { return shannon(eigh(rho.m).w); }

double binary_entropy(double q) {
    if (q <= 0.0 || q >= 1.0) return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double fidelity_with_pure(const PureState& psi, const DensityMatrix& rho) {
    return (psi.a.adjoint() * rho.m * psi.a)(0).real();
}

double hs_distance(const Mat& a, const Mat& b) { return (a - b).norm(); }

// --------------------------------------------------------------- named states
PureState basis_state(const Dims& dims, const std::vector<int>& idxs) {
    if (idxs.size() != dims.size())
        throw std::invalid_argument("basis_state: index count mismatch");
    int flat = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (idxs[i] < 0 || idxs[i] >= dims[i])
            throw std::invalid_argument("basis_state: index out of range");
        flat = flat * dims[i] + idxs[i];
    }
    Vec v = Vec::Zero(dim_prod(dims));
    v(flat) = 1.0;
    return PureState(std::move(v), dims);
}

PureState ghz(int n) {
    Vec v = Vec::Zero(1 << n);
    v(0) = v((1 << n) - 1) = 1.0 / std::sqrt(2.0);
    return PureState(std::move(v), Dims(n, 2));
}

PureState wstate(int n) {
    Vec v = Vec::Zero(1 << n);
    for (int q = 0; q < n; ++q) v(1 << q) = 1.0 / std::sqrt(double(n));
    return PureState(std::move(v), Dims(n, 2));
}

PureState wbar(int n) {
    Vec v = Vec::Zero(1 << n);
    const int full = (1 << n) - 1;
    for (int q = 0; q < n; ++q) v(full ^ (1 << q)) = 1.0 / std::sqrt(double(n));
    return PureState(std::move(v), Dims(n, 2));
}

PureState dicke(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("dicke: k out of range");
    Vec v = Vec::Zero(1 << n);
    int count = 0;
    for (int i = 0; i < (1 << n); ++i)
        if (__builtin_popcount(static_cast<unsigned>(i)) == k) {
            v(i) = 1.0;
            ++count;
        }
    v /= std::sqrt(double(count));
    return PureState(std::move(v), Dims(n, 2));
}

PureState psi_d(int d) {
    Vec v = Vec::Zero(d * d);
    for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(double(d));
    return PureState(std::move(v), {d, d});
}

PureState bell() { return psi_d(2); }

PureState xstate4() {
    Vec v = Vec::Zero(16);
    v(0b1111) = std::sqrt(2.0);
    v(0b0001) = v(0b0010) = v(0b0100) = v(0b1000) = 1.0;
    v /= std::sqrt(6.0);
    return PureState(std::move(v), {2, 2, 2, 2});
}

PureState cluster4() {
    Vec v = Vec::Zero(16);
    v(0b0000) = v(0b0111) = v(0b1011) = v(0b1100) = 0.5;
    return PureState(std::move(v), {2, 2, 2, 2});
}

PureState ghzw_superposition(double p, double phi) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("ghzw: p outside [0,1]");
    Vec v = std::sqrt(p) * ghz(3).a -
            std::exp(cx(0.0, phi)) * std::sqrt(1.0 - p) * wstate(3).a;
    const double nrm = v.norm();
    return PureState(v / nrm, {2, 2, 2});
}

PureState acin_state(double l0, double l1, double l2, double l3, double l4, double phi,
                     bool unnormalized) {
    for (double l : {l0, l1, l2, l3, l4})
        if (l < 0.0) throw std::invalid_argument("acin_state: negative coefficient");
    if (phi < 0.0 || phi > M_PI) throw std::invalid_argument("acin_state: phi outside [0,pi]");
    const double s2 = l0 * l0 + l1 * l1 + l2 * l2 + l3 * l3 + l4 * l4;
    if (!unnormalized && std::abs(s2 - 1.0) > 1e-9)
        throw std::invalid_argument("acin_state: coefficients not normalized");
    Vec v = Vec::Zero(8);
    v(0b000) = l0;
    v(0b100) = l1 * std::exp(cx(0.0, phi));
    v(0b101) = l2;
    v(0b110) = l3;
    v(0b111) = l4;
    return PureState(std::move(v), {2, 2, 2}, unnormalized);
}

PureState random_pure_state(const Dims& dims, Rng& rng) {
    const int D = dim_prod(dims);
    Vec v(D);
    for (int k = 0; k < D; ++k) {
        auto [g1, g2] = rng.next_gauss_pair();
        v(k) = cx(g1, g2);
    }
    v /= v.norm();
    return PureState(std::move(v), dims);
}

PureState random_pure_state(const Dims& dims, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure_state(dims, rng);
}

PureState random_product_state(const Dims& dims, Rng& rng) {
    PureState out = random_pure_state({dims[0]}, rng);
    for (std::size_t i = 1; i < dims.size(); ++i)
        out = tensor_product(out, random_pure_state({dims[i]}, rng));
    return out;
}

Mat random_unitary(int d, Rng& rng) {
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto [g1, g2] = rng.next_gauss_pair();
            g(i, j) = cx(g1, g2);
        }
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        cx ph = r(j, j) / std::abs(r(j, j));
        q.col(j) *= ph;
    }
    return q;
}

LocalOperator random_local_unitary(const Dims& dims, Rng& rng) {
    std::vector<Mat> fs;
    for (int d : dims) fs.push_back(random_unitary(d, rng));
    return LocalOperator(std::move(fs), OpKind::Unitary);
}

LocalOperator random_local_sl(const Dims& dims, Rng& rng) {
    std::vector<Mat> fs;
    for (int d : dims) {
        Mat g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                auto [g1, g2] = rng.next_gauss_pair();
                g(i, j) = 0.5 * cx(g1, g2);
            }
        g += Mat::Identity(d, d);
        cx det = g.determinant();
        if (std::abs(det) < 1e-6) {  // retry-free fallback, essentially never taken
            g += Mat::Identity(d, d);
            det = g.determinant();
        }
        g /= std::pow(det, 1.0 / double(d));
        fs.push_back(std::move(g));
    }
    return LocalOperator(std::move(fs), OpKind::SpecialLinear);
}

Dims state_dims(const AnyState& st) {
    if (std::holds_alternative<PureState>(st)) return std::get<PureState>(st).dims;
    return std::get<DensityMatrix>(st).dims;
}

DensityMatrix as_density(const AnyState& st) {
    if (std::holds_alternative<PureState>(st)) return dm(std::get<PureState>(st));
    return std::get<DensityMatrix>(st);
}

}  // namespace tk
