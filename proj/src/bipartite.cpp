#include "tanglekit/bipartite.hpp"

#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "tanglekit/detail/neldermead.hpp"
#include "tanglekit/detail/pauli.hpp"

namespace tk {

namespace {

// Reshape psi into the coefficient matrix of blockA vs the rest.
Mat coefficient_matrix(const PureState& psi, const std::vector<int>& blockA) {
    const int n = psi.nparties();
    std::vector<int> a = blockA, b;
    std::sort(a.begin(), a.end());
    if (a.empty() || static_cast<int>(a.size()) == n)
        throw std::invalid_argument("bipartition: a block is empty");
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(a.begin(), a.end(), i)) b.push_back(i);
    std::vector<int> perm = a;
    perm.insert(perm.end(), b.begin(), b.end());
    PureState re = permute_parties(psi, perm);
    int dA = 1;
    for (int q : a) dA *= psi.dims[q];
    const int dB = psi.dim() / dA;
    return Eigen::Map<const Mat>(re.a.data(), dB, dA).transpose();  // row-major view
}

std::vector<double> schmidt_probs(const PureState& psi, const std::vector<int>& blockA) {
    Mat m = coefficient_matrix(psi, blockA);
    Eigen::JacobiSVD<Mat> svd(m);
    std::vector<double> lam;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        lam.push_back(svd.singularValues()(i) * svd.singularValues()(i));
    return lam;  // descending
}

double elementary_symmetric(const std::vector<double>& lam, int k) {
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (double l : lam)
        for (int j = std::min<int>(k, static_cast<int>(e.size()) - 1); j >= 1; --j)
            e[j] += e[j - 1] * l;
    return e[k];
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// generic 2x2 unitary from three angles
Mat u2_angles(double a, double b, double c) {
    Mat u(2, 2);
    u(0, 0) = std::cos(a) * std::exp(cx(0, b));
    u(0, 1) = std::sin(a) * std::exp(cx(0, c));
    u(1, 0) = -std::sin(a) * std::exp(cx(0, -c));
    u(1, 1) = std::cos(a) * std::exp(cx(0, -b));
    return u;
}

// exp of a traceless 2x2 matrix: e^A = cosh(d) I + sinh(d)/d A, d^2 = -det A
Mat exp2_traceless(const Mat& a) {
    const cx d2 = -(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    const cx d = std::sqrt(d2);
    cx ch, shd;
    if (std::abs(d) < 1e-12) {
        ch = 1.0 + d2 / 2.0;
        shd = 1.0 + d2 / 6.0;
    } else {
        ch = std::cosh(d);
        shd = std::sinh(d) / d;
    }
    return ch * Mat::Identity(2, 2) + shd * a;
}

Mat sl2_from_params(const double* p) {
    Mat g(2, 2);
    g(0, 0) = cx(p[0], p[1]);
    g(0, 1) = cx(p[2], p[3]);
    g(1, 0) = cx(p[4], p[5]);
    g(1, 1) = -g(0, 0);
    return exp2_traceless(g);
}

Mat unitary_from_params(int d, const double* p) {
    // anti-Hermitian generator from d^2 real parameters
    Mat g = Mat::Zero(d, d);
    int idx = 0;
    for (int i = 0; i < d; ++i) g(i, i) = cx(0, p[idx++]);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const cx z(p[idx], p[idx + 1]);
            idx += 2;
            g(i, j) = z;
            g(j, i) = -std::conj(z);
        }
    return (g).exp();
}

}  // namespace

SchmidtData schmidt(const PureState& psi, const std::vector<int>& blockA) {
    Mat m = coefficient_matrix(psi, blockA);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtData out;
    Mat left = svd.matrixU();
    Mat right = svd.matrixV().conjugate();
    for (Eigen::Index j = 0; j < left.cols(); ++j) {  // sign convention
        for (Eigen::Index i = 0; i < left.rows(); ++i) {
            if (std::abs(left(i, j)) > 1e-12) {
                const cx ph = left(i, j) / std::abs(left(i, j));
                left.col(j) /= ph;
                right.col(j) *= ph;
                break;
            }
        }
    }
    out.left = std::move(left);
    out.right = std::move(right);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double l = svd.singularValues()(i) * svd.singularValues()(i);
        out.coefficients.push_back(l);
        if (l > 1e-10) ++out.rank;
    }
    return out;
}

double k_concurrence(const PureState& psi, int k, KNorm norm, const std::vector<int>& blockA) {
    std::vector<double> lam = schmidt_probs(psi, blockA);
    const int dmin = static_cast<int>(lam.size());
    if (k < 2 || k > dmin) throw std::invalid_argument("k_concurrence: k out of range");
    const double ek = std::max(0.0, elementary_symmetric(lam, k));
    const double nk = (norm == KNorm::Gour)
                          ? dmin * std::pow(binom(dmin, k), -1.0 / k)
                          : 2.0;
    return nk * std::pow(ek, 1.0 / k);
}

double i_concurrence(const PureState& psi, const std::vector<int>& blockA) {
    return k_concurrence(psi, 2, KNorm::DimensionFree, blockA);
}

double g_concurrence(const PureState& psi, const std::vector<int>& blockA) {
    std::vector<double> lam = schmidt_probs(psi, blockA);
    const int d = static_cast<int>(lam.size());
    double prod = 1.0;
    for (double l : lam) prod *= std::max(0.0, l);
    return d * std::pow(prod, 1.0 / d);
}

double concurrence_vector_norm(const PureState& psi, const std::vector<int>& blockA) {
    Mat m = coefficient_matrix(psi, blockA);
    double s = 0.0;
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        for (Eigen::Index l = j + 1; l < m.rows(); ++l)
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                for (Eigen::Index q = k + 1; q < m.cols(); ++q)
                    s += std::norm(m(j, k) * m(l, q) - m(j, q) * m(l, k));
    return std::sqrt(4.0 * s);
}

double negativity_block(const DensityMatrix& rho, const std::vector<int>& block) {
    Mat pt = partial_transpose_block(rho.m, rho.dims, block);
    Eigen::VectorXd w = eigh(pt).w;
    double neg = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) < 0.0) neg -= w(i);
    return neg;
}

double negativity(const DensityMatrix& rho, int party) { return negativity_block(rho, {party}); }

double log_negativity(const DensityMatrix& rho, int party) {
    return std::log2(trace_norm(partial_transpose(rho, party)));
}

Eigen::Vector4d wootters_r_values(const DensityMatrix& rho) {
    if (rho.dims != Dims{2, 2})
        throw std::invalid_argument("wootters: need two qubits");
    Eigh e = eigh(rho.m);
    Eigen::VectorXd w = e.w.cwiseMax(0.0);
    const double cut = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(w.maxCoeff(), 1e-300);
    for (int i = 0; i < 4; ++i)
        if (w(i) < cut) w(i) = 0.0;
    Mat sq = e.v * w.cwiseSqrt().asDiagonal() * e.v.adjoint();
    const Mat& yy = detail::sigma_yy();
    Mat a = (yy * sq.conjugate() * yy) * sq;
    Eigen::JacobiSVD<Mat> svd(a);
    Eigen::Vector4d r = svd.singularValues();  // descending
    return r;
}

double wootters_concurrence(const DensityMatrix& rho) {
    Eigen::Vector4d r = wootters_r_values(rho);
    return std::max(0.0, r(0) - r(1) - r(2) - r(3));
}

double concurrence_of_assistance(const DensityMatrix& rho) {
    return wootters_r_values(rho).sum();
}

double pure_concurrence2(const PureState& psi) {
    if (psi.dim() != 4) throw std::invalid_argument("pure_concurrence2: need two qubits");
    return 2.0 * std::abs(psi.a(0) * psi.a(3) - psi.a(1) * psi.a(2));
}

EofPair eof_geometric_from_concurrence(double c) {
    if (c < 0.0 || c > 1.0 + 1e-12)
        throw std::invalid_argument("eof_geometric_from_concurrence: c outside [0,1]");
    c = std::min(c, 1.0);
    const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    return {binary_entropy(0.5 * (1.0 + root)), 0.5 * (1.0 - root)};
}

double fully_entangled_fraction(const DensityMatrix& rho, std::uint64_t seed) {
    if (rho.dims != Dims{2, 2})
        throw std::invalid_argument("fully_entangled_fraction: need two qubits");
    const Vec phi = bell().a;
    auto value = [&](const std::vector<double>& x) {
        Mat u = kron(u2_angles(x[0], x[1], x[2]), u2_angles(x[3], x[4], x[5]));
        return -(phi.adjoint() * u * rho.m * u.adjoint() * phi)(0).real();
    };
    Rng rng(seed);
    double best = -value(std::vector<double>(6, 0.0));
    for (int s = 0; s < 32; ++s) {
        Rng sr = rng.split(s);
        std::vector<double> x0(6);
        for (double& xi : x0) xi = sr.next_double() * M_PI;
        detail::NmResult r = detail::nelder_mead(value, x0, 0.4, 600, 1e-14, 1e-10);
        best = std::max(best, -r.f);
    }
    return best;
}

BoundValue sl_optimized_concurrence(const DensityMatrix& rho, std::uint64_t seed) {
    if (rho.dims != Dims{2, 2})
        throw std::invalid_argument("sl_optimized_concurrence: need two qubits");
    const Vec phi = bell().a;
    auto value = [&](const std::vector<double>& x) {
        Mat s = kron(sl2_from_params(x.data()), sl2_from_params(x.data() + 6));
        Mat m = s * rho.m * s.adjoint();
        return -(2.0 * (phi.adjoint() * m * phi)(0).real() - m.trace().real());
    };
    Rng rng(seed);
    double best = -value(std::vector<double>(12, 0.0));
    for (int s = 0; s < 32; ++s) {
        Rng sr = rng.split(s);
        std::vector<double> x0(12);
        for (double& xi : x0) xi = (sr.next_double() - 0.5) * 1.6;
        detail::NmResult r = detail::nelder_mead(value, x0, 0.3, 800, 1e-14, 1e-10);
        best = std::max(best, -r.f);
    }
    return {std::max(0.0, best), BoundKind::Lower};
}

SchmidtNumberBounds schmidt_number_bounds(const DensityMatrix& rho) {
    if (rho.dims.size() != 2)
        throw std::invalid_argument("schmidt_number_bounds: need a bipartite state");
    const int dmin = std::min(rho.dims[0], rho.dims[1]);
    const double eps = 1e-9;
    const double n = negativity(rho, 0);
    int r_n = static_cast<int>(std::ceil(2.0 * n + 1.0 - eps));
    r_n = std::clamp(r_n, 1, dmin);

    const double c = huber_concurrence_bound(rho, huber_default_pairs(dmin)).value;
    const double denom = std::max(2.0 - c * c, 1e-12);
    int r_c = static_cast<int>(std::ceil(2.0 / denom - eps));
    r_c = std::clamp(r_c, 1, dmin);
    return {r_n, r_c};
}

std::vector<HuberPair> huber_default_pairs(int d) {
    std::vector<HuberPair> out;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) out.push_back({j, j, k, k});
    return out;
}

namespace {

double huber_value(const Mat& m, int d2, const std::vector<HuberPair>& pairs) {
    double tot = 0.0;
    for (const HuberPair& p : pairs) {
        const int jk = p.j * d2 + p.k, lm = p.l * d2 + p.m;
        const int jm = p.j * d2 + p.m, lk = p.l * d2 + p.k;
        tot += std::abs(m(jk, lm)) - std::sqrt(std::max(0.0, m(jm, jm).real()) *
                                               std::max(0.0, m(lk, lk).real()));
    }
    return std::max(0.0, 2.0 / std::sqrt(double(pairs.size())) * tot);
}

}  // namespace

BoundValue huber_concurrence_bound(const DensityMatrix& rho, const std::vector<HuberPair>& pairs,
                                   std::optional<std::uint64_t> lu_opt_seed) {
    if (rho.dims.size() != 2)
        throw std::invalid_argument("huber_concurrence_bound: need a bipartite state");
    const int d1 = rho.dims[0], d2 = rho.dims[1];
    for (const HuberPair& p : pairs)
        if (p.j < 0 || p.j >= d1 || p.l < 0 || p.l >= d1 || p.k < 0 || p.k >= d2 || p.m < 0 ||
            p.m >= d2)
            throw std::invalid_argument("huber_concurrence_bound: pair index out of range");

    double best = huber_value(rho.m, d2, pairs);
    if (lu_opt_seed) {
        const int n1 = d1 * d1, n2 = d2 * d2;
        auto value = [&](const std::vector<double>& x) {
            Mat u = kron(unitary_from_params(d1, x.data()), unitary_from_params(d2, x.data() + n1));
            return -huber_value(u * rho.m * u.adjoint(), d2, pairs);
        };
        Rng rng(*lu_opt_seed);
        for (int s = 0; s < 8; ++s) {
            Rng sr = rng.split(s);
            std::vector<double> x0(n1 + n2);
            if (s > 0)
                for (double& xi : x0) xi = (sr.next_double() - 0.5) * M_PI;
            detail::NmResult r = detail::nelder_mead(value, x0, 0.3, 600, 1e-13, 1e-9);
            best = std::max(best, -r.f);
        }
    }
    return {best, BoundKind::Lower};
}

double geometric_measure_pure(const PureState& psi, std::uint64_t seed) {
    const int n = psi.nparties();
    const Dims& dims = psi.dims;
    Rng rng(seed);
    double best2 = 0.0;
    for (int s = 0; s < 12; ++s) {
        Rng sr = rng.split(s);
        std::vector<Vec> v(n);
        for (int q = 0; q < n; ++q) v[q] = random_pure_state({dims[q]}, sr).a;
        double prev = -1.0;
        for (int sweep = 0; sweep < 300; ++sweep) {
            double obj = 0.0;
            for (int q = 0; q < n; ++q) {
                // contract psi with conj(v_k) on every party except q
                Vec c = Vec::Zero(dims[q]);
                std::vector<int> idx(n, 0);
                for (int flat = 0; flat < psi.dim(); ++flat) {
                    int rest = flat;
                    for (int k = n - 1; k >= 0; --k) {
                        idx[k] = rest % dims[k];
                        rest /= dims[k];
                    }
                    cx amp = psi.a(flat);
                    for (int k = 0; k < n; ++k)
                        if (k != q) amp *= std::conj(v[k](idx[k]));
                    c(idx[q]) += amp;
                }
                const double nc = c.norm();
                if (nc > 1e-300) v[q] = c / nc;
                obj = nc;
            }
            if (std::abs(obj - prev) < 1e-13) break;
            prev = obj;
        }
        best2 = std::max(best2, prev * prev);
    }
    return 1.0 - best2;
}

BellDiagonalMonotones bell_diagonal_monotones(const std::array<double, 4>& p) {
    for (int i = 0; i < 3; ++i)
        if (p[i] < p[i + 1] - 1e-12)
            throw std::invalid_argument("bell_diagonal_monotones: weights not descending");
    if (std::abs(p[0] + p[1] + p[2] + p[3] - 1.0) > 1e-9)
        throw std::invalid_argument("bell_diagonal_monotones: weights must sum to 1");
    BellDiagonalMonotones out;
    out.e1 = p[0];
    out.et1 = std::max(0.0, out.e1 - 0.5);
    if (p[2] > 0.0) {
        out.e2 = (1.0 - 2.0 * p[1]) / (p[2] + p[3]);
        out.et2 = std::max(0.0, *out.e2 - 2.0);
    }
    if (p[3] > 0.0) {
        out.e3 = (1.0 - 2.0 * p[1] - 2.0 * p[2]) / p[3];
        out.et3 = std::max(0.0, *out.e3 - 2.0);
    }
    return out;
}

LorentzData lorentz_singular_monotone(const DensityMatrix& rho) {
    if (rho.dims != Dims{2, 2})
        throw std::invalid_argument("lorentz_singular_monotone: need two qubits");
    Eigen::Matrix4d t;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            t(m, n) = (rho.m * kron(detail::pauli(m), detail::pauli(n))).trace().real() / 4.0;
    Eigen::Matrix4d eta = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    Eigen::Matrix4d a = eta * t.transpose() * eta * t;
    Eigen::EigenSolver<Eigen::Matrix4d> es(a);
    Eigen::Vector4d ev = es.eigenvalues().real().cwiseMax(0.0);
    std::sort(ev.data(), ev.data() + 4, std::greater<double>());
    Eigen::Vector4d s = ev.cwiseSqrt();
    if (t.determinant() < 0.0) s(3) = -s(3);
    return {s(0), s(1), s(2), s(3), std::max(0.0, -s(0) + s(1) + s(2))};
}

}  // namespace tk
