#include "tanglekit/invariants.hpp"

#include <cmath>
#include <stdexcept>

#include "tanglekit/detail/pauli.hpp"

namespace tk {

namespace {

void require_qubits(const Dims& dims, std::size_t n = 0) {
    if (n != 0 && dims.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " qubits");
    }
    for (int d : dims) {
        if (d != 2) throw std::invalid_argument("qubit state required");
    }
}

// action of sigma_s on basis bit b: |b> -> phase * |b ^ flip>
void pauli_action(int s, int b, bool& flip, cx& phase) {
    switch (s) {
        case 0: flip = false; phase = 1.0; break;
        case 1: flip = true;  phase = 1.0; break;
        case 2: flip = true;  phase = b ? cx(0, -1) : cx(0, 1); break;
        case 3: flip = false; phase = b ? -1.0 : 1.0; break;
        default: throw std::invalid_argument("Pauli index out of range");
    }
}

cx comb_raw(const Vec& a, const PauliString& s) {
    const int n = static_cast<int>(s.size());
    const std::size_t D = a.size();
    cx tot = 0.0;
    for (std::size_t j = 0; j < D; ++j) {
        std::size_t f = j;
        cx phase = 1.0;
        for (int q = 0; q < n; ++q) {
            const int bitpos = n - 1 - q;
            const int b = static_cast<int>((j >> bitpos) & 1u);
            bool flip;
            cx ph;
            pauli_action(s[q], b, flip, ph);
            phase *= ph;
            if (flip) f ^= (std::size_t{1} << bitpos);
        }
        tot += phase * a[f] * a[j];
    }
    return tot;
}

// single contraction at position a (odd qubit count in the general family)
cx b_single(const Vec& v, int n, int a) {
    cx tot = 0.0;
    for (int mu : detail::METRIC_IDX) {
        PauliString idx(static_cast<std::size_t>(n), 2);
        idx[static_cast<std::size_t>(a)] = mu;
        const cx c = comb_raw(v, idx);
        tot += detail::metric_sign(mu) * c * c;
    }
    return tot;
}

// double contraction at positions a < b (even qubit count)
cx b_double(const Vec& v, int n, int a, int b) {
    cx tot = 0.0;
    for (int mu : detail::METRIC_IDX) {
        for (int nu : detail::METRIC_IDX) {
            PauliString idx(static_cast<std::size_t>(n), 2);
            idx[static_cast<std::size_t>(a)] = mu;
            idx[static_cast<std::size_t>(b)] = nu;
            const cx c = comb_raw(v, idx);
            tot += detail::metric_sign(mu) * detail::metric_sign(nu) * c * c;
        }
    }
    return tot;
}

double tau_res_coefficient_form(const Vec& a) {
    const cx d1 = a[0b000] * a[0b000] * a[0b111] * a[0b111]
                + a[0b001] * a[0b001] * a[0b110] * a[0b110]
                + a[0b010] * a[0b010] * a[0b101] * a[0b101]
                + a[0b100] * a[0b100] * a[0b011] * a[0b011];
    const cx d2 = a[0b000] * a[0b111] * a[0b011] * a[0b100]
                + a[0b000] * a[0b111] * a[0b101] * a[0b010]
                + a[0b000] * a[0b111] * a[0b110] * a[0b001]
                + a[0b011] * a[0b100] * a[0b101] * a[0b010]
                + a[0b011] * a[0b100] * a[0b110] * a[0b001]
                + a[0b101] * a[0b010] * a[0b110] * a[0b001];
    const cx d3 = a[0b000] * a[0b110] * a[0b101] * a[0b011]
                + a[0b111] * a[0b001] * a[0b010] * a[0b100];
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

// det of psi viewed as a 4x4 matrix, rows (c,d), cols (a,b), after an
// optional exchange of two tensor slots.  swap = -1 means no exchange.
cx det_slice(const Vec& v, int swap_with) {
    Eigen::Matrix4cd m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    int idx[4] = {a, b, c, d};
                    if (swap_with > 0) std::swap(idx[1], idx[swap_with]);
                    const int flat = (idx[0] << 3) | (idx[1] << 2) | (idx[2] << 1) | idx[3];
                    m(c * 2 + d, a * 2 + b) = v[flat];
                }
    return m.determinant();
}

}  // namespace

cx comb_expectation(const PureState& psi, const PauliString& s) {
    require_qubits(psi.dims);
    if (s.size() != psi.dims.size()) {
        throw std::invalid_argument("Pauli string length must equal qubit count");
    }
    return comb_raw(psi.a, s);
}

double residual_tangle(const PureState& psi) {
    require_qubits(psi.dims, 3);
    const double coeff = tau_res_coefficient_form(psi.a);
    const double viacomb = residual_tangle_comb(psi);
    if (std::abs(coeff - viacomb) > 1e-10 * std::max(1.0, coeff)) {
        throw std::runtime_error("residual tangle: coefficient and comb forms disagree");
    }
    return coeff;
}

double residual_tangle_comb(const PureState& psi) {
    require_qubits(psi.dims, 3);
    return std::abs(b_single(psi.a, 3, 0));
}

double tau3(const PureState& psi) {
    return std::sqrt(residual_tangle(psi));
}

FourQubitGenerators four_qubit_generators(const PureState& psi, bool raw) {
    require_qubits(psi.dims, 4);
    if (!raw && std::abs(psi.a.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("normalized state required (or pass raw=true)");
    }
    const Vec& v = psi.a;
    FourQubitGenerators g;
    g.h = comb_raw(v, {2, 2, 2, 2});
    g.b12 = b_double(v, 4, 0, 1);
    g.b13 = b_double(v, 4, 0, 2);
    g.b14 = b_double(v, 4, 0, 3);
    // the slot exchanges behind M and N flip the determinant's sign
    g.l = det_slice(v, -1);
    g.m = -det_slice(v, 2);
    g.n = -det_slice(v, 3);
    const cx f1v = filters(psi).f1;
    g.w = (f1v + g.h * g.h * g.h) / 32.0;
    // W = Dxy + Dxz + Dxt together with H(N-M)/2 = 3 Dxy - W (and cyclic)
    g.dxy = (g.w + 0.5 * g.h * (g.n - g.m)) / 3.0;
    g.dxz = (g.w + 0.5 * g.h * (g.l - g.n)) / 3.0;
    g.dxt = (g.w + 0.5 * g.h * (g.m - g.l)) / 3.0;
    return g;
}

FilterInvariants filters(const PureState& psi) {
    require_qubits(psi.dims, 4);
    const Vec& v = psi.a;
    FilterInvariants f;

    f.f1 = 0.0;
    for (int mu : detail::METRIC_IDX)
        for (int nu : detail::METRIC_IDX)
            for (int lam : detail::METRIC_IDX) {
                const double sign = detail::metric_sign(mu) * detail::metric_sign(nu)
                                  * detail::metric_sign(lam);
                f.f1 += sign * comb_raw(v, {mu, nu, 2, 2})
                             * comb_raw(v, {mu, 2, lam, 2})
                             * comb_raw(v, {2, nu, lam, 2});
            }

    f.f2 = 0.0;
    for (int mu : detail::METRIC_IDX)
        for (int nu : detail::METRIC_IDX)
            for (int lam : detail::METRIC_IDX)
                for (int tau : detail::METRIC_IDX) {
                    const double sign = detail::metric_sign(mu) * detail::metric_sign(nu)
                                      * detail::metric_sign(lam) * detail::metric_sign(tau);
                    f.f2 += sign * comb_raw(v, {mu, nu, 2, 2})
                                 * comb_raw(v, {mu, 2, lam, 2})
                                 * comb_raw(v, {2, nu, 2, tau})
                                 * comb_raw(v, {2, 2, lam, tau});
                }

    f.f3 = 0.5 * b_double(v, 4, 0, 1) * b_double(v, 4, 0, 2) * b_double(v, 4, 0, 3);
    return f;
}

cx hyperdeterminant4(const PureState& psi) {
    require_qubits(psi.dims, 4);
    const FourQubitGenerators g = four_qubit_generators(psi, true);
    const cx h = g.h, l = g.l, m = g.m, n = g.n;
    const cx f1v = filters(psi).f1;
    const cx w = (f1v + h * h * h) / 32.0;
    const cx sig = l * l + m * m + n * n;
    const cx pi = (l - m) * (m - n) * (n - l);
    auto p = [](cx z, int k) {
        cx r = 1.0;
        for (int i = 0; i < k; ++i) r *= z;
        return r;
    };
    const cx A = (5.0 / 512.0) * p(h, 9) + (5.0 / 16.0) * w * p(h, 6)
               - 4.5 * sig * p(h, 5) + 2.0 * (5.0 * w * w - 24.0 * pi) * p(h, 3)
               - 240.0 * w * sig * h * h + 768.0 * sig * sig * h
               + 192.0 * w * (3.0 * w * w + 8.0 * pi);
    const cx B = (1.0 / 256.0) * p(h, 8) - 8.5 * sig * p(h, 4)
               - 96.0 * pi * h * h + 256.0 * sig * sig;
    const cx lhs = -2.0 * f1v * A + (128.0 * sig - p(h, 4)) * B
                 - (256.0 * pi + p(h, 6) / 8.0) * (256.0 * pi + p(h, 6) / 8.0);
    return lhs / (4096.0 * 27.0);
}

cx h_even(const PureState& psi) {
    require_qubits(psi.dims);
    const int n = static_cast<int>(psi.dims.size());
    if (n > 10) throw std::invalid_argument("contraction limited to 10 qubits");
    if (n % 2 != 0) {
        throw std::invalid_argument("the all-sigma2 expectation is identically zero on an odd qubit count");
    }
    return comb_raw(psi.a, PauliString(static_cast<std::size_t>(n), 2));
}

cx b_degree4(const PureState& psi, int a) {
    require_qubits(psi.dims);
    const int n = static_cast<int>(psi.dims.size());
    if (n > 10) throw std::invalid_argument("contraction limited to 10 qubits");
    if (n % 2 == 0) throw std::invalid_argument("single contraction requires an odd qubit count");
    if (a < 0 || a >= n) throw std::invalid_argument("contraction position out of range");
    return b_single(psi.a, n, a);
}

cx b_degree4(const PureState& psi, int a, int b) {
    require_qubits(psi.dims);
    const int n = static_cast<int>(psi.dims.size());
    if (n > 10) throw std::invalid_argument("contraction limited to 10 qubits");
    if (n % 2 != 0) throw std::invalid_argument("double contraction requires an even qubit count");
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
        throw std::invalid_argument("contraction positions out of range");
    }
    return b_double(psi.a, n, std::min(a, b), std::max(a, b));
}

cx b_sym(const PureState& psi) {
    require_qubits(psi.dims);
    const int n = static_cast<int>(psi.dims.size());
    if (n > 10) throw std::invalid_argument("contraction limited to 10 qubits");
    cx tot = 0.0;
    if (n % 2 != 0) {
        for (int a = 0; a < n; ++a) tot += b_single(psi.a, n, a);
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) tot += b_double(psi.a, n, a, b);
    }
    return tot;
}

BlochData bloch_minkowski(const DensityMatrix& rho) {
    require_qubits(rho.dims);
    const int n = static_cast<int>(rho.dims.size());
    if (n > 10) throw std::invalid_argument("Bloch tensor limited to 10 qubits");

    std::size_t total = 1;
    for (int q = 0; q < n; ++q) total *= 4;

    BlochData out;
    out.tensor.resize(total);
    out.mink_len2 = 0.0;
    out.purity = 0.0;

    const std::size_t D = static_cast<std::size_t>(rho.dim());
    PauliString s(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        double sign = 1.0;
        for (int q = n - 1; q >= 0; --q) {
            s[static_cast<std::size_t>(q)] = static_cast<int>(rem % 4);
            if (s[static_cast<std::size_t>(q)] != 0) sign = -sign;
            rem /= 4;
        }
        // tr(rho P) with P a signed permutation: sum_j phase(j) rho(j, f(j))
        cx val = 0.0;
        for (std::size_t j = 0; j < D; ++j) {
            std::size_t f = j;
            cx phase = 1.0;
            for (int q = 0; q < n; ++q) {
                const int bitpos = n - 1 - q;
                const int b = static_cast<int>((j >> bitpos) & 1u);
                bool flip;
                cx ph;
                pauli_action(s[static_cast<std::size_t>(q)], b, flip, ph);
                phase *= ph;
                if (flip) f ^= (std::size_t{1} << bitpos);
            }
            val += phase * rho.m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(f));
        }
        const double x = val.real();
        out.tensor[flat] = x;
        out.mink_len2 += sign * x * x;
        out.purity += x * x;
    }
    // the one-qubit length is quoted with the 1/4 that makes it equal det(rho);
    // the multi-qubit sums are quoted bare
    if (n == 1) out.mink_len2 *= 0.25;
    out.purity /= static_cast<double>(std::size_t{1} << n);
    return out;
}

double concurrence_from_correlations(const PureState& psi) {
    require_qubits(psi.dims, 2);
    const DensityMatrix rho = dm(psi);
    const BlochData b = bloch_minkowski(rho);
    const double c2 = 0.25 * b.mink_len2;
    return std::sqrt(std::max(0.0, c2));
}

}  // namespace tk
