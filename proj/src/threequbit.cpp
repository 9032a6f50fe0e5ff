#include "tanglekit/threequbit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tanglekit/bipartite.hpp"
#include "tanglekit/detail/neldermead.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/rng.hpp"
#include "tanglekit/roofs.hpp"
#include "tanglekit/symfam.hpp"

namespace tk {

namespace {

constexpr double kClassTol = 1e-8;   // numerical-class boundary, not mathematical
constexpr double kCrossTol = 1e-10;

Mat u2_from_angles(const double* a) {
    const double ph = a[0], th = a[1], la = a[2], mu = a[3];
    const double cs = std::cos(th), sn = std::sin(th);
    Mat u(2, 2);
    u(0, 0) = cs * std::exp(cx(0, la));
    u(0, 1) = sn * std::exp(cx(0, mu));
    u(1, 0) = -sn * std::exp(cx(0, -mu));
    u(1, 1) = cs * std::exp(cx(0, -la));
    return std::exp(cx(0, ph)) * u;
}

}  // namespace

AcinParams::AcinParams(double l0_, double l1_, double l2_, double l3_, double l4_,
                       double phi_)
    : l0(l0_), l1(l1_), l2(l2_), l3(l3_), l4(l4_), phi(phi_) {
    for (double l : {l0, l1, l2, l3, l4}) {
        if (l < -1e-12) throw std::invalid_argument("canonical coefficients must be nonnegative");
    }
    if (phi < -1e-12 || phi > std::numbers::pi + 1e-12) {
        throw std::invalid_argument("canonical phase must lie in [0, pi]");
    }
    const double s = l0 * l0 + l1 * l1 + l2 * l2 + l3 * l3 + l4 * l4;
    if (std::abs(s - 1.0) > 1e-9) {
        throw std::invalid_argument("canonical coefficients must have unit square sum");
    }
}

PureState AcinParams::state() const {
    return acin_state(l0, l1, l2, l3, l4, phi);
}

AcinMeasures acin_measures(const AcinParams& p) {
    AcinMeasures m;
    m.tau3 = 2.0 * p.l0 * p.l4;
    m.c_ab = 2.0 * p.l0 * p.l3;
    m.c_ac = 2.0 * p.l0 * p.l2;
    m.c_bc = 2.0 * std::abs(p.l1 * p.l4 * std::exp(cx(0, p.phi)) - p.l2 * p.l3);
    m.c_a_bc = 2.0 * p.l0 * std::sqrt(p.l2 * p.l2 + p.l3 * p.l3 + p.l4 * p.l4);

    // the closed forms must agree with direct evaluation on the built state
    const PureState psi = p.state();
    const DensityMatrix rho = dm(psi);
    const double t_direct = tau3(psi);
    const double cab = wootters_concurrence(partial_trace(rho, {0, 1}));
    const double cac = wootters_concurrence(partial_trace(rho, {0, 2}));
    const double cbc = wootters_concurrence(partial_trace(rho, {1, 2}));
    const double cabc = i_concurrence(psi, {0});
    const bool ok = std::abs(m.tau3 - t_direct) <= kCrossTol
                 && std::abs(m.c_ab - cab) <= kCrossTol
                 && std::abs(m.c_ac - cac) <= kCrossTol
                 && std::abs(m.c_bc - cbc) <= kCrossTol
                 && std::abs(m.c_a_bc - cabc) <= kCrossTol;
    if (!ok) throw std::runtime_error("canonical-form measures disagree with direct evaluation");
    return m;
}

std::string class3_name(Class3 c) {
    switch (c) {
        case Class3::GHZ: return "GHZ";
        case Class3::W: return "W";
        case Class3::BisepA_BC: return "A-BC";
        case Class3::BisepB_AC: return "B-AC";
        case Class3::BisepC_AB: return "C-AB";
        default: return "separable";
    }
}

Class3 pure_class3(const PureState& psi) {
    if (psi.dims != Dims{2, 2, 2}) throw std::invalid_argument("three qubits required");
    // tau3 is the square root of a degree-4 polynomial whose evaluation noise
    // on unit-norm amplitudes reaches ~1e-14, i.e. tau3 ~ 1e-7 on states with
    // exactly vanishing tangle; gate the class on the polynomial itself
    if (residual_tangle(psi) > kClassTol * kClassTol * 1e4) return Class3::GHZ;
    const DensityMatrix rho = dm(psi);
    const double cab = wootters_concurrence(partial_trace(rho, {0, 1}));
    const double cac = wootters_concurrence(partial_trace(rho, {0, 2}));
    const double cbc = wootters_concurrence(partial_trace(rho, {1, 2}));
    const int nz = (cab > kClassTol) + (cac > kClassTol) + (cbc > kClassTol);
    // two or three nonzero pairwise concurrences span all three parties
    if (nz >= 2) return Class3::W;
    if (cbc > kClassTol) return Class3::BisepA_BC;
    if (cac > kClassTol) return Class3::BisepB_AC;
    if (cab > kClassTol) return Class3::BisepC_AB;
    return Class3::Separable;
}

double ghzw_superposition_tangle(double p, double phi) {
    if (p < -1e-12 || p > 1 + 1e-12) throw std::invalid_argument("weight must lie in [0,1]");
    p = std::min(1.0, std::max(0.0, p));
    const double k = (8.0 * std::sqrt(6.0) / 9.0) * std::sqrt(p * (1 - p) * (1 - p) * (1 - p));
    return std::abs(p * p - k * std::exp(cx(0, 3.0 * phi)));
}

WitnessOperator make_witness(WitnessKind kind) {
    if (kind == WitnessKind::Proj2Qubit) {
        const PureState phi = bell();
        Mat w = 0.5 * Mat::Identity(4, 4) - phi.a * phi.a.adjoint();
        return WitnessOperator{std::move(w), "two-qubit projection"};
    }
    Vec gp = Vec::Zero(8), gm = Vec::Zero(8);
    gp[0] = gp[7] = 1.0 / std::sqrt(2.0);
    gm[0] = 1.0 / std::sqrt(2.0);
    gm[7] = -1.0 / std::sqrt(2.0);
    if (kind == WitnessKind::GhzProj) {
        Mat w = 0.75 * Mat::Identity(8, 8) - gp * gp.adjoint();
        return WitnessOperator{std::move(w), "GHZ projection"};
    }
    Mat w = 0.75 * Mat::Identity(8, 8) - gp * gp.adjoint()
          - (3.0 / 7.0) * (gm * gm.adjoint());
    return WitnessOperator{std::move(w), "GHZ improved"};
}

double witness_value(const DensityMatrix& rho, WitnessKind kind) {
    const WitnessOperator w = make_witness(kind);
    if (rho.dim() != w.w.rows()) {
        throw std::invalid_argument("witness dimension does not match the state");
    }
    return (w.w * rho.m).trace().real();
}

double tau3_witness_bound(const DensityMatrix& rho) {
    if (rho.dims != Dims{2, 2, 2}) throw std::invalid_argument("three qubits required");
    const double off = (rho.m(0, 7) + rho.m(7, 0)).real();
    const double dia = (rho.m(0, 0) + rho.m(7, 7)).real();
    const double base = (20.0 / 7.0) * dia - 3.0;
    // the off-diagonal term enters with an undetermined sign; take the better one
    return std::max(0.0, base + (8.0 / 7.0) * std::abs(off));
}

BoundValue tau3_mixed_lower_bound(const DensityMatrix& rho, std::uint64_t seed) {
    if (rho.dims != Dims{2, 2, 2}) throw std::invalid_argument("three qubits required");

    const NormalFormResult nf = normal_form(rho);
    if (nf.trace < 1e-10) return BoundValue{0.0, BoundKind::Lower};
    const Mat sigma = nf.state.m / nf.trace;

    // maximize the unclamped pencil interpolant of the twirled image over
    // local unitaries; the clamp happens only on the reported value
    auto value_of = [&sigma](const std::vector<double>& x) {
        Mat u = kron(kron(u2_from_angles(x.data()), u2_from_angles(x.data() + 4)),
                     u2_from_angles(x.data() + 8));
        Mat img = u * sigma * u.adjoint();
        const double cx_ = 0.5 * (img(0, 7) + img(7, 0)).real();
        const double cy = ((img(0, 0) + img(7, 7)).real() - 0.25) / std::sqrt(3.0);
        return ghzsym_tau3_interpolant(GhzSymCoords{cx_, cy});
    };

    const Rng base(seed);
    double best = value_of(std::vector<double>(12, 0.0));  // identity kept verbatim

    constexpr int kStarts = 16;
    for (int s = 0; s < kStarts; ++s) {
        std::vector<double> x(12, 0.0);
        if (s > 0) {
            Rng r = base.split(static_cast<std::uint64_t>(s));
            for (double& xi : x) xi = 2.0 * std::numbers::pi * r.next_double();
        }
        double cur = value_of(x);
        for (int round = 0; round < 3; ++round) {
            for (int party = 0; party < 3; ++party) {
                std::vector<double> block(x.begin() + 4 * party, x.begin() + 4 * party + 4);
                auto fn = [&](const std::vector<double>& b) {
                    std::vector<double> full = x;
                    std::copy(b.begin(), b.end(), full.begin() + 4 * party);
                    return -value_of(full);
                };
                const detail::NmResult r = detail::nelder_mead(fn, block, 0.45, 600);
                if (-r.f > cur) {
                    cur = -r.f;
                    std::copy(r.x.begin(), r.x.end(), x.begin() + 4 * party);
                }
            }
        }
        const detail::NmResult r =
            detail::nelder_mead([&](const std::vector<double>& v) { return -value_of(v); },
                                x, 0.3, 1200);
        cur = std::max(cur, -r.f);
        best = std::max(best, cur);
    }
    return BoundValue{nf.trace * std::max(0.0, best), BoundKind::Lower};
}

}  // namespace tk
