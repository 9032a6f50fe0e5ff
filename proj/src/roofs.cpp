#include "tanglekit/roofs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tanglekit/bipartite.hpp"
#include "tanglekit/detail/neldermead.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/rng.hpp"

namespace tk {

namespace {

constexpr double kNullconeTrace = 1e-10;

// Evaluate a measure on a (possibly unnormalized) state matrix.  Prefers the
// mixed hook; otherwise requires the state to be numerically pure and feeds
// the scaled dominant eigenvector to the pure hook.
double eval_state(const MeasureHandle& m, const DensityMatrix& rho) {
    if (m.mixed_eval) return m.mixed_eval(rho);
    if (!m.pure_eval) throw std::invalid_argument("measure has no evaluation hook");
    const Eigh e = eigh(rho.m);
    const Eigen::Index top = e.w.size() - 1;
    const double tr = e.w.sum();
    if (e.w[top] < tr * (1.0 - 1e-8)) {
        throw std::invalid_argument("measure '" + m.name +
                                    "' has no mixed-state evaluator and the state is not pure");
    }
    Vec v = e.v.col(top) * std::sqrt(std::max(e.w[top], 0.0));
    return m.pure_eval(PureState(std::move(v), rho.dims, true));
}

double require_degree(const MeasureHandle& m) {
    if (std::isnan(m.rho_degree)) {
        throw std::invalid_argument("measure '" + m.name + "' lacks a homogeneity degree");
    }
    return m.rho_degree;
}

// ----------------------------------------------------------- roof machinery

double member_value(const MeasureHandle& m, const Vec& f, const Dims& dims) {
    const double p = f.squaredNorm();
    if (p <= 1e-14) return 0.0;
    return p * m.pure_eval(PureState(f / std::sqrt(p), dims, true));
}

double ensemble_value(const MeasureHandle& m, const std::vector<Vec>& phis, const Dims& dims) {
    double tot = 0.0;
    for (const Vec& f : phis) tot += member_value(m, f, dims);
    return tot;
}

void rotate_pair(std::vector<Vec>& phis, std::size_t i, std::size_t j, double th, double ph) {
    const double c = std::cos(th);
    const cx sn = std::sin(th) * std::exp(cx(0, ph));
    const Vec fi = phis[i], fj = phis[j];
    phis[i] = c * fi + sn * fj;
    phis[j] = -std::conj(sn) * fi + c * fj;
}

double roof_minimize(const MeasureHandle& m, const DensityMatrix& rho, int ell,
                     std::uint64_t seed, int starts, int max_sweeps) {
    if (!m.pure_eval) throw std::invalid_argument("roof search needs a pure-state hook");
    const Eigh e = eigh(rho.m);
    std::vector<Vec> base;
    for (Eigen::Index i = 0; i < e.w.size(); ++i) {
        if (e.w[i] > 1e-12) base.push_back(e.v.col(i) * std::sqrt(e.w[i]));
    }
    const int r = static_cast<int>(base.size());
    if (ell == 0) ell = 2 * r;
    if (ell < r) throw std::invalid_argument("decomposition length below the rank");
    while (static_cast<int>(base.size()) < ell) {
        base.push_back(Vec::Zero(rho.dim()));
    }
    const std::size_t L = base.size();
    const Rng root(seed);

    auto descend = [&](std::vector<Vec>& phis, double cur) {
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            const double prev = cur;
            for (std::size_t i = 0; i < L; ++i) {
                for (std::size_t j = i + 1; j < L; ++j) {
                    const Vec fi = phis[i], fj = phis[j];
                    auto val2 = [&](double th, double ph) {
                        const double c = std::cos(th);
                        const cx sn = std::sin(th) * std::exp(cx(0, ph));
                        const Vec gi = c * fi + sn * fj;
                        const Vec gj = -std::conj(sn) * fi + c * fj;
                        return member_value(m, gi, rho.dims) + member_value(m, gj, rho.dims);
                    };
                    const double here = val2(0.0, 0.0);
                    // member values are nonnegative, so a zeroed pair is optimal
                    if (here < 1e-15) continue;
                    double bth = 0.0, bph = 0.0, bv = here;
                    for (int ti = 1; ti <= 6; ++ti) {
                        const double th = ti * (std::numbers::pi / 12.0);
                        for (int pi_ = 0; pi_ < 8; ++pi_) {
                            const double ph = pi_ * (std::numbers::pi / 4.0);
                            const double vv = val2(th, ph);
                            if (vv < bv - 1e-15) {
                                bv = vv;
                                bth = th;
                                bph = ph;
                            }
                        }
                    }
                    const detail::NmResult nm = detail::nelder_mead(
                        [&](const std::vector<double>& t) { return val2(t[0], t[1]); },
                        {bth, bph}, 0.15, 200, 1e-13, 1e-9);
                    if (nm.f < bv) {
                        bv = nm.f;
                        bth = nm.x[0];
                        bph = nm.x[1];
                    }
                    if (bv < here - 1e-14) rotate_pair(phis, i, j, bth, bph);
                }
            }
            cur = ensemble_value(m, phis, rho.dims);
            if (prev - cur < 1e-11) break;
        }
        return cur;
    };

    double best = ensemble_value(m, base, rho.dims);
    constexpr int kKicks = 5;  // kick-and-redescend rounds per start
    for (int s = 0; s < starts && best > 1e-13; ++s) {
        std::vector<Vec> phis = base;
        Rng sr = root.split(static_cast<std::uint64_t>(s));
        if (s > 0) {
            for (std::size_t t = 0; t < 4 * L; ++t) {
                const auto i = static_cast<std::size_t>(sr.next_double() * L) % L;
                const auto j = static_cast<std::size_t>(sr.next_double() * L) % L;
                const double th = sr.next_double() * std::numbers::pi;
                const double ph = sr.next_double() * 2.0 * std::numbers::pi;
                if (i == j) continue;
                rotate_pair(phis, i, j, th, ph);
            }
        }
        double cur = descend(phis, ensemble_value(m, phis, rho.dims));
        // pairwise sweeps stall on shallow plateaus near the separable
        // boundary; perturb the converged ensemble and descend again,
        // alternating gentle and aggressive kicks
        for (int k = 0; k < kKicks && cur > 1e-13; ++k) {
            std::vector<Vec> trial = phis;
            Rng kr = sr.split(static_cast<std::uint64_t>(100 + k));
            const double amp = (k % 2 == 0) ? 0.45 : 1.3;
            for (std::size_t t = 0; t < L; ++t) {
                const auto i = static_cast<std::size_t>(kr.next_double() * L) % L;
                const auto j = static_cast<std::size_t>(kr.next_double() * L) % L;
                const double th = amp * kr.next_double();
                const double ph = 2.0 * std::numbers::pi * kr.next_double();
                if (i == j) continue;
                rotate_pair(trial, i, j, th, ph);
            }
            const double tv = descend(trial, ensemble_value(m, trial, rho.dims));
            if (tv < cur - 1e-14) {
                phis.swap(trial);
                cur = tv;
            }
        }
        best = std::min(best, cur);
    }
    return best;
}

}  // namespace

NormalFormResult normal_form(const DensityMatrix& rho, double tol, int max_iter) {
    const Dims& dims = rho.dims;
    const int n = static_cast<int>(dims.size());
    Mat cur = rho.m;
    std::vector<Mat> acc;
    for (int j = 0; j < n; ++j) acc.push_back(Mat::Identity(dims[j], dims[j]));

    auto finish = [&](double tr, bool conv, int iters) {
        NormalFormResult out;
        out.state = DensityMatrix(cur, dims, true);
        out.trace = tr;
        out.converged = conv;
        out.iterations = iters;
        bool sl = true;
        for (const Mat& f : acc) {
            if (std::abs(f.determinant() - 1.0) > 1e-9) sl = false;
        }
        out.transforms.factors = acc;
        out.transforms.kind = sl ? OpKind::SpecialLinear : OpKind::General;
        return out;
    };

    for (int it = 0; it < max_iter; ++it) {
        const double tr = cur.trace().real();
        if (tr < kNullconeTrace) return finish(tr, false, it);
        double dev = 0.0;
        for (int j = 0; j < n; ++j) {
            Mat red = partial_trace_mat(cur, dims, {j}) / tr;
            red.diagonal().array() -= 1.0 / dims[j];
            dev = std::max(dev, red.cwiseAbs().maxCoeff());
        }
        if (dev < tol) return finish(tr, true, it);

        for (int j = 0; j < n; ++j) {
            Mat red = partial_trace_mat(cur, dims, {j});
            red.diagonal().array() += 1e-14;
            const Eigh e = eigh(static_cast<double>(dims[j]) * red);
            Mat f = e.v * e.w.cwiseMax(0.0).cwiseSqrt().cwiseInverse().asDiagonal()
                  * e.v.adjoint();
            f /= std::pow(f.determinant(), 1.0 / dims[j]);
            std::vector<Mat> ops;
            for (int i = 0; i < n; ++i) {
                ops.push_back(i == j ? f : Mat(Mat::Identity(dims[i], dims[i])));
            }
            const Mat g = kron_list(ops);
            cur = g * cur * g.adjoint();
            acc[static_cast<std::size_t>(j)] = f * acc[static_cast<std::size_t>(j)];
        }
    }
    return finish(cur.trace().real(), false, max_iter);
}

double evaluate_via_normal_form(const MeasureHandle& measure, const DensityMatrix& rho) {
    const double alpha = require_degree(measure);
    const NormalFormResult nf = normal_form(rho);
    if (nf.trace < kNullconeTrace) return 0.0;
    const DensityMatrix unit = DensityMatrix::trusted(nf.state.m / nf.trace, rho.dims);
    return std::pow(nf.trace, alpha) * eval_state(measure, unit);
}

BoundValue convex_roof_upper(const MeasureHandle& measure, const DensityMatrix& rho,
                             int ell, std::uint64_t seed) {
    const double v = roof_minimize(measure, rho, ell, seed, 16, 40);
    return BoundValue{v, BoundKind::Upper};
}

double convex_roof_bruteforce(const MeasureHandle& measure, const DensityMatrix& rho,
                              int grid_n) {
    if (!measure.pure_eval) throw std::invalid_argument("roof search needs a pure-state hook");
    if (grid_n < 4) throw std::invalid_argument("grid too coarse");
    const Eigh e = eigh(rho.m);
    const Eigen::Index D = e.w.size();
    if (D > 2 && e.w[D - 3] > 1e-10) {
        throw std::invalid_argument("brute-force roof requires rank <= 2");
    }
    const Vec f1 = e.v.col(D - 1) * std::sqrt(std::max(e.w[D - 1], 0.0));
    const Vec f2 = e.v.col(D - 2) * std::sqrt(std::max(e.w[D - 2], 0.0));

    auto val = [&](double th, double ph) {
        const double c = std::cos(th);
        const cx sn = std::sin(th) * std::exp(cx(0, ph));
        const Vec g1 = c * f1 + sn * f2;
        const Vec g2 = -std::conj(sn) * f1 + c * f2;
        return member_value(measure, g1, rho.dims) + member_value(measure, g2, rho.dims);
    };

    double best = std::numeric_limits<double>::infinity();
    double bth = 0.0, bph = 0.0;
    for (int ti = 0; ti < grid_n; ++ti) {
        const double th = (std::numbers::pi / 2.0) * ti / (grid_n - 1);
        for (int pi_ = 0; pi_ < grid_n; ++pi_) {
            const double ph = 2.0 * std::numbers::pi * pi_ / grid_n;
            const double vv = val(th, ph);
            if (vv < best) {
                best = vv;
                bth = th;
                bph = ph;
            }
        }
    }
    const detail::NmResult nm = detail::nelder_mead(
        [&](const std::vector<double>& t) { return val(t[0], t[1]); },
        {bth, bph}, 0.05, 800, 1e-15, 1e-12);
    return std::min(best, nm.f);
}

BoundValue cren_upper(const DensityMatrix& rho, std::uint64_t seed) {
    if (rho.dims.size() != 2) throw std::invalid_argument("bipartite state required");
    return convex_roof_upper(measure_negativity(), rho, 0, seed);
}

const MonotoneCheck& MonotoneReport::at(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no such check: " + name);
}

MonotoneReport monotone_property_checks(const MeasureHandle& measure,
                                        const std::vector<DensityMatrix>& fixtures,
                                        std::uint64_t seed) {
    if (fixtures.empty()) throw std::invalid_argument("empty fixture set");
    constexpr double kTol = 1e-6;
    const Rng root(seed);
    MonotoneReport rep;

    const bool has_mixed = static_cast<bool>(measure.mixed_eval);

    // average non-increase under random two-outcome local filters
    {
        double worst = 0.0;
        int stream = 0;
        for (const DensityMatrix& rho : fixtures) {
            const double mu = eval_state(measure, rho);
            const int n = static_cast<int>(rho.dims.size());
            for (int t = 0; t < 8; ++t) {
                Rng r = root.split(static_cast<std::uint64_t>(1000 + stream++));
                const int party = static_cast<int>(r.next_double() * n) % n;
                const int d = rho.dims[static_cast<std::size_t>(party)];
                Mat g(d, d);
                for (Eigen::Index row = 0; row < d; ++row)
                    for (Eigen::Index col = 0; col < d; ++col) {
                        auto [g1, g2] = r.next_gauss_pair();
                        g(row, col) = cx(g1, g2);
                    }
                Eigen::JacobiSVD<Mat> svd(g);
                g /= svd.singularValues()[0] * (1.0 + 0.25 * r.next_double());
                const Mat comp = sqrtm_psd(Mat(Mat::Identity(d, d) - g.adjoint() * g));
                double avg = 0.0;
                for (const Mat& k : {g, comp}) {
                    std::vector<Mat> ops;
                    for (int q = 0; q < n; ++q) {
                        ops.push_back(q == party ? k : Mat(Mat::Identity(rho.dims[q], rho.dims[q])));
                    }
                    const Mat kk = kron_list(ops);
                    const Mat out = kk * rho.m * kk.adjoint();
                    const double p = out.trace().real();
                    if (p > 1e-12) {
                        avg += p * eval_state(measure,
                                              DensityMatrix::trusted(out / p, rho.dims));
                    }
                }
                worst = std::max(worst, avg - mu);
            }
        }
        rep.checks.push_back({"filter non-increase", worst <= kTol, worst});
    }

    // zero on separable (product) states
    {
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            const Dims& dims = fixtures[static_cast<std::size_t>(t) % fixtures.size()].dims;
            Rng r = root.split(static_cast<std::uint64_t>(2000 + t));
            const PureState prod = random_product_state(dims, r);
            worst = std::max(worst, std::abs(eval_state(measure, dm(prod))));
        }
        rep.checks.push_back({"separable zero", worst <= kTol, worst});
    }

    // convexity under random mixing (needs a mixed-state evaluator)
    if (has_mixed) {
        double worst = 0.0;
        int done = 0;
        for (int t = 0; t < 32 && done < 10; ++t) {
            Rng r = root.split(static_cast<std::uint64_t>(3000 + t));
            const auto i = static_cast<std::size_t>(r.next_double() * fixtures.size())
                           % fixtures.size();
            const auto j = static_cast<std::size_t>(r.next_double() * fixtures.size())
                           % fixtures.size();
            if (fixtures[i].dims != fixtures[j].dims) continue;
            const double lam = 0.1 + 0.8 * r.next_double();
            const Mat mix = lam * fixtures[i].m + (1.0 - lam) * fixtures[j].m;
            const double lhs = eval_state(measure,
                                          DensityMatrix::trusted(mix, fixtures[i].dims));
            const double rhs = lam * eval_state(measure, fixtures[i])
                             + (1.0 - lam) * eval_state(measure, fixtures[j]);
            worst = std::max(worst, lhs - rhs);
            ++done;
        }
        rep.checks.push_back({"convexity", worst <= kTol, worst});
    }

    // homogeneity-exponent recovery on scaled inputs
    if (has_mixed && !std::isnan(measure.rho_degree)) {
        double worst = 0.0;
        int stream = 0;
        for (const DensityMatrix& rho : fixtures) {
            const double mu = measure.mixed_eval(rho);
            if (std::abs(mu) < 1e-9) continue;
            for (int t = 0; t < 3; ++t) {
                Rng r = root.split(static_cast<std::uint64_t>(4000 + stream++));
                const double lam = 0.3 + 0.6 * r.next_double();
                const double scaled = measure.mixed_eval(
                    DensityMatrix(Mat(lam * rho.m), rho.dims, true));
                const double alpha = std::log(scaled / mu) / std::log(lam);
                worst = std::max(worst, std::abs(alpha - measure.rho_degree));
            }
        }
        rep.checks.push_back({"homogeneity", worst <= kTol, worst});
    }

    // invariance under determinant-one local operators
    if (measure.sl_invariant) {
        double worst = 0.0;
        int stream = 0;
        for (const DensityMatrix& rho : fixtures) {
            const double mu = eval_state(measure, rho);
            for (int t = 0; t < 5; ++t) {
                Rng r = root.split(static_cast<std::uint64_t>(5000 + stream++));
                const LocalOperator op = random_local_sl(rho.dims, r);
                const Mat full = kron_list(op.factors);
                const Mat img = full * rho.m * full.adjoint();
                const double mi = eval_state(measure, DensityMatrix(img, rho.dims, true));
                worst = std::max(worst, std::abs(mi - mu) / std::max(1e-12, std::abs(mu)));
            }
        }
        rep.checks.push_back({"sl invariance", worst <= 1e-7, worst});
    }

    return rep;
}

// --------------------------------------------------------------- measures

MeasureHandle measure_wootters_concurrence() {
    MeasureHandle m;
    m.name = "wootters-concurrence";
    m.rho_degree = 1.0;
    m.sl_invariant = true;
    m.pure_eval = [](const PureState& psi) {
        if (psi.dims != Dims{2, 2}) throw std::invalid_argument("two qubits required");
        return 2.0 * std::abs(psi.a[0] * psi.a[3] - psi.a[1] * psi.a[2]);
    };
    m.mixed_eval = [](const DensityMatrix& rho) { return wootters_concurrence(rho); };
    return m;
}

MeasureHandle measure_pure_concurrence() {
    MeasureHandle m;
    m.name = "pure-concurrence";
    m.rho_degree = 1.0;
    m.sl_invariant = false;
    m.pure_eval = [](const PureState& psi) {
        if (psi.dims == Dims{2, 2}) {
            return 2.0 * std::abs(psi.a[0] * psi.a[3] - psi.a[1] * psi.a[2]);
        }
        return i_concurrence(psi, {0});
    };
    return m;
}

MeasureHandle measure_tau3() {
    MeasureHandle m;
    m.name = "three-tangle";
    m.rho_degree = 1.0;
    m.sl_invariant = true;
    m.pure_eval = [](const PureState& psi) { return tau3(psi); };
    MeasureHandle pure_only = m;
    m.mixed_eval = [pure_only](const DensityMatrix& rho) {
        return convex_roof_upper(pure_only, rho, 0, 13).value;
    };
    return m;
}

MeasureHandle measure_residual_tangle() {
    MeasureHandle m;
    m.name = "residual-tangle";
    m.rho_degree = 2.0;
    m.sl_invariant = true;
    m.pure_eval = [](const PureState& psi) { return residual_tangle(psi); };
    return m;
}

MeasureHandle measure_g_concurrence(int d) {
    MeasureHandle m;
    m.name = "g-concurrence";
    m.rho_degree = 1.0;
    m.sl_invariant = true;
    m.pure_eval = [d](const PureState& psi) {
        if (psi.dims != Dims{d, d}) throw std::invalid_argument("d x d state required");
        return g_concurrence(psi);
    };
    MeasureHandle pure_only = m;
    m.mixed_eval = [pure_only](const DensityMatrix& rho) {
        return evaluate_via_normal_form(pure_only, rho);
    };
    return m;
}

MeasureHandle measure_negativity() {
    MeasureHandle m;
    m.name = "negativity";
    m.rho_degree = 1.0;
    m.sl_invariant = false;
    m.pure_eval = [](const PureState& psi) {
        const SchmidtData s = schmidt(psi, {0});
        double root_sum = 0.0, sum = 0.0;
        for (double p : s.coefficients) {
            root_sum += std::sqrt(std::max(0.0, p));
            sum += p;
        }
        return 0.5 * (root_sum * root_sum - sum);
    };
    m.mixed_eval = [](const DensityMatrix& rho) { return negativity(rho, 0); };
    return m;
}

MeasureHandle measure_purity_fake() {
    MeasureHandle m;
    m.name = "purity";
    m.rho_degree = 2.0;
    m.sl_invariant = false;
    m.pure_eval = [](const PureState& psi) {
        const double n2 = psi.a.squaredNorm();
        return n2 * n2;
    };
    m.mixed_eval = [](const DensityMatrix& rho) { return (rho.m * rho.m).trace().real(); };
    return m;
}

}  // namespace tk
