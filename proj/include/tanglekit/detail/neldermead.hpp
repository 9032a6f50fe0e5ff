#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace tk::detail {

struct NmResult {
    std::vector<double> x;
    double f;
    int evals;
};

// Plain Nelder-Mead minimizer, initial simplex = x0 + step*e_i.
// Deterministic; good enough for the low-dimensional angle searches here.
inline NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                            std::vector<double> x0, double step = 0.25, int max_iter = 400,
                            double ftol = 1e-12, double xtol = 1e-9) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    int evals = 0;
    for (int i = 1; i <= n; ++i) pts[i][i - 1] += step;
    for (int i = 0; i <= n; ++i) {
        fv[i] = fn(pts[i]);
        ++evals;
    }

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> np(n + 1);
        std::vector<double> nf(n + 1);
        for (int i = 0; i <= n; ++i) {
            np[i] = pts[idx[i]];
            nf[i] = fv[idx[i]];
        }
        pts.swap(np);
        fv.swap(nf);
    };

    order();
    for (int it = 0; it < max_iter; ++it) {
        double span = 0.0;
        for (int i = 0; i < n; ++i)
            span = std::max(span, std::abs(pts[n][i] - pts[0][i]));
        if (std::abs(fv[n] - fv[0]) < ftol && span < xtol) break;

        std::vector<double> cen(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) cen[j] += pts[i][j];
        }
        for (int j = 0; j < n; ++j) cen[j] /= n;

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = cen[j] + t * (pts[n][j] - cen[j]);
            return p;
        };

        std::vector<double> xr = blend(-1.0);
        double fr = fn(xr);
        ++evals;
        if (fr < fv[0]) {
            std::vector<double> xe = blend(-2.0);
            double fe = fn(xe);
            ++evals;
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[n] ? -0.5 : 0.5);
            double fc = fn(xc);
            ++evals;
            if (fc < std::min(fr, fv[n])) {
                pts[n] = xc;
                fv[n] = fc;
            } else {  // shrink toward best
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    fv[i] = fn(pts[i]);
                    ++evals;
                }
            }
        }
        order();
    }
    return {pts[0], fv[0], evals};
}

}  // namespace tk::detail
