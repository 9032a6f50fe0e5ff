#include "tanglekit/symfam.hpp"

#include <cmath>

namespace tk {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

}  // namespace

AxiRanges axi_ranges(int d) {
    return {-1.0 / (d * std::sqrt(d - 1.0)), std::sqrt(d - 1.0) / d,
            -1.0 / std::sqrt(d * (d - 1.0)), std::sqrt((d - 1.0) / d)};
}

DensityMatrix werner_state(double p) {
    if (p < -1.0 / 3.0 - 1e-12 || p > 1.0 + 1e-12)
        throw std::invalid_argument("werner_state: p outside [-1/3, 1]");
    Mat m = p * dm(bell()).m + (1.0 - p) * Mat::Identity(4, 4) / 4.0;
    return DensityMatrix::trusted(std::move(m), {2, 2});
}

DensityMatrix isotropic_state(double p, int d) {
    const double lo = -1.0 / (d * d - 1.0);
    if (p < lo - 1e-12 || p > 1.0 + 1e-12)
        throw std::invalid_argument("isotropic_state: p outside physical range");
    Mat m = p * dm(psi_d(d)).m + (1.0 - p) * Mat::Identity(d * d, d * d) / double(d * d);
    return DensityMatrix::trusted(std::move(m), {d, d});
}

namespace {
Mat axi_matrix(const AxiCoords& c) {
    const int d = c.d;
    const double a = c.y * std::sqrt(d - 1.0) / d;
    const double b = c.x / std::sqrt(d * (d - 1.0));
    Mat m = Mat::Zero(d * d, d * d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            m(j * d + k, j * d + k) = 1.0 / (d * d) + (j == k ? a : -a / (d - 1.0));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (j != k) m(j * d + j, k * d + k) = b;
    return m;
}
}  // namespace

bool axi_physical(const AxiCoords& c, double tol) {
    if (c.d < 2) return false;
    return eigh(axi_matrix(c)).w.minCoeff() >= -tol;
}

DensityMatrix axi_state(const AxiCoords& c) {
    Mat m = axi_matrix(c);
    if (eigh(m).w.minCoeff() < -1e-9)
        throw std::invalid_argument("axi_state: coordinates give a non-PSD matrix");
    return DensityMatrix::trusted(std::move(m), {c.d, c.d});
}

bool ghzsym_physical(const GhzSymCoords& c, double tol) {
    const double mu = kSqrt3 * c.y / 2.0 + 0.125;
    return c.y >= -1.0 / (4.0 * kSqrt3) - tol && c.y <= kSqrt3 / 4.0 + tol &&
           std::abs(c.x) <= mu + tol;
}

DensityMatrix ghzsym_state(const GhzSymCoords& c) {
    if (!ghzsym_physical(c))
        throw std::invalid_argument("ghzsym_state: point outside the physical triangle");
    const double mu = kSqrt3 * c.y / 2.0 + 0.125;
    const double nu = (1.0 - 2.0 * mu) / 6.0;
    Mat m = Mat::Zero(8, 8);
    m.diagonal() << mu, nu, nu, nu, nu, nu, nu, mu;
    m(0, 7) = m(7, 0) = c.x;
    return DensityMatrix::trusted(std::move(m), {2, 2, 2});
}

AxiCoords axi_twirl(const DensityMatrix& rho) {
    if (rho.dims.size() != 2 || rho.dims[0] != rho.dims[1])
        throw std::invalid_argument("axi_twirl: need two equal-dimension parties");
    const int d = rho.dims[0];
    double diag_jj = 0.0, offd = 0.0;
    for (int j = 0; j < d; ++j) diag_jj += rho.m(j * d + j, j * d + j).real();
    diag_jj = diag_jj / d - 1.0 / (d * d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (j != k) offd += rho.m(j * d + j, k * d + k).real();
    offd /= double(d) * (d - 1);
    return {offd * std::sqrt(d * (d - 1.0)), diag_jj * d / std::sqrt(d - 1.0), d};
}

double isotropic_twirl(const DensityMatrix& rho) {
    if (rho.dims.size() != 2 || rho.dims[0] != rho.dims[1])
        throw std::invalid_argument("isotropic_twirl: need two equal-dimension parties");
    const int d = rho.dims[0];
    const double f = fidelity_with_pure(psi_d(d), rho);
    return (f - 1.0 / (d * d)) / (1.0 - 1.0 / (d * d));
}

GhzSymCoords ghzsym_twirl(const DensityMatrix& rho) {
    if (rho.dims != Dims{2, 2, 2}) throw std::invalid_argument("ghzsym_twirl: need 3 qubits");
    return {0.5 * (rho.m(0, 7) + rho.m(7, 0)).real(),
            ((rho.m(0, 0) + rho.m(7, 7)).real() - 0.25) / kSqrt3};
}

double axi_negativity(const AxiCoords& c) {
    const int d = c.d;
    return std::max(0.0, 0.5 * (std::sqrt(d * (d - 1.0)) * std::abs(c.x) +
                                std::sqrt(d - 1.0) * c.y - (d - 1.0) / d));
}

int axi_schmidt_number(const AxiCoords& c) {
    // band inequality k-2 <= 2N <= k-1 resolved downward at boundaries
    const double n2 = 2.0 * axi_negativity(c);
    int k = static_cast<int>(std::ceil(n2 + 1.0 - 1e-12));
    return std::clamp(k, 1, c.d);
}

MeasureReport axi_exact(const AxiCoords& c) {
    MeasureReport r;
    const double n = axi_negativity(c);
    r.add("negativity", n, BoundKind::Exact);
    if (c.x >= 0.0) {
        r.add("concurrence", std::sqrt(2.0 / (c.d * (c.d - 1.0))) * 2.0 * n, BoundKind::Exact);
    } else {
        r.label("concurrence", "unavailable: formula requires x >= 0");
    }
    r.add("schmidt_number", axi_schmidt_number(c), BoundKind::Exact);
    return r;
}

const char* ghzsym_class_name(GhzSymClass c) {
    switch (c) {
        case GhzSymClass::Separable: return "separable";
        case GhzSymClass::Biseparable: return "biseparable";
        case GhzSymClass::W: return "W";
        default: return "GHZ";
    }
}

std::pair<double, double> ghzsym_wcurve(double v) {
    const double v2 = v * v;
    return {(v2 * v2 * v + 8.0 * v2 * v) / (8.0 * (4.0 - v2)),
            (kSqrt3 / 4.0) * (4.0 - v2 - v2 * v2) / (4.0 - v2)};
}

double ghzsym_tau3_interpolant(const GhzSymCoords& c) {
    const double x = std::abs(c.x), y = c.y;
    const double gx = 0.5, gy = kSqrt3 / 4.0;
    if (std::abs(x - gx) < 1e-14 && std::abs(y - gy) < 1e-14) return 1.0;

    auto cross = [&](double v) {
        auto [ax, ay] = ghzsym_wcurve(v);
        return (gx - ax) * (y - ay) - (gy - ay) * (x - ax);
    };

    double lo = 0.0, hi = 1.0, flo = cross(lo), fhi = cross(hi), v;
    if (flo == 0.0) {
        v = lo;
    } else if (fhi == 0.0) {
        v = hi;
    } else if (flo * fhi > 0.0) {
        // no pencil-line crossing: the point sits on the W side of the whole
        // curve (or past the triangle edge the curve ends on), where the
        // characteristic-curve construction gives zero
        return 0.0;
    } else {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = cross(mid);
            if (flo * fm <= 0.0) {
                hi = mid;
                fhi = fm;
            } else {
                lo = mid;
                flo = fm;
            }
            if (hi - lo < 1e-12) break;
        }
        v = 0.5 * (lo + hi);
    }
    auto [xw, yw] = ghzsym_wcurve(v);
    return (x - xw) / (0.5 - xw);
}

double ghzsym_tau3(const GhzSymCoords& c) {
    return std::max(0.0, ghzsym_tau3_interpolant(c));
}

double ghzsym_gme_concurrence(const GhzSymCoords& c) {
    return 2.0 * std::max(0.0, std::abs(c.x) + kSqrt3 / 2.0 * c.y - 3.0 / 8.0);
}

// Matches the direct partial-transpose negativity; the printed closed form
// below has its orientation flipped and is kept only for comparison.
double ghzsym_negativity_exact(const GhzSymCoords& c) {
    return std::max(0.0, std::abs(c.x) + c.y / (2.0 * kSqrt3) - 0.125);
}

double ghzsym_negativity_printed(const GhzSymCoords& c) {
    return std::max(0.0, 0.125 - c.y / (2.0 * kSqrt3) - std::abs(c.x));
}

GhzSymClass ghzsym_classify(const GhzSymCoords& c) {
    // boundary points fall to the lower class (closed lower sets); the tau3
    // threshold absorbs the 1e-12 bisection granularity at the GHZ-W curve
    if (8.0 * std::abs(c.x) + 4.0 * c.y / kSqrt3 <= 1.0 + 1e-14) return GhzSymClass::Separable;
    if (std::abs(c.x) + kSqrt3 / 2.0 * c.y <= 3.0 / 8.0 + 1e-14) return GhzSymClass::Biseparable;
    if (ghzsym_tau3(c) <= 1e-10) return GhzSymClass::W;
    return GhzSymClass::GHZ;
}

MeasureReport ghzsym_exact(const GhzSymCoords& c) {
    MeasureReport r;
    r.add("tau3", ghzsym_tau3(c), BoundKind::Exact);
    r.add("gme_concurrence", ghzsym_gme_concurrence(c), BoundKind::Exact);
    r.add("negativity", ghzsym_negativity_exact(c), BoundKind::Exact);
    r.label("class", ghzsym_class_name(ghzsym_classify(c)));
    return r;
}

}  // namespace tk
