#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tk {

using cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Dims = std::vector<int>;

inline int dim_prod(const Dims& dims) {
    int p = 1;
    for (int d : dims) p *= d;
    return p;
}

// Index convention everywhere: party-major, row-major flattening, first party
// most significant.  flat = ((i1*d2)+i2)*d3+...

// Thrown when a local filter annihilates a state (zero-norm output).
struct annihilation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PureState {
    Vec a;
    Dims dims;
    bool unnormalized = false;

    PureState() = default;
    PureState(Vec amps, Dims d, bool unnorm = false)
        : a(std::move(amps)), dims(std::move(d)), unnormalized(unnorm) {
        if (a.size() != dim_prod(dims))
            throw std::invalid_argument("PureState: length != product of dims");
        if (!unnormalized && std::abs(a.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("PureState: not normalized");
    }
    int dim() const { return static_cast<int>(a.size()); }
    int nparties() const { return static_cast<int>(dims.size()); }
};

struct DensityMatrix {
    Mat m;
    Dims dims;
    bool unnormalized = false;

    DensityMatrix() = default;
    DensityMatrix(Mat mat, Dims d, bool unnorm = false)
        : m(std::move(mat)), dims(std::move(d)), unnormalized(unnorm) {
        const int D = dim_prod(dims);
        if (m.rows() != D || m.cols() != D)
            throw std::invalid_argument("DensityMatrix: side != product of dims");
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        m = 0.5 * (m + m.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        const double lo = es.eigenvalues().minCoeff();
        if (lo < -1e-9)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                        std::to_string(lo));
        if (lo < 0.0) {  // clip round-off negativity in [-1e-9, 0)
            Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
            m = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
        }
        if (!unnormalized && std::abs(m.trace().real() - 1.0) > 1e-9)
            throw std::invalid_argument("DensityMatrix: trace != 1");
    }

    // Skips validation; for internal constructions that are PSD by build.
    static DensityMatrix trusted(Mat mat, Dims d, bool unnorm = false) {
        DensityMatrix r;
        r.m = std::move(mat);
        r.dims = std::move(d);
        r.unnormalized = unnorm;
        return r;
    }
    int dim() const { return static_cast<int>(m.rows()); }
    int nparties() const { return static_cast<int>(dims.size()); }
    double trace() const { return m.trace().real(); }
};

struct Decomposition {
    std::vector<std::pair<double, PureState>> entries;
};

enum class OpKind { Unitary, SpecialLinear, General };

struct LocalOperator {
    std::vector<Mat> factors;
    OpKind kind = OpKind::General;

    LocalOperator() = default;
    LocalOperator(std::vector<Mat> fs, OpKind k) : factors(std::move(fs)), kind(k) {
        for (const Mat& f : factors) {
            if (f.rows() != f.cols())
                throw std::invalid_argument("LocalOperator: non-square factor");
            if (k == OpKind::Unitary) {
                Mat g = f.adjoint() * f;
                g.diagonal().array() -= 1.0;
                if (g.cwiseAbs().maxCoeff() > 1e-9)
                    throw std::invalid_argument("LocalOperator: factor not unitary");
            } else if (k == OpKind::SpecialLinear) {
                if (std::abs(f.determinant() - 1.0) > 1e-9)
                    throw std::invalid_argument("LocalOperator: factor det != 1");
            }
        }
    }
};

enum class BoundKind { Lower, Upper, Exact };

inline const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::Lower: return "lower";
        case BoundKind::Upper: return "upper";
        default: return "exact";
    }
}

struct BoundValue {
    double value = 0.0;
    BoundKind kind = BoundKind::Exact;
};

struct SchmidtData {
    std::vector<double> coefficients;  // descending probabilities, sum 1
    int rank = 0;                      // count above 1e-10
    Mat left;                          // columns = left Schmidt vectors
    Mat right;
};

struct MeasureReport {
    std::vector<std::pair<std::string, BoundValue>> values;
    std::vector<std::pair<std::string, std::string>> labels;

    void add(std::string name, double v, BoundKind k) {
        values.emplace_back(std::move(name), BoundValue{v, k});
    }
    void label(std::string key, std::string val) {
        labels.emplace_back(std::move(key), std::move(val));
    }
    const BoundValue* find(std::string_view name) const {
        for (const auto& [n, v] : values)
            if (n == name) return &v;
        return nullptr;
    }
    double at(std::string_view name) const {
        const BoundValue* b = find(name);
        if (!b) throw std::out_of_range("MeasureReport: no value " + std::string(name));
        return b->value;
    }
};

}  // namespace tk
