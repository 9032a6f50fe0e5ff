#pragma once

#include "../types.hpp"

namespace tk::detail {

inline const Mat& pauli(int i) {
    static const Mat p[4] = {
        (Mat(2, 2) << 1, 0, 0, 1).finished(),
        (Mat(2, 2) << 0, 1, 1, 0).finished(),
        (Mat(2, 2) << 0, cx(0, -1), cx(0, 1), 0).finished(),
        (Mat(2, 2) << 1, 0, 0, -1).finished(),
    };
    return p[i];
}

// metric {-1, 1, 0, 1}: contractions run over mu in {0,1,3} with these signs
inline double metric_sign(int mu) { return mu == 0 ? -1.0 : 1.0; }
inline constexpr int METRIC_IDX[3] = {0, 1, 3};

inline const Mat& sigma_yy() {
    static const Mat yy = [] {
        Mat m(4, 4);
        m.setZero();
        m(0, 3) = -1;
        m(1, 2) = 1;
        m(2, 1) = 1;
        m(3, 0) = -1;
        return m;
    }();
    return yy;
}

}  // namespace tk::detail
