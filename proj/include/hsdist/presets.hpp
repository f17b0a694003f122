#pragma once

#include <array>
#include <cmath>
#include <string>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"

namespace hsdist {

/// Built-in fixed comparison matrices used by the figure-reproduction runs.
/// "paper-x2" and "paper-x5" name the 2x2 and 5x5 matrices from the source
/// study; the real variant serves beta = 1 and the complex one beta = 2.
inline HermitianMatrix preset_x2(int beta) {
    ComplexMatrix x(2, 2);
    x(0, 0) = 2.0;
    x(1, 1) = -0.5;
    if (beta == 1) {
        x(0, 1) = 1.0;
        x(1, 0) = 1.0;
    } else {
        x(0, 1) = cplx(1.0, 3.0);
        x(1, 0) = cplx(1.0, -3.0);
    }
    return HermitianMatrix(std::move(x));
}

inline HermitianMatrix preset_x5(int beta) {
    ComplexMatrix x(5, 5);
    if (beta == 1) {
        const double v[5][5] = {{3, 1, 4, 6, 8},
                                {1, -5, 4, 7, -1},
                                {4, 4, 2, 1, 3},
                                {6, 7, 1, 9, 0},
                                {8, -1, 3, 0, -2}};
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) x(i, j) = v[i][j];
    } else {
        const double s3 = std::sqrt(3.0);
        const cplx v[5][5] = {
            {{3, 0}, {1, 1}, {4, -0.5}, {6, s3}, {8, -1}},
            {{1, -1}, {-5, 0}, {4, 3}, {7, 0}, {-1, 0}},
            {{4, 0.5}, {4, -3}, {2, 0}, {2, -3}, {3, 0}},
            {{6, -s3}, {7, 0}, {2, 3}, {9, 0}, {0, 0.2}},
            {{8, 1}, {-1, 0}, {3, 0}, {0, -0.2}, {-2, 0}},
        };
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) x(i, j) = v[i][j];
    }
    return HermitianMatrix(std::move(x));
}

/// Look up a preset fixed matrix by name ("paper-x2" / "paper-x5").
inline HermitianMatrix preset_fixed_matrix(const std::string& name, int beta) {
    if (name == "paper-x2") return preset_x2(beta);
    if (name == "paper-x5") return preset_x5(beta);
    throw UnsupportedParameter("unknown fixed-matrix preset: " + name);
}

/// Kick strengths and coupling for the single-top comparison runs.
struct KickedTopParamSet {
    const char* name;
    double k1, k2, epsilon;
};

inline const std::array<KickedTopParamSet, 3>& ckt_param_sets() {
    static const std::array<KickedTopParamSet, 3> sets = {{
        {"CKT I", 7.0, 8.0, 1.0},
        {"CKT II", 6.0, 7.0, 0.75},
        {"CKT III", 6.0, 9.0, 0.5},
    }};
    return sets;
}

/// Parameter pairs for the two-top comparison runs.
struct KickedTopPairParamSet {
    const char* name;
    KickedTopParamSet a, b;
};

inline const std::array<KickedTopPairParamSet, 3>& ckt_pair_param_sets() {
    static const std::array<KickedTopPairParamSet, 3> sets = {{
        {"CKTP I", {"A", 8.0, 7.0, 0.5}, {"B", 7.0, 8.0, 1.0}},
        {"CKTP II", {"A", 6.0, 6.0, 0.8}, {"B", 7.0, 8.0, 0.75}},
        {"CKTP III", {"A", 7.0, 7.0, 0.75}, {"B", 8.0, 8.0, 0.75}},
    }};
    return sets;
}

}  // namespace hsdist
