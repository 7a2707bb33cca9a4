#pragma once

// Shared helpers for the test suites. Everything seeded and deterministic.

#include <cmath>
#include <complex>
#include <random>

#include "holo/linalg.hpp"

namespace testutil {

inline holo::Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    holo::Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = holo::Complex(g(rng), g(rng));
        }
    }
    return m;
}

inline holo::Matrix random_hermitian(int n, std::mt19937_64& rng) {
    holo::Matrix m = random_complex(n, n, rng);
    return (m + m.adjoint()) / 2.0;
}

// Hermitian with spectrum inside [lo, hi] (strictly positive by default).
inline holo::Matrix random_posdef(int n, std::mt19937_64& rng, double lo = 0.5,
                                  double hi = 2.0) {
    holo::Matrix u = holo::haar_unitary(n, rng);
    std::uniform_real_distribution<double> d(lo, hi);
    holo::RealVector evals(n);
    for (int i = 0; i < n; ++i) evals(i) = d(rng);
    return u * evals.asDiagonal() * u.adjoint();
}

// Haar-like special unitary on C^2: traces of products stay real.
inline holo::Matrix random_su2(std::mt19937_64& rng) {
    holo::Matrix u = holo::haar_unitary(2, rng);
    return u / std::sqrt(u.determinant());
}

inline double dist(const holo::Matrix& a, const holo::Matrix& b) {
    return (a - b).norm();
}

inline holo::Matrix pauli(int i) {
    holo::Matrix m(2, 2);
    switch (i) {
        case 1: m << 0, 1, 1, 0; break;
        case 2:
            m << 0, holo::Complex(0, -1), holo::Complex(0, 1), 0;
            break;
        case 3: m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1; break;
    }
    return m;
}

}  // namespace testutil
