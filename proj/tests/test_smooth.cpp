#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "holo/errors.hpp"
#include "holo/smooth.hpp"
#include "test_util.hpp"

using holo::ChannelPath;
using holo::Complex;
using holo::Matrix;
using testutil::dist;

namespace {

// Two-operator damping ramp plus an s-dependent Kraus-index rotation
// V(s) = exp((s + 0.3) m): same channels, rotated representation, with the
// product-rule derivative supplied analytically.
ChannelPath rotated_ramp(const Matrix& m) {
    ChannelPath base = holo::named_path("damping_ramp", {0.2, 0.7});
    auto ops = [base, m](double s) {
        const Matrix v = holo::unitary_exp(Matrix((s + 0.3) * m));
        std::vector<Matrix> e = base.ops_at(s);
        std::vector<Matrix> out(e.size(), Matrix::Zero(2, 2));
        for (std::size_t k = 0; k < e.size(); ++k) {
            for (std::size_t l = 0; l < e.size(); ++l) {
                out[k] += e[l] * v(l, k);
            }
        }
        return out;
    };
    auto derivative = [base, m](double s) {
        const Matrix v = holo::unitary_exp(Matrix((s + 0.3) * m));
        const Matrix vdot = m * v;
        std::vector<Matrix> e = base.ops_at(s);
        std::vector<Matrix> de = base.derivative_at(s);
        std::vector<Matrix> out(e.size(), Matrix::Zero(2, 2));
        for (std::size_t k = 0; k < e.size(); ++k) {
            for (std::size_t l = 0; l < e.size(); ++l) {
                out[k] += de[l] * v(l, k) + e[l] * vdot(l, k);
            }
        }
        return out;
    };
    return ChannelPath(2, 2, std::move(ops), std::move(derivative));
}

}  // namespace

TEST_SUITE("smooth") {

TEST_CASE("gram and derivative overlaps carry the trace-preservation marks") {
    for (const char* name : {"phase_flip_ramp", "damping_ramp"}) {
        ChannelPath path = holo::named_path(name, {0.2, 0.7});
        for (double s : {0.0, 0.31, 0.77, 1.0}) {
            holo::PathOverlaps qr = holo::qr_matrices(path, s);
            CAPTURE(name);
            CAPTURE(s);
            // sum_k E_k^dag E_k = I forces Tr q = dim and Re Tr r = 0.
            CHECK(std::abs(qr.q.trace() - Complex(2.0)) < 1e-10);
            CHECK(std::abs(qr.r.trace().real()) < 1e-10);
            CHECK(holo::is_hermitian(qr.q, 1e-10));
        }
    }
}

TEST_CASE("gauge potential solves the gram equation and is anti-hermitian") {
    ChannelPath path = holo::random_smooth_path(3, 4, 12);
    for (double s : {0.1, 0.5, 0.9}) {
        holo::GaugePotentialSample g = holo::gauge_potential(path, s);
        CHECK(dist(g.a, -g.a.adjoint()) < 1e-10);
        CHECK(dist(g.a * g.q + g.q * g.a, g.r - g.r.adjoint()) < 1e-10);
    }
}

TEST_CASE("qubit closed form matches the general solver") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        // q = I + x.sigma with |x| < 1, r = i z0 I + (y + i z).sigma.
        Eigen::Vector3d x, y, z;
        do {
            for (int i = 0; i < 3; ++i) x(i) = unit(rng);
        } while (x.norm() >= 0.95);
        for (int i = 0; i < 3; ++i) {
            y(i) = unit(rng);
            z(i) = unit(rng);
        }
        const double z0 = unit(rng);
        Matrix q = Matrix::Identity(2, 2);
        Matrix r = Complex(0, z0) * Matrix::Identity(2, 2);
        for (int i = 0; i < 3; ++i) {
            q += x(i) * testutil::pauli(i + 1);
            r += Complex(y(i), z(i)) * testutil::pauli(i + 1);
        }
        Matrix closed = holo::gauge_potential_k2_closed_form(q, r);
        Matrix solved = holo::solve_gauge_equation(q, Matrix(r - r.adjoint()));
        CHECK(dist(closed, solved) < 1e-12);
    }
}

TEST_CASE("qubit closed form rejects degenerate and malformed input") {
    Matrix q_edge = Matrix::Identity(2, 2) + testutil::pauli(3);  // |x| = 1
    Matrix r = Complex(0, 0.4) * testutil::pauli(1);
    CHECK_THROWS_AS(holo::gauge_potential_k2_closed_form(q_edge, r),
                    holo::XNormOne);
    Matrix q = Matrix::Identity(2, 2) + 0.3 * testutil::pauli(3);
    CHECK_THROWS_AS(
        holo::gauge_potential_k2_closed_form(Matrix(3.0 * q), r),
        holo::NotPositive);
    CHECK_THROWS_AS(
        holo::gauge_potential_k2_closed_form(Matrix(q + Complex(0, 1) * testutil::pauli(1)), r),
        holo::NotHermitian);
    CHECK_THROWS_AS(
        holo::gauge_potential_k2_closed_form(q, Matrix::Identity(2, 2)),
        holo::NotTracePreserving);
    CHECK_THROWS_AS(
        holo::gauge_potential_k2_closed_form(Matrix::Identity(3, 3),
                                             Matrix::Zero(3, 3)),
        holo::DimensionMismatch);
}

TEST_CASE("parallelity of a family is detected on a grid") {
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(i / 16.0);
    // A constant family transports trivially.
    auto constant_ops = [](double) {
        return holo::amplitude_damping(0.4).ops;
    };
    ChannelPath constant(2, 2, constant_ops);
    CHECK(holo::is_parallel_transported(constant, grid));
    // The canonical damping ramp happens to keep r Hermitian as well.
    CHECK(holo::is_parallel_transported(
        holo::named_path("damping_ramp", {0.2, 0.7}), grid));
    // A rotating representation of the same ramp does not.
    std::mt19937_64 rng(8);
    Matrix m = holo::random_anti_hermitian(2, 0.7, rng);
    CHECK_FALSE(holo::is_parallel_transported(rotated_ramp(m), grid));
    CHECK_THROWS_AS(holo::is_parallel_transported(constant, {}),
                    holo::EmptyPath);
}

TEST_CASE("smooth holonomy is covariant under representation rotations") {
    std::mt19937_64 rng(21);
    Matrix m = holo::random_anti_hermitian(2, 0.4, rng);
    ChannelPath base = holo::named_path("damping_ramp", {0.2, 0.7});
    ChannelPath moved = rotated_ramp(m);
    Matrix u = holo::smooth_holonomy(base, 4096);
    Matrix u_moved = holo::smooth_holonomy(moved, 4096);
    Matrix v0 = holo::unitary_exp(Matrix(0.3 * m));
    CHECK(holo::unitarity_residual(u) < 1e-10);
    CHECK(dist(u_moved, v0.adjoint() * u * v0) < 1e-5);
}

TEST_CASE("sampled sequences converge to the smooth holonomy at first order") {
    ChannelPath path = holo::random_smooth_path(2, 2, 5);
    Matrix ref = holo::smooth_holonomy(path, 8192);
    const double e200 = dist(holo::holonomy(holo::sample_path(path, 200)), ref);
    const double e400 = dist(holo::holonomy(holo::sample_path(path, 400)), ref);
    CHECK(e400 < e200);
    // halving the step should at least roughly halve the error; leading-order
    // cancellations can make the ratio land above 2, so only bound it below
    CHECK(e200 / e400 > 1.3);
    CHECK(e400 < 0.05);
}

TEST_CASE("unitary family holonomy reproduces closed forms") {
    Matrix sz = testutil::pauli(3);
    Matrix sx = testutil::pauli(1);

    // Constant traceless generator: sign of cos c.
    auto gamma_const = [&](double c) {
        return holo::unitary_family_holonomy(
            [&](double) { return Matrix(c * sz); }, 2);
    };
    CHECK(std::abs(gamma_const(1.2) - Complex(1.0)) < 1e-9);
    CHECK(std::abs(gamma_const(2.0) - Complex(-1.0)) < 1e-9);

    // Constant diagonal generator: the trace phase cancels against the
    // dynamical factor, leaving the sign of cos((a - b)/2).
    Matrix diag_h = Matrix::Zero(2, 2);
    diag_h(0, 0) = 0.4;
    diag_h(1, 1) = 3.6;
    Complex g_diag = holo::unitary_family_holonomy(
        [&](double) { return diag_h; }, 2);
    CHECK(std::abs(g_diag - Complex(-1.0)) < 1e-8);

    // Commuting time dependence f(s) sigma_x: sign of cos(int f).
    auto gamma_ramp = [&](double a, double b) {
        return holo::unitary_family_holonomy(
            [&](double s) { return Matrix((a + b * s) * sx); }, 2);
    };
    CHECK(std::abs(gamma_ramp(0.3, 0.8) - Complex(1.0)) < 1e-8);
    CHECK(std::abs(gamma_ramp(3.0, 0.4) - Complex(-1.0)) < 1e-8);

    // The starting unitary drops out for a constant generator.
    std::mt19937_64 rng(31);
    Matrix u0 = holo::haar_unitary(2, rng);
    Complex g_started = holo::unitary_family_holonomy(
        [&](double) { return diag_h; }, 2, 4096, u0);
    CHECK(std::abs(g_started - g_diag) < 1e-8);

    CHECK_THROWS_AS(holo::unitary_family_holonomy({}, 2), holo::EmptyPath);
    CHECK_THROWS_AS(holo::unitary_family_holonomy(
                        [&](double) { return diag_h; }, 2, 0),
                    holo::ParamOutOfRange);
}

TEST_CASE("finite-difference derivatives match analytic ones") {
    ChannelPath analytic = holo::named_path("damping_ramp", {0.2, 0.7});
    ChannelPath numeric(2, 2,
                        [&](double s) { return analytic.ops_at(s); });
    CHECK(analytic.has_analytic_derivative());
    CHECK_FALSE(numeric.has_analytic_derivative());
    for (double s : {0.0, 0.42, 1.0}) {
        std::vector<Matrix> da = analytic.derivative_at(s);
        std::vector<Matrix> dn = numeric.derivative_at(s);
        REQUIRE(da.size() == dn.size());
        for (std::size_t k = 0; k < da.size(); ++k) {
            CHECK(dist(da[k], dn[k]) < 1e-9);
        }
    }
}

TEST_CASE("path sampling hits both endpoints with valid representations") {
    ChannelPath path = holo::named_path("phase_flip_ramp", {0.2, 0.7});
    holo::ChannelSequence seq = holo::sample_path(path, 5);
    REQUIRE(seq.size() == 5);
    for (const holo::KrausRep& rep : seq) CHECK(holo::validate(rep).ok());
    std::vector<Matrix> first = path.ops_at(0.0);
    std::vector<Matrix> last = path.ops_at(1.0);
    for (std::size_t k = 0; k < first.size(); ++k) {
        CHECK(dist(seq.front().ops[k], first[k]) < 1e-14);
        CHECK(dist(seq.back().ops[k], last[k]) < 1e-14);
    }
    CHECK_THROWS_AS(holo::sample_path(path, 1), holo::EmptyPath);
}

TEST_CASE("path registry rejects bad requests") {
    CHECK_THROWS_AS(holo::named_path("spiral", {}), holo::UnknownName);
    CHECK_THROWS_AS(holo::named_path("unitary_z", {}), holo::BadArity);
    CHECK_THROWS_AS(holo::named_path("phase_flip_ramp", {0.0, 0.5}),
                    holo::ParamOutOfRange);
    CHECK_THROWS_AS(holo::named_path("damping_ramp", {0.2, 1.0}),
                    holo::ParamOutOfRange);
    CHECK_THROWS_AS(ChannelPath(2, 1, {}), holo::EmptyPath);
}

}  // TEST_SUITE
