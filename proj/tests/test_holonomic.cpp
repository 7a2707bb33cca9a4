#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "holo/errors.hpp"
#include "holo/holonomic.hpp"
#include "test_util.hpp"

using holo::Complex;
using holo::Matrix;
using holo::SubspaceFamily;
using testutil::dist;

namespace {

constexpr double pi = std::numbers::pi;

Matrix qubit_state(double x, double y, double z) {
    Matrix rho = 0.5 * (Matrix::Identity(2, 2) + x * testutil::pauli(1) +
                        y * testutil::pauli(2) + z * testutil::pauli(3));
    return rho;
}

}  // namespace

TEST_SUITE("holonomic") {

TEST_CASE("named families stay orthonormal and complete along the loop") {
    for (auto [name, param] : {std::pair<const char*, double>{"rotating_plane", 1.3},
                               {"bloch_circle", 0.9},
                               {"rotation_d3", 1.1}}) {
        SubspaceFamily fam = holo::named_subspace_family(name, {param});
        for (double s : {0.0, 0.33, 0.71, 1.0}) {
            CHECK_NOTHROW(holo::require_frames(fam, s));
        }
    }
    CHECK_THROWS_AS(holo::named_subspace_family("mystery", {1.0}),
                    holo::UnknownName);
    CHECK_THROWS_AS(holo::named_subspace_family("bloch_circle", {}),
                    holo::BadArity);
    CHECK_THROWS_AS(holo::named_subspace_family("bloch_circle", {pi}),
                    holo::ParamOutOfRange);
}

TEST_CASE("the circle family has a constant scalar connection") {
    const double theta = pi / 3;
    SubspaceFamily fam = holo::named_subspace_family("bloch_circle", {theta});
    const Complex expected(0.0, -2.0 * pi * std::sin(theta / 2) * std::sin(theta / 2));
    for (double s : {0.1, 0.5, 0.85}) {
        Matrix a = holo::frame_connection(fam.frames[0], s);
        REQUIRE(a.rows() == 1);
        CHECK(std::abs(a(0, 0) - expected) < 1e-9);
    }
}

TEST_CASE("the loop transport accumulates half the solid angle") {
    const double theta = pi / 3;  // solid angle 2 pi (1 - cos theta) = pi
    SubspaceFamily fam = holo::named_subspace_family("bloch_circle", {theta});
    Matrix w = holo::wilson_line(fam.frames[0], 1.0, 4096);
    REQUIRE(w.rows() == 1);
    CHECK(std::abs(w(0, 0) - Complex(0, -1)) < 1e-6);
    CHECK_THROWS_AS(holo::wilson_line(fam.frames[0], -0.1, 16),
                    holo::ParamOutOfRange);
    CHECK_THROWS_AS(holo::wilson_line(fam.frames[0], 1.0, 0),
                    holo::ParamOutOfRange);
}

TEST_CASE("transport operators form a channel") {
    for (auto [name, param] : {std::pair<const char*, double>{"bloch_circle", 1.1},
                               {"rotation_d3", 0.8}}) {
        SubspaceFamily fam = holo::named_subspace_family(name, {param});
        std::vector<Matrix> gams = holo::gamma_operators(fam, 0.7, 512);
        Matrix sum = Matrix::Zero(fam.dim, fam.dim);
        for (const Matrix& g : gams) sum += g.adjoint() * g;
        CAPTURE(name);
        CHECK(dist(sum, Matrix::Identity(fam.dim, fam.dim)) < 1e-10);
    }
    SubspaceFamily fam = holo::named_subspace_family("bloch_circle", {1.1});
    CHECK_THROWS_AS(holo::gamma_operators(fam, 1.5, 64), holo::ParamOutOfRange);
}

TEST_CASE("circle holonomy phases follow the solid angle in both blocks") {
    // theta = pi/3: solid angle pi, phases e^{-i pi / 2} and e^{+i pi / 2}.
    Matrix u1 = holo::holonomic_channel_holonomy(
        holo::named_subspace_family("bloch_circle", {pi / 3}), 2048);
    REQUIRE(u1.rows() == 2);
    CHECK(std::abs(u1(0, 0) - Complex(0, -1)) < 1e-5);
    CHECK(std::abs(u1(1, 1) - Complex(0, 1)) < 1e-5);
    CHECK(std::abs(u1(0, 1)) == 0.0);
    // theta = 2 pi / 3: solid angle 3 pi, the phases swap.
    Matrix u2 = holo::holonomic_channel_holonomy(
        holo::named_subspace_family("bloch_circle", {2 * pi / 3}), 2048);
    CHECK(std::abs(u2(0, 0) - Complex(0, 1)) < 1e-5);
    CHECK(std::abs(u2(1, 1) - Complex(0, -1)) < 1e-5);
}

TEST_CASE("plane rotations pick up the sign of the endpoint overlap") {
    Matrix u_small = holo::holonomic_channel_holonomy(
        holo::named_subspace_family("rotating_plane", {0.9}), 1024);
    CHECK(dist(u_small, Matrix::Identity(2, 2)) < 1e-8);
    Matrix u_large = holo::holonomic_channel_holonomy(
        holo::named_subspace_family("rotating_plane", {2.5}), 1024);
    CHECK(dist(u_large, Matrix(-Matrix::Identity(2, 2))) < 1e-8);
    // A quarter turn lands both blocks on orthogonal partners: no phase.
    try {
        holo::holonomic_channel_holonomy(
            holo::named_subspace_family("rotating_plane", {pi / 2}), 1024);
        FAIL("expected VanishingTrace");
    } catch (const holo::VanishingTrace& e) {
        CHECK(e.block == 0);
    }
}

TEST_CASE("three-dimensional split carries a unitary block holonomy") {
    SubspaceFamily fam = holo::named_subspace_family("rotation_d3", {1.0});
    Matrix u = holo::holonomic_channel_holonomy(fam, 2048);
    REQUIRE(u.rows() == 2);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(u(1, 1)) - 1.0) < 1e-9);
    CHECK(std::abs(u(1, 0)) == 0.0);
}

TEST_CASE("repeated pinching converges to the transport channel") {
    SubspaceFamily fam = holo::named_subspace_family("bloch_circle", {pi / 3});
    Matrix rho = qubit_state(0.3, -0.1, 0.2);
    std::vector<Matrix> gams = holo::gamma_operators(fam, 1.0, 4096);
    Matrix transported = Matrix::Zero(2, 2);
    for (const Matrix& g : gams) transported += g * rho * g.adjoint();

    double prev_err = -1.0;
    double prev_rem = -1.0;
    for (int n : {16, 64, 256}) {
        holo::PinchingSplit split =
            holo::measurement_approximation(fam, 1.0, n, rho);
        CHECK(std::abs(split.approx.trace() - Complex(1.0)) < 1e-12);
        CHECK(dist(split.approx, split.same_index + split.remainder) < 1e-14);
        const double err = dist(split.same_index, transported);
        const double rem = split.remainder.norm();
        if (prev_err >= 0.0) {
            // quadrupling the step count should cut the error about fourfold
            CHECK(err < prev_err);
            CHECK(prev_err / err > 3.0);
            CHECK(prev_err / err < 4.5);
            CHECK(rem < prev_rem);
        }
        prev_err = err;
        prev_rem = rem;
    }
    holo::PinchingSplit fine =
        holo::measurement_approximation(fam, 1.0, 16384, rho);
    CHECK(dist(fine.same_index, transported) < 1e-3);

    CHECK_THROWS_AS(holo::measurement_approximation(fam, 0.0, 8, rho),
                    holo::ParamOutOfRange);
    CHECK_THROWS_AS(holo::measurement_approximation(fam, 1.0, 0, rho),
                    holo::ParamOutOfRange);
    CHECK_THROWS_AS(
        holo::measurement_approximation(fam, 1.0, 8, Matrix::Identity(3, 3)),
        holo::DimensionMismatch);
}

TEST_CASE("the transport channel preserves traces") {
    SubspaceFamily fam = holo::named_subspace_family("rotation_d3", {0.7});
    Matrix rho = Matrix::Zero(3, 3);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.2;
    rho(0, 2) = Complex(0.1, 0.05);
    rho(2, 0) = std::conj(rho(0, 2));
    Matrix out = holo::apply_holonomic_channel(fam, 0.8, 512, rho);
    CHECK(std::abs(out.trace() - rho.trace()) < 1e-11);
    CHECK(holo::is_hermitian(out, 1e-10));
    CHECK_THROWS_AS(
        holo::apply_holonomic_channel(fam, 0.8, 512, Matrix::Identity(2, 2)),
        holo::DimensionMismatch);
}

TEST_CASE("projector families yield aligned orthonormal frames") {
    const double theta = 0.8;
    SubspaceFamily fam = holo::named_subspace_family("bloch_circle", {theta});
    auto projector = [&](double s) {
        Matrix f = fam.frames[0](s);
        return Matrix(f * f.adjoint());
    };
    std::vector<double> grid;
    for (int i = 0; i <= 32; ++i) grid.push_back(i / 32.0);
    std::vector<Matrix> frames = holo::frames_from_projectors(projector, 1, grid);
    REQUIRE(frames.size() == grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK(dist(frames[j] * frames[j].adjoint(), projector(grid[j])) < 1e-9);
        if (j > 0) {
            // Alignment makes consecutive overlaps positive definite.
            Matrix t = frames[j].adjoint() * frames[j - 1];
            CHECK(t(0, 0).real() > 0.5);
            CHECK(std::abs(t(0, 0).imag()) < 1e-9);
        }
    }
    CHECK_THROWS_AS(holo::frames_from_projectors(projector, 1, {}),
                    holo::EmptyPath);
    CHECK_THROWS_AS(holo::frames_from_projectors(projector, 0, grid),
                    holo::DimensionMismatch);
    CHECK_THROWS_AS(holo::frames_from_projectors(projector, 2, grid),
                    holo::CompletionFailure);
    auto not_projector = [&](double) {
        return Matrix(0.5 * Matrix::Identity(2, 2));
    };
    CHECK_THROWS_AS(holo::frames_from_projectors(not_projector, 1, grid),
                    holo::NotHermitian);
}

TEST_CASE("family construction validates shapes and orthonormality") {
    auto good = [](double) {
        Matrix f(2, 1);
        f << 1.0, 0.0;
        return f;
    };
    auto partner = [](double) {
        Matrix f(2, 1);
        f << 0.0, 1.0;
        return f;
    };
    CHECK_NOTHROW(holo::make_subspace_family(2, {good, partner}));
    CHECK_THROWS_AS(holo::make_subspace_family(2, {good}),
                    holo::DimensionMismatch);  // blocks don't fill the space
    auto skewed = [](double) {
        Matrix f(2, 1);
        f << 1.0, 1.0;
        return f;
    };
    CHECK_THROWS_AS(holo::make_subspace_family(2, {skewed, partner}),
                    holo::FrameDiscontinuity);
    CHECK_THROWS_AS(holo::make_subspace_family(2, {good, good}),
                    holo::DimensionMismatch);  // complete in norm but overlapping
    CHECK_THROWS_AS(
        holo::make_subspace_family(2, std::vector<std::function<Matrix(double)>>{}),
        holo::EmptyPath);
}

}  // TEST_SUITE
