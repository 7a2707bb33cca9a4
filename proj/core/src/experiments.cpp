#include "holo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "holo/holonomic.hpp"
#include "holo/interferometer.hpp"
#include "holo/kraus.hpp"
#include "holo/uhlmann.hpp"

namespace holo {

namespace {

constexpr double pi = std::numbers::pi;

void store_matrix_series(ExperimentReport& rep, const Matrix& u) {
    rep.set_series_columns({"row", "col", "re", "im"});
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            rep.add_series_row({double(i), double(j), u(i, j).real(),
                                u(i, j).imag()});
        }
    }
}

double trace_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x,
                     const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = double(n) * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) {
        throw ParamOutOfRange("slope fit needs at least two distinct sizes");
    }
    return (double(n) * sxy - sx * sy) / denom;
}

std::string join_params(const std::vector<double>& params) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) os << ',';
        os << params[i];
    }
    return os.str();
}

double wrapped_angle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2 * pi);
    return std::min(d, 2 * pi - d);
}

}  // namespace

ExperimentReport run_sequence_report(const ChannelSequence& seq,
                                     const SequenceReportOptions& opt) {
    if (seq.size() < 2) {
        throw EmptyPath("sequence report: need at least two channels");
    }
    for (const KrausRep& rep : seq) require_valid(rep);
    const int d = seq.front().dim;
    const int k = seq.front().kraus_number();

    ExperimentReport rep("sequence");
    rep.seed = opt.seed;
    rep.set_param("channels", std::int64_t(seq.size()));
    rep.set_param("dim", std::int64_t(d));
    rep.set_param("krausCount", std::int64_t(k));
    rep.set_param("tol", opt.tol);
    rep.set_param("rankTol", opt.rank_tol);

    Matrix u = holonomy(seq, opt.rank_tol);
    rep.add_check("unitarity", unitarity_residual(u), opt.tol);

    // Conditioning of every link, the closing one included.
    double sig_min = std::numeric_limits<double>::infinity();
    double sig_max = 0.0;
    for (std::size_t n = 0; n + 1 <= seq.size(); ++n) {
        const Matrix t = (n + 1 < seq.size())
                             ? overlap(seq[n + 1], seq[n])
                             : overlap(seq.front(), seq.back());
        Eigen::JacobiSVD<Matrix> svd(t);
        sig_min = std::min(sig_min, svd.singularValues().minCoeff());
        sig_max = std::max(sig_max, svd.singularValues().maxCoeff());
    }
    rep.set_scalar("minLinkSingularValue", sig_min);
    rep.set_scalar("maxLinkSingularValue", sig_max);

    // Re-derive the holonomy in the transported gauge; on the way, check
    // that every internal link really became Hermitian.
    ParallelGauge pg = parallel_gauge(seq, opt.rank_tol);
    rep.add_check("parallelGaugeRoute", (holonomy(pg.reps, opt.rank_tol) - u).norm(),
                  opt.tol);
    double herm = 0.0;
    for (std::size_t n = 0; n + 1 < pg.reps.size(); ++n) {
        Matrix t = overlap(pg.reps[n + 1], pg.reps[n]);
        herm = std::max(herm, (t - t.adjoint()).norm());
    }
    rep.add_check("transportParallelity", herm, opt.tol);

    // Random-gauge covariance spot check.
    std::mt19937_64 rng(opt.seed);
    std::vector<Matrix> gauges;
    gauges.reserve(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) {
        gauges.push_back(haar_unitary(k, rng));
    }
    rep.add_check("gaugeCovariance",
                  gauge_covariance_check(seq, gauges, opt.rank_tol), opt.tol);

    Gluing g = final_gluing(seq, std::numeric_limits<double>::infinity());
    rep.add_check("operationalGluing", g.match_residual,
                  std::max(opt.tol, 1e-9));

    if (k == d * d) {
        BridgeComparison bc = channel_vs_uhlmann(seq, standard_basis(d * d),
                                                 max_entangled_vector(d));
        rep.add_check("stateBridge", bc.residual, std::max(opt.tol, 1e-8));
        rep.set_param("stateBridgeChecked", std::int64_t(1));
    } else {
        rep.set_param("stateBridgeChecked", std::int64_t(0));
    }

    rep.set_complex("holonomyTrace", u.trace());
    rep.set_complex("holonomyDet", u.determinant());
    store_matrix_series(rep, u);
    rep.finalize();
    return rep;
}

ExperimentReport run_smooth_report(const ChannelPath& path,
                                   const SmoothReportOptions& opt) {
    if (opt.steps < 2) {
        throw ParamOutOfRange("smooth report: steps must be at least 2");
    }
    ExperimentReport rep("smooth");
    rep.set_param("label", opt.label);
    rep.set_param("dim", std::int64_t(path.dim()));
    rep.set_param("krausCount", std::int64_t(path.kraus_count()));
    rep.set_param("steps", std::int64_t(opt.steps));
    rep.set_param("tol", opt.tol);
    rep.set_param("driftTol", opt.drift_tol);

    Matrix u = smooth_holonomy(path, opt.steps);
    Matrix u_half = smooth_holonomy(path, opt.steps / 2);
    rep.add_check("unitarity", unitarity_residual(u), opt.tol);
    rep.add_check("stepHalvingDrift", (u - u_half).norm(), opt.drift_tol);

    // How far the family drifts from trace preservation between the grid
    // points actually sampled (informative; exact families sit at rounding).
    double trace_drift = 0.0;
    for (int i = 0; i <= 32; ++i) {
        PathOverlaps qr = qr_matrices(path, double(i) / 32);
        trace_drift = std::max(trace_drift, std::abs(qr.r.trace().real()));
    }
    rep.set_scalar("maxTraceDrift", trace_drift);

    rep.set_complex("holonomyTrace", u.trace());
    rep.set_complex("holonomyDet", u.determinant());
    store_matrix_series(rep, u);
    rep.finalize();
    return rep;
}

ExperimentReport run_four_pi(const FourPiOptions& opt) {
    if (opt.points < 8 || opt.points % 4 != 0) {
        throw ParamOutOfRange("four_pi: points must be a multiple of 4, >= 8");
    }
    if (opt.phase_scan_points < 8) {
        throw ParamOutOfRange("four_pi: phase_scan_points must be >= 8");
    }
    ExperimentReport rep("four_pi");
    rep.set_param("points", std::int64_t(opt.points));
    rep.set_param("chi", opt.chi);
    rep.set_param("phaseScanPoints", std::int64_t(opt.phase_scan_points));
    rep.set_param("schrodingerSteps", std::int64_t(opt.schrodinger_steps));

    Matrix sz(2, 2);
    sz << 1, 0, 0, -1;
    const Dilation ref_arm = dilate(identity_channel(2));
    const Matrix rho = Matrix::Identity(2, 2) / 2.0;
    Matrix v0 = Matrix::Identity(1, 1);
    Matrix v1(1, 1);
    v1(0, 0) = std::polar(1.0, opt.chi);

    rep.set_series_columns({"phi", "holonomy", "probability",
                            "probabilityModel"});
    std::vector<Complex> gamma(opt.points);
    double resid_schrodinger = 0.0;
    double resid_probability = 0.0;
    // Midpoint grid over two full turns: never lands on the vanishing-trace
    // angles, and the quarter/half shifts below stay on the grid.
    for (int j = 0; j < opt.points; ++j) {
        const double phi = (j + 0.5) * (8 * pi / opt.points);
        const Matrix h = (phi / 2) * sz;
        const Complex g = unitary_family_holonomy(
            [&h](double) { return h; }, 2, opt.schrodinger_steps);
        const Complex g_closed = polar_phase(Complex(std::cos(phi / 2), 0.0));
        gamma[j] = g;
        resid_schrodinger = std::max(resid_schrodinger, std::abs(g - g_closed));

        const Dilation rot_arm =
            dilate(unitary_channel(evolution_step(h, 1.0)));
        const double p = detection_probability(rot_arm, ref_arm, v0, v1, rho);
        const double p_model =
            0.5 * (1.0 + std::cos(phi / 2) * std::cos(opt.chi));
        resid_probability = std::max(resid_probability, std::abs(p - p_model));
        rep.add_series_row({phi, g_closed.real(), p, p_model});
    }
    rep.add_check("schrodingerVsClosedForm", resid_schrodinger, 1e-9);
    rep.add_check("probabilityModel", resid_probability, 1e-9);

    const int half = opt.points / 2;     // a 4 pi shift
    const int quarter = opt.points / 4;  // a 2 pi shift
    double four_pi_diff = 0.0;
    for (int j = 0; j + half < opt.points; ++j) {
        four_pi_diff = std::max(four_pi_diff, std::abs(gamma[j] - gamma[j + half]));
    }
    rep.add_check("fourPiPeriodicity", four_pi_diff, 1e-9);
    double two_pi_diff = 0.0;
    for (int j = 0; j + quarter < opt.points; ++j) {
        two_pi_diff = std::max(two_pi_diff, std::abs(gamma[j] - gamma[j + quarter]));
    }
    rep.set_scalar("twoPiShiftSpread", two_pi_diff);
    rep.add_check("twoPiDistinguishable", std::max(0.0, 0.1 - two_pi_diff),
                  0.0);

    // Scan the reference-arm phase setting at an angle just past one turn,
    // where the holonomy has flipped sign: the brightest setting must sit at
    // the holonomy phase (pi), not at zero.
    const int jstar = opt.points / 4;
    const double phi_star = (jstar + 0.5) * (8 * pi / opt.points);
    const Dilation rot_star =
        dilate(unitary_channel(evolution_step((phi_star / 2) * sz, 1.0)));
    double best_p = -1.0;
    double best_chi = 0.0;
    for (int m = 0; m < opt.phase_scan_points; ++m) {
        const double chi = 2 * pi * m / opt.phase_scan_points;
        Matrix w1(1, 1);
        w1(0, 0) = std::polar(1.0, chi);
        const double p = detection_probability(rot_star, ref_arm, v0, w1, rho);
        if (p > best_p) {
            best_p = p;
            best_chi = chi;
        }
    }
    const double target = std::arg(gamma[jstar]);
    rep.set_scalar("phiStar", phi_star);
    rep.set_scalar("chiScanArgmax", best_chi);
    rep.set_scalar("chiScanTarget", target);
    rep.add_check("phaseSettingMatchesHolonomy",
                  wrapped_angle_distance(best_chi, target),
                  1.01 * pi / opt.phase_scan_points);
    rep.finalize();
    return rep;
}

ExperimentReport run_crosscheck(const CrosscheckOptions& opt) {
    if (opt.length < 2) {
        throw ParamOutOfRange("crosscheck: length must be at least 2");
    }
    ExperimentReport rep("crosscheck");
    rep.seed = opt.seed;
    rep.set_param("length", std::int64_t(opt.length));
    rep.set_param("dim", std::int64_t(opt.dim));
    rep.set_param("kraus", std::int64_t(opt.kraus));
    rep.set_param("tol", opt.tol);

    ChannelSequence seq;
    seq.reserve(opt.length);
    for (int i = 0; i < opt.length; ++i) {
        seq.push_back(random_channel(opt.dim, opt.kraus, opt.seed + i));
    }
    Matrix u = holonomy(seq);
    rep.add_check("unitarity", unitarity_residual(u), opt.tol);

    rep.set_series_columns({"link", "sigmaMin", "sigmaMax"});
    for (std::size_t n = 0; n + 1 <= seq.size(); ++n) {
        const Matrix t = (n + 1 < seq.size())
                             ? overlap(seq[n + 1], seq[n])
                             : overlap(seq.front(), seq.back());
        Eigen::JacobiSVD<Matrix> svd(t);
        rep.add_series_row({double(n + 1), svd.singularValues().minCoeff(),
                            svd.singularValues().maxCoeff()});
    }

    ParallelGauge pg = parallel_gauge(seq);
    rep.add_check("parallelGaugeRoute", (holonomy(pg.reps) - u).norm(),
                  opt.tol);
    double herm = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n + 1 < pg.reps.size(); ++n) {
        Matrix t = overlap(pg.reps[n + 1], pg.reps[n]);
        herm = std::max(herm, (t - t.adjoint()).norm());
        Eigen::SelfAdjointEigenSolver<Matrix> es(
            Matrix((t + t.adjoint()) / 2.0));
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    rep.add_check("transportParallelity", herm, opt.tol);
    rep.add_check("transportedOverlapPositive", std::max(0.0, -min_eig), 0.0);
    rep.set_scalar("minTransportedOverlapEigenvalue", min_eig);

    std::mt19937_64 rng(opt.seed ^ 0x5851f42d4c957f2dull);
    std::vector<Matrix> gauges;
    for (int i = 0; i < opt.length; ++i) {
        gauges.push_back(haar_unitary(opt.kraus, rng));
    }
    rep.add_check("gaugeCovariance", gauge_covariance_check(seq, gauges),
                  opt.tol);

    Gluing g = final_gluing(seq, std::numeric_limits<double>::infinity());
    rep.add_check("operationalGluing", g.match_residual, opt.tol);
    rep.add_check("gluingUnitarity", unitarity_residual(g.c), opt.tol);

    if (opt.kraus == opt.dim * opt.dim) {
        rep.set_param("stateBridgeChecked", std::int64_t(1));
        BridgeComparison bc = channel_vs_uhlmann(
            seq, standard_basis(opt.kraus), max_entangled_vector(opt.dim));
        rep.add_check("stateBridge", bc.residual, opt.tol);
        // The bridge must not care which label basis or entangled vector
        // anchors the state-side transport.
        double variant = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            Matrix b = haar_unitary(opt.kraus, rng);
            std::vector<Vector> basis;
            basis.reserve(opt.kraus);
            for (int i = 0; i < opt.kraus; ++i) basis.push_back(b.col(i));
            Vector psi =
                max_entangled_vector(opt.dim, haar_unitary(opt.dim, rng));
            BridgeComparison vc = channel_vs_uhlmann(seq, basis, psi);
            variant = std::max(variant, vc.residual);
        }
        rep.add_check("stateBridgeBasisInvariance", variant, opt.tol);
    } else {
        rep.set_param("stateBridgeChecked", std::int64_t(0));
    }

    rep.set_complex("holonomyTrace", u.trace());
    rep.set_complex("holonomyDet", u.determinant());
    rep.finalize();
    return rep;
}

ExperimentReport run_convergence(const ConvergenceOptions& opt) {
    if (opt.grid_sizes.size() < 2) {
        throw ParamOutOfRange("convergence: need at least two grid sizes");
    }
    for (std::size_t i = 1; i < opt.grid_sizes.size(); ++i) {
        if (opt.grid_sizes[i] <= opt.grid_sizes[i - 1]) {
            throw NonMonotoneGrid("convergence: grid sizes must increase");
        }
    }
    if (opt.grid_sizes.front() < 3) {
        throw ParamOutOfRange("convergence: grid sizes must be at least 3");
    }
    ExperimentReport rep("convergence");
    rep.set_param("path", opt.path);
    rep.set_param("pathParams", join_params(opt.params));
    rep.set_param("referenceSteps", std::int64_t(opt.reference_steps));

    ChannelPath path = named_path(opt.path, opt.params);
    Matrix ref = smooth_holonomy(path, opt.reference_steps);
    Matrix ref_half = smooth_holonomy(path, opt.reference_steps / 2);
    rep.set_scalar("referenceSelfDrift", (ref - ref_half).norm());

    rep.set_series_columns({"n", "error"});
    std::vector<double> sizes;
    std::vector<double> errors;
    for (int n : opt.grid_sizes) {
        const double err = (holonomy(sample_path(path, n)) - ref).norm();
        sizes.push_back(double(n));
        errors.push_back(err);
        rep.add_series_row({double(n), err});
    }
    double shrink = 0.0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        shrink = std::max(shrink, errors[i] - errors[i - 1]);
    }
    rep.add_check("errorsDecrease", shrink, 0.0);
    const double order = -log_log_slope(sizes, errors);
    rep.set_scalar("fittedOrder", order);
    rep.add_check("convergenceOrder", 1.0 - order, 0.0);
    rep.finalize();
    return rep;
}

ExperimentReport run_fixtures(const FixtureOptions& opt) {
    if (opt.grid.empty()) {
        throw ParamOutOfRange("fixtures: parameter grid is empty");
    }
    for (double p : opt.grid) {
        if (!(p > 0.0 && p < 1.0)) {
            throw ParamOutOfRange(
                "fixtures: grid probabilities must lie strictly inside (0,1)");
        }
    }
    ExperimentReport rep("fixtures");
    rep.set_param("gridSize", std::int64_t(opt.grid.size()));
    rep.set_param("tol", opt.tol);

    rep.set_series_columns({"pe", "pf", "pg", "flipPairResidual",
                            "dampingBitFlipResidual",
                            "dampingPhaseFlipResidual"});
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    int bad_ranks = 0;
    for (double pe : opt.grid) {
        for (double pf : opt.grid) {
            for (double pg : opt.grid) {
                const KrausRep a = phase_flip(pe);
                const KrausRep b = bit_flip(pf);
                const KrausRep c = amplitude_damping(pg);

                Matrix t_ba = overlap(b, a);
                Matrix f_ba = Matrix::Zero(2, 2);
                f_ba(0, 0) = 2 * std::sqrt((1 - pe) * (1 - pf));

                Matrix t_cb = overlap(c, b);
                Matrix f_cb = Matrix::Zero(2, 2);
                f_cb(0, 0) = std::sqrt(1 - pf) * (1 + std::sqrt(1 - pg));
                f_cb(1, 1) = std::sqrt(pg * pf);

                Matrix t_ca = overlap(c, a);
                Matrix f_ca = Matrix::Zero(2, 2);
                f_ca(0, 0) = std::sqrt(1 - pe) * (1 + std::sqrt(1 - pg));
                f_ca(0, 1) = std::sqrt(pe) * (1 - std::sqrt(1 - pg));

                const double e1 = (t_ba - f_ba).cwiseAbs().maxCoeff();
                const double e2 = (t_cb - f_cb).cwiseAbs().maxCoeff();
                const double e3 = (t_ca - f_ca).cwiseAbs().maxCoeff();
                r1 = std::max(r1, e1);
                r2 = std::max(r2, e2);
                r3 = std::max(r3, e3);
                if (rank_estimate(t_ba) != 1) ++bad_ranks;
                if (rank_estimate(t_cb) != 2) ++bad_ranks;
                if (rank_estimate(t_ca) != 1) ++bad_ranks;
                rep.add_series_row({pe, pf, pg, e1, e2, e3});
            }
        }
    }
    rep.add_check("phaseFlipBitFlipLink", r1, opt.tol);
    rep.add_check("bitFlipDampingLink", r2, opt.tol);
    rep.add_check("phaseFlipDampingLink", r3, opt.tol);
    rep.add_check("rankPattern", double(bad_ranks), 0.0);
    rep.finalize();
    return rep;
}

ExperimentReport run_holonomic(const HolonomicOptions& opt) {
    if (opt.steps < 8) {
        throw ParamOutOfRange("holonomic: steps must be at least 8");
    }
    if (opt.approx_steps.empty()) {
        throw ParamOutOfRange("holonomic: approx_steps is empty");
    }
    ExperimentReport rep("holonomic");
    rep.set_param("family", opt.family);
    rep.set_param("familyParams", join_params(opt.params));
    rep.set_param("steps", std::int64_t(opt.steps));

    SubspaceFamily fam = named_subspace_family(opt.family, opt.params);
    const int d = fam.dim;

    Matrix u = holonomic_channel_holonomy(fam, opt.steps);
    for (int k = 0; k < fam.block_count(); ++k) {
        // One phase per block; the diagonal of u repeats it across the block.
        int offset = 0;
        for (int b = 0; b < k; ++b) offset += fam.block_dims[b];
        rep.set_complex("blockPhase" + std::to_string(k), u(offset, offset));
    }

    std::vector<Matrix> gammas = gamma_operators(fam, 1.0, opt.steps);
    Matrix total = Matrix::Zero(d, d);
    for (const Matrix& g : gammas) total += g.adjoint() * g;
    rep.add_check("channelCompleteness",
                  (total - Matrix::Identity(d, d)).norm(), 1e-8);

    double leak = 0.0;
    for (int k = 0; k < fam.block_count(); ++k) {
        Matrix f0 = fam.frames[k](0.0);
        Matrix p0 = f0 * f0.adjoint();
        for (int l = 0; l < fam.block_count(); ++l) {
            if (l == k) continue;
            leak = std::max(leak, std::abs((p0 * gammas[l]).trace()));
        }
    }
    rep.add_check("crossBlockLeak", leak, 1e-9);

    // Parallelity of the transported frames: consecutive overlaps of
    // G(s) = F(s) W(s) must stay Hermitian along the whole cycle.
    double pt_residual = 0.0;
    for (int k = 0; k < fam.block_count(); ++k) {
        const auto& frame = fam.frames[k];
        const int bd = fam.block_dims[k];
        const int n = std::max(opt.steps, 2048);
        const double dt = 1.0 / n;
        Matrix w = Matrix::Identity(bd, bd);
        Matrix g_prev = frame(0.0);
        for (int j = 0; j < n; ++j) {
            w = unitary_exp(frame_connection(frame, (j + 0.5) * dt) * dt) * w;
            Matrix g = frame((j + 1) * dt) * w;
            Matrix link = g.adjoint() * g_prev;
            pt_residual =
                std::max(pt_residual, (link - link.adjoint()).norm());
            g_prev = std::move(g);
        }
    }
    rep.add_check("transportParallelity", pt_residual, 1e-6);

    // Families with a closed-form holonomy get held to it.
    if (opt.family == "bloch_circle") {
        const double theta = opt.params.at(0);
        const double omega = 2 * pi * (1 - std::cos(theta));
        rep.set_scalar("solidAngle", omega);
        const Complex expected0 = std::polar(1.0, -omega / 2);
        const Complex expected1 = std::polar(1.0, +omega / 2);
        const double phase_err = std::max(std::abs(u(0, 0) - expected0),
                                          std::abs(u(1, 1) - expected1));
        rep.add_check("closedFormPhases", phase_err, 1e-3);
        rep.set_param("closedFormChecked", std::int64_t(1));
    } else if (opt.family == "rotating_plane") {
        const double omega = opt.params.at(0);
        const Complex expected = polar_phase(Complex(std::cos(omega), 0.0));
        const double phase_err = std::max(std::abs(u(0, 0) - expected),
                                          std::abs(u(1, 1) - expected));
        rep.add_check("closedFormPhases", phase_err, 1e-3);
        rep.set_param("closedFormChecked", std::int64_t(1));
    } else {
        rep.set_param("closedFormChecked", std::int64_t(0));
    }

    // Sequential measurements: the cross-block remainder after n+1 pinchings
    // must shrink as n grows.
    Vector psi = Vector::Ones(d) / std::sqrt(double(d));
    Matrix rho = psi * psi.adjoint();
    rep.set_series_columns({"n", "remainder"});
    std::vector<double> ns;
    std::vector<double> remainders;
    for (int n : opt.approx_steps) {
        PinchingSplit split = measurement_approximation(fam, 1.0, n, rho);
        const double delta = trace_norm(split.remainder) / 2.0;
        ns.push_back(double(n));
        remainders.push_back(delta);
        rep.add_series_row({double(n), delta});
    }
    double growth = 0.0;
    for (std::size_t i = 1; i < remainders.size(); ++i) {
        growth = std::max(growth, remainders[i] - remainders[i - 1]);
    }
    rep.add_check("remainderDecreases", growth, 0.0);
    if (remainders.size() >= 2 &&
        *std::min_element(remainders.begin(), remainders.end()) > 1e-14) {
        rep.set_scalar("remainderOrder", -log_log_slope(ns, remainders));
    }
    rep.finalize();
    return rep;
}

}  // namespace holo
