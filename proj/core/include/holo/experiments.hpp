#pragma once

// Canned computations behind the command-line verbs: each one runs a named
// scenario end to end and returns an ExperimentReport whose checks decide
// the exit code. Thresholds specific to a scenario are pinned here; the
// generic report runners take theirs from the options.

#include <cstdint>
#include <string>
#include <vector>

#include "holo/report.hpp"
#include "holo/sequence.hpp"
#include "holo/smooth.hpp"

namespace holo {

// Multi-route verification of a concrete channel sequence: holonomy
// unitarity, parallel-gauge re-derivation, seeded gauge-covariance spot
// check, the operational gluing, and (when the Kraus number is dim^2) the
// state-side bridge. The series block carries the holonomy matrix entries.
struct SequenceReportOptions {
    double tol = 1e-8;
    double rank_tol = default_rank_tol;
    std::uint64_t seed = 1;
};

ExperimentReport run_sequence_report(const ChannelSequence& seq,
                                     const SequenceReportOptions& opt = {});

// Holonomy of a smooth family: unitarity plus a step-halving drift estimate.
// drift_tol bounds the distance between the results at `steps` and steps/2.
struct SmoothReportOptions {
    double tol = 1e-8;
    double drift_tol = 1e-4;
    int steps = 1024;
    std::string label = "path";
};

ExperimentReport run_smooth_report(const ChannelPath& path,
                                   const SmoothReportOptions& opt = {});

// Spin-half rotation interferometry over two full turns: the holonomy phase
// of the rotation family follows the sign of cos(phi/2), so it returns after
// 4 pi but not after 2 pi, and the bright-port probability tracks
// (1 + cos(phi/2) cos chi) / 2. Scanning the ancilla phase setting chi at a
// fixed angle finds the holonomy phase operationally.
struct FourPiOptions {
    int points = 512;
    double chi = 0.0;
    int phase_scan_points = 256;
    int schrodinger_steps = 4096;
};

ExperimentReport run_four_pi(const FourPiOptions& opt = {});

// One random channel sequence pushed through every independent route to the
// holonomy: direct product, parallel gauge, state-side bridge (when
// kraus == dim^2), and the operational transport-plus-gluing.
struct CrosscheckOptions {
    std::uint64_t seed = 42;
    int length = 4;
    int dim = 2;
    int kraus = 4;
    double tol = 1e-8;
};

ExperimentReport run_crosscheck(const CrosscheckOptions& opt = {});

// Discretization error of sampled sequences against the smooth holonomy of
// the same family: fits the log-log order, which must be at least one.
struct ConvergenceOptions {
    std::string path = "random_k2";
    std::vector<double> params = {7};
    std::vector<int> grid_sizes = {250, 500, 1000, 2000};
    int reference_steps = 8192;
};

ExperimentReport run_convergence(const ConvergenceOptions& opt = {});

// Closed-form overlap matrices of the phase-flip / bit-flip /
// amplitude-damping triple on a parameter grid, entrywise, with the rank
// pattern (1, 2, 1) that controls which links have well-defined polar
// factors.
struct FixtureOptions {
    std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
    double tol = 1e-12;
};

ExperimentReport run_fixtures(const FixtureOptions& opt = {});

// Transport along a moving subspace decomposition: completeness of the
// transport channel, cross-block suppression, closed-form block phases for
// the families that have them, and the sequential-measurement approximation
// whose remainder must shrink monotonically with the number of pinchings.
struct HolonomicOptions {
    std::string family = "bloch_circle";
    std::vector<double> params = {1.0471975511965976};  // pi / 3
    std::vector<int> approx_steps = {16, 64, 256};
    int steps = 2048;
};

ExperimentReport run_holonomic(const HolonomicOptions& opt = {});

}  // namespace holo
