#pragma once

// Channels generated by parallel-transporting an orthogonal decomposition of
// the system space: Wilson lines of moving frames, the induced channel
// operators, the block-diagonal holonomy they carry, and the sequential
// measurement picture that approximates the transport.

#include <functional>
#include <string>
#include <vector>

#include "holo/linalg.hpp"

namespace holo {

// A decomposition of C^dim into moving orthogonal subspaces, each given by a
// smooth orthonormal frame callable s -> dim x block_dims[k] matrix. Frames
// must stay orthonormal and jointly complete for every s in [0, 1].
struct SubspaceFamily {
    int dim = 0;
    std::vector<int> block_dims;
    std::vector<std::function<Matrix(double)>> frames;

    int block_count() const { return static_cast<int>(frames.size()); }
};

// Builds a family from frame callables, probing s = 0 for block widths and
// validating orthonormality and completeness there.
SubspaceFamily make_subspace_family(int dim,
                                    std::vector<std::function<Matrix(double)>> frames);

// Orthonormality of each frame and completeness of the decomposition at s.
void require_frames(const SubspaceFamily& fam, double s, double tol = 1e-9);

// Frame connection A(s) = (dF/ds)^dag F, anti-Hermitian for orthonormal
// frames; derivative by 4th-order central difference with step h.
Matrix frame_connection(const std::function<Matrix(double)>& frame, double s,
                        double h = 1e-5);

// Ordered exponential of the frame connection over [0, s] (midpoint product,
// later factors left). Guards against frame jumps: every integration step
// checks that the consecutive frame overlap stays well conditioned and
// throws FrameDiscontinuity otherwise.
Matrix wilson_line(const std::function<Matrix(double)>& frame, double s,
                   int steps);

// The transport operators Gamma_k(s) = F_k(s) W_k(s) F_k(0)^dag; together
// they form a channel (sum Gamma^dag Gamma = I) whose operators are mutually
// parallel in the transport sense.
std::vector<Matrix> gamma_operators(const SubspaceFamily& fam, double s,
                                    int steps = 1024);

// Applies that channel at parameter s to a state.
Matrix apply_holonomic_channel(const SubspaceFamily& fam, double s, int steps,
                               const Matrix& rho);

// Holonomy of the full cycle: diagonal in the block labels with entries
// the polar phase of each block's holonomy trace Tr(F_k(0)^dag F_k(1) W_k).
// Off-diagonal entries of the endpoint overlap vanish identically; they are
// still measured and must stay below offdiag_tol. A numerically zero block
// trace throws VanishingTrace with the block index.
Matrix holonomic_channel_holonomy(const SubspaceFamily& fam, int steps = 1024,
                                  double offdiag_tol = 1e-9);

// Sequential-measurement approximation of the transport channel at s: the
// composition of n+1 pinchings along the subspace decomposition at
// t_j = j s / n, split into the same-index projector-product part (which
// converges to the transport channel) and the cross-block remainder.
struct PinchingSplit {
    Matrix approx;      // full composed-pinching output
    Matrix same_index;  // sum_k Pi_k rho Pi_k^dag, Pi_k the projector products
    Matrix remainder;   // approx - same_index
};

PinchingSplit measurement_approximation(const SubspaceFamily& fam, double s,
                                        int n, const Matrix& rho);

// Polar alignment of a sampled frame sequence: right-multiplies each frame by
// the polar factor of its overlap with the previous one, making consecutive
// overlaps positive definite without changing the spanned subspaces.
std::vector<Matrix> align_frames(std::vector<Matrix> raw);

// Orthonormal frames for a projector-valued family, sampled on grid:
// eigenvectors of the projector at each point, aligned step to step.
std::vector<Matrix> frames_from_projectors(
    const std::function<Matrix(double)>& projector, int block_dim,
    const std::vector<double>& grid);

// Registry of named families:
//   rotating_plane [omega]   two real one-dim blocks rotating by omega * s
//   bloch_circle [theta]     one-dim blocks tracing the polar-angle-theta
//                            circle on the sphere (closed path, solid angle
//                            2 pi (1 - cos theta))
//   rotation_d3 [angle]      a (2,1) split of C^3 rotated by exp(s angle G)
SubspaceFamily named_subspace_family(const std::string& name,
                                     const std::vector<double>& params);

}  // namespace holo
