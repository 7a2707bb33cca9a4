#pragma once

// Operational side: unitary dilations of channels, the two-arm interference
// circuit with channel dilations in one arm, ancilla unitaries that maximize
// the detection probability (realizing parallel transport), the final gluing
// step that exposes the sequence holonomy in an apparatus matrix, and the
// continuous version of the ancilla transport.

#include <cstdint>
#include <functional>
#include <vector>

#include "holo/sequence.hpp"

namespace holo {

// Unitary dilation of a channel: u acts on H_q (x) H_a (system index slow),
// the channel is rho -> Tr_a[u (rho (x) |anc><anc|) u^dag], and the Kraus
// operators E_k = (<k|_a) u (|anc>_a) reproduce the representation the
// dilation was built from exactly.
struct Dilation {
    int dim_q = 0;
    int dim_a = 0;
    Matrix u;
    Vector anc;
};

// Builds the dilation of a representation: the isometry column block is laid
// down verbatim and completed to a unitary by Gram-Schmidt against the
// standard basis (deterministic).
Dilation dilate(const KrausRep& rep);

// Reads the Kraus operators back out of a dilation.
KrausRep kraus_from_dilation(const Dilation& d);

// Applies the dilated channel to a system state.
Matrix apply_dilation(const Dilation& d, const Matrix& rho_q);

// Detection probability at the bright port of the two-arm circuit: Hadamard
// beam splitter, arm 0 runs d0's unitary followed by v0 on the ancilla,
// arm 1 runs d1's and v1, Hadamard again, project onto arm 0. Computed twice,
// as the explicit circuit on H_arm (x) H_q (x) H_a and in closed form
//   p = 1/2 + 1/2 Re Tr{ v0 Tr_q[u0 (rho (x) |anc><anc|) u1^dag] v1^dag },
// which must agree within agree_tol (IntegratorFailure otherwise).
double detection_probability(const Dilation& d0, const Dilation& d1,
                             const Matrix& v0, const Matrix& v1,
                             const Matrix& rho_q, double agree_tol = 1e-10);

// Ancilla-side link matrix Tr_q[u_n (I (x) |anc><anc|) u_{n+1}^dag]; its
// matrix elements are the transpose of the representation overlap matrix.
Matrix ancilla_link(const Dilation& d_n, const Dilation& d_next);

// The ancilla unitary for arm 1 that maximizes the detection probability at
// rho = I/D, given arm 0 runs (d0, v0): v1 = v0 * Phi(link). The maximum it
// achieves is 1/2 + (1/(2D)) sum of singular values of the link.
Matrix optimal_ancilla_unitary(const Dilation& d0, const Dilation& d1,
                               const Matrix& v0);

// Derivative-free check of the same maximization: random local search over
// unitaries, seeded walk with shrinking steps. Returns the best v1 found.
Matrix optimal_ancilla_unitary_search(const Dilation& d0, const Dilation& d1,
                                      const Matrix& v0, int trials,
                                      std::uint64_t seed);

// One experimental transport step: which link, the singular values of the
// (normalized) link matrix, and the detection probability achieved by the
// optimal setting.
struct TransportStep {
    int link = 0;
    RealVector singular_values;
    double probability = 0.0;
};

// Chained transport along a sequence: dilations of every channel, the
// accumulated ancilla unitaries (identity first, each next one the optimal
// setting against the previous), and per-step transcripts.
struct Transport {
    std::vector<Dilation> dilations;
    std::vector<Matrix> unitaries;
    std::vector<TransportStep> steps;
};

Transport operational_parallel_transport(const ChannelSequence& seq);

// The final interference between the transported last arm and the first:
// re-expressed in the transported endpoint representation, the cross-block
// coupling matrix c equals the sequence holonomy. final_gluing computes c
// from apparatus quantities only, stores the endpoint representations, and
// fails (IntegratorFailure) if c strays from holonomy(seq) beyond match_tol.
struct Gluing {
    KrausRep rep_end;    // last channel, transported endpoint representation
    KrausRep rep_start;  // first channel, original representation
    Matrix c;
    double match_residual = 0.0;
};

Gluing final_gluing(const ChannelSequence& seq, double match_tol = 1e-9);

// Action of the glued two-arm apparatus on a state of H_arm (x) H_q: block
// channels on the diagonal, c-weighted cross terms off it. Gauge invariant
// even though c itself covaries.
Matrix apply_gluing(const Gluing& g, const Matrix& sigma);

// Continuous ancilla transport for a smooth family of dilation unitaries:
// solves dU/ds = U a(s) with a from the Gram equation of the ancilla-side
// overlaps, on a uniform grid. max_residual is the largest deviation of the
// transported family from exact parallelity (finite-difference derivatives).
struct AncillaTransport {
    std::vector<double> grid;
    std::vector<Matrix> unitaries;
    double max_residual = 0.0;
};

AncillaTransport smooth_ancilla_transport(
    const std::function<Matrix(double)>& ufam, int dim_q, int dim_a, int steps,
    double fd_step = 1e-5);

}  // namespace holo
