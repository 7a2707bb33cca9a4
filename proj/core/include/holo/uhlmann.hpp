#pragma once

// State-side holonomy for sequences of faithful density operators, realized
// through amplitudes (square roots W with rho = W W^dag), and the bridge that
// reproduces the channel holonomy from the amplitudes of maximal-Kraus-number
// representations under the channel-state isomorphism.

#include <vector>

#include "holo/sequence.hpp"

namespace holo {

// Canonical maximally entangled vector D^{-1/2} sum_k |k>|k> on H (x) H,
// optionally twisted on the second factor by a unitary u (which keeps it
// maximally entangled).
Vector max_entangled_vector(int dim);
Vector max_entangled_vector(int dim, const Matrix& u);

// Standard orthonormal basis of C^n as explicit vectors.
std::vector<Vector> standard_basis(int n);

// Amplitude of the channel state of rep relative to the maximally entangled
// vector psi and an orthonormal label basis {f_k} of C^{D^2}:
// W = sum_k (E_k (x) I) |psi> <f_k|. Requires the maximal Kraus number
// K = D^2 (otherwise W W^dag is rank deficient and transport degenerates).
Matrix amplitude_from_rep(const KrausRep& rep, const std::vector<Vector>& basis,
                          const Vector& psi);

// Holonomy of a cyclic amplitude list (last entry must equal the first):
// the ordered product of polar factors of consecutive amplitude overlaps
// W_{n+1}^dag W_n, conjugated into the frame of the first amplitude. Every
// W W^dag must be faithful (smallest eigenvalue above faithful_tol); when
// the intended density sequence is supplied it is checked against the
// amplitudes to 1e-10.
Matrix uhlmann_holonomy(const std::vector<Matrix>& amplitudes,
                        double faithful_tol = 1e-10,
                        const std::vector<Matrix>& densities = {});

// Both sides of the bridge: the channel holonomy of the sequence and the
// same unitary reconstructed from state-side transport of the channel
// states' amplitudes, expressed in the label basis.
struct BridgeComparison {
    Matrix u_channel;
    Matrix u_bridge;
    Matrix u_state;  // state-side holonomy before the basis re-expression
    double residual = 0.0;
};

BridgeComparison channel_vs_uhlmann(const ChannelSequence& seq,
                                    const std::vector<Vector>& basis,
                                    const Vector& psi);

}  // namespace holo
