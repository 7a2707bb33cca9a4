#pragma once

// Kraus representations of completely positive trace-preserving maps, their
// state representation (the normalized channel-state isomorphism), gauge
// transformations between representations, and a small zoo of named channels.

#include <cstdint>
#include <string>
#include <vector>

#include "holo/linalg.hpp"

namespace holo {

// A channel as a finite list of Kraus operators E_k on a dim-dimensional
// system, sum_k E_k^dag E_k = I. The ops are required to be linearly
// independent, so kraus_number() is the minimal one for the channel.
struct KrausRep {
    int dim = 0;
    std::vector<Matrix> ops;

    int kraus_number() const { return static_cast<int>(ops.size()); }
};

struct ValidationReport {
    double trace_residual = 0.0;  // ||sum E^dag E - I||_F
    bool trace_preserving = false;
    int gram_rank = 0;  // rank of the overlap Gram matrix Tr(E_k^dag E_l)
    bool independent = false;

    bool ok() const { return trace_preserving && independent; }
};

// Shape, trace-preservation, and linear-independence diagnostics.
ValidationReport validate(const KrausRep& rep, double tol = 1e-10);

// Throws (NotTracePreserving / DimensionMismatch / RankDeficient) unless
// validate() passes.
void require_valid(const KrausRep& rep, double tol = 1e-10);

// Representation change E'_k = sum_l E_l V_{lk} with V unitary K x K. The
// channel itself is unchanged.
KrausRep gauge_transform(const KrausRep& rep, const Matrix& v);

// Normalized channel state rho = (E (x) Id)(|psi><psi|) on H (x) H with
// |psi> = D^{-1/2} sum_k |k>|k>; trace one, positive semidefinite, rank equal
// to the Kraus number.
Matrix channel_state(const KrausRep& rep);

bool is_valid_channel_state(const Matrix& rho, double tol = 1e-8);

// Minimal Kraus representation extracted from a channel state by
// eigendecomposition; operators ordered by descending eigenvalue, each
// phase-fixed so its largest-magnitude entry is real positive. Eigenvalues
// at or below tol * largest are dropped.
KrausRep canonical_rep(const Matrix& rho, double tol = default_rank_tol);

// Haar-random channel with exactly kraus_count operators on a dim system
// (kraus_count <= dim^2), deterministic per seed: the Kraus operators are the
// row blocks of a Haar-random isometry.
KrausRep random_channel(int dim, int kraus_count, std::uint64_t seed);

// Named channels. Degenerate parameter values that produce a numerically
// zero operator drop it (norm below 1e-12), so the Kraus number stays minimal.
KrausRep identity_channel(int dim);
KrausRep unitary_channel(const Matrix& u);
KrausRep phase_flip(double p);
KrausRep bit_flip(double p);
KrausRep amplitude_damping(double p);
KrausRep depolarizing(double p);

// Registry lookup by name with a flat real parameter list:
//   identity [dim=2] | unitary [angle, nx=0, ny=0, nz=1] | phase_flip [p]
//   bit_flip [p] | amplitude_damping [p] | depolarizing [p]
// Throws UnknownName / BadArity / ParamOutOfRange.
KrausRep zoo(const std::string& name, const std::vector<double>& params);

}  // namespace holo
