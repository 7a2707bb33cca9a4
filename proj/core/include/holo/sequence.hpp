#pragma once

// Holonomy of a discrete, cyclically closed sequence of channels: overlap
// matrices between neighboring representations, the parallelity test, the
// holonomy invariant itself, and the parallel gauge that trivializes every
// internal link.

#include <vector>

#include "holo/kraus.hpp"

namespace holo {

// Ordered list of channels, all on the same system with the same Kraus
// number (so overlap matrices are square and the holonomy is unitary).
using ChannelSequence = std::vector<KrausRep>;

// Overlap matrix between two representations, the later one first:
// entry (k, l) = Tr(later_k^dag earlier_l).
Matrix overlap(const KrausRep& later, const KrausRep& earlier);

// A consecutive pair is parallel when its overlap matrix (later vs earlier)
// is Hermitian within tol and positive definite (smallest eigenvalue > tol).
bool are_parallel(const KrausRep& earlier, const KrausRep& later,
                  double tol = 1e-10);

// Holonomy of the closed sequence: the product of polar unitary factors of
// the link overlaps, later links left, with the closing first-to-last factor
// leftmost. Gauge covariant (conjugates by the first link's gauge), basis
// independent, unitary. Throws RankDeficient (with the link index, where the
// closing link counts as link N) when any overlap is singular.
Matrix holonomy(const ChannelSequence& seq, double rank_tol = default_rank_tol);

// The sequence rewritten so every internal link has a positive definite
// overlap matrix (parallel transport of the representation), together with
// the gauge frames used. frames[0] is the identity; frames[n] maps the
// original representation n to the transported one.
struct ParallelGauge {
    ChannelSequence reps;
    std::vector<Matrix> frames;
};

ParallelGauge parallel_gauge(const ChannelSequence& seq,
                             double rank_tol = default_rank_tol);

// Residual of gauge covariance: transforms representation n by gauges[n],
// recomputes the holonomy, and returns the Frobenius distance to the
// conjugated original, || holonomy(transformed) - V_1^dag holonomy V_1 ||.
double gauge_covariance_check(const ChannelSequence& seq,
                              const std::vector<Matrix>& gauges,
                              double rank_tol = default_rank_tol);

}  // namespace holo
