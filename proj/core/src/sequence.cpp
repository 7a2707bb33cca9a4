#include "holo/sequence.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>

namespace holo {

namespace {

void require_uniform(const ChannelSequence& seq) {
    if (seq.size() < 2) {
        throw EmptyPath("ChannelSequence: need at least two channels");
    }
    const int d = seq.front().dim;
    const int k = seq.front().kraus_number();
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (seq[n].dim != d) {
            throw DimensionMismatch(
                "ChannelSequence: all channels must share one dimension");
        }
        if (seq[n].kraus_number() != k) {
            std::ostringstream os;
            os << "ChannelSequence: Kraus number changes from " << k << " to "
               << seq[n].kraus_number() << " at position " << n;
            throw DimensionMismatch(os.str());
        }
    }
}

}  // namespace

Matrix overlap(const KrausRep& later, const KrausRep& earlier) {
    if (later.dim != earlier.dim) {
        throw DimensionMismatch("overlap: channels act on different systems");
    }
    const int kl = later.kraus_number();
    const int ke = earlier.kraus_number();
    Matrix t(kl, ke);
    for (int k = 0; k < kl; ++k) {
        for (int l = 0; l < ke; ++l) {
            t(k, l) = (later.ops[k].adjoint() * earlier.ops[l]).trace();
        }
    }
    return t;
}

bool are_parallel(const KrausRep& earlier, const KrausRep& later, double tol) {
    Matrix t = overlap(later, earlier);
    if (t.rows() != t.cols()) return false;
    if (!is_hermitian(t, tol)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (t + t.adjoint()));
    return es.eigenvalues()(0) > tol;
}

Matrix holonomy(const ChannelSequence& seq, double rank_tol) {
    require_uniform(seq);
    const int n = static_cast<int>(seq.size());
    const int k = seq.front().kraus_number();
    Matrix u = Matrix::Identity(k, k);
    for (int link = 1; link < n; ++link) {
        u = polar_unitary(overlap(seq[link], seq[link - 1]), rank_tol, link) * u;
    }
    // Closing factor: first channel against the last.
    u = polar_unitary(overlap(seq[0], seq[n - 1]), rank_tol, n) * u;
    return u;
}

ParallelGauge parallel_gauge(const ChannelSequence& seq, double rank_tol) {
    require_uniform(seq);
    const int n = static_cast<int>(seq.size());
    const int k = seq.front().kraus_number();
    ParallelGauge out;
    out.frames.reserve(seq.size());
    out.reps.reserve(seq.size());
    Matrix frame = Matrix::Identity(k, k);
    out.frames.push_back(frame);
    out.reps.push_back(seq.front());
    for (int link = 1; link < n; ++link) {
        frame = polar_unitary(overlap(seq[link], seq[link - 1]), rank_tol, link) *
                frame;
        out.frames.push_back(frame);
        out.reps.push_back(gauge_transform(seq[link], frame));
    }
    return out;
}

double gauge_covariance_check(const ChannelSequence& seq,
                              const std::vector<Matrix>& gauges,
                              double rank_tol) {
    require_uniform(seq);
    if (gauges.size() != seq.size()) {
        throw DimensionMismatch(
            "gauge_covariance_check: one gauge per channel required");
    }
    ChannelSequence transformed;
    transformed.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        transformed.push_back(gauge_transform(seq[i], gauges[i]));
    }
    Matrix lhs = holonomy(transformed, rank_tol);
    Matrix rhs = gauges[0].adjoint() * holonomy(seq, rank_tol) * gauges[0];
    return (lhs - rhs).norm();
}

}  // namespace holo
