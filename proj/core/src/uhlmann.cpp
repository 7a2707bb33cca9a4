#include "holo/uhlmann.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace holo {

Vector max_entangled_vector(int dim) {
    if (dim < 1) throw DimensionMismatch("max_entangled_vector: dim must be >= 1");
    Vector psi = Vector::Zero(dim * dim);
    const double c = 1.0 / std::sqrt(double(dim));
    for (int k = 0; k < dim; ++k) psi(k * dim + k) = c;
    return psi;
}

Vector max_entangled_vector(int dim, const Matrix& u) {
    if (u.rows() != dim || u.cols() != dim) {
        throw DimensionMismatch("max_entangled_vector: twist shape mismatch");
    }
    if (!is_unitary(u, 1e-9)) {
        throw NotUnitary("max_entangled_vector: twist is not unitary");
    }
    Vector psi = Vector::Zero(dim * dim);
    const double c = 1.0 / std::sqrt(double(dim));
    // (I (x) u) D^{-1/2} sum_k |k>|k> has component (i, j) = u(j, i)/sqrt(D).
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            psi(i * dim + j) = c * u(j, i);
        }
    }
    return psi;
}

std::vector<Vector> standard_basis(int n) {
    std::vector<Vector> basis;
    basis.reserve(n);
    for (int k = 0; k < n; ++k) {
        Vector e = Vector::Zero(n);
        e(k) = 1.0;
        basis.push_back(std::move(e));
    }
    return basis;
}

namespace {

void require_orthonormal(const std::vector<Vector>& basis, int n) {
    if (static_cast<int>(basis.size()) != n) {
        throw BadBasis("amplitude basis: wrong number of vectors");
    }
    for (int i = 0; i < n; ++i) {
        if (basis[i].size() != n) {
            throw BadBasis("amplitude basis: wrong vector length");
        }
        for (int j = 0; j <= i; ++j) {
            const Complex g = basis[i].dot(basis[j]);  // conjugates basis[i]
            const Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
            if (std::abs(g - want) > 1e-10) {
                throw BadBasis("amplitude basis: vectors are not orthonormal");
            }
        }
    }
}

void require_max_entangled(const Vector& psi, int dim) {
    if (psi.size() != Eigen::Index(dim) * dim) {
        throw DimensionMismatch("amplitude: psi length must be dim^2");
    }
    Matrix proj = psi * psi.adjoint();
    Matrix red = partial_trace_first(proj, dim, dim);
    if ((red - Matrix::Identity(dim, dim) / double(dim)).norm() > 1e-9) {
        throw ParamOutOfRange("amplitude: psi is not maximally entangled");
    }
}

}  // namespace

Matrix amplitude_from_rep(const KrausRep& rep, const std::vector<Vector>& basis,
                          const Vector& psi) {
    require_valid(rep);
    const int d = rep.dim;
    const int n = d * d;
    if (rep.kraus_number() != n) {
        std::ostringstream os;
        os << "amplitude_from_rep: need the maximal Kraus number " << n
           << ", got " << rep.kraus_number();
        throw NotMaximalKraus(os.str());
    }
    require_orthonormal(basis, n);
    require_max_entangled(psi, d);
    // Row-major reshape of psi, so (E (x) I)|psi> is vec(E Psi).
    Matrix psi_mat(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            psi_mat(i, j) = psi(i * d + j);
        }
    }
    Matrix w = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        Matrix ek_psi = rep.ops[k] * psi_mat;
        Vector col(n);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                col(i * d + j) = ek_psi(i, j);
            }
        }
        w += col * basis[k].adjoint();
    }
    return w;
}

Matrix uhlmann_holonomy(const std::vector<Matrix>& amplitudes,
                        double faithful_tol,
                        const std::vector<Matrix>& densities) {
    if (amplitudes.size() < 3) {
        throw EmptyPath(
            "uhlmann_holonomy: need at least two states plus the cyclic closure");
    }
    const Eigen::Index m = amplitudes.front().rows();
    for (const Matrix& w : amplitudes) {
        if (w.rows() != m || w.cols() != m) {
            throw DimensionMismatch("uhlmann_holonomy: amplitude shape mismatch");
        }
    }
    const Matrix& first = amplitudes.front();
    const Matrix& last = amplitudes.back();
    if ((last - first).norm() > 1e-10 * std::max(1.0, first.norm())) {
        throw NotCyclic(
            "uhlmann_holonomy: last amplitude must equal the first (closed path)");
    }
    if (!densities.empty() && densities.size() + 1 != amplitudes.size()) {
        throw DimensionMismatch(
            "uhlmann_holonomy: densities must match the open amplitude list");
    }
    for (std::size_t i = 0; i + 1 < amplitudes.size(); ++i) {
        Matrix rho = amplitudes[i] * amplitudes[i].adjoint();
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        if (es.eigenvalues()(0) <= faithful_tol) {
            std::ostringstream os;
            os << "uhlmann_holonomy: state " << i
               << " is not faithful (eigenvalue " << es.eigenvalues()(0) << ")";
            throw NotFaithful(os.str());
        }
        if (!densities.empty() && (rho - densities[i]).norm() > 1e-10 * m) {
            std::ostringstream os;
            os << "uhlmann_holonomy: amplitude " << i
               << " does not represent the given state";
            throw NotFaithful(os.str());
        }
    }
    Matrix u = Matrix::Identity(m, m);
    for (std::size_t i = 0; i + 1 < amplitudes.size(); ++i) {
        u = polar_unitary(amplitudes[i + 1].adjoint() * amplitudes[i],
                          default_rank_tol, static_cast<int>(i + 1)) *
            u;
    }
    Matrix frame = polar_unitary(amplitudes.front());
    return frame * u * frame.adjoint();
}

BridgeComparison channel_vs_uhlmann(const ChannelSequence& seq,
                                    const std::vector<Vector>& basis,
                                    const Vector& psi) {
    if (seq.size() < 2) {
        throw EmptyPath("channel_vs_uhlmann: need at least two channels");
    }
    std::vector<Matrix> amps;
    amps.reserve(seq.size() + 1);
    for (const KrausRep& rep : seq) {
        amps.push_back(amplitude_from_rep(rep, basis, psi));
    }
    amps.push_back(amps.front());
    BridgeComparison out;
    out.u_state = uhlmann_holonomy(amps);
    const int n = static_cast<int>(basis.size());
    Matrix f(n, n);
    for (int k = 0; k < n; ++k) f.col(k) = basis[k];
    Matrix frame = polar_unitary(amps.front());
    out.u_bridge = f.adjoint() * frame.adjoint() * out.u_state * frame * f;
    out.u_channel = holonomy(seq);
    out.residual = (out.u_channel - out.u_bridge).norm();
    return out;
}

}  // namespace holo
