#include "holo/kraus.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace holo {

namespace {

const Matrix& pauli(int i) {
    static const Matrix sx = [] {
        Matrix m(2, 2);
        m << 0, 1, 1, 0;
        return m;
    }();
    static const Matrix sy = [] {
        Matrix m(2, 2);
        m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
        return m;
    }();
    static const Matrix sz = [] {
        Matrix m(2, 2);
        m << 1, 0, 0, -1;
        return m;
    }();
    switch (i) {
        case 0: return sx;
        case 1: return sy;
        default: return sz;
    }
}

// Gram matrix of the operator list under the Hilbert-Schmidt inner product.
Matrix gram_matrix(const std::vector<Matrix>& ops) {
    const int k = static_cast<int>(ops.size());
    Matrix g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            g(i, j) = (ops[i].adjoint() * ops[j]).trace();
        }
    }
    return g;
}

void drop_zero_ops(KrausRep& rep) {
    std::vector<Matrix> kept;
    for (const Matrix& e : rep.ops) {
        if (e.norm() >= 1e-12) kept.push_back(e);
    }
    rep.ops = std::move(kept);
}

double check_probability(const std::string& name, double p, double hi = 1.0) {
    if (!(p >= 0.0 && p <= hi)) {
        std::ostringstream os;
        os << name << ": parameter " << p << " outside [0, " << hi << "]";
        throw ParamOutOfRange(os.str());
    }
    return p;
}

}  // namespace

ValidationReport validate(const KrausRep& rep, double tol) {
    ValidationReport r;
    if (rep.dim < 1 || rep.ops.empty()) return r;
    for (const Matrix& e : rep.ops) {
        if (e.rows() != rep.dim || e.cols() != rep.dim) return r;
    }
    Matrix acc = Matrix::Zero(rep.dim, rep.dim);
    for (const Matrix& e : rep.ops) acc += e.adjoint() * e;
    r.trace_residual = (acc - Matrix::Identity(rep.dim, rep.dim)).norm();
    r.trace_preserving = r.trace_residual <= tol * 10;
    r.gram_rank = rank_estimate(gram_matrix(rep.ops), 1e-10);
    r.independent = r.gram_rank == rep.kraus_number();
    return r;
}

void require_valid(const KrausRep& rep, double tol) {
    if (rep.dim < 1 || rep.ops.empty()) {
        throw DimensionMismatch("KrausRep: empty representation");
    }
    for (const Matrix& e : rep.ops) {
        if (e.rows() != rep.dim || e.cols() != rep.dim) {
            throw DimensionMismatch("KrausRep: operator shape does not match dim");
        }
    }
    ValidationReport r = validate(rep, tol);
    if (!r.trace_preserving) {
        std::ostringstream os;
        os << "KrausRep: sum E^dag E deviates from identity by "
           << r.trace_residual;
        throw NotTracePreserving(os.str());
    }
    if (!r.independent) {
        std::ostringstream os;
        os << "KrausRep: operators are linearly dependent (Gram rank "
           << r.gram_rank << " of " << rep.kraus_number() << ")";
        throw RankDeficient(os.str(), -1, 0.0, 0.0);
    }
}

KrausRep gauge_transform(const KrausRep& rep, const Matrix& v) {
    const int k = rep.kraus_number();
    if (v.rows() != k || v.cols() != k) {
        throw DimensionMismatch(
            "gauge_transform: matrix must be square with the Kraus number");
    }
    if (!is_unitary(v, 1e-8)) {
        throw NotUnitary("gauge_transform: matrix is not unitary");
    }
    KrausRep out;
    out.dim = rep.dim;
    out.ops.resize(k, Matrix::Zero(rep.dim, rep.dim));
    for (int kk = 0; kk < k; ++kk) {
        for (int l = 0; l < k; ++l) {
            out.ops[kk] += rep.ops[l] * v(l, kk);
        }
    }
    return out;
}

Matrix channel_state(const KrausRep& rep) {
    require_valid(rep);
    const int d = rep.dim;
    Matrix rho = Matrix::Zero(d * d, d * d);
    const double inv_sqrt_d = 1.0 / std::sqrt(double(d));
    for (const Matrix& e : rep.ops) {
        // (E (x) Id)|psi> is the row-major vectorization of E over sqrt(D).
        Vector w(d * d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                w(i * d + j) = e(i, j) * inv_sqrt_d;
            }
        }
        rho += w * w.adjoint();
    }
    return rho;
}

bool is_valid_channel_state(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
    const int d = static_cast<int>(std::lround(std::sqrt(double(rho.rows()))));
    if (Eigen::Index(d) * d != rho.rows()) return false;
    if (!is_hermitian(rho, tol)) return false;
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    if (es.eigenvalues()(0) < -tol) return false;
    // Trace preservation of the underlying channel: reducing over the output
    // factor must give the maximally mixed state.
    Matrix red = partial_trace_first(rho, d, d);
    return (red - Matrix::Identity(d, d) / double(d)).norm() <= tol;
}

KrausRep canonical_rep(const Matrix& rho, double tol) {
    if (!is_valid_channel_state(rho, 1e-8)) {
        throw NotPositive(
            "canonical_rep: input is not a valid normalized channel state");
    }
    const int d = static_cast<int>(std::lround(std::sqrt(double(rho.rows()))));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
    const RealVector& lam = es.eigenvalues();  // ascending
    const double lmax = lam(lam.size() - 1);
    KrausRep rep;
    rep.dim = d;
    for (Eigen::Index idx = lam.size() - 1; idx >= 0; --idx) {
        if (lam(idx) <= tol * lmax) break;
        Vector v = es.eigenvectors().col(idx);
        Matrix e(d, d);
        const double scale = std::sqrt(lam(idx) * d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                e(i, j) = scale * v(i * d + j);
            }
        }
        // Fix the eigenvector phase: largest-magnitude entry real positive.
        Eigen::Index bi = 0, bj = 0;
        e.cwiseAbs().maxCoeff(&bi, &bj);
        e *= std::conj(polar_phase(e(bi, bj)));
        rep.ops.push_back(std::move(e));
    }
    return rep;
}

KrausRep random_channel(int dim, int kraus_count, std::uint64_t seed) {
    if (dim < 1) throw DimensionMismatch("random_channel: dim must be >= 1");
    if (kraus_count < 1 || kraus_count > dim * dim) {
        std::ostringstream os;
        os << "random_channel: Kraus count " << kraus_count
           << " outside [1, dim^2] = [1, " << dim * dim << "]";
        throw ParamOutOfRange(os.str());
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        // Haar isometry (dim*kraus_count) x dim, sliced into row blocks.
        Matrix g(dim * kraus_count, dim);
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            for (Eigen::Index j = 0; j < g.cols(); ++j) {
                g(i, j) = Complex(gauss(rng), gauss(rng));
            }
        }
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix thin = qr.householderQ() * Matrix::Identity(g.rows(), dim);
        Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < dim; ++j) {
            const Complex dj = r(j, j);
            const double a = std::abs(dj);
            thin.col(j) *= (a > 0.0) ? dj / a : Complex(1.0, 0.0);
        }
        KrausRep rep;
        rep.dim = dim;
        for (int k = 0; k < kraus_count; ++k) {
            rep.ops.push_back(thin.block(k * dim, 0, dim, dim));
        }
        if (validate(rep).ok()) return rep;
        // Vanishingly unlikely dependent draw; try again with fresh entropy.
    }
    throw RankDeficient("random_channel: could not draw independent operators",
                        -1, 0.0, 0.0);
}

KrausRep identity_channel(int dim) {
    if (dim < 1) throw DimensionMismatch("identity_channel: dim must be >= 1");
    return KrausRep{dim, {Matrix::Identity(dim, dim)}};
}

KrausRep unitary_channel(const Matrix& u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw DimensionMismatch("unitary_channel: need a square matrix");
    }
    if (!is_unitary(u, 1e-8)) {
        throw NotUnitary("unitary_channel: matrix is not unitary");
    }
    return KrausRep{static_cast<int>(u.rows()), {u}};
}

KrausRep phase_flip(double p) {
    check_probability("phase_flip", p);
    KrausRep rep{2,
                 {std::sqrt(1.0 - p) * Matrix::Identity(2, 2),
                  std::sqrt(p) * pauli(2)}};
    drop_zero_ops(rep);
    return rep;
}

KrausRep bit_flip(double p) {
    check_probability("bit_flip", p);
    KrausRep rep{2,
                 {std::sqrt(1.0 - p) * Matrix::Identity(2, 2),
                  std::sqrt(p) * pauli(0)}};
    drop_zero_ops(rep);
    return rep;
}

KrausRep amplitude_damping(double p) {
    check_probability("amplitude_damping", p);
    Matrix g0(2, 2), g1(2, 2);
    g0 << 1, 0, 0, std::sqrt(1.0 - p);
    g1 << 0, std::sqrt(p), 0, 0;
    KrausRep rep{2, {g0, g1}};
    drop_zero_ops(rep);
    return rep;
}

KrausRep depolarizing(double p) {
    // CP for p up to 4/3 (the fully contracting corner), not just 1.
    check_probability("depolarizing", p, 4.0 / 3.0);
    KrausRep rep{2,
                 {std::sqrt(std::max(1.0 - 0.75 * p, 0.0)) * Matrix::Identity(2, 2),
                  0.5 * std::sqrt(p) * pauli(0), 0.5 * std::sqrt(p) * pauli(1),
                  0.5 * std::sqrt(p) * pauli(2)}};
    drop_zero_ops(rep);
    return rep;
}

KrausRep zoo(const std::string& name, const std::vector<double>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n) {
            std::ostringstream os;
            os << "zoo: channel '" << name << "' takes " << n
               << " parameter(s), got " << params.size();
            throw BadArity(os.str());
        }
    };
    if (name == "identity") {
        if (params.empty()) return identity_channel(2);
        want(1);
        const int d = static_cast<int>(std::lround(params[0]));
        if (d < 1 || std::abs(params[0] - d) > 1e-9) {
            throw ParamOutOfRange("zoo: identity dimension must be a positive integer");
        }
        return identity_channel(d);
    }
    if (name == "unitary") {
        // Qubit rotation exp(-i angle/2 n.sigma); axis defaults to z.
        double angle = 0.0, nx = 0.0, ny = 0.0, nz = 1.0;
        if (params.size() == 1) {
            angle = params[0];
        } else if (params.size() == 4) {
            angle = params[0];
            nx = params[1];
            ny = params[2];
            nz = params[3];
        } else {
            throw BadArity("zoo: unitary takes [angle] or [angle, nx, ny, nz]");
        }
        const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
        if (nn < 1e-12) throw ParamOutOfRange("zoo: unitary axis is zero");
        Matrix h = (nx * pauli(0) + ny * pauli(1) + nz * pauli(2)) / nn;
        return unitary_channel(evolution_step(h, angle / 2.0));
    }
    if (name == "phase_flip") {
        want(1);
        return phase_flip(params[0]);
    }
    if (name == "bit_flip") {
        want(1);
        return bit_flip(params[0]);
    }
    if (name == "amplitude_damping") {
        want(1);
        return amplitude_damping(params[0]);
    }
    if (name == "depolarizing") {
        want(1);
        return depolarizing(params[0]);
    }
    throw UnknownName("zoo: unknown channel '" + name + "'");
}

}  // namespace holo
