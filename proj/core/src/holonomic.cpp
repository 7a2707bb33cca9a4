#include "holo/holonomic.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace holo {

SubspaceFamily make_subspace_family(
    int dim, std::vector<std::function<Matrix(double)>> frames) {
    if (dim < 1) {
        throw DimensionMismatch("make_subspace_family: dim must be >= 1");
    }
    if (frames.empty()) {
        throw EmptyPath("make_subspace_family: need at least one frame");
    }
    SubspaceFamily fam;
    fam.dim = dim;
    fam.frames = std::move(frames);
    int total = 0;
    for (const auto& f : fam.frames) {
        if (!f) throw EmptyPath("make_subspace_family: null frame callable");
        Matrix probe = f(0.0);
        if (probe.rows() != dim || probe.cols() < 1 || probe.cols() > dim) {
            throw DimensionMismatch(
                "make_subspace_family: frame shape does not fit the space");
        }
        fam.block_dims.push_back(static_cast<int>(probe.cols()));
        total += static_cast<int>(probe.cols());
    }
    if (total != dim) {
        std::ostringstream os;
        os << "make_subspace_family: block dimensions sum to " << total
           << ", expected " << dim;
        throw DimensionMismatch(os.str());
    }
    require_frames(fam, 0.0);
    return fam;
}

void require_frames(const SubspaceFamily& fam, double s, double tol) {
    Matrix completeness = Matrix::Zero(fam.dim, fam.dim);
    for (int k = 0; k < fam.block_count(); ++k) {
        Matrix f = fam.frames[k](s);
        if (f.rows() != fam.dim || f.cols() != fam.block_dims[k]) {
            throw DimensionMismatch("SubspaceFamily: frame shape changed along s");
        }
        Matrix g = f.adjoint() * f;
        if ((g - Matrix::Identity(f.cols(), f.cols())).norm() > tol) {
            std::ostringstream os;
            os << "SubspaceFamily: frame " << k << " not orthonormal at s = " << s;
            throw FrameDiscontinuity(os.str());
        }
        completeness += f * f.adjoint();
    }
    if ((completeness - Matrix::Identity(fam.dim, fam.dim)).norm() > tol) {
        std::ostringstream os;
        os << "SubspaceFamily: blocks do not decompose the space at s = " << s;
        throw DimensionMismatch(os.str());
    }
}

Matrix frame_connection(const std::function<Matrix(double)>& frame, double s,
                        double h) {
    Matrix p2 = frame(s + 2 * h);
    Matrix p1 = frame(s + h);
    Matrix m1 = frame(s - h);
    Matrix m2 = frame(s - 2 * h);
    Matrix fdot = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    Matrix a = fdot.adjoint() * frame(s);
    return 0.5 * (a - a.adjoint());  // exact anti-Hermitization of FD noise
}

Matrix wilson_line(const std::function<Matrix(double)>& frame, double s,
                   int steps) {
    if (s < 0.0) throw ParamOutOfRange("wilson_line: s must be >= 0");
    const int width = static_cast<int>(frame(0.0).cols());
    if (s == 0.0) return Matrix::Identity(width, width);
    if (steps < 1) throw ParamOutOfRange("wilson_line: steps must be >= 1");
    const double dt = s / steps;
    Matrix w = Matrix::Identity(width, width);
    Matrix prev = frame(0.0);
    for (int i = 0; i < steps; ++i) {
        const double t1 = (i + 1) * dt;
        Matrix next = frame(t1);
        Eigen::JacobiSVD<Matrix> svd(next.adjoint() * prev);
        const RealVector& sig = svd.singularValues();
        if (sig(sig.size() - 1) < 0.5) {
            std::ostringstream os;
            os << "wilson_line: frame jump between t = " << i * dt << " and "
               << t1 << " (overlap singular value " << sig(sig.size() - 1)
               << ")";
            throw FrameDiscontinuity(os.str());
        }
        w = unitary_exp(frame_connection(frame, (i + 0.5) * dt) * dt) * w;
        prev = std::move(next);
    }
    return w;
}

std::vector<Matrix> gamma_operators(const SubspaceFamily& fam, double s,
                                    int steps) {
    if (s < 0.0 || s > 1.0) {
        throw ParamOutOfRange("gamma_operators: s must lie in [0, 1]");
    }
    require_frames(fam, 0.0);
    require_frames(fam, s);
    std::vector<Matrix> gammas;
    gammas.reserve(fam.frames.size());
    for (int k = 0; k < fam.block_count(); ++k) {
        Matrix w = wilson_line(fam.frames[k], s, steps);
        gammas.push_back(fam.frames[k](s) * w * fam.frames[k](0.0).adjoint());
    }
    return gammas;
}

Matrix apply_holonomic_channel(const SubspaceFamily& fam, double s, int steps,
                               const Matrix& rho) {
    if (rho.rows() != fam.dim || rho.cols() != fam.dim) {
        throw DimensionMismatch("apply_holonomic_channel: state shape mismatch");
    }
    Matrix out = Matrix::Zero(fam.dim, fam.dim);
    for (const Matrix& g : gamma_operators(fam, s, steps)) {
        out += g * rho * g.adjoint();
    }
    return out;
}

Matrix holonomic_channel_holonomy(const SubspaceFamily& fam, int steps,
                                  double offdiag_tol) {
    std::vector<Matrix> at_one = gamma_operators(fam, 1.0, steps);
    const int kb = fam.block_count();
    Matrix u = Matrix::Zero(kb, kb);
    for (int k = 0; k < kb; ++k) {
        Matrix pk0 = fam.frames[k](0.0) * fam.frames[k](0.0).adjoint();
        for (int l = 0; l < kb; ++l) {
            // Endpoint overlap Tr(Gamma_k(0)^dag Gamma_l(1)); Gamma_k(0) is
            // the initial projector.
            const Complex t = (pk0 * at_one[l]).trace();
            if (k == l) {
                if (std::abs(t) <= zero_floor) {
                    std::ostringstream os;
                    os << "holonomic_channel_holonomy: block " << k
                       << " has a vanishing holonomy trace";
                    throw VanishingTrace(os.str(), k);
                }
                u(k, k) = t / std::abs(t);
            } else if (std::abs(t) > offdiag_tol) {
                std::ostringstream os;
                os << "holonomic_channel_holonomy: endpoint overlap leaks "
                   << std::abs(t) << " between blocks " << k << " and " << l;
                throw IntegratorFailure(os.str());
            }
        }
    }
    return u;
}

PinchingSplit measurement_approximation(const SubspaceFamily& fam, double s,
                                        int n, const Matrix& rho) {
    if (s <= 0.0 || s > 1.0) {
        throw ParamOutOfRange("measurement_approximation: s must lie in (0, 1]");
    }
    if (n < 1) {
        throw ParamOutOfRange("measurement_approximation: need n >= 1 steps");
    }
    if (rho.rows() != fam.dim || rho.cols() != fam.dim) {
        throw DimensionMismatch("measurement_approximation: state shape mismatch");
    }
    const int kb = fam.block_count();
    Matrix pinched = rho;
    std::vector<Matrix> products(kb);  // same-index projector chains
    for (int j = 0; j <= n; ++j) {
        const double t = s * double(j) / n;
        Matrix next = Matrix::Zero(fam.dim, fam.dim);
        for (int k = 0; k < kb; ++k) {
            Matrix f = fam.frames[k](t);
            Matrix p = f * f.adjoint();
            next += p * pinched * p;
            products[k] = (j == 0) ? p : Matrix(p * products[k]);
        }
        pinched = std::move(next);
    }
    PinchingSplit split;
    split.approx = std::move(pinched);
    split.same_index = Matrix::Zero(fam.dim, fam.dim);
    for (int k = 0; k < kb; ++k) {
        split.same_index += products[k] * rho * products[k].adjoint();
    }
    split.remainder = split.approx - split.same_index;
    return split;
}

std::vector<Matrix> align_frames(std::vector<Matrix> raw) {
    for (std::size_t i = 1; i < raw.size(); ++i) {
        raw[i] = raw[i] * polar_unitary(raw[i].adjoint() * raw[i - 1]);
    }
    return raw;
}

std::vector<Matrix> frames_from_projectors(
    const std::function<Matrix(double)>& projector, int block_dim,
    const std::vector<double>& grid) {
    if (grid.empty()) throw EmptyPath("frames_from_projectors: empty grid");
    if (block_dim < 1) {
        throw DimensionMismatch("frames_from_projectors: block_dim must be >= 1");
    }
    std::vector<Matrix> frames;
    frames.reserve(grid.size());
    for (double t : grid) {
        Matrix p = projector(t);
        if (p.rows() != p.cols()) {
            throw DimensionMismatch("frames_from_projectors: projector not square");
        }
        if (!is_hermitian(p, 1e-8) || (p * p - p).norm() > 1e-8 * p.rows()) {
            throw NotHermitian(
                "frames_from_projectors: input is not an orthogonal projector");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.adjoint()));
        const Eigen::Index d = p.rows();
        // Range of the projector: the block_dim top eigenvectors.
        if (es.eigenvalues()(d - block_dim) < 0.5) {
            throw CompletionFailure(
                "frames_from_projectors: projector rank below block_dim");
        }
        frames.push_back(es.eigenvectors().rightCols(block_dim));
    }
    return align_frames(std::move(frames));
}

SubspaceFamily named_subspace_family(const std::string& name,
                                     const std::vector<double>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n) {
            std::ostringstream os;
            os << "named_subspace_family: '" << name << "' takes " << n
               << " parameter(s), got " << params.size();
            throw BadArity(os.str());
        }
    };
    if (name == "rotating_plane") {
        want(1);
        const double omega = params[0];
        auto a = [omega](double s) {
            Matrix f(2, 1);
            f << std::cos(omega * s), std::sin(omega * s);
            return f;
        };
        auto b = [omega](double s) {
            Matrix f(2, 1);
            f << -std::sin(omega * s), std::cos(omega * s);
            return f;
        };
        return make_subspace_family(2, {a, b});
    }
    if (name == "bloch_circle") {
        want(1);
        const double theta = params[0];
        if (!(theta > 0.0 && theta < M_PI)) {
            throw ParamOutOfRange(
                "named_subspace_family: bloch_circle needs theta in (0, pi)");
        }
        const double c = std::cos(theta / 2.0);
        const double sn = std::sin(theta / 2.0);
        auto a = [c, sn](double s) {
            Matrix f(2, 1);
            f(0, 0) = c;
            f(1, 0) = sn * std::exp(Complex(0.0, 2.0 * M_PI * s));
            return f;
        };
        auto b = [c, sn](double s) {
            Matrix f(2, 1);
            f(0, 0) = sn;
            f(1, 0) = -c * std::exp(Complex(0.0, 2.0 * M_PI * s));
            return f;
        };
        return make_subspace_family(2, {a, b});
    }
    if (name == "rotation_d3") {
        want(1);
        const double angle = params[0];
        Matrix g = Matrix::Zero(3, 3);
        g(0, 1) = -1.0;
        g(1, 0) = 1.0;
        g(1, 2) = -0.5;
        g(2, 1) = 0.5;
        auto rot = [g, angle](double s) { return unitary_exp(s * angle * g); };
        auto wide = [rot](double s) { return Matrix(rot(s).leftCols(2)); };
        auto thin = [rot](double s) { return Matrix(rot(s).rightCols(1)); };
        return make_subspace_family(3, {wide, thin});
    }
    throw UnknownName("named_subspace_family: unknown family '" + name + "'");
}

}  // namespace holo
