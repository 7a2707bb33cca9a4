#include "holo/smooth.hpp"

#include <cmath>
#include <sstream>

namespace holo {

ChannelPath::ChannelPath(int dim, int kraus_count, OpsFn ops, OpsFn derivative,
                         double fd_step)
    : dim_(dim),
      kraus_(kraus_count),
      ops_(std::move(ops)),
      derivative_(std::move(derivative)),
      fd_step_(fd_step) {
    if (dim_ < 1 || kraus_ < 1) {
        throw DimensionMismatch("ChannelPath: dim and Kraus count must be >= 1");
    }
    if (!ops_) throw EmptyPath("ChannelPath: null operator callable");
    if (fd_step_ <= 0.0) {
        throw ParamOutOfRange("ChannelPath: finite-difference step must be > 0");
    }
}

std::vector<Matrix> ChannelPath::ops_at(double s) const {
    std::vector<Matrix> ops = ops_(s);
    if (static_cast<int>(ops.size()) != kraus_) {
        std::ostringstream os;
        os << "ChannelPath: expected " << kraus_ << " operators at s = " << s
           << ", got " << ops.size();
        throw DimensionMismatch(os.str());
    }
    for (const Matrix& e : ops) {
        if (e.rows() != dim_ || e.cols() != dim_) {
            throw DimensionMismatch("ChannelPath: operator shape does not match dim");
        }
    }
    return ops;
}

KrausRep ChannelPath::rep_at(double s) const {
    KrausRep rep{dim_, ops_at(s)};
    require_valid(rep);
    return rep;
}

std::vector<Matrix> ChannelPath::derivative_at(double s) const {
    if (derivative_) {
        std::vector<Matrix> d = derivative_(s);
        if (static_cast<int>(d.size()) != kraus_) {
            throw DimensionMismatch("ChannelPath: derivative arity mismatch");
        }
        return d;
    }
    // 4th-order central difference on each operator entry.
    const double h = fd_step_;
    std::vector<Matrix> p2 = ops_at(s + 2 * h);
    std::vector<Matrix> p1 = ops_at(s + h);
    std::vector<Matrix> m1 = ops_at(s - h);
    std::vector<Matrix> m2 = ops_at(s - 2 * h);
    std::vector<Matrix> out(kraus_);
    for (int k = 0; k < kraus_; ++k) {
        out[k] = (-p2[k] + 8.0 * p1[k] - 8.0 * m1[k] + m2[k]) / (12.0 * h);
    }
    return out;
}

PathOverlaps qr_matrices(const ChannelPath& path, double s) {
    std::vector<Matrix> ops = path.ops_at(s);
    std::vector<Matrix> dots = path.derivative_at(s);
    const int k = path.kraus_count();
    PathOverlaps qr;
    qr.q.resize(k, k);
    qr.r.resize(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            qr.q(i, j) = (ops[i].adjoint() * ops[j]).trace();
            qr.r(i, j) = (dots[i].adjoint() * ops[j]).trace();
        }
    }
    return qr;
}

bool is_parallel_transported(const ChannelPath& path,
                             const std::vector<double>& grid, double tol) {
    if (grid.empty()) {
        throw EmptyPath("is_parallel_transported: empty grid");
    }
    for (double s : grid) {
        PathOverlaps qr = qr_matrices(path, s);
        const double scale = std::max(qr.r.norm(), 1.0);
        if ((qr.r - qr.r.adjoint()).norm() > tol * scale) return false;
    }
    return true;
}

GaugePotentialSample gauge_potential(const ChannelPath& path, double s) {
    GaugePotentialSample out;
    out.s = s;
    PathOverlaps qr = qr_matrices(path, s);
    out.q = std::move(qr.q);
    out.r = std::move(qr.r);
    Matrix sdiff = out.r - out.r.adjoint();
    out.a = solve_gauge_equation(out.q, sdiff);
    return out;
}

Matrix gauge_potential_k2_closed_form(const Matrix& q, const Matrix& r,
                                      double tol) {
    if (q.rows() != 2 || q.cols() != 2 || r.rows() != 2 || r.cols() != 2) {
        throw DimensionMismatch("gauge_potential_k2_closed_form: need 2x2 input");
    }
    if (!is_hermitian(q, tol)) {
        throw NotHermitian("gauge_potential_k2_closed_form: q is not Hermitian");
    }
    if (std::abs(q.trace() - Complex(2.0, 0.0)) > tol * 10) {
        throw NotPositive(
            "gauge_potential_k2_closed_form: Gram trace must be 2 "
            "(trace-preserving two-operator family)");
    }
    // Pauli coordinates: q = I + x.sigma, r = i z0 I + (y + i z).sigma.
    auto pauli_coord = [](const Matrix& m, int i) -> Complex {
        switch (i) {
            case 0: return 0.5 * (m(0, 1) + m(1, 0));
            case 1: return 0.5 * Complex(0, 1) * (m(0, 1) - m(1, 0));
            default: return 0.5 * (m(0, 0) - m(1, 1));
        }
    };
    Eigen::Vector3d x, y, z;
    for (int i = 0; i < 3; ++i) {
        const Complex qc = pauli_coord(q, i);
        x(i) = qc.real();
        const Complex rc = pauli_coord(r, i);
        y(i) = rc.real();
        z(i) = rc.imag();
    }
    const double z0 = 0.5 * r.trace().imag();
    if (std::abs(0.5 * r.trace().real()) > tol * std::max(r.norm(), 1.0)) {
        throw NotTracePreserving(
            "gauge_potential_k2_closed_form: Re Tr r must vanish for a "
            "trace-preserving family");
    }
    const double xx = x.squaredNorm();
    if (std::abs(xx - 1.0) < tol) {
        throw XNormOne(
            "gauge_potential_k2_closed_form: |x| = 1, Gram matrix degenerate");
    }
    const double denom = 1.0 - xx;
    const double a0 = (z0 - x.dot(z)) / denom;
    // x cross (x cross z) = x (x.z) - z |x|^2.
    Eigen::Vector3d avec = (z - z0 * x + x * x.dot(z) - z * xx) / denom;
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = Complex(0, 1) * (a0 + avec(2));
    a(1, 1) = Complex(0, 1) * (a0 - avec(2));
    a(0, 1) = Complex(0, 1) * Complex(avec(0), -avec(1));
    a(1, 0) = Complex(0, 1) * Complex(avec(0), avec(1));
    return a;
}

Matrix smooth_holonomy(const ChannelPath& path, int steps) {
    if (steps < 1) {
        throw ParamOutOfRange("smooth_holonomy: steps must be >= 1");
    }
    Matrix ordered = path_ordered_exponential(
        [&path](double s) { return gauge_potential(path, s).a; }, 0.0, 1.0,
        steps);
    Matrix t01 = overlap(path.rep_at(0.0), path.rep_at(1.0));
    return polar_unitary(t01) * ordered;
}

Complex unitary_family_holonomy(const std::function<Matrix(double)>& h, int dim,
                                int steps, const Matrix& u0) {
    if (!h) throw EmptyPath("unitary_family_holonomy: null Hamiltonian");
    if (dim < 1) {
        throw DimensionMismatch("unitary_family_holonomy: dim must be >= 1");
    }
    if (steps < 1) {
        throw ParamOutOfRange("unitary_family_holonomy: steps must be >= 1");
    }
    Matrix start = u0.size() ? u0 : Matrix(Matrix::Identity(dim, dim));
    if (start.rows() != dim || start.cols() != dim) {
        throw DimensionMismatch("unitary_family_holonomy: u0 shape mismatch");
    }
    if (!is_unitary(start, 1e-9)) {
        throw NotUnitary("unitary_family_holonomy: u0 is not unitary");
    }
    const double ds = 1.0 / steps;
    Matrix u = start;
    double accrued_trace = 0.0;
    for (int i = 0; i < steps; ++i) {
        const Matrix hm = h((i + 0.5) * ds);
        if (hm.rows() != dim || hm.cols() != dim) {
            throw DimensionMismatch(
                "unitary_family_holonomy: Hamiltonian shape mismatch");
        }
        u = evolution_step(hm, ds) * u;
        accrued_trace += hm.trace().real() * ds;
        if ((i + 1) % 64 == 0) {
            u = polar_unitary(u);  // shed accumulated roundoff
        }
    }
    if (unitarity_residual(u) > 1e-9) {
        throw IntegratorFailure(
            "unitary_family_holonomy: unitarity drifted beyond 1e-9");
    }
    const Complex closing = (start.adjoint() * u).trace();
    return polar_phase(closing) *
           std::exp(Complex(0.0, accrued_trace / double(dim)));
}

ChannelSequence sample_path(const ChannelPath& path, int n) {
    if (n < 2) throw EmptyPath("sample_path: need at least two samples");
    ChannelSequence seq;
    seq.reserve(n);
    for (int i = 0; i < n; ++i) {
        seq.push_back(KrausRep{path.dim(), path.ops_at(double(i) / (n - 1))});
    }
    return seq;
}

ChannelPath random_smooth_path(int dim, int kraus_count, std::uint64_t seed,
                               double strength) {
    KrausRep base = random_channel(dim, kraus_count, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const Matrix xg = random_anti_hermitian(dim, strength, rng);
    const Matrix yg = random_anti_hermitian(dim, strength, rng);
    const Matrix zg = random_anti_hermitian(kraus_count, strength, rng);
    auto ops = [base, xg, yg, zg](double s) {
        const Matrix v = unitary_exp(s * xg);
        const Matrix w = unitary_exp(s * yg);
        const Matrix g = unitary_exp(s * zg);
        const int k = base.kraus_number();
        std::vector<Matrix> out(k, Matrix::Zero(base.dim, base.dim));
        for (int kk = 0; kk < k; ++kk) {
            for (int l = 0; l < k; ++l) {
                out[kk] += v * base.ops[l] * w * g(l, kk);
            }
        }
        return out;
    };
    auto derivative = [base, xg, yg, zg](double s) {
        const Matrix v = unitary_exp(s * xg);
        const Matrix w = unitary_exp(s * yg);
        const Matrix g = unitary_exp(s * zg);
        const Matrix zgg = zg * g;
        const int k = base.kraus_number();
        std::vector<Matrix> out(k, Matrix::Zero(base.dim, base.dim));
        for (int kk = 0; kk < k; ++kk) {
            for (int l = 0; l < k; ++l) {
                const Matrix core = v * base.ops[l] * w;
                out[kk] += (xg * core + core * yg) * g(l, kk) + core * zgg(l, kk);
            }
        }
        return out;
    };
    return ChannelPath(dim, kraus_count, std::move(ops), std::move(derivative));
}

namespace {

void want_params(const std::string& name, const std::vector<double>& params,
                 std::size_t n) {
    if (params.size() != n) {
        std::ostringstream os;
        os << "named_path: '" << name << "' takes " << n
           << " parameter(s), got " << params.size();
        throw BadArity(os.str());
    }
}

double checked_ramp(double p0, double p1, double s) {
    const double p = p0 + (p1 - p0) * s;
    return p;
}

void check_open_unit(const std::string& name, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "named_path: '" << name
           << "' needs ramp endpoints strictly inside (0, 1), got " << p;
        throw ParamOutOfRange(os.str());
    }
}

}  // namespace

ChannelPath named_path(const std::string& name,
                       const std::vector<double>& params) {
    if (name == "unitary_z") {
        want_params(name, params, 1);
        const double phi = params[0];
        Matrix sz(2, 2);
        sz << 1, 0, 0, -1;
        auto ops = [phi, sz](double s) {
            return std::vector<Matrix>{evolution_step(sz, s * phi / 2.0)};
        };
        auto derivative = [phi, sz](double s) {
            const Matrix u = evolution_step(sz, s * phi / 2.0);
            return std::vector<Matrix>{Complex(0, -1) * (phi / 2.0) * sz * u};
        };
        return ChannelPath(2, 1, std::move(ops), std::move(derivative));
    }
    if (name == "phase_flip_ramp" || name == "damping_ramp") {
        want_params(name, params, 2);
        const double p0 = params[0];
        const double p1 = params[1];
        check_open_unit(name, p0);
        check_open_unit(name, p1);
        const double rate = p1 - p0;
        const bool flip = name == "phase_flip_ramp";
        auto ops = [p0, p1, flip](double s) {
            const double p = checked_ramp(p0, p1, s);
            if (flip) {
                Matrix e1 = std::sqrt(1.0 - p) * Matrix::Identity(2, 2);
                Matrix e2(2, 2);
                e2 << std::sqrt(p), 0, 0, -std::sqrt(p);
                return std::vector<Matrix>{e1, e2};
            }
            Matrix g0(2, 2), g1(2, 2);
            g0 << 1, 0, 0, std::sqrt(1.0 - p);
            g1 << 0, std::sqrt(p), 0, 0;
            return std::vector<Matrix>{g0, g1};
        };
        auto derivative = [p0, p1, rate, flip](double s) {
            const double p = checked_ramp(p0, p1, s);
            const double dsq1mp = -rate / (2.0 * std::sqrt(1.0 - p));
            const double dsqp = rate / (2.0 * std::sqrt(p));
            if (flip) {
                Matrix e1 = dsq1mp * Matrix::Identity(2, 2);
                Matrix e2(2, 2);
                e2 << dsqp, 0, 0, -dsqp;
                return std::vector<Matrix>{e1, e2};
            }
            Matrix g0(2, 2), g1(2, 2);
            g0 << 0, 0, 0, dsq1mp;
            g1 << 0, dsqp, 0, 0;
            return std::vector<Matrix>{g0, g1};
        };
        return ChannelPath(2, 2, std::move(ops), std::move(derivative));
    }
    if (name == "random_k2") {
        want_params(name, params, 1);
        return random_smooth_path(2, 2,
                                  static_cast<std::uint64_t>(params[0]));
    }
    if (name == "random") {
        want_params(name, params, 3);
        const int d = static_cast<int>(std::lround(params[0]));
        const int k = static_cast<int>(std::lround(params[1]));
        return random_smooth_path(d, k, static_cast<std::uint64_t>(params[2]));
    }
    throw UnknownName("named_path: unknown family '" + name + "'");
}

}  // namespace holo
