#include "holo/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace holo {

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        std::ostringstream os;
        os << who << ": expected a non-empty square matrix, got " << m.rows()
           << "x" << m.cols();
        throw DimensionMismatch(os.str());
    }
}

}  // namespace

PolarFactors polar_decompose(const Matrix& x, double rank_tol, int link_index) {
    require_square(x, "polar_decompose");
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sigma = svd.singularValues();
    const double smax = sigma(0);
    const double smin = sigma(sigma.size() - 1);
    if (smax <= zero_floor) {
        std::ostringstream os;
        os << "polar factor undefined: matrix is numerically zero (largest "
              "singular value "
           << smax << ")";
        if (link_index >= 0) os << " at link " << link_index;
        throw RankDeficient(os.str(), link_index, smin, smax);
    }
    if (smin <= rank_tol * smax) {
        std::ostringstream os;
        os << "polar factor undefined: singular value " << smin
           << " below tolerance " << rank_tol << " * " << smax;
        if (link_index >= 0) os << " at link " << link_index;
        throw RankDeficient(os.str(), link_index, smin, smax);
    }
    PolarFactors out;
    out.unitary = svd.matrixU() * svd.matrixV().adjoint();
    out.positive_part =
        svd.matrixU() * sigma.asDiagonal() * svd.matrixU().adjoint();
    out.singular_values = sigma;
    return out;
}

Matrix polar_unitary(const Matrix& x, double rank_tol, int link_index) {
    return polar_decompose(x, rank_tol, link_index).unitary;
}

Complex polar_phase(Complex z) {
    const double r = std::abs(z);
    if (r <= zero_floor) {
        throw ZeroInput("polar phase of a numerically zero scalar");
    }
    return z / r;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(m.norm(), 1.0);
    return (m - m.adjoint()).norm() <= tol * scale;
}

double unitarity_residual(const Matrix& u) {
    require_square(u, "unitarity_residual");
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

bool is_unitary(const Matrix& u, double tol) {
    return u.rows() == u.cols() && unitarity_residual(u) <= tol;
}

Matrix matrix_sqrt_posdef(const Matrix& m, double tol) {
    require_square(m, "matrix_sqrt_posdef");
    if (!is_hermitian(m, tol)) {
        throw NotHermitian("matrix_sqrt_posdef: input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    RealVector lam = es.eigenvalues();
    const double lmax = std::max(lam.maxCoeff(), 0.0);
    RealVector root(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < -tol * std::max(lmax, 1.0)) {
            std::ostringstream os;
            os << "matrix_sqrt_posdef: eigenvalue " << lam(i)
               << " is negative beyond tolerance";
            throw NegativeEigenvalue(os.str());
        }
        root(i) = std::sqrt(std::max(lam(i), 0.0));
    }
    return es.eigenvectors() * root.asDiagonal() *
           es.eigenvectors().adjoint();
}

int rank_estimate(const Matrix& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const RealVector& sigma = svd.singularValues();
    const double smax = sigma(0);
    if (smax <= zero_floor) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol * smax) ++r;
    }
    return r;
}

Matrix solve_gauge_equation(const Matrix& q, const Matrix& s, double pos_tol,
                            double herm_tol) {
    require_square(q, "solve_gauge_equation");
    if (s.rows() != q.rows() || s.cols() != q.cols()) {
        throw DimensionMismatch(
            "solve_gauge_equation: Q and S must have the same shape");
    }
    if (!is_hermitian(q, herm_tol)) {
        throw NotHermitian("solve_gauge_equation: Q is not Hermitian");
    }
    const double s_scale = std::max(s.norm(), 1.0);
    if ((s + s.adjoint()).norm() > herm_tol * s_scale) {
        throw NotAntiHermitian("solve_gauge_equation: S is not anti-Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(q);
    const RealVector& lam = es.eigenvalues();
    if (lam(0) <= pos_tol) {
        std::ostringstream os;
        os << "solve_gauge_equation: Q eigenvalue " << lam(0)
           << " at or below positivity tolerance " << pos_tol;
        throw NotPositive(os.str());
    }
    const Matrix& v = es.eigenvectors();
    Matrix sp = v.adjoint() * s * v;
    for (Eigen::Index i = 0; i < sp.rows(); ++i) {
        for (Eigen::Index j = 0; j < sp.cols(); ++j) {
            sp(i, j) /= lam(i) + lam(j);
        }
    }
    return v * sp * v.adjoint();
}

namespace {

Matrix checked_unitary_exp(const Matrix& a, const char* who) {
    const double scale = std::max(a.norm(), 1.0);
    if ((a + a.adjoint()).norm() > 1e-8 * scale) {
        std::ostringstream os;
        os << who << ": generator is not anti-Hermitian";
        throw NotAntiHermitian(os.str());
    }
    // exp(a) = exp(-i h) with h = i a Hermitian.
    Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0.0, 1.0) * a);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
    }
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

Matrix unitary_exp(const Matrix& a) {
    require_square(a, "unitary_exp");
    return checked_unitary_exp(a, "unitary_exp");
}

Matrix evolution_step(const Matrix& h, double t) {
    require_square(h, "evolution_step");
    if (!is_hermitian(h, 1e-8)) {
        throw NotHermitian("evolution_step: Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -t * es.eigenvalues()(i)));
    }
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

Matrix path_ordered_exponential(const std::vector<double>& grid,
                                const std::vector<Matrix>& samples) {
    if (grid.size() != samples.size()) {
        throw DimensionMismatch(
            "path_ordered_exponential: grid and sample counts differ");
    }
    if (grid.size() < 2) {
        throw EmptyPath("path_ordered_exponential: need at least two samples");
    }
    const Eigen::Index n = samples.front().rows();
    for (const Matrix& a : samples) {
        if (a.rows() != n || a.cols() != n) {
            throw DimensionMismatch(
                "path_ordered_exponential: samples must share one square shape");
        }
    }
    Matrix result = Matrix::Identity(n, n);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double ds = grid[i + 1] - grid[i];
        if (ds <= 0.0) {
            throw NonMonotoneGrid(
                "path_ordered_exponential: grid must be strictly increasing");
        }
        Matrix abar = 0.5 * (samples[i] + samples[i + 1]);
        result = checked_unitary_exp(abar * ds, "path_ordered_exponential") *
                 result;
    }
    return result;
}

Matrix path_ordered_exponential(const std::function<Matrix(double)>& generator,
                                double s0, double s1, int steps) {
    if (!generator) {
        throw EmptyPath("path_ordered_exponential: null generator");
    }
    if (steps < 1) {
        throw EmptyPath("path_ordered_exponential: need at least one step");
    }
    if (s1 <= s0) {
        throw NonMonotoneGrid("path_ordered_exponential: need s1 > s0");
    }
    const double ds = (s1 - s0) / steps;
    Matrix result;
    for (int i = 0; i < steps; ++i) {
        const double mid = s0 + (i + 0.5) * ds;
        Matrix step =
            checked_unitary_exp(generator(mid) * ds, "path_ordered_exponential");
        result = (i == 0) ? step : Matrix(step * result);
    }
    return result;
}

Matrix haar_unitary(int n, std::mt19937_64& rng) {
    if (n < 1) throw DimensionMismatch("haar_unitary: dimension must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fold the R-diagonal phases into Q so the distribution is exactly Haar.
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

Matrix random_anti_hermitian(int n, double scale, std::mt19937_64& rng) {
    if (n < 1) {
        throw DimensionMismatch("random_anti_hermitian: dimension must be >= 1");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Matrix a = 0.5 * (g - g.adjoint());
    const double nrm = a.norm();
    if (nrm > 0.0) a *= scale / nrm;
    return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace_first(const Matrix& m, int d1, int d2) {
    if (m.rows() != Eigen::Index(d1) * d2 || m.cols() != m.rows()) {
        throw DimensionMismatch("partial_trace_first: shape does not factor");
    }
    Matrix out = Matrix::Zero(d2, d2);
    for (int i = 0; i < d1; ++i) {
        out += m.block(i * d2, i * d2, d2, d2);
    }
    return out;
}

Matrix partial_trace_second(const Matrix& m, int d1, int d2) {
    if (m.rows() != Eigen::Index(d1) * d2 || m.cols() != m.rows()) {
        throw DimensionMismatch("partial_trace_second: shape does not factor");
    }
    Matrix out = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d1; ++j) {
            Complex acc(0.0, 0.0);
            for (int k = 0; k < d2; ++k) {
                acc += m(i * d2 + k, j * d2 + k);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

bool is_density_matrix(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!is_hermitian(m, tol)) return false;
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol * 10) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    return es.eigenvalues()(0) >= -tol * 10;
}

}  // namespace holo
