#pragma once

// Dense complex linear algebra kernel: polar factors, the gauge-equation
// solver, path-ordered exponentials, and small utilities the rest of the
// library is built on. Everything works on Eigen::MatrixXcd.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "holo/errors.hpp"

namespace holo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Relative singular-value cutoff below which a matrix counts as rank
// deficient for polar purposes.
inline constexpr double default_rank_tol = 1e-10;
// Relative residual below which a matrix counts as (anti-)Hermitian.
inline constexpr double default_herm_tol = 1e-10;
// Absolute scale floor: a matrix (or scalar) with largest singular value
// below this is treated as zero. Overlap matrices of trace-preserving
// channels have O(1) entries, so this only fires on genuine degeneracies.
inline constexpr double zero_floor = 1e-12;

// Left polar decomposition X = positive_part * unitary with
// unitary = Phi(X) = sqrt(X X^dag)^{-1} X and positive_part = sqrt(X X^dag).
struct PolarFactors {
    Matrix unitary;
    Matrix positive_part;
    RealVector singular_values;  // descending
};

// Full polar decomposition via SVD. Throws RankDeficient when the smallest
// singular value is at or below rank_tol times the largest (or the whole
// matrix is numerically zero); link_index is only used to label that error.
PolarFactors polar_decompose(const Matrix& x, double rank_tol = default_rank_tol,
                             int link_index = -1);

// Just the unitary factor Phi(X).
Matrix polar_unitary(const Matrix& x, double rank_tol = default_rank_tol,
                     int link_index = -1);

// Scalar version z/|z|. Throws ZeroInput for |z| <= zero_floor.
Complex polar_phase(Complex z);

// Frobenius-relative Hermiticity test.
bool is_hermitian(const Matrix& m, double tol = default_herm_tol);

// ||U^dag U - I||_F, for unitarity checks.
double unitarity_residual(const Matrix& u);

bool is_unitary(const Matrix& u, double tol = 1e-9);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-tol*lambda_max, 0) are clamped to zero; anything more
// negative throws NegativeEigenvalue.
Matrix matrix_sqrt_posdef(const Matrix& m, double tol = default_herm_tol);

// Number of singular values above tol times the largest.
int rank_estimate(const Matrix& m, double tol = default_rank_tol);

// Solves A Q + Q A = S for anti-Hermitian A, with Q Hermitian positive
// definite and S anti-Hermitian. Unique solution, computed entrywise in the
// eigenbasis of Q: A'_{ij} = S'_{ij} / (q_i + q_j). Throws NotPositive when
// Q has an eigenvalue at or below pos_tol, NotHermitian / NotAntiHermitian
// on malformed input.
Matrix solve_gauge_equation(const Matrix& q, const Matrix& s,
                            double pos_tol = 1e-12,
                            double herm_tol = 1e-8);

// Ordered product of single-step exponentials for a sampled generator:
// given samples A_i at strictly increasing grid points s_i, returns
//   exp(Abar_{n-1} ds_{n-1}) * ... * exp(Abar_0 ds_0),
// later steps multiplying on the left, with Abar_i the average of the two
// endpoint samples of step i (midpoint rule, second order). Samples must be
// anti-Hermitian so each step stays exactly unitary.
Matrix path_ordered_exponential(const std::vector<double>& grid,
                                const std::vector<Matrix>& samples);

// Same integrator driven by a callable generator evaluated at true step
// midpoints, on the uniform n-step grid over [s0, s1].
Matrix path_ordered_exponential(const std::function<Matrix(double)>& generator,
                                double s0, double s1, int steps);

// exp(A) for anti-Hermitian A through the eigendecomposition of iA; exactly
// unitary up to eigensolver roundoff.
Matrix unitary_exp(const Matrix& a);

// exp(-i t H) for Hermitian H, same route.
Matrix evolution_step(const Matrix& h, double t);

// Haar-distributed n x n unitary: QR of a complex Gaussian matrix with the
// R-diagonal phases folded into Q.
Matrix haar_unitary(int n, std::mt19937_64& rng);

// Gaussian anti-Hermitian matrix of Frobenius scale ~ scale, for building
// random smooth families.
Matrix random_anti_hermitian(int n, double scale, std::mt19937_64& rng);

// Kronecker product, row-major convention: (A kron B)[(i,k),(j,l)] = A_ij B_kl.
Matrix kron(const Matrix& a, const Matrix& b);

// Partial traces on a bipartite space of dimensions d1 x d2 (first factor
// has the slow index). trace_first returns the d2 x d2 reduction, trace_second
// the d1 x d1 one.
Matrix partial_trace_first(const Matrix& m, int d1, int d2);
Matrix partial_trace_second(const Matrix& m, int d1, int d2);

// Hermitian / positive / trace-one check for density matrices.
bool is_density_matrix(const Matrix& m, double tol = 1e-10);

}  // namespace holo
