#pragma once

// Smooth one-parameter families of channels on s in [0, 1]: the Gram and
// derivative-overlap matrices, the parallel-transport test, the gauge
// potential (solved from the Gram equation, plus the qubit closed form), and
// the holonomy of the continuous family as an endpoint polar factor times a
// path-ordered exponential.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holo/sequence.hpp"

namespace holo {

// A differentiable family of Kraus representations. Caller supplies the
// operator list as a function of s (and optionally its analytic derivative;
// otherwise a 4th-order central difference with step fd_step is used, which
// evaluates the family slightly outside [0, 1], so callables must tolerate
// s in [-2 fd_step, 1 + 2 fd_step]). The representation map itself must be
// smooth: re-extracting operators from the channel state per s would scramble
// the gauge and is deliberately not offered here.
class ChannelPath {
  public:
    using OpsFn = std::function<std::vector<Matrix>(double)>;

    ChannelPath(int dim, int kraus_count, OpsFn ops, OpsFn derivative = {},
                double fd_step = 1e-5);

    int dim() const { return dim_; }
    int kraus_count() const { return kraus_; }
    bool has_analytic_derivative() const { return bool(derivative_); }

    std::vector<Matrix> ops_at(double s) const;
    KrausRep rep_at(double s) const;
    std::vector<Matrix> derivative_at(double s) const;

  private:
    int dim_;
    int kraus_;
    OpsFn ops_;
    OpsFn derivative_;
    double fd_step_;
};

// Gram matrix q(k,l) = Tr(E_k^dag E_l) and derivative overlap
// r(k,l) = Tr(dE_k/ds^dag E_l) at parameter s.
struct PathOverlaps {
    Matrix q;
    Matrix r;
};

PathOverlaps qr_matrices(const ChannelPath& path, double s);

// The family is parallel transported when r(s) is Hermitian; checked on the
// given grid against tol (relative to the scale of r).
bool is_parallel_transported(const ChannelPath& path,
                             const std::vector<double>& grid,
                             double tol = 1e-8);

// Gauge potential sample at s: the unique anti-Hermitian a with
// a q + q a = r - r^dag.
struct GaugePotentialSample {
    double s = 0.0;
    Matrix q;
    Matrix r;
    Matrix a;
};

GaugePotentialSample gauge_potential(const ChannelPath& path, double s);

// Closed form of the gauge potential for qubit families with two Kraus
// operators, written in Pauli coordinates of q = I + x.sigma and
// r = i z0 I + (y + i z).sigma. Throws XNormOne when |x| is numerically 1
// (the Gram matrix degenerates there).
Matrix gauge_potential_k2_closed_form(const Matrix& q, const Matrix& r,
                                      double tol = 1e-8);

// Holonomy of the smooth family: polar factor of the end-to-start overlap
// times the path-ordered exponential of the gauge potential (midpoint
// product rule on a uniform grid, later factors left).
Matrix smooth_holonomy(const ChannelPath& path, int steps = 1024);

// Holonomy of a family of unitary channels generated by a Hermitian
// Hamiltonian h(s) (i dU/ds = h U, U(0) = u0, defaulting to the identity):
// the polar phase of Tr(U(0)^dag U(1)) times exp((i/dim) int_0^1 Tr h ds).
// Midpoint exponential integrator with re-unitarization every 64 steps;
// throws IntegratorFailure if unitarity drifts beyond 1e-9.
Complex unitary_family_holonomy(const std::function<Matrix(double)>& h, int dim,
                                int steps = 4096, const Matrix& u0 = Matrix());

// Uniform n-point discretization of the family, s_i = i/(n-1); feeding the
// result to holonomy() converges to smooth_holonomy() at first order in 1/n.
ChannelSequence sample_path(const ChannelPath& path, int n);

// Smooth random family with analytic derivatives: a fixed random channel
// conjugated by two one-parameter unitary groups and mixed by a Kraus-index
// rotation, all generated from seed. Trace preserving and of constant Kraus
// number for every s.
ChannelPath random_smooth_path(int dim, int kraus_count, std::uint64_t seed,
                               double strength = 0.6);

// Registry of named analytic families:
//   unitary_z [phi]            one-operator family exp(-i s phi sigma_z / 2)
//   phase_flip_ramp [p0, p1]   phase flip with p(s) = p0 + (p1 - p0) s
//   damping_ramp [p0, p1]      amplitude damping along the same ramp
//   random_k2 [seed]           qubit two-operator random smooth family
//   random [dim, k, seed]      general random smooth family
ChannelPath named_path(const std::string& name,
                       const std::vector<double>& params);

}  // namespace holo
