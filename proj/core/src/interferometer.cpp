#include "holo/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/SVD>

namespace holo {

namespace {

// Index (i, k) on H_q (x) H_a with the system index slow.
inline Eigen::Index qa(int i, int k, int dim_a) {
    return Eigen::Index(i) * dim_a + k;
}

void require_compatible(const Dilation& d0, const Dilation& d1) {
    if (d0.dim_q != d1.dim_q || d0.dim_a != d1.dim_a) {
        throw DimensionMismatch("interferometer: dilations of different shape");
    }
    if ((d0.anc - d1.anc).norm() > 1e-10) {
        throw DimensionMismatch(
            "interferometer: dilations prepared with different ancilla states");
    }
}

Matrix ancilla_projector(const Dilation& d) {
    return kron(Matrix::Identity(d.dim_q, d.dim_q),
                Matrix(d.anc * d.anc.adjoint()));
}

}  // namespace

Dilation dilate(const KrausRep& rep) {
    require_valid(rep);
    const int d = rep.dim;
    const int k = rep.kraus_number();
    const Eigen::Index n = Eigen::Index(d) * k;
    Dilation out;
    out.dim_q = d;
    out.dim_a = k;
    out.anc = Vector::Zero(k);
    out.anc(0) = 1.0;
    out.u = Matrix::Zero(n, n);
    // Input (j, 0) must map to sum_k (E_k |j>) (x) |k>: the isometry block.
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            for (int kk = 0; kk < k; ++kk) {
                out.u(qa(i, kk, k), qa(j, 0, k)) = rep.ops[kk](i, j);
            }
        }
    }
    // Complete the remaining columns by Gram-Schmidt over the standard basis.
    std::vector<Eigen::Index> open_cols;
    for (int j = 0; j < d; ++j) {
        for (int m = 1; m < k; ++m) open_cols.push_back(qa(j, m, k));
    }
    std::vector<Vector> accepted;
    accepted.reserve(d);
    for (int j = 0; j < d; ++j) accepted.push_back(out.u.col(qa(j, 0, k)));
    std::size_t next_slot = 0;
    for (Eigen::Index cand = 0; cand < n && next_slot < open_cols.size();
         ++cand) {
        Vector v = Vector::Zero(n);
        v(cand) = 1.0;
        for (const Vector& b : accepted) v -= b * (b.dot(v));
        const double nrm = v.norm();
        if (nrm < 1e-6) continue;
        v /= nrm;
        accepted.push_back(v);
        out.u.col(open_cols[next_slot++]) = v;
    }
    if (next_slot != open_cols.size()) {
        throw CompletionFailure("dilate: could not complete the isometry");
    }
    if (!is_unitary(out.u, 1e-9)) {
        throw CompletionFailure("dilate: completed matrix is not unitary");
    }
    return out;
}

KrausRep kraus_from_dilation(const Dilation& d) {
    KrausRep rep;
    rep.dim = d.dim_q;
    for (int k = 0; k < d.dim_a; ++k) {
        Matrix e(d.dim_q, d.dim_q);
        for (int i = 0; i < d.dim_q; ++i) {
            for (int j = 0; j < d.dim_q; ++j) {
                Complex acc(0.0, 0.0);
                for (int m = 0; m < d.dim_a; ++m) {
                    acc += d.u(qa(i, k, d.dim_a), qa(j, m, d.dim_a)) * d.anc(m);
                }
                e(i, j) = acc;
            }
        }
        rep.ops.push_back(std::move(e));
    }
    return rep;
}

Matrix apply_dilation(const Dilation& d, const Matrix& rho_q) {
    if (rho_q.rows() != d.dim_q || rho_q.cols() != d.dim_q) {
        throw DimensionMismatch("apply_dilation: state shape mismatch");
    }
    Matrix big = d.u * kron(rho_q, Matrix(d.anc * d.anc.adjoint())) *
                 d.u.adjoint();
    return partial_trace_second(big, d.dim_q, d.dim_a);
}

double detection_probability(const Dilation& d0, const Dilation& d1,
                             const Matrix& v0, const Matrix& v1,
                             const Matrix& rho_q, double agree_tol) {
    require_compatible(d0, d1);
    const int dq = d0.dim_q;
    const int da = d0.dim_a;
    if (v0.rows() != da || v0.cols() != da || v1.rows() != da ||
        v1.cols() != da) {
        throw DimensionMismatch(
            "detection_probability: ancilla unitaries must be dim_a x dim_a");
    }
    if (!is_unitary(v0, 1e-8) || !is_unitary(v1, 1e-8)) {
        throw NotUnitary("detection_probability: ancilla setting not unitary");
    }
    if (!is_density_matrix(rho_q, 1e-8)) {
        throw NotPositive("detection_probability: rho is not a density matrix");
    }

    // Closed form.
    Matrix anc_proj = Matrix(d0.anc * d0.anc.adjoint());
    Matrix cross = d0.u * kron(rho_q, anc_proj) * d1.u.adjoint();
    Matrix m = partial_trace_first(cross, dq, da);
    const double p_closed = 0.5 + 0.5 * (v0 * m * v1.adjoint()).trace().real();

    // Explicit circuit on H_arm (x) H_q (x) H_a.
    const Eigen::Index inner = Eigen::Index(dq) * da;
    Matrix h2(2, 2);
    h2 << 1, 1, 1, -1;
    h2 /= std::sqrt(2.0);
    Matrix p00 = Matrix::Zero(2, 2);
    p00(0, 0) = 1.0;
    Matrix p11 = Matrix::Zero(2, 2);
    p11(1, 1) = 1.0;
    Matrix beam = kron(h2, Matrix::Identity(inner, inner));
    Matrix arms = kron(p00, d0.u) + kron(p11, d1.u);
    Matrix settings = kron(p00, kron(Matrix::Identity(dq, dq), v0)) +
                      kron(p11, kron(Matrix::Identity(dq, dq), v1));
    Matrix circuit = beam * settings * arms * beam;
    Matrix initial = kron(p00, kron(rho_q, anc_proj));
    Matrix final_state = circuit * initial * circuit.adjoint();
    const double p_circuit =
        (kron(p00, Matrix::Identity(inner, inner)) * final_state)
            .trace()
            .real();

    if (std::abs(p_circuit - p_closed) > agree_tol) {
        std::ostringstream os;
        os << "detection_probability: circuit and closed form disagree by "
           << std::abs(p_circuit - p_closed);
        throw IntegratorFailure(os.str());
    }
    return p_circuit;
}

Matrix ancilla_link(const Dilation& d_n, const Dilation& d_next) {
    require_compatible(d_n, d_next);
    Matrix cross = d_n.u * ancilla_projector(d_n) * d_next.u.adjoint();
    return partial_trace_first(cross, d_n.dim_q, d_n.dim_a);
}

Matrix optimal_ancilla_unitary(const Dilation& d0, const Dilation& d1,
                               const Matrix& v0) {
    if (!is_unitary(v0, 1e-8)) {
        throw NotUnitary("optimal_ancilla_unitary: v0 is not unitary");
    }
    return v0 * polar_unitary(ancilla_link(d0, d1) / double(d0.dim_q));
}

Matrix optimal_ancilla_unitary_search(const Dilation& d0, const Dilation& d1,
                                      const Matrix& v0, int trials,
                                      std::uint64_t seed) {
    require_compatible(d0, d1);
    const int da = d0.dim_a;
    const Matrix rho = Matrix::Identity(d0.dim_q, d0.dim_q) / double(d0.dim_q);
    std::mt19937_64 rng(seed);
    Matrix best = v0;
    double best_p = detection_probability(d0, d1, v0, best, rho);
    double step = 1.0;
    for (int t = 0; t < trials; ++t) {
        Matrix cand = best * unitary_exp(random_anti_hermitian(da, step, rng));
        const double p = detection_probability(d0, d1, v0, cand, rho);
        if (p > best_p) {
            best_p = p;
            best = std::move(cand);
        } else {
            step = std::max(step * 0.97, 1e-4);
        }
    }
    return best;
}

Transport operational_parallel_transport(const ChannelSequence& seq) {
    if (seq.size() < 2) {
        throw EmptyPath("operational_parallel_transport: need >= 2 channels");
    }
    Transport tr;
    tr.dilations.reserve(seq.size());
    for (const KrausRep& rep : seq) tr.dilations.push_back(dilate(rep));
    const int da = tr.dilations.front().dim_a;
    const int dq = tr.dilations.front().dim_q;
    const Matrix rho = Matrix::Identity(dq, dq) / double(dq);
    tr.unitaries.push_back(Matrix::Identity(da, da));
    for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
        Matrix link = ancilla_link(tr.dilations[n], tr.dilations[n + 1]) /
                      double(dq);
        Eigen::JacobiSVD<Matrix> svd(link);
        Matrix next = tr.unitaries.back() *
                      polar_unitary(link, default_rank_tol,
                                    static_cast<int>(n + 1));
        TransportStep step;
        step.link = static_cast<int>(n + 1);
        step.singular_values = svd.singularValues();
        step.probability =
            detection_probability(tr.dilations[n], tr.dilations[n + 1],
                                  tr.unitaries.back(), next, rho);
        tr.unitaries.push_back(std::move(next));
        tr.steps.push_back(std::move(step));
    }
    return tr;
}

Gluing final_gluing(const ChannelSequence& seq, double match_tol) {
    Transport tr = operational_parallel_transport(seq);
    const Matrix& u_last = tr.unitaries.back();
    // Closing link of the apparatus: last dilation against the first. Its
    // transpose is the representation overlap of channel 1 vs channel N.
    Matrix closing =
        Matrix(ancilla_link(tr.dilations.back(), tr.dilations.front())
                   .transpose()) /
        double(tr.dilations.front().dim_q);
    Matrix closing_phase =
        polar_unitary(closing, default_rank_tol,
                      static_cast<int>(seq.size()));
    Gluing g;
    g.c = closing_phase * u_last.transpose();
    g.rep_end = gauge_transform(seq.back(), closing_phase.adjoint());
    g.rep_start = seq.front();
    g.match_residual = (g.c - holonomy(seq)).norm();
    if (g.match_residual > match_tol) {
        std::ostringstream os;
        os << "final_gluing: apparatus matrix differs from the holonomy by "
           << g.match_residual;
        throw IntegratorFailure(os.str());
    }
    return g;
}

Matrix apply_gluing(const Gluing& g, const Matrix& sigma) {
    const int d = g.rep_start.dim;
    if (sigma.rows() != 2 * d || sigma.cols() != 2 * d) {
        throw DimensionMismatch("apply_gluing: state must live on 2*dim");
    }
    const int k = g.rep_start.kraus_number();
    if (g.rep_end.kraus_number() != k || g.c.rows() != k || g.c.cols() != k) {
        throw DimensionMismatch("apply_gluing: representation shapes disagree");
    }
    Matrix s00 = sigma.block(0, 0, d, d);
    Matrix s01 = sigma.block(0, d, d, d);
    Matrix s10 = sigma.block(d, 0, d, d);
    Matrix s11 = sigma.block(d, d, d, d);
    Matrix out = Matrix::Zero(2 * d, 2 * d);
    for (int n = 0; n < k; ++n) {
        out.block(0, 0, d, d) +=
            g.rep_end.ops[n] * s00 * g.rep_end.ops[n].adjoint();
        out.block(d, d, d, d) +=
            g.rep_start.ops[n] * s11 * g.rep_start.ops[n].adjoint();
    }
    for (int n = 0; n < k; ++n) {
        for (int m = 0; m < k; ++m) {
            out.block(0, d, d, d) += g.c(n, m) * g.rep_end.ops[n] * s01 *
                                     g.rep_start.ops[m].adjoint();
            out.block(d, 0, d, d) += std::conj(g.c(n, m)) *
                                     g.rep_start.ops[m] * s10 *
                                     g.rep_end.ops[n].adjoint();
        }
    }
    return out;
}

AncillaTransport smooth_ancilla_transport(
    const std::function<Matrix(double)>& ufam, int dim_q, int dim_a, int steps,
    double fd_step) {
    if (!ufam) throw EmptyPath("smooth_ancilla_transport: null family");
    if (steps < 1) {
        throw ParamOutOfRange("smooth_ancilla_transport: steps must be >= 1");
    }
    const Eigen::Index n = Eigen::Index(dim_q) * dim_a;
    Vector anc = Vector::Zero(dim_a);
    anc(0) = 1.0;
    Matrix anc_proj = kron(Matrix::Identity(dim_q, dim_q),
                           Matrix(anc * anc.adjoint()));
    auto udot = [&](double s) {
        Matrix p2 = ufam(s + 2 * fd_step);
        Matrix p1 = ufam(s + fd_step);
        Matrix m1 = ufam(s - fd_step);
        Matrix m2 = ufam(s - 2 * fd_step);
        return Matrix((-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * fd_step));
    };
    auto q_of = [&](const Matrix& u) {
        return partial_trace_first(u * anc_proj * u.adjoint(), dim_q, dim_a);
    };
    auto r_of = [&](const Matrix& u, const Matrix& du) {
        return partial_trace_first(u * anc_proj * du.adjoint(), dim_q, dim_a);
    };
    auto potential = [&](double s) {
        Matrix u = ufam(s);
        if (u.rows() != n || u.cols() != n) {
            throw DimensionMismatch(
                "smooth_ancilla_transport: family shape mismatch");
        }
        Matrix q = q_of(u);
        Matrix r = r_of(u, udot(s));
        return solve_gauge_equation(q, Matrix(r - r.adjoint()));
    };

    AncillaTransport out;
    out.grid.reserve(steps + 1);
    out.unitaries.reserve(steps + 1);
    const double ds = 1.0 / steps;
    Matrix u = Matrix::Identity(dim_a, dim_a);
    out.grid.push_back(0.0);
    out.unitaries.push_back(u);
    for (int i = 0; i < steps; ++i) {
        // Right-multiplied generator: dU/ds = U a.
        u = u * unitary_exp(potential((i + 0.5) * ds) * ds);
        out.grid.push_back((i + 1) * ds);
        out.unitaries.push_back(u);
    }

    // Parallelity of the transported family (1 (x) U(s)) u(s), checked on a
    // thinned grid: its derivative overlap must stay Hermitian.
    const int check_every = std::max(steps / 16, 1);
    for (int i = 0; i <= steps; i += check_every) {
        const double s = out.grid[i];
        Matrix base = ufam(s);
        Matrix du = udot(s);
        Matrix a = potential(s);
        const Matrix& cur = out.unitaries[i];
        Matrix q = q_of(base);
        Matrix r = r_of(base, du);
        // Transported overlap: U (r - q a) U^dag must be Hermitian.
        Matrix rt = cur * (r - q * a) * cur.adjoint();
        out.max_residual =
            std::max(out.max_residual, (rt - rt.adjoint()).norm());
    }
    return out;
}

}  // namespace holo
