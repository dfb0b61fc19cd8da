// spectral.hpp - dense symmetric eigendecomposition with deterministic
// degenerate-block bases, spectral projections, operator norms of
// rectangular blocks, and numerical verifiers for the resolvent and
// projection decay bounds of short-range operators.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xxz/clusters.hpp"
#include "xxz/hamiltonian.hpp"

namespace xxz::spectral {

using hamiltonian::Anisotropy;
using hamiltonian::SectorOperator;

// Largest singular value via power iteration on B^H B (tol 1e-12, at most
// 10^4 iterations). The start vector is fixed, so results are reproducible.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& block) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index rows = block.rows(), cols = block.cols();
    if (rows == 0 || cols == 0) return 0.0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(cols);
    for (Eigen::Index i = 0; i < cols; ++i)
        v(i) = Scalar(1.0 + 0.001 * static_cast<double>((i * 2654435761ULL) % 997));
    v /= v.norm();
    double est = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = block.derived() * v;
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = block.derived().adjoint() * w;
        double nv = v.norm();  // converges to sigma_max^2
        if (nv == 0.0) return nw;
        v /= nv;
        double next = std::sqrt(nv);
        if (std::abs(next - est) <= 1e-12 * std::max(1.0, next)) return next;
        est = next;
    }
    return est;
}

struct SpectralData {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns

    std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

namespace detail {

// Replace the eigenvector columns of each (numerically) degenerate block by
// the deterministic orthonormal basis obtained from projecting the standard
// basis vectors, in index order, onto the block span.
inline void canonicalize_degenerate_blocks(SpectralData& sd, double scale) {
    const Eigen::Index n = sd.eigenvalues.size();
    const double tol = 1e-10 * std::max(1.0, scale);
    Eigen::Index b = 0;
    while (b < n) {
        Eigen::Index e = b + 1;
        while (e < n && sd.eigenvalues(e) - sd.eigenvalues(e - 1) <= tol) ++e;
        const Eigen::Index m = e - b;
        if (m > 1) {
            Eigen::MatrixXd block = sd.eigenvectors.middleCols(b, m);
            Eigen::MatrixXd basis(n, m);
            Eigen::Index got = 0;
            for (Eigen::Index j = 0; j < n && got < m; ++j) {
                Eigen::VectorXd w = block * (block.row(j).transpose());
                for (int pass = 0; pass < 2; ++pass)
                    for (Eigen::Index t = 0; t < got; ++t)
                        w -= basis.col(t).dot(w) * basis.col(t);
                double nw = w.norm();
                if (nw > 1e-6) basis.col(got++) = w / nw;
            }
            if (got == m) sd.eigenvectors.middleCols(b, m) = basis;
        }
        b = e;
    }
}

inline std::vector<Eigen::Index> gather(const std::vector<std::size_t>& idx) {
    return std::vector<Eigen::Index>(idx.begin(), idx.end());
}

}  // namespace detail

inline SpectralData eigendecompose(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigendecompose: matrix not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("eigendecompose: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");
    SpectralData sd{solver.eigenvalues(), solver.eigenvectors()};
    detail::canonicalize_degenerate_blocks(sd, h.norm());
    return sd;
}

inline SpectralData eigendecompose(const SectorOperator& op) { return eigendecompose(op.matrix); }

inline Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues_only: solver failed");
    return solver.eigenvalues();
}

// Orthogonal projection onto the eigenspaces with eigenvalue in [a,b].
inline Eigen::MatrixXd spectral_projection(const SpectralData& sd, double a, double b) {
    if (a > b) throw std::invalid_argument("spectral_projection: need a <= b");
    const Eigen::Index n = sd.eigenvalues.size();
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (sd.eigenvalues(i) >= a && sd.eigenvalues(i) <= b)
            q.noalias() += sd.eigenvectors.col(i) * sd.eigenvectors.col(i).transpose();
    return q;
}

// Decomposition H = -g A + W of a short-range operator, together with the
// carrier-graph distances used in the decay rates.
struct HoppingDecomposition {
    Eigen::MatrixXd hopping;     // A, entry-wise non-negative, range s_max
    Eigen::VectorXd potential;   // W, strictly positive
    double g = 0.0;
    double c = 0.0;              // relative form bound -cW <= A <= cW
    int s_max = 1;
    Eigen::MatrixXi distances;   // pairwise vertex distances

    Eigen::MatrixXd assemble() const {
        Eigen::MatrixXd h = -g * hopping;
        h.diagonal() += potential;
        return h;
    }
};

// XXZ sector viewed as -g A + W: A is the 0/1 product adjacency, W the full
// diagonal (degree, boundary and field terms), g = 1/(2 Delta), c = 2.
inline HoppingDecomposition decompose_sector(const SectorOperator& op) {
    const Eigen::Index dim = static_cast<Eigen::Index>(op.dim());
    HoppingDecomposition d;
    d.g = 0.5 * op.params.delta.inverse();
    d.c = 2.0;
    d.s_max = 1;
    d.hopping = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (int j : op.product.adjacency[i]) d.hopping(i, j) = 1.0;
    d.potential = op.matrix.diagonal();
    d.distances = Eigen::MatrixXi::Zero(dim, dim);
    // BFS from every vertex of the product graph
    for (Eigen::Index s = 0; s < dim; ++s) {
        std::vector<int> dist(dim, -1);
        std::vector<int> queue{static_cast<int>(s)};
        dist[s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int w : op.product.adjacency[u])
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
        }
        for (Eigen::Index t = 0; t < dim; ++t) d.distances(s, t) = dist[t];
    }
    return d;
}

struct CTParameters {
    double g = 0.0;
    double c = 0.0;
    int s_max = 1;
    double w0 = 0.0;
    double kappa_z = 0.0;
    double eta_z = 0.0;
};

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    int distance = 0;
    bool pass = false;
    bool preconditions_ok = true;
    std::vector<std::string> violations;
    CTParameters ct;
};

inline int set_distance(const Eigen::MatrixXi& dist, const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b) {
    int best = std::numeric_limits<int>::max();
    for (std::size_t i : a)
        for (std::size_t j : b) best = std::min(best, dist(i, j));
    return best;
}

namespace detail {

template <typename Mat>
Mat submatrix(const Mat& m, const std::vector<std::size_t>& rows,
              const std::vector<std::size_t>& cols) {
    Mat out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

}  // namespace detail

// Resolvent decay for H = -g A + W at z off the spectrum. kappa_z is taken
// as the reciprocal of the measured norm of W^{1/2} (H-z)^{-1} W^{1/2},
// the tightest admissible choice.
inline BoundCheck verify_resolvent_decay(const HoppingDecomposition& d, double z,
                                         const std::vector<std::size_t>& a_set,
                                         const std::vector<std::size_t>& b_set,
                                         double slack = 1e-9) {
    BoundCheck out;
    const double w0 = d.potential.minCoeff();
    if (!(w0 > 0.0)) {
        out.violations.push_back("W not strictly positive");
        out.preconditions_ok = false;
        return out;
    }
    Eigen::MatrixXd h = d.assemble();
    // reject z too close to the spectrum
    Eigen::VectorXd evs = eigenvalues_only(h);
    double dmin = std::numeric_limits<double>::max(), dmax = 0.0;
    for (Eigen::Index i = 0; i < evs.size(); ++i) {
        dmin = std::min(dmin, std::abs(evs(i) - z));
        dmax = std::max(dmax, std::abs(evs(i) - z));
    }
    if (dmin == 0.0 || dmax / dmin > 1e12)
        throw std::invalid_argument("verify_resolvent_decay: z too close to the spectrum");
    // relative form bound -cW <= A <= cW
    Eigen::MatrixXd cw = (d.c * d.potential).asDiagonal();
    double lo1 = eigenvalues_only(cw + d.hopping).minCoeff();
    double lo2 = eigenvalues_only(cw - d.hopping).minCoeff();
    if (lo1 < -1e-9 || lo2 < -1e-9) {
        out.violations.push_back("relative form bound -cW <= A <= cW fails");
        out.preconditions_ok = false;
    }
    Eigen::MatrixXd shifted = h;
    shifted.diagonal().array() -= z;
    Eigen::MatrixXd resolvent = shifted.partialPivLu().inverse();
    Eigen::VectorXd wsqrt = d.potential.cwiseSqrt();
    Eigen::MatrixXd weighted = wsqrt.asDiagonal() * resolvent * wsqrt.asDiagonal();
    const double kappa = 1.0 / operator_norm(weighted);
    out.ct = CTParameters{d.g, d.c, d.s_max, w0, kappa,
                          (1.0 / d.s_max) * std::log1p(kappa / (2.0 * d.g * d.c))};
    out.distance = set_distance(d.distances, a_set, b_set);
    out.lhs = operator_norm(detail::submatrix(resolvent, a_set, b_set));
    out.rhs = 2.0 / (w0 * kappa) * std::exp(-out.ct.eta_z * out.distance);
    out.pass = out.preconditions_ok && out.lhs <= out.rhs + slack;
    return out;
}

// Decay of the resolvent of the compression onto {W > K_cut}, at energies
// E below (1-cg)(K_cut - delta') and any imaginary offset eps.
inline BoundCheck verify_projected_resolvent_decay(const HoppingDecomposition& d, double energy,
                                                   double eps, double k_cut, double delta_prime,
                                                   const std::vector<std::size_t>& a_set,
                                                   const std::vector<std::size_t>& b_set,
                                                   double slack = 1e-9) {
    BoundCheck out;
    const double w0 = d.potential.minCoeff();
    const double cg = d.c * d.g;
    if (!(d.g < 1.0 / d.c)) {
        out.violations.push_back("need g < 1/c");
    }
    if (!(w0 < k_cut - delta_prime)) {
        out.violations.push_back("need W0 < K - delta'");
    }
    if (!(energy <= (1.0 - cg) * (k_cut - delta_prime) + 1e-12)) {
        out.violations.push_back("need E <= (1-cg)(K-delta')");
    }
    std::vector<std::size_t> cut;
    for (Eigen::Index i = 0; i < d.potential.size(); ++i)
        if (d.potential(i) > k_cut) cut.push_back(static_cast<std::size_t>(i));
    auto inside = [&](const std::vector<std::size_t>& s) {
        return std::all_of(s.begin(), s.end(), [&](std::size_t i) {
            return std::binary_search(cut.begin(), cut.end(), i);
        });
    };
    if (!inside(a_set) || !inside(b_set)) {
        out.violations.push_back("A,B must lie in the cut {W > K}");
    }
    if (!out.violations.empty()) {
        out.preconditions_ok = false;
        return out;
    }
    Eigen::MatrixXd h = d.assemble();
    Eigen::MatrixXcd hbar = detail::submatrix(h, cut, cut).cast<std::complex<double>>();
    hbar.diagonal().array() -= std::complex<double>(energy, eps);
    Eigen::MatrixXcd inv = hbar.partialPivLu().inverse();
    std::vector<std::size_t> a_local, b_local;
    auto local_index = [&](std::size_t global) {
        return static_cast<std::size_t>(
            std::lower_bound(cut.begin(), cut.end(), global) - cut.begin());
    };
    for (std::size_t i : a_set) a_local.push_back(local_index(i));
    for (std::size_t i : b_set) b_local.push_back(local_index(i));
    out.distance = set_distance(d.distances, a_set, b_set);
    out.lhs = operator_norm(detail::submatrix(inv, a_local, b_local));
    const double cconst = 4.0 / (delta_prime * (1.0 - cg));
    const double eta =
        (1.0 / d.s_max) * std::log1p(delta_prime * (1.0 - cg) / (4.0 * k_cut * d.c * d.g));
    out.ct = CTParameters{d.g, d.c, d.s_max, w0, 0.0, eta};
    out.rhs = cconst * std::exp(-eta * out.distance);
    out.pass = out.lhs <= out.rhs + slack;
    return out;
}

// Smallest full-graph surface measure over the sector's configurations;
// under the droplet assumption this is the graph-wide isoperimetric value.
inline int sector_min_degree(const SectorOperator& op) {
    if (op.product.base.parent.is_line_host) return 2;
    int dmin = std::numeric_limits<int>::max();
    for (int deg : op.product.degree_full) dmin = std::min(dmin, deg);
    return dmin;
}

// Resolvent decay of the degree compression of an XXZ sector; vertex sets
// live in {D >= D_min + k} and distances are symmetric-product distances.
inline BoundCheck verify_sector_resolvent_decay(const SectorOperator& op, int k, double delta,
                                                double energy, double eps,
                                                const std::vector<std::size_t>& a_set,
                                                const std::vector<std::size_t>& b_set,
                                                double slack = 1e-9) {
    BoundCheck out;
    const int d_min = sector_min_degree(op);
    const double e_cut = hamiltonian::sector_cut_energy(d_min, k, op.params.delta);
    if (!(delta > 0.0)) out.violations.push_back("need delta > 0");
    if (!(energy <= e_cut - delta + 1e-15))
        out.violations.push_back("need E <= E_{N,k} - delta");
    std::vector<std::size_t> cut;
    for (std::size_t i = 0; i < op.dim(); ++i)
        if (op.product.degree_full[i] >= d_min + k) cut.push_back(i);
    auto inside = [&](const std::vector<std::size_t>& s) {
        return std::all_of(s.begin(), s.end(), [&](std::size_t i) {
            return std::binary_search(cut.begin(), cut.end(), i);
        });
    };
    if (!inside(a_set) || !inside(b_set))
        out.violations.push_back("A,B must lie in the degree cut");
    if (!out.violations.empty()) {
        out.preconditions_ok = false;
        return out;
    }
    Eigen::MatrixXcd hbar =
        detail::submatrix(op.matrix, cut, cut).cast<std::complex<double>>();
    hbar.diagonal().array() -= std::complex<double>(energy, eps);
    Eigen::MatrixXcd inv = hbar.partialPivLu().inverse();
    auto local_index = [&](std::size_t global) {
        return static_cast<std::size_t>(
            std::lower_bound(cut.begin(), cut.end(), global) - cut.begin());
    };
    std::vector<std::size_t> a_local, b_local;
    for (std::size_t i : a_set) a_local.push_back(local_index(i));
    for (std::size_t i : b_set) b_local.push_back(local_index(i));
    out.lhs = operator_norm(detail::submatrix(inv, a_local, b_local));
    int dist = std::numeric_limits<int>::max();
    for (std::size_t i : a_set)
        for (std::size_t j : b_set)
            dist = std::min(dist, graphs::config_distance(op.product.configs[i],
                                                          op.product.configs[j],
                                                          op.product.base.parent));
    out.distance = dist;
    const double inv_delta_aniso = op.params.delta.inverse();
    double mu;
    if (inv_delta_aniso == 0.0) {
        mu = std::numeric_limits<double>::infinity();
    } else {
        mu = std::log1p(delta / (inv_delta_aniso * 2.0 * (d_min + k)));
    }
    out.rhs = (4.0 / delta) * ((dist == 0) ? 1.0 : std::exp(-mu * dist));
    out.ct.eta_z = mu;
    out.pass = out.lhs <= out.rhs + slack;
    return out;
}

// Chain form of the projection decay bound: the spectral projection onto
// energies below the (K+1)-cluster break-up, cut down to configurations
// with more than K clusters, decays in the distance to the K-cluster set.
struct ProjectionDecayConstants {
    double c3 = 0.0;
    double mu3 = 0.0;
};

inline ProjectionDecayConstants projection_decay_constants(int big_k, double delta,
                                                           const Anisotropy& aniso) {
    ProjectionDecayConstants c;
    c.c3 = 3.0 * std::sqrt(10.0) * std::pow(big_k + 1.0, 1.5) /
           std::min(1.0, std::pow(delta, 1.5));
    const double inv = aniso.inverse();
    c.mu3 = (inv == 0.0) ? std::numeric_limits<double>::infinity()
                         : 0.5 * std::log1p(delta / (4.0 * (big_k + 1.0) * inv));
    return c;
}

inline BoundCheck verify_projection_decay(const SectorOperator& op, const SpectralData& sd,
                                          int big_k, double delta,
                                          const std::vector<std::size_t>& a_set,
                                          double slack = 1e-9) {
    BoundCheck out;
    if (!(delta > 0.0)) {
        out.violations.push_back("need delta > 0");
        out.preconditions_ok = false;
        return out;
    }
    for (std::size_t i : a_set)
        if (clusters::cluster_count(op.product.configs[i]) <= big_k) {
            out.violations.push_back("A must contain only configurations with cl > K");
            out.preconditions_ok = false;
            return out;
        }
    const double emax =
        hamiltonian::threshold_energy(big_k + 1, op.params.delta) - delta;
    Eigen::MatrixXd q = spectral_projection(sd, -1e-12, emax);
    Eigen::MatrixXd rows(a_set.size(), q.cols());
    for (std::size_t i = 0; i < a_set.size(); ++i) rows.row(i) = q.row(a_set[i]);
    out.lhs = operator_norm(rows);
    int dist = std::numeric_limits<int>::max();
    for (std::size_t i : a_set)
        dist = std::min(dist,
                        clusters::distance_to_at_most_k(op.product.configs[i], big_k).distance);
    out.distance = dist;
    auto c = projection_decay_constants(big_k, delta, op.params.delta);
    out.rhs = c.c3 * ((dist == 0) ? 1.0 : std::exp(-c.mu3 * dist));
    out.pass = out.lhs <= out.rhs + slack;
    return out;
}

inline BoundCheck verify_projection_decay(const SectorOperator& op, int big_k, double delta,
                                          const std::vector<std::size_t>& a_set,
                                          double slack = 1e-9) {
    SpectralData sd = eigendecompose(op);
    return verify_projection_decay(op, sd, big_k, delta, a_set, slack);
}

// ---- batch sweeps over all singleton pairs ----------------------------------
//
// One matrix inversion (or one projection) serves every pair; results are
// aggregated per distance with the worst left side, which is equivalent to
// checking each pair.

struct SweepRow {
    int distance = 0;
    double lhs_max = 0.0;
    double rhs = 0.0;
    std::size_t pairs = 0;
    bool pass = true;
};

namespace detail {

inline std::vector<SweepRow> aggregate(const std::vector<std::pair<int, double>>& samples,
                                       const std::function<double(int)>& rhs_at,
                                       double slack) {
    std::map<int, SweepRow> rows;
    for (auto [dist, lhs] : samples) {
        SweepRow& row = rows[dist];
        row.distance = dist;
        row.lhs_max = std::max(row.lhs_max, lhs);
        ++row.pairs;
    }
    std::vector<SweepRow> out;
    for (auto& [dist, row] : rows) {
        row.rhs = rhs_at(dist);
        row.pass = row.lhs_max <= row.rhs + slack;
        out.push_back(row);
    }
    return out;
}

}  // namespace detail

// All singleton pairs of the degree cut of one sector at fixed (k, delta,
// E, eps).
inline std::vector<SweepRow> sweep_sector_resolvent_decay(const SectorOperator& op, int k,
                                                          double delta, double energy,
                                                          double eps, double slack = 1e-9) {
    const int d_min = sector_min_degree(op);
    const double e_cut = hamiltonian::sector_cut_energy(d_min, k, op.params.delta);
    if (!(delta > 0.0) || energy > e_cut - delta + 1e-15)
        throw std::invalid_argument("sweep_sector_resolvent_decay: need E <= E_{N,k} - delta");
    std::vector<std::size_t> cut;
    for (std::size_t i = 0; i < op.dim(); ++i)
        if (op.product.degree_full[i] >= d_min + k) cut.push_back(i);
    if (cut.empty()) return {};
    Eigen::MatrixXcd hbar = detail::submatrix(op.matrix, cut, cut).cast<std::complex<double>>();
    hbar.diagonal().array() -= std::complex<double>(energy, eps);
    Eigen::MatrixXcd inv = hbar.partialPivLu().inverse();
    std::vector<std::pair<int, double>> samples;
    samples.reserve(cut.size() * cut.size());
    for (std::size_t a = 0; a < cut.size(); ++a)
        for (std::size_t b = 0; b < cut.size(); ++b) {
            int dist = graphs::config_distance(op.product.configs[cut[a]],
                                               op.product.configs[cut[b]],
                                               op.product.base.parent);
            samples.emplace_back(dist, std::abs(inv(a, b)));
        }
    const double inv_aniso = op.params.delta.inverse();
    const double mu = (inv_aniso == 0.0)
                          ? std::numeric_limits<double>::infinity()
                          : std::log1p(delta / (inv_aniso * 2.0 * (d_min + k)));
    return detail::aggregate(
        samples,
        [&](int dist) { return (4.0 / delta) * ((dist == 0) ? 1.0 : std::exp(-mu * dist)); },
        slack);
}

// All singleton pairs of a hopping decomposition at one z (resolvent decay).
inline std::vector<SweepRow> sweep_resolvent_decay(const HoppingDecomposition& d, double z,
                                                   double slack = 1e-9) {
    BoundCheck probe = verify_resolvent_decay(d, z, {0}, {0}, slack);
    if (!probe.preconditions_ok)
        throw std::invalid_argument("sweep_resolvent_decay: preconditions fail");
    Eigen::MatrixXd h = d.assemble();
    h.diagonal().array() -= z;
    Eigen::MatrixXd resolvent = h.partialPivLu().inverse();
    const double w0 = d.potential.minCoeff();
    std::vector<std::pair<int, double>> samples;
    for (Eigen::Index a = 0; a < resolvent.rows(); ++a)
        for (Eigen::Index b = 0; b < resolvent.cols(); ++b)
            samples.emplace_back(d.distances(a, b), std::abs(resolvent(a, b)));
    return detail::aggregate(
        samples,
        [&](int dist) {
            return 2.0 / (w0 * probe.ct.kappa_z) * std::exp(-probe.ct.eta_z * dist);
        },
        slack);
}

// All singleton pairs of the potential cut {W > K_cut}.
inline std::vector<SweepRow> sweep_projected_resolvent_decay(const HoppingDecomposition& d,
                                                             double energy, double eps,
                                                             double k_cut, double delta_prime,
                                                             double slack = 1e-9) {
    const double cg = d.c * d.g;
    if (!(d.g < 1.0 / d.c) || !(d.potential.minCoeff() < k_cut - delta_prime) ||
        !(energy <= (1.0 - cg) * (k_cut - delta_prime) + 1e-12))
        throw std::invalid_argument("sweep_projected_resolvent_decay: preconditions fail");
    std::vector<std::size_t> cut;
    for (Eigen::Index i = 0; i < d.potential.size(); ++i)
        if (d.potential(i) > k_cut) cut.push_back(static_cast<std::size_t>(i));
    if (cut.empty()) return {};
    Eigen::MatrixXd h = d.assemble();
    Eigen::MatrixXcd hbar = detail::submatrix(h, cut, cut).cast<std::complex<double>>();
    hbar.diagonal().array() -= std::complex<double>(energy, eps);
    Eigen::MatrixXcd inv = hbar.partialPivLu().inverse();
    std::vector<std::pair<int, double>> samples;
    for (std::size_t a = 0; a < cut.size(); ++a)
        for (std::size_t b = 0; b < cut.size(); ++b)
            samples.emplace_back(d.distances(cut[a], cut[b]), std::abs(inv(a, b)));
    const double cconst = 4.0 / (delta_prime * (1.0 - cg));
    const double eta =
        (1.0 / d.s_max) * std::log1p(delta_prime * (1.0 - cg) / (4.0 * k_cut * d.c * d.g));
    return detail::aggregate(
        samples, [&](int dist) { return cconst * std::exp(-eta * dist); }, slack);
}

// All singletons with more than K clusters against the spectral projection
// below the (K+1) break-up.
inline std::vector<SweepRow> sweep_projection_decay(const SectorOperator& op,
                                                    const SpectralData& sd, int big_k,
                                                    double delta, double slack = 1e-9) {
    if (!(delta > 0.0)) throw std::invalid_argument("sweep_projection_decay: need delta > 0");
    const double emax = hamiltonian::threshold_energy(big_k + 1, op.params.delta) - delta;
    Eigen::MatrixXd q = spectral_projection(sd, -1e-12, emax);
    auto c = projection_decay_constants(big_k, delta, op.params.delta);
    std::vector<std::pair<int, double>> samples;
    for (std::size_t i = 0; i < op.dim(); ++i) {
        if (clusters::cluster_count(op.product.configs[i]) <= big_k) continue;
        int dist = clusters::distance_to_at_most_k(op.product.configs[i], big_k).distance;
        samples.emplace_back(dist, q.row(i).norm());
    }
    return detail::aggregate(
        samples,
        [&](int dist) { return c.c3 * ((dist == 0) ? 1.0 : std::exp(-c.mu3 * dist)); }, slack);
}

}  // namespace xxz::spectral
