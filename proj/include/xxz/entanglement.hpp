// entanglement.hpp - bipartite reduced states of chain states, von Neumann
// and Renyi entropies, the boundary/interior state split, window-state
// sampling, and closed-form evaluation of the Renyi trace and entropy
// bounds for states below a cluster break-up threshold.
//
// Chain configurations are carried as bit masks: site j in [1,L] is bit
// j-1, so a mask splits as Y | (Z << ell) across the cut [1,ell]|[ell+1,L].
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "xxz/clusters.hpp"
#include "xxz/hamiltonian.hpp"
#include "xxz/rng.hpp"
#include "xxz/spectral.hpp"

namespace xxz::entanglement {

using cplx = std::complex<double>;
using graphs::Configuration;
using hamiltonian::Anisotropy;

inline std::uint64_t mask_from_config(const Configuration& x) {
    std::uint64_t m = 0;
    for (int s : x) {
        if (s < 1 || s > 64) throw std::invalid_argument("mask_from_config: site out of [1,64]");
        m |= (std::uint64_t{1} << (s - 1));
    }
    return m;
}

inline Configuration config_from_mask(std::uint64_t m) {
    Configuration x;
    while (m) {
        int b = std::countr_zero(m);
        x.push_back(b + 1);
        m &= m - 1;
    }
    return x;
}

inline int cluster_count_mask(std::uint64_t m) {
    return std::popcount(m & ~(m >> 1));
}

// Unit-norm amplitude vector supported on configurations of a fixed
// particle number, sorted by mask.
struct NSectorState {
    int n = 0;
    std::vector<std::pair<std::uint64_t, cplx>> amp;

    double norm() const {
        double s = 0.0;
        for (const auto& [m, c] : amp) s += std::norm(c);
        return std::sqrt(s);
    }
};

// Normalized superposition across particle sectors: sum_N a_N psi_N with
// unit-norm psi_N and sum |a_N|^2 = 1.
struct MixedSectorState {
    int sites = 0;  // L
    struct Component {
        double weight = 0.0;
        NSectorState state;
    };
    std::vector<Component> components;

    double weight_norm2() const {
        double s = 0.0;
        for (const auto& c : components) s += c.weight * c.weight;
        return s;
    }

    // merged a_N * amplitudes, sorted by mask (== sorted by (Z,Y))
    std::vector<std::pair<std::uint64_t, cplx>> flatten() const {
        std::vector<std::pair<std::uint64_t, cplx>> flat;
        for (const auto& c : components)
            for (const auto& [m, a] : c.state.amp) flat.emplace_back(m, c.weight * a);
        std::sort(flat.begin(), flat.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return flat;
    }

    static MixedSectorState from_amplitudes(int sites,
                                            std::vector<std::pair<std::uint64_t, cplx>> amp) {
        std::map<int, std::vector<std::pair<std::uint64_t, cplx>>> by_n;
        for (auto& [m, c] : amp)
            if (std::norm(c) > 0.0) by_n[std::popcount(m)].push_back({m, c});
        double total = 0.0;
        MixedSectorState st;
        st.sites = sites;
        for (auto& [n, list] : by_n) {
            std::sort(list.begin(), list.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double nrm2 = 0.0;
            for (auto& [m, c] : list) nrm2 += std::norm(c);
            double nrm = std::sqrt(nrm2);
            total += nrm2;
            Component comp;
            comp.weight = nrm;
            comp.state.n = n;
            comp.state.amp = std::move(list);
            for (auto& [m, c] : comp.state.amp) c /= nrm;
            st.components.push_back(std::move(comp));
        }
        double scale = std::sqrt(total);
        if (scale == 0.0) throw std::invalid_argument("from_amplitudes: zero state");
        for (auto& c : st.components) c.weight /= scale;
        return st;
    }
};

struct ReducedState {
    int ell = 0;
    Eigen::MatrixXcd rho;  // indexed by subsets of [1,ell], i.e. by Y mask
};

// Nonzero reduced-state spectrum of a uniform superposition of product
// pairs (left configuration, right configuration), with no limit on the
// site count: the Gram matrix of the right-grouped left vectors carries the
// whole nonzero spectrum.
inline Eigen::VectorXd pair_state_nonzero_spectrum(
    const std::vector<std::pair<Configuration, Configuration>>& parts) {
    if (parts.empty()) throw std::invalid_argument("pair_state_nonzero_spectrum: empty state");
    std::map<Configuration, std::map<Configuration, double>> groups;  // Z -> (Y -> amp)
    const double w = 1.0 / std::sqrt(static_cast<double>(parts.size()));
    for (const auto& [y, z] : parts) groups[z][y] += w;
    const std::size_t g = groups.size();
    Eigen::MatrixXd gram(g, g);
    std::size_t a = 0;
    for (auto ia = groups.begin(); ia != groups.end(); ++ia, ++a) {
        std::size_t b = 0;
        for (auto ib = groups.begin(); ib != groups.end(); ++ib, ++b) {
            double dot = 0.0;
            for (const auto& [y, c] : ia->second) {
                auto it = ib->second.find(y);
                if (it != ib->second.end()) dot += c * it->second;
            }
            gram(a, b) = dot;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

namespace detail {

inline Eigen::MatrixXcd reduce_flat(const std::vector<std::pair<std::uint64_t, cplx>>& flat,
                                    int ell) {
    const std::size_t dim = std::size_t{1} << ell;
    const std::uint64_t ymask = dim - 1;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    std::size_t i = 0;
    while (i < flat.size()) {
        std::size_t j = i;
        const std::uint64_t z = flat[i].first >> ell;
        while (j < flat.size() && (flat[j].first >> ell) == z) ++j;
        for (std::size_t p = i; p < j; ++p) {
            const std::uint64_t yp = flat[p].first & ymask;
            for (std::size_t q = i; q < j; ++q)
                rho(yp, flat[q].first & ymask) += flat[p].second * std::conj(flat[q].second);
        }
        i = j;
    }
    return rho;
}

}  // namespace detail

// Partial trace over [ell+1, L] of |psi><psi|, computed from the sparse
// amplitude map without materializing the 2^L vector.
inline ReducedState reduced_density_matrix(const MixedSectorState& psi, int ell, int sites) {
    if (ell < 1 || ell >= sites)
        throw std::invalid_argument("reduced_density_matrix: need 1 <= ell < L");
    if (ell > 14) throw std::invalid_argument("reduced_density_matrix: ell too large for dense rho");
    if (psi.sites != sites) throw std::invalid_argument("reduced_density_matrix: L mismatch");
    auto flat = psi.flatten();
    double nrm2 = 0.0;
    for (const auto& [m, c] : flat) nrm2 += std::norm(c);
    if (std::abs(nrm2 - 1.0) > 1e-9)
        throw std::invalid_argument("reduced_density_matrix: state not normalized");
    return ReducedState{ell, detail::reduce_flat(flat, ell)};
}

inline Eigen::VectorXd reduced_spectrum(const ReducedState& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// Nonzero spectrum of the reduced state for arbitrary cut positions: the
// reduced state is A A^H for the matrix A whose columns are the left-block
// vectors of fixed right part Z, so its nonzero eigenvalues are those of
// the (number of Z groups)-dimensional Gram matrix A^H A. Works when 2^ell
// is far out of reach as long as the state is sparse across the cut.
inline Eigen::VectorXd reduced_nonzero_spectrum(const MixedSectorState& psi, int ell,
                                                int sites) {
    if (ell < 1 || ell >= sites)
        throw std::invalid_argument("reduced_nonzero_spectrum: need 1 <= ell < L");
    if (psi.sites != sites) throw std::invalid_argument("reduced_nonzero_spectrum: L mismatch");
    auto flat = psi.flatten();
    double nrm2 = 0.0;
    for (const auto& [m, c] : flat) nrm2 += std::norm(c);
    if (std::abs(nrm2 - 1.0) > 1e-9)
        throw std::invalid_argument("reduced_nonzero_spectrum: state not normalized");
    // group boundaries by right part Z (flat is sorted by (Z,Y))
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t i = 0;
    while (i < flat.size()) {
        std::size_t j = i;
        const std::uint64_t z = flat[i].first >> ell;
        while (j < flat.size() && (flat[j].first >> ell) == z) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    if (ell <= 14 && (std::size_t{1} << ell) <= groups.size())
        return reduced_spectrum(ReducedState{ell, detail::reduce_flat(flat, ell)});
    const std::size_t g = groups.size();
    Eigen::MatrixXcd gram(g, g);
    const std::uint64_t ymask = (std::uint64_t{1} << ell) - 1;
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a; b < g; ++b) {
            cplx dot{0.0, 0.0};
            std::size_t p = groups[a].first, q = groups[b].first;
            while (p < groups[a].second && q < groups[b].second) {
                const std::uint64_t yp = flat[p].first & ymask;
                const std::uint64_t yq = flat[q].first & ymask;
                if (yp < yq) {
                    ++p;
                } else if (yq < yp) {
                    ++q;
                } else {
                    dot += std::conj(flat[p].second) * flat[q].second;
                    ++p;
                    ++q;
                }
            }
            gram(a, b) = dot;
            gram(b, a) = std::conj(dot);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double von_neumann_entropy_from_spectrum(const Eigen::VectorXd& lam) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        double x = lam(i);
        if (x < -1e-9) throw std::invalid_argument("entropy: negative eigenvalue");
        if (x < 1e-14) continue;
        s -= x * std::log(x);
    }
    return s;
}

inline double renyi_entropy_from_spectrum(const Eigen::VectorXd& lam, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("renyi: need 0 < alpha < 1");
    double t = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        double x = lam(i);
        if (x < -1e-9) throw std::invalid_argument("renyi: negative eigenvalue");
        if (x < 1e-14) continue;
        t += std::pow(x, alpha);
    }
    return std::log(t) / (1.0 - alpha);
}

inline double von_neumann_entropy(const ReducedState& r) {
    return von_neumann_entropy_from_spectrum(reduced_spectrum(r));
}

inline double renyi_entropy(const ReducedState& r, double alpha) {
    return renyi_entropy_from_spectrum(reduced_spectrum(r), alpha);
}

inline double trace_alpha_from_spectrum(const Eigen::VectorXd& lam, double alpha) {
    double t = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (lam(i) >= 1e-14) t += std::pow(lam(i), alpha);
    return t;
}

// psi = Psi (x) vacuum + psi_hat: Psi keeps the amplitudes whose right part
// is empty, psi_hat the rest. rho_1 = |Psi><Psi| + reduced(psi_hat).
struct StateSplit {
    std::vector<std::pair<std::uint64_t, cplx>> boundary;  // Y masks, Z = 0
    std::vector<std::pair<std::uint64_t, cplx>> interior;  // full masks, Z != 0
};

inline StateSplit decompose_state(const MixedSectorState& psi, int ell, int sites) {
    if (ell < 1 || ell >= sites) throw std::invalid_argument("decompose_state: need 1 <= ell < L");
    StateSplit split;
    for (auto& [m, c] : psi.flatten()) {
        if ((m >> ell) == 0)
            split.boundary.emplace_back(m, c);
        else
            split.interior.emplace_back(m, c);
    }
    return split;
}

inline Eigen::MatrixXcd reduced_from_split_interior(const StateSplit& s, int ell) {
    return detail::reduce_flat(s.interior, ell);
}

// ---- bound evaluation -------------------------------------------------------

struct TraceBound {
    double value = 0.0;
    bool exact = true;
};

// Right side of the Renyi trace bound: 6 plus, over all proper subsets Y of
// the left block, the decayed projection-norm contribution of the packed
// configuration Y u {ell+1}.
inline TraceBound trace_alpha_bound_rhs(double alpha, int big_k, double delta,
                                        const Anisotropy& aniso, int ell,
                                        std::uint64_t sample_seed = 1,
                                        int sample_count = 20000) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("trace_alpha_bound_rhs: need 0 < alpha < 1");
    if (!(delta > 0.0)) throw std::invalid_argument("trace_alpha_bound_rhs: need delta > 0");
    if (big_k < 1) throw std::invalid_argument("trace_alpha_bound_rhs: need K >= 1");
    auto c = spectral::projection_decay_constants(big_k, delta, aniso);
    const double gamma = 2.0 * alpha * c.mu3;
    auto term = [&](std::uint64_t y_mask) {
        Configuration x = config_from_mask(y_mask);
        x.push_back(ell + 1);
        int d = clusters::distance_to_at_most_k(x, big_k).distance;
        if (std::isinf(gamma)) return (d == 0) ? c.c3 : 0.0;
        return c.c3 * std::exp(-gamma * d);
    };
    TraceBound out;
    double sum = 0.0;
    if (ell <= 18) {
        for (std::uint64_t y = 1; y + 1 < (std::uint64_t{1} << ell); ++y) sum += term(y);
    } else {
        // sampled sub-sum; not usable as an assertive bound
        out.exact = false;
        Rng rng = Rng::stream(sample_seed, 0);
        const std::uint64_t space = (std::uint64_t{1} << ell) - 2;
        double acc = 0.0;
        for (int i = 0; i < sample_count; ++i) acc += term(1 + rng.below(space));
        sum = acc / sample_count * static_cast<double>(space);
    }
    out.value = 6.0 + 2.0 * sum;
    return out;
}

// Renyi entropy bound with the log-corrected area-law growth (2K-1) log ell.
// Evaluated from log(ell) so that astronomically large ell stay finite.
inline double renyi_entropy_bound_from_log_ell(double alpha, int big_k, double log_ell,
                                               double delta, const Anisotropy& aniso) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("renyi_entropy_bound: need 0 < alpha < 1");
    if (big_k < 1) throw std::invalid_argument("renyi_entropy_bound: need K >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("renyi_entropy_bound: need delta > 0");
    auto c = spectral::projection_decay_constants(big_k, delta, aniso);
    const double gamma = 2.0 * alpha * c.mu3;
    double log_calpha = 0.0;  // log prod_j (1 - e^{-gamma j})^{-2}
    if (!std::isinf(gamma)) {
        for (int j = 1;; ++j) {
            double f = -std::expm1(-gamma * j);  // 1 - e^{-gamma j}
            double t = -2.0 * std::log(f);
            log_calpha += t;
            if (t < 1e-15) break;
        }
    }
    const double denom = std::isinf(gamma) ? 1.0 : -std::expm1(-gamma);
    const double log_coeff = std::log(2.0 * c.c3 * big_k) + big_k * log_calpha - std::log(denom);
    const double log_main = log_coeff + (2.0 * big_k - 1.0) * log_ell;
    // log( e^{log_main} + 6 )
    double log_total;
    if (log_main > std::log(6.0)) {
        log_total = log_main + std::log1p(6.0 * std::exp(-log_main));
    } else {
        log_total = std::log(6.0) + std::log1p(std::exp(log_main) / 6.0);
    }
    return log_total / (1.0 - alpha);
}

inline double renyi_entropy_bound(double alpha, int big_k, double ell, double delta,
                                  const Anisotropy& aniso) {
    if (!(ell > 0.0)) throw std::invalid_argument("renyi_entropy_bound: need ell > 0");
    return renyi_entropy_bound_from_log_ell(alpha, big_k, std::log(ell), delta, aniso);
}

// ---- window sampling --------------------------------------------------------

// Eigenvectors with eigenvalue below a threshold, grouped by sector, as an
// orthonormal basis of the spectral window.
struct WindowBasis {
    int sites = 0;
    struct Part {
        int n = 0;
        std::vector<std::uint64_t> configs;
        Eigen::MatrixXd vectors;  // columns: window eigenvectors of this sector
        Eigen::VectorXd values;
    };
    std::vector<Part> parts;

    int rank() const {
        int r = 0;
        for (const auto& p : parts) r += static_cast<int>(p.vectors.cols());
        return r;
    }
};

inline WindowBasis build_window_basis(const std::vector<hamiltonian::SectorOperator>& sectors,
                                      const std::vector<spectral::SpectralData>& spectra,
                                      double energy_max) {
    if (sectors.size() != spectra.size())
        throw std::invalid_argument("build_window_basis: sector/spectra mismatch");
    WindowBasis wb;
    if (sectors.empty()) return wb;
    wb.sites = static_cast<int>(sectors.front().product.base.kept.size());
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        const auto& sd = spectra[s];
        std::vector<Eigen::Index> cols;
        for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
            if (sd.eigenvalues(i) <= energy_max + 1e-12) cols.push_back(i);
        if (cols.empty()) continue;
        WindowBasis::Part part;
        part.n = sectors[s].particles();
        for (const auto& cfg : sectors[s].product.configs)
            part.configs.push_back(mask_from_config(cfg));
        part.vectors.resize(sd.eigenvectors.rows(), cols.size());
        part.values.resize(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            part.vectors.col(j) = sd.eigenvectors.col(cols[j]);
            part.values(j) = sd.eigenvalues(cols[j]);
        }
        wb.parts.push_back(std::move(part));
    }
    return wb;
}

namespace detail {

inline MixedSectorState state_from_window_coeffs(const WindowBasis& wb,
                                                 const Eigen::VectorXd& coeff) {
    std::vector<std::pair<std::uint64_t, cplx>> amp;
    Eigen::Index at = 0;
    for (const auto& part : wb.parts) {
        const Eigen::Index m = part.vectors.cols();
        Eigen::VectorXd v = part.vectors * coeff.segment(at, m);
        at += m;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) != 0.0) amp.emplace_back(part.configs[i], cplx{v(i), 0.0});
    }
    return MixedSectorState::from_amplitudes(wb.sites, std::move(amp));
}

}  // namespace detail

// Seeded Gaussian states in the window span. Index 0 is the deterministic
// uniform superposition of all window eigenvectors (the extremal
// candidate); indices 1..count are the random samples.
inline std::vector<MixedSectorState> sample_window_states(const WindowBasis& wb, int count,
                                                          std::uint64_t seed) {
    const int r = wb.rank();
    if (r < 1) throw std::invalid_argument("sample_window_states: empty window");
    std::vector<MixedSectorState> out;
    out.reserve(count + 1);
    out.push_back(detail::state_from_window_coeffs(
        wb, Eigen::VectorXd::Constant(r, 1.0 / std::sqrt(static_cast<double>(r)))));
    for (int s = 1; s <= count; ++s) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
        Eigen::VectorXd g(r);
        for (int i = 0; i < r; ++i) g(i) = rng.normal();
        double nrm = g.norm();
        if (nrm == 0.0) g(0) = 1.0, nrm = 1.0;
        out.push_back(detail::state_from_window_coeffs(wb, g / nrm));
    }
    return out;
}

// Same sampling when the window basis is a set of product states (the
// Ising-limit eigenbasis): Gaussian amplitudes directly on the masks.
inline std::vector<MixedSectorState> sample_basis_states(int sites,
                                                         const std::vector<std::uint64_t>& basis,
                                                         int count, std::uint64_t seed) {
    if (basis.empty()) throw std::invalid_argument("sample_basis_states: empty basis");
    std::vector<MixedSectorState> out;
    out.reserve(count + 1);
    {
        std::vector<std::pair<std::uint64_t, cplx>> amp;
        const double a = 1.0 / std::sqrt(static_cast<double>(basis.size()));
        for (auto m : basis) amp.emplace_back(m, cplx{a, 0.0});
        out.push_back(MixedSectorState::from_amplitudes(sites, std::move(amp)));
    }
    for (int s = 1; s <= count; ++s) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
        std::vector<std::pair<std::uint64_t, cplx>> amp;
        amp.reserve(basis.size());
        for (auto m : basis) amp.emplace_back(m, cplx{rng.normal(), 0.0});
        out.push_back(MixedSectorState::from_amplitudes(sites, std::move(amp)));
    }
    return out;
}

}  // namespace xxz::entanglement
