// hamiltonian.hpp - N-magnon XXZ operators on symmetric product graphs with
// droplet boundary conditions, the full direct-sum Hamiltonian, the spin
// tensor-product oracle, and the diagonal Ising-limit eigensystem.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "xxz/clusters.hpp"
#include "xxz/graphs.hpp"

namespace xxz::hamiltonian {

using graphs::Configuration;
using graphs::InducedSubgraph;
using graphs::SymmetricProductGraph;

// Anisotropy in the Ising phase. Infinity is a first-class value: the
// stored quantity is 1/Delta, which is exactly 0 in the Ising limit.
class Anisotropy {
public:
    static Anisotropy from_value(double delta) {
        if (!(delta > 1.0)) throw std::invalid_argument("Ising phase requires delta > 1");
        Anisotropy a;
        a.inv_ = 1.0 / delta;
        return a;
    }
    static Anisotropy infinite() { return Anisotropy{}; }

    static Anisotropy parse(const std::string& s) {
        if (s == "inf" || s == "infinity" || s == "Inf") return infinite();
        return from_value(std::stod(s));
    }

    double inverse() const { return inv_; }
    bool is_infinite() const { return inv_ == 0.0; }
    double value() const {
        return is_infinite() ? std::numeric_limits<double>::infinity() : 1.0 / inv_;
    }
    // spectral gap unit (1 - 1/Delta)
    double gap_unit() const { return 1.0 - inv_; }

private:
    double inv_ = 0.0;
};

// Non-negative on-site field; absent sites carry zero field.
class Field {
public:
    Field() = default;

    static Field zero() { return Field(); }

    static Field from_pairs(const std::vector<std::pair<int, double>>& pairs) {
        Field f;
        for (auto [site, value] : pairs) f.set(site, value);
        return f;
    }

    // CSV rows "site,value"; a header row is skipped if present.
    static Field from_csv(const std::string& file) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open field csv: " + file);
        Field f;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string a, b;
            if (!std::getline(ss, a, ',') || !std::getline(ss, b)) continue;
            try {
                f.set(std::stoi(a), std::stod(b));
            } catch (...) {
                if (lineno == 1) continue;  // header
                throw std::invalid_argument(file + ":" + std::to_string(lineno) +
                                            ": expected 'site,value'");
            }
        }
        return f;
    }

    void set(int site, double value) {
        if (value < 0.0) throw std::invalid_argument("field must be non-negative");
        v_[site] = value;
    }

    double at(int site) const {
        auto it = v_.find(site);
        return it == v_.end() ? 0.0 : it->second;
    }

    double sum_over(const Configuration& x) const {
        double s = 0.0;
        for (int site : x) s += at(site);
        return s;
    }

    bool empty() const { return v_.empty(); }

private:
    std::unordered_map<int, double> v_;
};

struct ModelParams {
    Anisotropy delta;
    Field field;
};

// K-cluster break-up threshold.
inline double threshold_energy(int big_k, const Anisotropy& delta) {
    if (big_k < 0) throw std::invalid_argument("threshold_energy: K >= 0");
    return static_cast<double>(big_k) * delta.gap_unit();
}

// Cut energy of the degree compression: (1/2)(1-1/Delta)(D_min + k).
inline double sector_cut_energy(int d_min, int k, const Anisotropy& delta) {
    return 0.5 * delta.gap_unit() * static_cast<double>(d_min + k);
}

// Dense symmetric matrix of one N-particle sector. The diagonal combines
// the subgraph hopping degree, the full-graph degree (which carries the
// droplet boundary field), and the on-site potential; off-diagonal entries
// are -1/(2 Delta) exactly on product-graph edges.
struct SectorOperator {
    SymmetricProductGraph product;
    Eigen::MatrixXd matrix;
    ModelParams params;

    int particles() const { return product.n_particles; }
    std::size_t dim() const { return product.size(); }
};

namespace detail {

inline SymmetricProductGraph empty_product(InducedSubgraph base) {
    const int m = static_cast<int>(base.kept.size());
    SymmetricProductGraph p{std::move(base), 0, {Configuration{}}, {{}}, {0},
                            graphs::detail::CombinationIndexer(m, 0), {}};
    for (int i = 0; i < m; ++i) p.site_pos.emplace(p.base.kept[i], i);
    return p;
}

}  // namespace detail

inline SectorOperator build_sector(InducedSubgraph sub, int n, ModelParams params,
                                   bool verify_assumptions = false) {
    const int m = static_cast<int>(sub.kept.size());
    if (n < 0 || n > m) throw std::invalid_argument("build_sector: need 0 <= N <= |V'|");
    if (verify_assumptions) {
        auto rep = graphs::check_assumptions(sub, n);
        if (!rep.geodesic) throw std::invalid_argument("build_sector: subgraph is not geodesic");
        if (!rep.droplets_ok)
            throw std::invalid_argument("build_sector: subgraph misses a droplet");
    }
    if (n == 0) {
        SectorOperator op{detail::empty_product(std::move(sub)), Eigen::MatrixXd::Zero(1, 1),
                          std::move(params)};
        return op;
    }
    SymmetricProductGraph product = graphs::build_symmetric_product(std::move(sub), n);
    const std::size_t dim = product.size();
    const double inv = params.delta.inverse();
    const double hop = 0.5 * inv;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto& nb = product.adjacency[i];
        h(i, i) = hop * static_cast<double>(nb.size()) +
                  0.5 * params.delta.gap_unit() * static_cast<double>(product.degree_full[i]) +
                  params.field.sum_over(product.configs[i]);
        for (int j : nb) h(i, j) = -hop;
    }
    return SectorOperator{std::move(product), std::move(h), std::move(params)};
}

// All sectors N = 0..|V'|; the spectrum of the model is the multiset union
// of the sector spectra.
inline std::vector<SectorOperator> build_full(const InducedSubgraph& sub,
                                              const ModelParams& params) {
    std::vector<SectorOperator> out;
    const int m = static_cast<int>(sub.kept.size());
    out.reserve(m + 1);
    for (int n = 0; n <= m; ++n) out.push_back(build_sector(sub, n, params));
    return out;
}

// Spin-basis Hamiltonian on 2^L states, built from Pauli matrices and the
// local down-spin projector; cross-check oracle only. Bit j-1 of a basis
// index set means a down spin at site j.
inline Eigen::MatrixXd tensor_oracle(int L, const ModelParams& params) {
    if (L < 1 || L > 12) throw std::invalid_argument("tensor_oracle: need 1 <= L <= 12");
    const std::size_t dim = std::size_t{1} << L;
    const double inv = params.delta.inverse();
    const double beta = 0.5 * params.delta.gap_unit();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> site_field(L);
    for (int j = 1; j <= L; ++j) site_field[j - 1] = params.field.at(j);
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int j = 0; j + 1 < L; ++j) {
            bool a = (s >> j) & 1, b = (s >> (j + 1)) & 1;
            if (a != b) {
                diag += 0.5;  // (1/4)(1 - sz sz) on anti-aligned pair
                std::size_t t = s ^ ((std::size_t{1} << j) | (std::size_t{1} << (j + 1)));
                h(s, t) = -0.5 * inv;  // -(1/(4 Delta)) (sx sx + sy sy)
            }
        }
        for (int j = 0; j < L; ++j)
            if ((s >> j) & 1) diag += site_field[j];
        if (s & 1) diag += beta;
        if ((s >> (L - 1)) & 1) diag += beta;
        h(s, s) = diag;
    }
    return h;
}

// Complete eigensystem of the Ising limit: every subset X is an eigenvector
// with eigenvalue cl(X) + sum of the field over X.
inline std::vector<std::pair<Configuration, double>> ising_eigensystem(int L,
                                                                       const Field& field) {
    if (L < 1 || L > 26) throw std::invalid_argument("ising_eigensystem: need 1 <= L <= 26");
    std::vector<std::pair<Configuration, double>> out;
    out.reserve(std::size_t{1} << L);
    for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
        Configuration x;
        for (int j = 0; j < L; ++j)
            if ((mask >> j) & 1) x.push_back(j + 1);
        double e = static_cast<double>(clusters::cluster_count(x)) + field.sum_over(x);
        out.emplace_back(std::move(x), e);
    }
    return out;
}

}  // namespace xxz::hamiltonian
