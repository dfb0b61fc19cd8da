// ising.hpp - exact Ising-limit material: K-cluster subset counting with
// checked 64-bit arithmetic, extremal entangled window states, the
// disordered construction with its acceptance conditions, and seeded
// Monte-Carlo moments of the random cluster-subset count.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xxz/entanglement.hpp"
#include "xxz/hamiltonian.hpp"
#include "xxz/parallel.hpp"
#include "xxz/rng.hpp"

namespace xxz::ising {

using entanglement::MixedSectorState;
using graphs::Configuration;

// ---- checked integer helpers ------------------------------------------------

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("count overflow (add)");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("count overflow (mul)");
    return r;
}

inline long long binomial_checked(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = checked_mul(r, n - k + i);
        r /= i;
    }
    return r;
}

// ---- exact cluster-subset counts ---------------------------------------------

// Number of subsets of [1,ell] with exactly K clusters, by the recursion
// that conditions on where the first cluster ends.
inline long long count_exact(int big_k, int ell) {
    if (big_k < 0 || ell < 0) throw std::invalid_argument("count_exact: negative argument");
    if (big_k == 0) return 1;
    if (2 * big_k - 1 > ell) return 0;
    std::vector<std::vector<long long>> p(big_k + 1, std::vector<long long>(ell + 1, 0));
    for (int m = 0; m <= ell; ++m) {
        p[0][m] = 1;
        if (big_k >= 1) p[1][m] = static_cast<long long>(m) * (m + 1) / 2;
    }
    for (int k = 2; k <= big_k; ++k)
        for (int m = 2 * k - 1; m <= ell; ++m) {
            long long acc = 0;
            for (int r = 2; r <= m + 1 - 2 * (k - 1); ++r)
                acc = checked_add(acc, checked_mul(r - 1, p[k - 1][m - r]));
            p[k][m] = acc;
        }
    return p[big_k][ell];
}

// Subsets of [1,ell] with exactly K clusters, the last of which contains
// ell; obtained by conditioning on the length of that last cluster.
inline long long count_ending(int big_k, int ell) {
    if (big_k < 1 || ell < 0) throw std::invalid_argument("count_ending: need K >= 1");
    if (big_k == 1) return ell;
    if (2 * big_k - 1 > ell) return 0;
    long long acc = 0;
    for (int m = 2 * big_k - 3; m <= ell - 2; ++m)
        acc = checked_add(acc, count_exact(big_k - 1, m));
    return acc;
}

// Closed forms validated against enumeration before use as an oracle.
inline long long count_closed_form_oracle(int big_k, int ell) {
    if (big_k == 0) return 1;
    return binomial_checked(ell + 1, 2 * big_k);
}

inline long long count_ending_closed_form_oracle(int big_k, int ell) {
    return binomial_checked(ell, 2 * big_k - 1);
}

inline long long count_bruteforce(int big_k, int ell) {
    if (ell > 24) throw std::invalid_argument("count_bruteforce: ell too large");
    long long c = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << ell); ++m)
        if (entanglement::cluster_count_mask(m) == big_k) ++c;
    return c;
}

// Schmidt-rank budget of the energy window [0,K] across the cut at ell.
inline long long n_kell(int big_k, int ell) {
    if (big_k < 1) throw std::invalid_argument("n_kell: need K >= 1");
    long long acc = count_ending(big_k, ell);
    for (int k = 0; k <= big_k - 1; ++k) acc = checked_add(acc, count_exact(k, ell));
    return acc;
}

struct ClusterCountTable {
    int k_max = 0, ell_max = 0;
    std::vector<std::vector<long long>> p;       // p[k][ell]
    std::vector<std::vector<long long>> ending;  // ending[k][ell], k >= 1
    std::vector<std::vector<long long>> n_window;

    long long count(int k, int ell) const { return p[k][ell]; }
};

inline ClusterCountTable build_cluster_count_table(int k_max, int ell_max) {
    ClusterCountTable t;
    t.k_max = k_max;
    t.ell_max = ell_max;
    t.p.assign(k_max + 1, std::vector<long long>(ell_max + 1, 0));
    t.ending.assign(k_max + 1, std::vector<long long>(ell_max + 1, 0));
    t.n_window.assign(k_max + 1, std::vector<long long>(ell_max + 1, 0));
    for (int k = 0; k <= k_max; ++k)
        for (int m = 0; m <= ell_max; ++m) t.p[k][m] = count_exact(k, m);
    for (int k = 1; k <= k_max; ++k)
        for (int m = 0; m <= ell_max; ++m) {
            t.ending[k][m] = count_ending(k, m);
            long long acc = t.ending[k][m];
            for (int i = 0; i < k; ++i) acc = checked_add(acc, t.p[i][m]);
            t.n_window[k][m] = acc;
        }
    return t;
}

// All subsets of [1,L] with at most K clusters, generated by placing the
// clusters left to right (no 2^L scan, usable for large L).
inline std::vector<std::uint64_t> enumerate_window_masks(int big_l, int big_k) {
    if (big_l < 1 || big_l > 62)
        throw std::invalid_argument("enumerate_window_masks: need 1 <= L <= 62");
    std::vector<std::uint64_t> out{0};
    auto interval = [](int a, int b) {  // sites a..b, 1-based
        return ((std::uint64_t{1} << b) - 1) ^ ((std::uint64_t{1} << (a - 1)) - 1);
    };
    std::function<void(int, int, std::uint64_t)> rec = [&](int start, int k_left,
                                                           std::uint64_t mask) {
        if (k_left == 0) return;
        for (int a = start; a <= big_l; ++a)
            for (int b = a; b <= big_l; ++b) {
                std::uint64_t m = mask | interval(a, b);
                out.push_back(m);
                rec(b + 2, k_left - 1, m);
            }
    };
    rec(1, big_k, 0);
    return out;
}

// ---- extremal window state ---------------------------------------------------

namespace detail {

inline bool site_list_less(std::uint64_t a, std::uint64_t b) {
    // lexicographic order of the increasing site lists
    while (a && b) {
        int xa = std::countr_zero(a), xb = std::countr_zero(b);
        if (xa != xb) return xa < xb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

}  // namespace detail

// Uniform superposition saturating the entanglement of the energy window
// [0,K] at zero field: one product term per admissible left part, with
// right parts running over nested boundary intervals.
inline MixedSectorState build_extremal_state(int big_k, int ell, int big_l) {
    if (ell < 2 * big_k) throw std::invalid_argument("build_extremal_state: need ell >= 2K");
    if (big_l > 62) throw std::invalid_argument("build_extremal_state: need L <= 62");
    const long long n_window = n_kell(big_k, ell);
    if (big_l < ell + n_window)
        throw std::invalid_argument("build_extremal_state: need L >= ell + N_{K,ell}");
    std::vector<std::uint64_t> b1, b2;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << ell); ++y) {
        const int cl = entanglement::cluster_count_mask(y);
        if (cl == big_k && ((y >> (ell - 1)) & 1)) b1.push_back(y);
        if (cl <= big_k - 1) b2.push_back(y);
    }
    std::sort(b1.begin(), b1.end(), detail::site_list_less);
    std::sort(b2.begin(), b2.end(), detail::site_list_less);
    std::vector<std::uint64_t> lefts = b1;
    lefts.insert(lefts.end(), b2.begin(), b2.end());
    if (static_cast<long long>(lefts.size()) != n_window)
        throw std::logic_error("build_extremal_state: window enumeration mismatch");

    std::vector<std::pair<std::uint64_t, entanglement::cplx>> amp;
    const double a = 1.0 / std::sqrt(static_cast<double>(n_window + 1));
    for (std::size_t j = 0; j < lefts.size(); ++j) {
        const std::uint64_t z = ((std::uint64_t{1} << (j + 1)) - 1) << ell;  // [ell+1, ell+j+1]
        amp.emplace_back(lefts[j] | z, entanglement::cplx{a, 0.0});
    }
    // one extra K-cluster part strictly inside [1,ell-1], e.g. {1,3,...,2K-1}
    std::uint64_t inner = 0;
    for (int i = 0; i < big_k; ++i) inner |= (std::uint64_t{1} << (2 * i));
    amp.emplace_back(inner, entanglement::cplx{a, 0.0});
    return MixedSectorState::from_amplitudes(big_l, std::move(amp));
}

// ---- disorder -----------------------------------------------------------------

struct DisorderModel {
    enum class Kind { bernoulli, uniform, exponential };
    Kind kind = Kind::uniform;
    double param = 0.5;  // bernoulli success probability / exponential rate
    std::uint64_t seed = 1;

    double draw(Rng& rng) const {
        switch (kind) {
            case Kind::bernoulli: return rng.bernoulli(param) ? 1.0 : 0.0;
            case Kind::uniform: return rng.uniform();
            case Kind::exponential: return rng.exponential(param);
        }
        return 0.0;
    }

    // P(V <= threshold)
    double low_field_probability(double threshold) const {
        switch (kind) {
            case Kind::bernoulli:
                return threshold >= 1.0 ? 1.0 : 1.0 - param;
            case Kind::uniform:
                return std::clamp(threshold, 0.0, 1.0);
            case Kind::exponential:
                return -std::expm1(-param * threshold);
        }
        return 0.0;
    }

    // field values at sites 1..L for realization `index`
    std::vector<double> realization(int big_l, std::uint64_t index) const {
        Rng rng = Rng::stream(seed, index);
        std::vector<double> v(big_l + 1, 0.0);
        for (int j = 1; j <= big_l; ++j) v[j] = draw(rng);
        return v;
    }

    static Kind parse_kind(const std::string& s) {
        if (s == "bernoulli") return Kind::bernoulli;
        if (s == "uniform") return Kind::uniform;
        if (s == "exponential") return Kind::exponential;
        throw std::invalid_argument("unknown distribution: " + s);
    }
};

// Which M product pairs (low-field left subset of size < K, one low-field
// right site each) make up the disordered window state, independent of any
// site-count limit. Realizations without enough low-field sites are
// rejected with the reason recorded.
struct DisorderedPairs {
    bool accepted = false;
    std::string reason;
    int pairs = 0;                                      // M
    std::vector<std::pair<Configuration, int>> parts;   // (Y_j, z_j)
};

inline DisorderedPairs select_disordered_pairs(const std::vector<double>& field_values,
                                               int big_k, double delta0, double a, int ell,
                                               int big_l) {
    if (big_k < 1) throw std::invalid_argument("select_disordered_pairs: need K >= 1");
    if (!(delta0 > 0.0)) throw std::invalid_argument("select_disordered_pairs: need delta0 > 0");
    if (ell < 1 || ell >= big_l)
        throw std::invalid_argument("select_disordered_pairs: need 1 <= ell < L");
    if (static_cast<int>(field_values.size()) < big_l + 1)
        throw std::invalid_argument("select_disordered_pairs: field values missing");
    DisorderedPairs out;
    const double delta = delta0 / big_k;
    std::vector<int> low_left, low_right;
    for (int j = 1; j <= ell; ++j)
        if (field_values[j] <= delta) low_left.push_back(j);
    for (int j = ell + 1; j <= big_l; ++j)
        if (field_values[j] <= delta) low_right.push_back(j);

    double c_ka = std::pow(a / 2.0, big_k - 1);
    for (int i = 2; i <= big_k - 1; ++i) c_ka /= i;
    const int m = static_cast<int>(std::floor(c_ka * std::pow(ell, big_k - 1)));
    out.pairs = m;
    if (m < 1) {
        out.reason = "pair budget M is zero";
        return out;
    }
    if (static_cast<double>(low_left.size()) < a * ell) {
        out.reason = "too few low-field sites left of the cut";
        return out;
    }
    // count subsets of the low-field left sites with size < K
    double subset_count = 0.0;
    for (int s = 0; s <= big_k - 1; ++s) {
        double c = 1.0;
        for (int i = 0; i < s; ++i)
            c = c * static_cast<double>(low_left.size() - i) / (i + 1);
        subset_count += c;
        if (subset_count > 4e18) break;
    }
    if (subset_count < static_cast<double>(m)) {
        out.reason = "too few low-field subsets left of the cut";
        return out;
    }
    if (static_cast<int>(low_right.size()) < m) {
        out.reason = "too few low-field sites right of the cut";
        return out;
    }

    // first M subsets in (size, lexicographic) order, paired with the
    // low-field right sites in increasing order
    std::vector<Configuration> lefts;
    lefts.push_back({});
    for (int s = 1; s <= big_k - 1 && static_cast<int>(lefts.size()) < m; ++s) {
        graphs::detail::for_each_subset(low_left, s, [&](const Configuration& y) {
            if (static_cast<int>(lefts.size()) < m) lefts.push_back(y);
        });
    }
    for (int j = 0; j < m; ++j) out.parts.emplace_back(lefts[j], low_right[j]);
    out.accepted = true;
    return out;
}

struct DisorderedState {
    bool accepted = false;
    std::string reason;
    int pairs = 0;  // M
    MixedSectorState state;
};

// Uniform superposition of the selected pairs as an amplitude map (needs
// L <= 62 for the mask representation); every component has at most K
// clusters and field sum at most delta0.
inline DisorderedState build_disordered_state(const std::vector<double>& field_values, int big_k,
                                              double delta0, double a, int ell, int big_l) {
    if (big_l > 62) throw std::invalid_argument("build_disordered_state: need L <= 62");
    auto sel = select_disordered_pairs(field_values, big_k, delta0, a, ell, big_l);
    DisorderedState out;
    out.accepted = sel.accepted;
    out.reason = sel.reason;
    out.pairs = sel.pairs;
    if (!sel.accepted) return out;
    std::vector<std::pair<std::uint64_t, entanglement::cplx>> amp;
    const double w = 1.0 / std::sqrt(static_cast<double>(sel.pairs));
    for (const auto& [y, z] : sel.parts) {
        std::uint64_t mask =
            entanglement::mask_from_config(y) | (std::uint64_t{1} << (z - 1));
        amp.emplace_back(mask, entanglement::cplx{w, 0.0});
    }
    out.state = MixedSectorState::from_amplitudes(big_l, std::move(amp));
    return out;
}

// ---- random cluster-subset count ----------------------------------------------

// Exact expectation of the number of K-cluster subsets of the random set
// {j : nu_j = 0}, P(nu_j = 0) = p, by the first-cluster recursion.
inline double q_expectation_exact(int big_k, int ell, double p) {
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("q_expectation_exact: need 0 <= p < 1");
    if (big_k < 1) throw std::invalid_argument("q_expectation_exact: need K >= 1");
    // expected one-cluster-ending count: f(m) = sum_{s=1}^m p^s = p(1 + f(m-1))
    std::vector<double> ending1(ell + 1, 0.0);
    for (int m = 1; m <= ell; ++m) ending1[m] = p * (1.0 + ending1[m - 1]);
    std::vector<std::vector<double>> q(big_k + 1, std::vector<double>(ell + 1, 0.0));
    for (int m = 1; m <= ell; ++m) {
        double acc = 0.0;
        for (int r = 1; r <= m; ++r) acc += static_cast<double>(m + 1 - r) * std::pow(p, r);
        q[1][m] = acc;
    }
    for (int k = 2; k <= big_k; ++k)
        for (int m = 2 * k - 1; m <= ell; ++m) {
            double acc = 0.0;
            for (int r = 2; r <= m + 1 - 2 * (k - 1); ++r)
                acc += ending1[r - 1] * q[k - 1][m - r];
            q[k][m] = acc;
        }
    return q[big_k][ell];
}

// Exhaustive-enumeration oracle for small ell.
inline double q_expectation_bruteforce(int big_k, int ell, double p) {
    if (ell > 20) throw std::invalid_argument("q_expectation_bruteforce: ell too large");
    double acc = 0.0;
    for (std::uint64_t incl = 0; incl < (std::uint64_t{1} << ell); ++incl) {
        const int ones = std::popcount(incl);
        const double prob = std::pow(p, ones) * std::pow(1.0 - p, ell - ones);
        // count K-cluster subsets of the included set
        long long count = 0;
        {
            // dynamic programming over runs of the included mask
            std::vector<int> runs;
            std::uint64_t m = incl;
            while (m) {
                int start = std::countr_zero(m);
                int len = std::countr_zero(~(m >> start));
                runs.push_back(len);
                m >>= (start + len);
            }
            std::vector<long long> conv{1};
            for (int r : runs) {
                std::vector<long long> next(std::min<std::size_t>(conv.size() + big_k, big_k + 1),
                                            0);
                for (std::size_t i = 0; i < conv.size(); ++i)
                    for (int k = 0; static_cast<int>(i) + k <= big_k; ++k)
                        if (i + k < next.size())
                            next[i + k] += conv[i] * count_exact(k, r);
                conv = std::move(next);
            }
            count = (static_cast<int>(conv.size()) > big_k) ? conv[big_k] : 0;
        }
        acc += prob * static_cast<double>(count);
    }
    return acc;
}

struct QMoments {
    double mean = 0.0;
    double variance = 0.0;
    double stderr_mean = 0.0;
    long long samples = 0;
};

namespace detail {

struct QSums {
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
};

inline QSums combine(QSums a, QSums b) {
    QSums r{a.sum + b.sum, a.sum_sq + b.sum_sq};
    if (r.sum < a.sum || r.sum_sq < a.sum_sq) throw std::overflow_error("q moment overflow");
    return r;
}

// K-cluster subsets of one Bernoulli realization: per maximal run of
// included sites the exact counts, convolved across runs.
inline long long q_of_realization(const std::vector<std::vector<long long>>& counts, int big_k,
                                  int ell, double p, Rng& rng) {
    std::vector<long long> conv(big_k + 1, 0);
    conv[0] = 1;
    int run = 0;
    auto flush = [&](int len) {
        if (len == 0) return;
        std::vector<long long> next(big_k + 1, 0);
        for (int i = 0; i <= big_k; ++i) {
            if (conv[i] == 0) continue;
            for (int k = 0; i + k <= big_k; ++k)
                next[i + k] = checked_add(next[i + k], checked_mul(conv[i], counts[k][len]));
        }
        conv = std::move(next);
    };
    for (int j = 0; j < ell; ++j) {
        if (rng.uniform() < p) {
            ++run;
        } else {
            flush(run);
            run = 0;
        }
    }
    flush(run);
    return conv[big_k];
}

}  // namespace detail

// Seeded Monte-Carlo moments of the K-cluster subset count of a random set;
// integer accumulators keep the result identical for any worker count.
inline QMoments q_moments_mc(int big_k, int ell, double p, long long samples, std::uint64_t seed,
                             int workers = 1) {
    if (samples < 1) throw std::invalid_argument("q_moments_mc: need samples >= 1");
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("q_moments_mc: need 0 <= p < 1");
    std::vector<std::vector<long long>> counts(big_k + 1, std::vector<long long>(ell + 1, 0));
    for (int k = 0; k <= big_k; ++k)
        for (int r = 0; r <= ell; ++r) counts[k][r] = count_exact(k, r);
    detail::QSums sums = parallel_reduce_index(
        static_cast<std::size_t>(samples), workers, detail::QSums{},
        [&](std::size_t i) {
            Rng rng = Rng::stream(seed, i);
            long long q = detail::q_of_realization(counts, big_k, ell, p, rng);
            detail::QSums s;
            s.sum = static_cast<unsigned __int128>(q);
            s.sum_sq = static_cast<unsigned __int128>(q) * static_cast<unsigned __int128>(q);
            return s;
        },
        [](detail::QSums a, detail::QSums b) { return detail::combine(a, b); });
    QMoments m;
    m.samples = samples;
    const double n = static_cast<double>(samples);
    const double s1 = static_cast<double>(sums.sum);
    const double s2 = static_cast<double>(sums.sum_sq);
    m.mean = s1 / n;
    m.variance = (samples > 1) ? std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0)) : 0.0;
    m.stderr_mean = std::sqrt(m.variance / n);
    return m;
}

}  // namespace xxz::ising
