// clusters.hpp - cluster geometry of particle configurations on the integer
// chain: cluster counts, closest droplets, closest k-cluster configurations,
// and distances to the at-most-K-cluster sets. Distances are the symmetric
// product metric, which on the chain is the sorted one-to-one matching cost.
//
// Each optimized routine has a brute-force companion that enumerates
// candidate configurations inside the window [min X - n, max X + n];
// minimizers never need sites outside that window.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "xxz/graphs.hpp"

namespace xxz::clusters {

using graphs::Configuration;

inline int cluster_count(const Configuration& x) {
    if (x.empty()) return 0;
    int k = 1;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] != x[i - 1] + 1) ++k;
    return k;
}

// Sorted matching distance between equal-size chain configurations.
inline int chain_distance(const Configuration& x, const Configuration& y) {
    if (x.size() != y.size()) throw std::invalid_argument("chain_distance: sizes differ");
    int d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[i]);
    return d;
}

// Droplet of m consecutive sites; for even m the center is the larger of
// the two middle sites.
struct DropletSpec {
    int center = 0;
    int size = 1;

    int left() const { return center - size / 2; }
    int right() const { return left() + size - 1; }

    Configuration expand() const {
        Configuration c(size);
        for (int i = 0; i < size; ++i) c[i] = left() + i;
        return c;
    }

    static DropletSpec from_left(int left, int size) {
        return DropletSpec{left + size / 2, size};
    }
};

struct ClosestDroplets {
    int distance = 0;
    std::vector<DropletSpec> minimizers;  // ascending center
};

// All distance-minimizing single droplets. With z_j = x_j - j (0-based j)
// the cost of the droplet starting at s is sum_j |z_j - s|, so minimizing
// starts are exactly the integer medians of z.
inline ClosestDroplets closest_droplets(const Configuration& x) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("closest_droplets: empty configuration");
    std::vector<int> z(n);
    for (int j = 0; j < n; ++j) z[j] = x[j] - j;
    int ulo, uhi;
    if (n % 2 == 1) {
        ulo = uhi = z[(n - 1) / 2];
    } else {
        ulo = z[n / 2 - 1];
        uhi = z[n / 2];
    }
    int dist = 0;
    for (int j = 0; j < n; ++j) dist += std::abs(z[j] - ulo);
    ClosestDroplets out;
    out.distance = dist;
    for (int u = ulo; u <= uhi; ++u)
        out.minimizers.push_back(DropletSpec::from_left(u, n));
    return out;
}

// Union of k non-touching droplets together with their centers ("magnets").
struct ClusterDecomposition {
    std::vector<int> magnets;  // increasing droplet centers
    std::vector<int> sizes;
    Configuration realized;
};

struct ClosestKCluster {
    int distance = 0;
    ClusterDecomposition decomposition;
};

namespace detail {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// DP tables for the closest configuration with exactly k clusters.
// Particles are split into k consecutive blocks; block r is moved onto a
// droplet, and consecutive droplets keep a gap of at least one empty site.
// A second, restricted table only allows droplets centered on the central
// particle of their block; whenever that placement family reaches the true
// optimum (which it does when k is the minimal split), the reconstruction
// uses it, so the magnets are sites of X.
struct KClusterDp {
    const Configuration& x;
    int n, k;
    int lo, hi, width;                        // droplet start positions lo..hi
    std::vector<std::vector<int>> best_from;  // unrestricted suffix optima
    std::vector<std::vector<int>> best_from_centered;

    KClusterDp(const Configuration& cfg, int kk)
        : x(cfg), n(static_cast<int>(cfg.size())), k(kk) {
        lo = x.front() - n;
        hi = x.back() + n;
        width = hi - lo + 2;  // one-past slot used as "no constraint" sentinel
        best_from.assign((k + 2) * (n + 1), {});
        best_from_centered.assign((k + 2) * (n + 1), {});
        for (auto& row : best_from) row.assign(width + 1, kInf);
        for (auto& row : best_from_centered) row.assign(width + 1, kInf);
        // r = k+1: nothing left to place
        for (int s = 0; s <= width; ++s) {
            at(k + 1, n)[s] = 0;
            at_centered(k + 1, n)[s] = 0;
        }
        for (int r = k; r >= 1; --r) {
            for (int i = n - 1; i >= 0; --i) {
                const int remaining = n - i;
                const int blocks_left = k - r + 1;
                if (remaining < blocks_left) continue;
                std::vector<int>& row = at(r, i);
                for (int si = 0; si < width; ++si) {
                    const int s = lo + si;
                    int cost = 0;
                    int best = kInf;
                    for (int m = 1; i + m <= n && (n - i - m) >= (k - r); ++m) {
                        cost += std::abs(x[i + m - 1] - (s + m - 1));
                        if (s + m - 1 > hi) break;
                        const int nxt = next_start_index(s + m + 1);
                        const int tail = at(r + 1, i + m)[nxt];
                        if (tail < kInf && cost + tail < best) best = cost + tail;
                    }
                    row[si] = best;
                }
                // suffix minimum: row[si] = min over starts >= si
                for (int si = width - 1; si >= 0; --si)
                    row[si] = std::min(row[si], row[si + 1]);

                std::vector<int>& crow = at_centered(r, i);
                std::vector<int> exact(width + 1, kInf);
                for (int m = 1; i + m <= n && (n - i - m) >= (k - r); ++m) {
                    const int s = centered_start(i, m);
                    if (s < lo || s + m - 1 > hi) continue;
                    const int cost = block_cost(i, m, s);
                    const int nxt = next_start_index(s + m + 1);
                    const int tail = at_centered(r + 1, i + m)[nxt];
                    if (tail < kInf)
                        exact[s - lo] = std::min(exact[s - lo], cost + tail);
                }
                crow = exact;
                for (int si = width - 1; si >= 0; --si)
                    crow[si] = std::min(crow[si], crow[si + 1]);
            }
        }
    }

    std::vector<int>& at(int r, int i) { return best_from[r * (n + 1) + i]; }
    const std::vector<int>& at(int r, int i) const { return best_from[r * (n + 1) + i]; }
    std::vector<int>& at_centered(int r, int i) { return best_from_centered[r * (n + 1) + i]; }
    const std::vector<int>& at_centered(int r, int i) const {
        return best_from_centered[r * (n + 1) + i];
    }

    int next_start_index(int s) const { return std::clamp(s - lo, 0, width); }

    int block_cost(int i, int m, int s) const {
        int cost = 0;
        for (int t = 0; t < m; ++t) cost += std::abs(x[i + t] - (s + t));
        return cost;
    }

    // droplet start that puts the block's central particle at the center
    int centered_start(int i, int m) const { return x[i + m / 2] - m / 2; }

    int optimum() const { return at(1, 0)[0]; }

    ClusterDecomposition reconstruct() const {
        const int target = optimum();
        const bool centered = at_centered(1, 0)[0] == target;
        ClusterDecomposition dec;
        int i = 0;
        int min_start = lo;
        int rest = target;
        for (int r = 1; r <= k; ++r) {
            int bc = std::numeric_limits<int>::max();  // best center
            int bm = -1, bs = 0;
            for (int m = 1; i + m <= n && (n - i - m) >= (k - r); ++m) {
                const int s_lo = centered ? std::max(min_start, centered_start(i, m)) : min_start;
                const int s_hi = centered ? centered_start(i, m) : hi - m + 1;
                for (int s = s_lo; s <= s_hi; ++s) {
                    const int cost = block_cost(i, m, s);
                    if (cost > rest) continue;
                    const int nxt = next_start_index(s + m + 1);
                    const int tail =
                        centered ? at_centered(r + 1, i + m)[nxt] : at(r + 1, i + m)[nxt];
                    if (tail >= kInf || cost + tail != rest) continue;
                    const int center = s + m / 2;
                    if (center < bc || (center == bc && (m < bm || (m == bm && s < bs)))) {
                        bc = center;
                        bm = m;
                        bs = s;
                    }
                }
            }
            dec.magnets.push_back(bc);
            dec.sizes.push_back(bm);
            for (int t = 0; t < bm; ++t) dec.realized.push_back(bs + t);
            rest -= block_cost(i, bm, bs);
            i += bm;
            min_start = bs + bm + 1;
        }
        return dec;
    }
};

}  // namespace detail

// Closest configuration with exactly k clusters, deterministic tie-break on
// the magnet tuple. Distance always equals the exhaustive minimum.
inline ClosestKCluster closest_k_cluster(const Configuration& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n) throw std::invalid_argument("closest_k_cluster: need 1 <= k <= |X|");
    detail::KClusterDp dp(x, k);
    ClosestKCluster out;
    out.distance = dp.optimum();
    out.decomposition = dp.reconstruct();
    return out;
}

struct AtMostKDistance {
    int distance = 0;
    int k_min = 0;  // smallest cluster number attaining the distance
};

// Distance to the set of configurations with at most K clusters, together
// with the minimal k attaining it.
inline AtMostKDistance distance_to_at_most_k(const Configuration& x, int big_k) {
    if (big_k < 1) throw std::invalid_argument("distance_to_at_most_k: K >= 1");
    const int n = static_cast<int>(x.size());
    if (n == 0) return {0, 0};
    AtMostKDistance best{detail::kInf, 0};
    for (int k = 1; k <= std::min(big_k, n); ++k) {
        detail::KClusterDp dp(x, k);
        int d = dp.optimum();
        if (d < best.distance) best = {d, k};
        if (best.distance == 0) break;
    }
    return best;
}

// Distance from the family {Y u Z : Z a k-subset right of the cut} to the
// at-most-K-cluster configurations; the minimum is attained by packing Z
// tight against the cut.
inline int attachment_distance(const Configuration& y, int k, int big_k, int ell, int big_l) {
    const int j = static_cast<int>(y.size());
    if (j < 1 || j > ell - 1)
        throw std::invalid_argument("attachment_distance: need 1 <= |Y| <= ell-1");
    if (k < 1 || k > big_l - j)
        throw std::invalid_argument("attachment_distance: need 1 <= k <= L-|Y|");
    if (y.back() > ell || y.front() < 1)
        throw std::invalid_argument("attachment_distance: Y must lie in [1,ell]");
    Configuration packed = y;
    for (int t = 1; t <= k; ++t) packed.push_back(ell + t);
    return distance_to_at_most_k(packed, big_k).distance;
}

// Shift the right-most cluster one step left and test that the distance to
// the at-most-K set does not increase.
inline bool right_shift_check(const Configuration& v, int big_k) {
    if (cluster_count(v) < 2)
        throw std::invalid_argument("right_shift_check: need at least two clusters");
    const int n = static_cast<int>(v.size());
    int start = n - 1;
    while (start > 0 && v[start - 1] + 1 == v[start]) --start;
    Configuration shifted = v;
    for (int i = start; i < n; ++i) shifted[i] -= 1;
    int before = distance_to_at_most_k(v, big_k).distance;
    int after = distance_to_at_most_k(shifted, big_k).distance;
    return after <= before;
}

// ---- brute-force oracles ---------------------------------------------------

inline ClosestDroplets closest_droplets_bruteforce(const Configuration& x) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("closest_droplets_bruteforce: empty configuration");
    ClosestDroplets out;
    out.distance = detail::kInf;
    for (int s = x.front() - n; s <= x.back() + n; ++s) {
        Configuration d(n);
        for (int i = 0; i < n; ++i) d[i] = s + i;
        int dist = chain_distance(x, d);
        if (dist < out.distance) {
            out.distance = dist;
            out.minimizers.clear();
        }
        if (dist == out.distance) out.minimizers.push_back(DropletSpec::from_left(s, n));
    }
    return out;
}

// Exhaustive minimum of the distance to configurations with exactly k (or,
// for the second function, at most K) clusters inside the standard window.
inline int closest_k_cluster_bruteforce(const Configuration& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n) throw std::invalid_argument("closest_k_cluster_bruteforce: bad k");
    std::vector<int> window;
    for (int s = x.front() - n; s <= x.back() + n; ++s) window.push_back(s);
    int best = detail::kInf;
    graphs::detail::for_each_subset(window, n, [&](const Configuration& c) {
        if (cluster_count(c) != k) return;
        best = std::min(best, chain_distance(x, c));
    });
    return best;
}

inline int distance_to_at_most_k_bruteforce(const Configuration& x, int big_k) {
    const int n = static_cast<int>(x.size());
    if (n == 0) return 0;
    std::vector<int> window;
    for (int s = x.front() - n; s <= x.back() + n; ++s) window.push_back(s);
    int best = detail::kInf;
    graphs::detail::for_each_subset(window, n, [&](const Configuration& c) {
        if (cluster_count(c) > big_k) return;
        best = std::min(best, chain_distance(x, c));
    });
    return best;
}

// Exhaustive minimum over k-subsets Z of (ell, L] of the distance from
// Y u Z to the at-most-K-cluster set.
inline int attachment_distance_bruteforce(const Configuration& y, int k, int big_k, int ell,
                                          int big_l) {
    std::vector<int> right;
    for (int s = ell + 1; s <= big_l; ++s) right.push_back(s);
    int best = detail::kInf;
    graphs::detail::for_each_subset(right, k, [&](const Configuration& z) {
        Configuration xy = y;
        xy.insert(xy.end(), z.begin(), z.end());
        best = std::min(best, distance_to_at_most_k(xy, big_k).distance);
    });
    return best;
}

}  // namespace xxz::clusters
