// graphs.hpp - finite undirected graphs, induced subgraphs, and their
// N-th symmetric products (configuration graphs of N hard-core particles).
//
// A "line host" is a finite path standing in for the infinite chain: the
// physical interval [1,L] is embedded with at least one padding site on each
// side so that surface measures of kept configurations match the infinite
// chain exactly.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace xxz::graphs {

// Strictly increasing list of occupied sites.
using Configuration = std::vector<int>;

inline bool strictly_increasing(const Configuration& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] >= x[i]) return false;
    return true;
}

struct Graph {
    std::vector<int> vertices;                     // sorted ids
    std::unordered_map<int, std::vector<int>> adj; // sorted neighbor lists
    int d_max = 0;
    // Path on consecutive integers; enables O(1) distances and the exact
    // chain isoperimetric value.
    bool is_path = false;
    // Path that represents the infinite chain (built with padding).
    bool is_line_host = false;

    static Graph path(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("path: empty vertex range");
        Graph g;
        g.is_path = true;
        for (int v = lo; v <= hi; ++v) {
            g.vertices.push_back(v);
            std::vector<int> nb;
            if (v > lo) nb.push_back(v - 1);
            if (v < hi) nb.push_back(v + 1);
            g.adj.emplace(v, std::move(nb));
        }
        g.d_max = (hi > lo) ? 2 : 0;
        return g;
    }

    // Host for the interval [1,L] seen as part of the infinite chain.
    static Graph line_host(int L, int pad = 1) {
        if (L < 1) throw std::invalid_argument("line_host: L must be >= 1");
        if (pad < 1) throw std::invalid_argument("line_host: pad must be >= 1");
        Graph g = path(1 - pad, L + pad);
        g.is_line_host = true;
        return g;
    }

    // Grid [1,L] x [1,M] with nearest-neighbor edges. Vertex (x,y) gets the
    // id (x-1)*M + y.
    static Graph strip(int L, int M) {
        if (L < 1 || M < 1) throw std::invalid_argument("strip: L,M must be >= 1");
        auto id = [M](int x, int y) { return (x - 1) * M + y; };
        std::vector<std::pair<int, int>> edges;
        for (int x = 1; x <= L; ++x)
            for (int y = 1; y <= M; ++y) {
                if (x < L) edges.emplace_back(id(x, y), id(x + 1, y));
                if (y < M) edges.emplace_back(id(x, y), id(x, y + 1));
            }
        if (L == 1 && M == 1) {
            Graph g;
            g.vertices = {1};
            g.adj.emplace(1, std::vector<int>{});
            return g;
        }
        return from_edges(edges);
    }

    static Graph from_edges(const std::vector<std::pair<int, int>>& edges) {
        Graph g;
        std::map<int, std::vector<int>> tmp;
        for (auto [u, v] : edges) {
            if (u == v) throw std::invalid_argument("from_edges: self-loop rejected");
            tmp[u].push_back(v);
            tmp[v].push_back(u);
        }
        for (auto& [v, nb] : tmp) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            g.vertices.push_back(v);
            g.d_max = std::max(g.d_max, static_cast<int>(nb.size()));
            g.adj.emplace(v, std::move(nb));
        }
        if (g.vertices.empty()) throw std::invalid_argument("from_edges: empty graph");
        g.require_connected();
        return g;
    }

    // One "u v" pair per line; blank lines and lines starting with '#' are
    // skipped.
    static Graph from_edge_list_file(const std::string& file) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open edge list: " + file);
        std::vector<std::pair<int, int>> edges;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            std::string first;
            if (!(ss >> first) || first[0] == '#') continue;
            int u = 0, v = 0;
            try {
                u = std::stoi(first);
            } catch (...) {
                throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": bad vertex id");
            }
            if (!(ss >> v))
                throw std::invalid_argument(file + ":" + std::to_string(lineno) + ": expected 'u v'");
            edges.emplace_back(u, v);
        }
        return from_edges(edges);
    }

    bool has_vertex(int v) const { return adj.count(v) != 0; }

    const std::vector<int>& neighbors(int v) const {
        auto it = adj.find(v);
        if (it == adj.end()) throw std::out_of_range("neighbors: unknown vertex");
        return it->second;
    }

    bool has_edge(int u, int v) const {
        auto it = adj.find(u);
        if (it == adj.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), v);
    }

    std::size_t size() const { return vertices.size(); }

    void require_connected() const {
        if (vertices.empty()) throw std::invalid_argument("graph is empty");
        std::unordered_map<int, int> dist = bfs_distances(vertices.front());
        if (dist.size() != vertices.size())
            throw std::invalid_argument("graph is not connected");
    }

    std::unordered_map<int, int> bfs_distances(int src) const {
        std::unordered_map<int, int> dist;
        dist[src] = 0;
        std::queue<int> q;
        q.push(src);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : neighbors(u))
                if (!dist.count(w)) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        return dist;
    }

    int distance(int u, int v) const {
        if (is_path) return std::abs(u - v);
        auto d = bfs_distances(u);
        auto it = d.find(v);
        if (it == d.end()) throw std::runtime_error("distance: vertices not connected");
        return it->second;
    }
};

// Number of parent edges leaving X.
inline int surface_measure(const Configuration& x, const Graph& parent) {
    int out = 0;
    for (int s : x) {
        for (int w : parent.neighbors(s))
            if (!std::binary_search(x.begin(), x.end(), w)) ++out;
    }
    return out;
}

struct InducedSubgraph {
    Graph parent;
    std::vector<int> kept;                         // sorted
    std::unordered_map<int, std::vector<int>> adj; // edges with both ends kept

    InducedSubgraph(Graph parent_graph, std::vector<int> kept_vertices)
        : parent(std::move(parent_graph)), kept(std::move(kept_vertices)) {
        std::sort(kept.begin(), kept.end());
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
        if (kept.empty()) throw std::invalid_argument("induced subgraph: empty vertex set");
        for (int v : kept)
            if (!parent.has_vertex(v))
                throw std::invalid_argument("induced subgraph: vertex not in parent");
        for (int v : kept) {
            std::vector<int> nb;
            for (int w : parent.neighbors(v))
                if (contains(w)) nb.push_back(w);
            adj.emplace(v, std::move(nb));
        }
    }

    static InducedSubgraph whole(Graph g) {
        std::vector<int> all = g.vertices;
        return InducedSubgraph(std::move(g), std::move(all));
    }

    // Interval [1,L] inside a padded line host.
    static InducedSubgraph chain(int L, int pad = 1) {
        Graph host = Graph::line_host(L, pad);
        std::vector<int> kept(L);
        for (int i = 0; i < L; ++i) kept[i] = i + 1;
        return InducedSubgraph(std::move(host), std::move(kept));
    }

    bool contains(int v) const {
        return std::binary_search(kept.begin(), kept.end(), v);
    }

    const std::vector<int>& neighbors(int v) const {
        auto it = adj.find(v);
        if (it == adj.end()) throw std::out_of_range("subgraph neighbors: vertex not kept");
        return it->second;
    }

    bool is_path_interval() const {
        if (!parent.is_path) return false;
        return kept.back() - kept.front() + 1 == static_cast<int>(kept.size());
    }

    std::unordered_map<int, int> bfs_distances(int src) const {
        std::unordered_map<int, int> dist;
        dist[src] = 0;
        std::queue<int> q;
        q.push(src);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : neighbors(u))
                if (!dist.count(w)) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        return dist;
    }

    bool connected() const {
        return bfs_distances(kept.front()).size() == kept.size();
    }

    // (A1): subgraph distances agree with parent distances on kept pairs.
    bool geodesic() const {
        if (is_path_interval()) return true;
        for (int v : kept) {
            auto dsub = bfs_distances(v);
            auto dfull = parent.bfs_distances(v);
            for (int w : kept) {
                auto it = dsub.find(w);
                if (it == dsub.end() || it->second != dfull.at(w)) return false;
            }
        }
        return true;
    }
};

namespace detail {

// Lexicographic rank of a combination via the combinatorial number system.
struct CombinationIndexer {
    int m = 0;  // universe size
    int n = 0;  // subset size
    std::vector<std::vector<std::uint64_t>> choose;

    CombinationIndexer() = default;
    CombinationIndexer(int universe, int subset) : m(universe), n(subset) {
        choose.assign(m + 1, std::vector<std::uint64_t>(n + 1, 0));
        for (int a = 0; a <= m; ++a) {
            choose[a][0] = 1;
            for (int b = 1; b <= std::min(a, n); ++b)
                choose[a][b] = choose[a - 1][b - 1] + (a - 1 >= b ? choose[a - 1][b] : 0);
        }
    }

    std::uint64_t total() const { return choose[m][n]; }

    // positions: strictly increasing values in [0, m)
    std::uint64_t rank(const std::vector<int>& positions) const {
        std::uint64_t r = 0;
        int prev = -1;
        for (int i = 0; i < n; ++i) {
            for (int v = prev + 1; v < positions[i]; ++v)
                r += choose[m - 1 - v][n - 1 - i];
            prev = positions[i];
        }
        return r;
    }
};

}  // namespace detail

// Vertex/edge structure of the N-th symmetric product of the base subgraph.
// Edges connect configurations whose symmetric difference is a base edge.
// degree_full is the surface measure |dX| taken in the parent graph.
struct SymmetricProductGraph {
    InducedSubgraph base;
    int n_particles = 0;
    std::vector<Configuration> configs;       // lexicographic order of site lists
    std::vector<std::vector<int>> adjacency;  // sorted neighbor indices
    std::vector<int> degree_full;

    detail::CombinationIndexer indexer;
    std::unordered_map<int, int> site_pos;  // site id -> position in base.kept

    std::size_t size() const { return configs.size(); }

    std::size_t index_of(const Configuration& x) const {
        std::vector<int> pos(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto it = site_pos.find(x[i]);
            if (it == site_pos.end()) throw std::out_of_range("configuration site not in base");
            pos[i] = it->second;
        }
        return static_cast<std::size_t>(indexer.rank(pos));
    }

    int degree_in_product(std::size_t i) const {
        return static_cast<int>(adjacency[i].size());
    }
};

inline SymmetricProductGraph build_symmetric_product(InducedSubgraph base, int n) {
    const int m = static_cast<int>(base.kept.size());
    if (n < 1 || n > m)
        throw std::invalid_argument("build_symmetric_product: need 1 <= N <= |V'|");
    SymmetricProductGraph p{std::move(base), n, {}, {}, {}, detail::CombinationIndexer(m, n), {}};
    if (p.indexer.total() > 5000000ULL)
        throw std::invalid_argument("build_symmetric_product: sector too large for dense enumeration");
    for (int i = 0; i < m; ++i) p.site_pos.emplace(p.base.kept[i], i);

    // enumerate n-subsets of kept in lexicographic order
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    const std::size_t count = static_cast<std::size_t>(p.indexer.total());
    p.configs.reserve(count);
    while (true) {
        Configuration c(n);
        for (int i = 0; i < n; ++i) c[i] = p.base.kept[idx[i]];
        p.configs.push_back(std::move(c));
        int i = n - 1;
        while (i >= 0 && idx[i] == m - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }

    p.adjacency.assign(count, {});
    p.degree_full.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        const Configuration& x = p.configs[i];
        p.degree_full[i] = surface_measure(x, p.base.parent);
        for (int s : x) {
            for (int w : p.base.neighbors(s)) {
                if (std::binary_search(x.begin(), x.end(), w)) continue;
                Configuration y;
                y.reserve(x.size());
                for (int t : x)
                    if (t != s) y.push_back(t);
                y.insert(std::upper_bound(y.begin(), y.end(), w), w);
                std::size_t j = p.index_of(y);
                if (j > i) {
                    p.adjacency[i].push_back(static_cast<int>(j));
                    p.adjacency[j].push_back(static_cast<int>(i));
                }
            }
        }
    }
    for (auto& nb : p.adjacency) std::sort(nb.begin(), nb.end());
    return p;
}

namespace detail {

// Kuhn-Munkres on a square cost matrix; returns the minimal total cost.
inline long long hungarian_min_cost(const std::vector<std::vector<int>>& cost) {
    const int n = static_cast<int>(cost.size());
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(n + 1), v(n + 1), minv(n + 1);
    std::vector<int> p(n + 1), way(n + 1);
    std::vector<char> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            long long delta = inf;
            for (int j = 1; j <= n; ++j)
                if (!used[j]) {
                    long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    long long total = 0;
    for (int j = 1; j <= n; ++j)
        if (p[j]) total += cost[p[j] - 1][j - 1];
    return total;
}

}  // namespace detail

// Product-graph distance: min over particle matchings of summed base
// distances. On a path base the sorted pairing is optimal.
inline int config_distance(const Configuration& x, const Configuration& y, const Graph& base) {
    if (x.size() != y.size())
        throw std::invalid_argument("config_distance: particle numbers differ");
    if (x.empty()) return 0;
    if (base.is_path) {
        int d = 0;
        for (std::size_t i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[i]);
        return d;
    }
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<int>> cost(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        auto dist = base.bfs_distances(x[i]);
        for (int j = 0; j < n; ++j) {
            auto it = dist.find(y[j]);
            if (it == dist.end()) throw std::runtime_error("config_distance: base not connected");
            cost[i][j] = it->second;
        }
    }
    return static_cast<int>(detail::hungarian_min_cost(cost));
}

inline int config_distance(const Configuration& x, const Configuration& y,
                           const InducedSubgraph& base) {
    // geodesic subgraphs inherit parent distances
    return config_distance(x, y, base.parent);
}

// Exact shortest path on the assembled product graph. Returns nullopt when
// the target is unreachable (disconnected product), which callers must
// surface rather than treat as infinite.
inline std::optional<int> config_distance_bfs(const SymmetricProductGraph& p,
                                              const Configuration& x, const Configuration& y) {
    std::size_t src = p.index_of(x), dst = p.index_of(y);
    if (src == dst) return 0;
    std::vector<int> dist(p.size(), -1);
    dist[src] = 0;
    std::queue<std::size_t> q;
    q.push(src);
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (int w : p.adjacency[u]) {
            if (dist[w] >= 0) continue;
            dist[w] = dist[u] + 1;
            if (static_cast<std::size_t>(w) == dst) return dist[w];
            q.push(static_cast<std::size_t>(w));
        }
    }
    return std::nullopt;
}

namespace detail {

template <typename Fn>
inline void for_each_subset(const std::vector<int>& universe, int n, Fn&& fn) {
    const int m = static_cast<int>(universe.size());
    if (n == 0) {
        Configuration empty;
        fn(empty);
        return;
    }
    if (n > m) return;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    Configuration c(n);
    while (true) {
        for (int i = 0; i < n; ++i) c[i] = universe[idx[i]];
        fn(c);
        int i = n - 1;
        while (i >= 0 && idx[i] == m - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

// Minimal surface measure over n-subsets of the candidate vertices,
// boundaries taken in the parent graph.
inline int isoperimetric_min(const Graph& parent, const std::vector<int>& candidates, int n) {
    if (n == 0) return 0;
    if (n > static_cast<int>(candidates.size()))
        throw std::invalid_argument("isoperimetric_min: N exceeds candidate count");
    std::vector<int> cand = candidates;
    std::sort(cand.begin(), cand.end());
    int best = std::numeric_limits<int>::max();
    detail::for_each_subset(cand, n, [&](const Configuration& c) {
        best = std::min(best, surface_measure(c, parent));
    });
    return best;
}

// Minimal surface measure over all n-subsets of the host. A line host
// stands for the infinite chain, where every finite set has two boundary
// edges per cluster and the minimum is exactly 2.
inline int isoperimetric_min_full(const Graph& parent, int n) {
    if (n == 0) return 0;
    if (parent.is_line_host) return 2;
    return isoperimetric_min(parent, parent.vertices, n);
}

struct AssumptionReport {
    bool geodesic = false;      // (A1)
    bool droplets_ok = false;   // (A2) for every checked N
    // per N: {N, min surface over host, min surface over kept}
    std::vector<std::array<int, 3>> isoperimetric;
};

inline AssumptionReport check_assumptions(const InducedSubgraph& sub, int n_max) {
    AssumptionReport rep;
    rep.geodesic = sub.connected() && sub.geodesic();
    rep.droplets_ok = true;
    n_max = std::min<int>(n_max, static_cast<int>(sub.kept.size()));
    for (int n = 1; n <= n_max; ++n) {
        int full = isoperimetric_min_full(sub.parent, n);
        int kept = isoperimetric_min(sub.parent, sub.kept, n);
        rep.isoperimetric.push_back({n, full, kept});
        if (full != kept) rep.droplets_ok = false;
    }
    return rep;
}

}  // namespace xxz::graphs
