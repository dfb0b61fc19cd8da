#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "xxz/graphs.hpp"
#include "xxz/rng.hpp"

using namespace xxz;
using graphs::Configuration;

namespace {

// Def-level edge oracle: {X,Y} is an edge iff the symmetric difference is a
// base edge. Used to re-derive vertex and edge counts independently.
bool symdiff_is_edge(const Configuration& x, const Configuration& y,
                     const graphs::InducedSubgraph& g) {
    std::set<int> sx(x.begin(), x.end()), sy(y.begin(), y.end());
    std::vector<int> diff;
    std::set_symmetric_difference(sx.begin(), sx.end(), sy.begin(), sy.end(),
                                  std::back_inserter(diff));
    if (diff.size() != 2) return false;
    auto it = g.adj.find(diff[0]);
    if (it == g.adj.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), diff[1]);
}

std::size_t product_edge_count(const graphs::SymmetricProductGraph& p) {
    std::size_t deg = 0;
    for (const auto& nb : p.adjacency) deg += nb.size();
    return deg / 2;
}

}  // namespace

TEST_CASE("symmetric product of the 3-site path") {
    auto sub = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 3));
    auto p = graphs::build_symmetric_product(sub, 2);
    REQUIRE(p.size() == 3);
    REQUIRE(p.configs[0] == Configuration{1, 2});
    REQUIRE(p.configs[1] == Configuration{1, 3});
    REQUIRE(p.configs[2] == Configuration{2, 3});
    // {12,13} and {13,23} are edges; {12,23} is not ({1,3} is not a base edge)
    REQUIRE(p.adjacency[0] == std::vector<int>{1});
    REQUIRE(p.adjacency[1] == std::vector<int>{0, 2});
    REQUIRE(p.adjacency[2] == std::vector<int>{1});
}

TEST_CASE("symmetric product edges match the symmetric-difference oracle") {
    auto sub = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 4));
    auto p = graphs::build_symmetric_product(sub, 2);
    REQUIRE(p.size() == 6);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (symdiff_is_edge(p.configs[i], p.configs[j], p.base)) ++expected;
    REQUIRE(expected == 6);  // frozen from the oracle above
    REQUIRE(product_edge_count(p) == expected);

    // same cross-check on a strip base
    auto strip = graphs::InducedSubgraph::whole(graphs::Graph::strip(3, 2));
    auto q = graphs::build_symmetric_product(strip, 2);
    std::size_t expected_strip = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (symdiff_is_edge(q.configs[i], q.configs[j], q.base)) ++expected_strip;
    REQUIRE(product_edge_count(q) == expected_strip);
}

TEST_CASE("full-occupation product is a single vertex") {
    auto sub = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 5));
    auto p = graphs::build_symmetric_product(sub, 5);
    REQUIRE(p.size() == 1);
    REQUIRE(p.adjacency[0].empty());
    REQUIRE_THROWS_AS(graphs::build_symmetric_product(p.base, 6), std::invalid_argument);
    REQUIRE_THROWS_AS(graphs::build_symmetric_product(p.base, 0), std::invalid_argument);
}

TEST_CASE("configuration indexing is a bijection in lexicographic order") {
    auto sub = graphs::InducedSubgraph::chain(8, 1);
    auto p = graphs::build_symmetric_product(sub, 3);
    for (std::size_t i = 0; i < p.size(); ++i) {
        REQUIRE(p.index_of(p.configs[i]) == i);
        if (i > 0)
            REQUIRE(std::lexicographical_compare(p.configs[i - 1].begin(), p.configs[i - 1].end(),
                                                 p.configs[i].begin(), p.configs[i].end()));
    }
}

TEST_CASE("chain configuration distance") {
    auto host = graphs::Graph::line_host(8, 1);
    REQUIRE(graphs::config_distance({1, 2}, {1, 2}, host) == 0);
    REQUIRE(graphs::config_distance({1, 2}, {4, 5}, host) == 6);
    REQUIRE(graphs::config_distance({1, 3, 5}, {2, 3, 4}, host) == 2);
    REQUIRE_THROWS_AS(graphs::config_distance({1}, {1, 2}, host), std::invalid_argument);
}

TEST_CASE("breadth-first oracle agrees with the matching distance") {
    auto sub = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 5));
    auto p = graphs::build_symmetric_product(sub, 2);
    auto d = graphs::config_distance_bfs(p, {1, 2}, {4, 5});
    REQUIRE(d.has_value());
    REQUIRE(*d == 6);

    auto sub3 = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 3));
    auto p3 = graphs::build_symmetric_product(sub3, 2);
    auto d3 = graphs::config_distance_bfs(p3, {1, 2}, {2, 3});
    REQUIRE(d3.has_value());
    REQUIRE(*d3 == 2);

    // a disconnected base yields a disconnected product: reported, not
    // silently infinite
    auto gap = graphs::InducedSubgraph(graphs::Graph::path(1, 3), {1, 3});
    auto pgap = graphs::build_symmetric_product(gap, 1);
    REQUIRE_FALSE(graphs::config_distance_bfs(pgap, {1}, {3}).has_value());
}

TEST_CASE("matching distance equals BFS distance on whole products") {
    // chain
    auto chain = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 7));
    for (int n : {2, 3}) {
        auto p = graphs::build_symmetric_product(chain, n);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i; j < p.size(); ++j) {
                auto bfs = graphs::config_distance_bfs(p, p.configs[i], p.configs[j]);
                REQUIRE(bfs.has_value());
                REQUIRE(*bfs ==
                        graphs::config_distance(p.configs[i], p.configs[j], p.base.parent));
            }
    }
    // strip (general matching path, Hungarian solver)
    auto strip = graphs::InducedSubgraph::whole(graphs::Graph::strip(4, 2));
    auto p = graphs::build_symmetric_product(strip, 2);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i; j < p.size(); ++j) {
            auto bfs = graphs::config_distance_bfs(p, p.configs[i], p.configs[j]);
            REQUIRE(bfs.has_value());
            REQUIRE(*bfs == graphs::config_distance(p.configs[i], p.configs[j], p.base.parent));
        }

    // a mid-size sector, sources subsampled
    auto big = graphs::build_symmetric_product(graphs::InducedSubgraph::chain(12, 1), 3);
    REQUIRE(big.size() == 220);
    for (std::size_t i = 0; i < big.size(); i += 7)
        for (std::size_t j = 0; j < big.size(); j += 3) {
            auto bfs = graphs::config_distance_bfs(big, big.configs[i], big.configs[j]);
            REQUIRE(bfs.has_value());
            REQUIRE(*bfs ==
                    graphs::config_distance(big.configs[i], big.configs[j], big.base.parent));
        }
}

TEST_CASE("configuration distance is a metric") {
    auto host = graphs::Graph::line_host(12, 1);
    Rng rng(42);
    auto random_config = [&](int n) {
        std::set<int> s;
        while (static_cast<int>(s.size()) < n) s.insert(1 + static_cast<int>(rng.below(12)));
        return Configuration(s.begin(), s.end());
    };
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng.below(4));
        auto x = random_config(n), y = random_config(n), z = random_config(n);
        int dxy = graphs::config_distance(x, y, host);
        int dyx = graphs::config_distance(y, x, host);
        int dxz = graphs::config_distance(x, z, host);
        int dzy = graphs::config_distance(z, y, host);
        REQUIRE(dxy == dyx);
        REQUIRE(dxy <= dxz + dzy);
        REQUIRE((dxy == 0) == (x == y));
    }
}

TEST_CASE("surface measure") {
    auto host = graphs::Graph::line_host(8, 1);
    REQUIRE(graphs::surface_measure({1, 2, 4}, host) == 4);  // 2 clusters
    REQUIRE(graphs::surface_measure({5}, host) == 2);
    auto small = graphs::Graph::path(1, 3);
    REQUIRE(graphs::surface_measure({1}, small) == 1);  // only edge {1,2}
}

TEST_CASE("full-graph degree equals product degree when the base is the whole graph") {
    auto whole = graphs::InducedSubgraph::whole(graphs::Graph::path(1, 6));
    for (int n : {1, 2, 3}) {
        auto p = graphs::build_symmetric_product(whole, n);
        for (std::size_t i = 0; i < p.size(); ++i)
            REQUIRE(p.degree_full[i] == p.degree_in_product(i));
    }
}

TEST_CASE("geodesic base gives equal product distances (restricted vs host)") {
    auto sub = graphs::InducedSubgraph::chain(6, 2);
    auto psub = graphs::build_symmetric_product(sub, 2);
    auto host = graphs::InducedSubgraph::whole(sub.parent);
    auto phost = graphs::build_symmetric_product(host, 2);
    for (std::size_t i = 0; i < psub.size(); ++i)
        for (std::size_t j = i; j < psub.size(); ++j) {
            auto dsub = graphs::config_distance_bfs(psub, psub.configs[i], psub.configs[j]);
            auto dhost = graphs::config_distance_bfs(phost, psub.configs[i], psub.configs[j]);
            REQUIRE(dsub.has_value());
            REQUIRE(dhost.has_value());
            REQUIRE(*dsub == *dhost);
        }
}

TEST_CASE("assumption report") {
    auto good = graphs::InducedSubgraph::chain(6, 2);
    auto rep = graphs::check_assumptions(good, 4);
    REQUIRE(rep.geodesic);
    REQUIRE(rep.droplets_ok);
    for (const auto& row : rep.isoperimetric) {
        REQUIRE(row[1] == 2);
        REQUIRE(row[2] == 2);
    }

    // two far apart vertices of a path: induced subgraph is disconnected
    auto bad = graphs::InducedSubgraph(graphs::Graph::path(1, 3), {1, 3});
    REQUIRE_FALSE(graphs::check_assumptions(bad, 1).geodesic);
}

TEST_CASE("isoperimetric minima") {
    auto host = graphs::Graph::line_host(10, 1);
    for (int n = 1; n <= 4; ++n) REQUIRE(graphs::isoperimetric_min_full(host, n) == 2);

    // single vertex with no edges at all
    auto point = graphs::Graph::strip(1, 1);
    REQUIRE(graphs::isoperimetric_min(point, {1}, 1) == 0);

    auto lonely = graphs::Graph::from_edges({{7, 8}});
    REQUIRE(graphs::isoperimetric_min(lonely, {7, 8}, 2) == 0);

    // 2x2 block inside a 4x4 grid, two particles: adjacent pair boundary 6
    auto grid = graphs::Graph::strip(4, 4);
    auto id = [](int x, int y) { return (x - 1) * 4 + y; };
    std::vector<int> block{id(2, 2), id(2, 3), id(3, 2), id(3, 3)};
    REQUIRE(graphs::isoperimetric_min(grid, block, 2) == 6);
}

TEST_CASE("edge list file round trip") {
    const char* path = "test_edges.txt";
    {
        std::ofstream out(path);
        out << "# toy graph\n1 2\n2 3\n\n3 4\n";
    }
    auto g = graphs::Graph::from_edge_list_file(path);
    REQUIRE(g.size() == 4);
    REQUIRE(g.has_edge(2, 3));
    REQUIRE(g.d_max == 2);
    std::remove(path);
    REQUIRE_THROWS_AS(graphs::Graph::from_edges({{1, 2}, {3, 4}}), std::invalid_argument);
    REQUIRE_THROWS_AS(graphs::Graph::from_edges({{1, 1}}), std::invalid_argument);
}
