#include <algorithm>
#include <vector>

#include "doctest.h"
#include "hiscore/harness.hpp"
#include "hiscore/tree.hpp"
#include "support/oracles.hpp"

using namespace hiscore;

namespace {

ScoringTree decreasing_tree() { return harness::weighted_tree(harness::WeightStrategy::decreasing); }

errc build_error(std::vector<Edge> edges, BuildOptions options = {}) {
    try {
        ScoringTree::build(edges, options);
    } catch (const ValidationError& e) {
        return e.code();
    }
    FAIL("expected a validation error");
    return errc::empty_input;
}

}  // namespace

TEST_CASE("example tree shape and structural queries") {
    const ScoringTree tree = harness::example_tree();
    CHECK(tree.node_count() == 12);
    CHECK(tree.diameter() == 5);
    CHECK(tree.label(tree.root()) == "A");

    CHECK(tree.label(tree.lca("H", "L")) == "C");
    CHECK(tree.label(tree.lca("B", "C")) == "A");
    CHECK(tree.label(tree.lca("D", "D")) == "D");
    CHECK(tree.label(tree.lca("C", "H")) == "C");

    CHECK(tree.edge_distance("D", "L") == 5);
    CHECK(tree.edge_distance("C", "E") == 3);
    CHECK(tree.edge_distance("K", "K") == 0);
    CHECK(tree.edge_distance("L", "D") == 5);

    std::vector<std::string> children;
    for (NodeId c : tree.children(tree.id_of("C"))) children.push_back(tree.label(c));
    CHECK(children == std::vector<std::string>{"F", "G"});

    std::vector<std::string> leaves;
    for (NodeId v = 0; v < static_cast<NodeId>(tree.node_count()); ++v) {
        if (tree.is_leaf(v)) leaves.push_back(tree.label(v));
    }
    std::sort(leaves.begin(), leaves.end());
    CHECK(leaves == std::vector<std::string>{"D", "E", "H", "I", "J", "K", "L"});
}

TEST_CASE("root paths and path weights") {
    const ScoringTree tree = decreasing_tree();
    const auto path = tree.root_path_edges(tree.id_of("L"));
    REQUIRE(path.size() == 3);
    CHECK(tree.label(path[0].first) == "A");
    CHECK(tree.label(path[0].second) == "C");
    CHECK(tree.label(path[1].second) == "G");
    CHECK(tree.label(path[2].second) == "L");

    CHECK(tree.path_weight("L") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tree.path_weight(tree.root()) == 0.0);
    CHECK(tree.root_path_edges(tree.root()).empty());

    const ScoringTree increasing = harness::weighted_tree(harness::WeightStrategy::increasing);
    CHECK(increasing.path_weight("F") == doctest::Approx(0.3).epsilon(1e-12));

    for (auto strategy : {harness::WeightStrategy::decreasing,
                          harness::WeightStrategy::non_increasing,
                          harness::WeightStrategy::increasing}) {
        const ScoringTree t = harness::weighted_tree(strategy);
        for (NodeId v = 0; v < static_cast<NodeId>(t.node_count()); ++v) {
            CHECK(t.path_weight(v) >= 0.0);
            CHECK(t.path_weight(v) <= 1.0 + 1e-9);
            if (t.is_leaf(v)) CHECK(t.path_weight(v) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("uniform weight assignment splits each path evenly") {
    const ScoringTree tree = harness::example_tree();
    CHECK(tree.path_weight("B") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tree.path_weight("D") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tree.path_weight("F") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(tree.edge_weight(tree.id_of("H")) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(tree.edge_weight(tree.id_of("E")) == doctest::Approx(0.5).epsilon(1e-12));

    // Shared prefixes keep their first assignment; suffixes are rescaled.
    std::vector<Edge> edges = {
        {"r", "a", std::nullopt}, {"a", "b", std::nullopt}, {"b", "c", std::nullopt},
        {"r", "d", std::nullopt},
    };
    BuildOptions options;
    options.uniform_weights = true;
    const ScoringTree mixed = ScoringTree::build(edges, options);
    CHECK(mixed.path_weight("c") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mixed.path_weight("d") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mixed.edge_weight(mixed.id_of("a")) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("build rejects malformed edge lists") {
    CHECK(build_error({}) == errc::empty_input);
    CHECK(build_error({{"A", "B", 1.0}, {"C", "D", 1.0}}) == errc::multiple_roots);
    CHECK(build_error({{"A", "B", 1.0}, {"B", "C", 0.0}, {"C", "A", 0.0}}) == errc::cycle_detected);
    CHECK(build_error({{"A", "B", 0.5}, {"C", "B", 0.5}, {"A", "C", 0.5}}) == errc::duplicate_child);
    CHECK(build_error({{"A", "A", 1.0}}) == errc::cycle_detected);
    CHECK(build_error({{"A", "B", -0.25}, {"A", "C", 1.0}}) == errc::negative_weight);
    CHECK(build_error({{"A", "B", 0.5}, {"A", "C", std::nullopt}}) == errc::negative_weight);

    try {
        ScoringTree::build(std::vector<Edge>{{"A", "B", 0.5}, {"A", "C", 0.6}, {"C", "D", 0.5}});
        FAIL("expected a path-sum violation");
    } catch (const ValidationError& e) {
        CHECK(e.code() == errc::path_sum_violation);
        bool names_b = false;
        for (const std::string& d : e.diagnostics()) names_b = names_b || d.find("'B'") != std::string::npos;
        CHECK(names_b);
    }
}

TEST_CASE("strict mode rejects degenerate trees, lenient mode allows them") {
    std::vector<Edge> two_nodes = {{"A", "B", 1.0}};
    CHECK(build_error(two_nodes) == errc::degenerate_tree);

    BuildOptions lenient;
    lenient.strict = false;
    const ScoringTree tree = ScoringTree::build(two_nodes, lenient);
    CHECK(tree.node_count() == 2);
    CHECK(tree.diameter() == 1);
}

TEST_CASE("star tree has diameter 2") {
    const ScoringTree tree =
        ScoringTree::build(std::vector<Edge>{{"r", "a", 1.0}, {"r", "b", 1.0}, {"r", "c", 1.0}});
    CHECK(tree.diameter() == 2);
}

TEST_CASE("unknown labels raise a data error") {
    const ScoringTree tree = harness::example_tree();
    CHECK_THROWS_AS(tree.id_of("Z"), DataError);
    try {
        tree.lca(tree.id_of("B"), tree.id_of("Z"));
    } catch (const DataError& e) {
        CHECK(e.code() == errc::unknown_node);
    }
}

TEST_CASE("labels are case-sensitive opaque strings") {
    const ScoringTree tree = harness::example_tree();
    CHECK(tree.contains("B"));
    CHECK_FALSE(tree.contains("b"));
    CHECK_FALSE(tree.contains(" B"));
}

TEST_CASE("distance and lca agree with brute-force oracles on random trees") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 100; ++trial) {
        const int nodes = 4 + static_cast<int>(rng() % 5);  // up to 8
        const auto edges = testsupport::random_weighted_edges(rng, nodes);
        const ScoringTree tree = ScoringTree::build(edges);
        const auto view = testsupport::EdgeListView::from_edges(edges);
        for (const std::string& a : view.nodes) {
            for (const std::string& b : view.nodes) {
                CHECK(tree.edge_distance(a, b) == view.bfs_distance(a, b));
                CHECK(tree.label(tree.lca(a, b)) == view.lca(a, b));
            }
        }
    }
}

TEST_CASE("diameter equals the best leaf-pair distance") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int nodes = 4 + static_cast<int>(rng() % 17);  // up to 20
        const auto edges = testsupport::random_weighted_edges(rng, nodes);
        const ScoringTree tree = ScoringTree::build(edges);
        int best = 0;
        for (NodeId a = 0; a < static_cast<NodeId>(tree.node_count()); ++a) {
            for (NodeId b = 0; b < static_cast<NodeId>(tree.node_count()); ++b) {
                best = std::max(best, tree.edge_distance(a, b));
            }
        }
        CHECK(tree.diameter() == best);
    }
}
