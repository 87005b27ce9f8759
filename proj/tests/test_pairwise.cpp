#include <limits>
#include <vector>

#include "doctest.h"
#include "hiscore/harness.hpp"
#include "hiscore/pairwise.hpp"
#include "support/oracles.hpp"

using namespace hiscore;

namespace {

ScoringTree tree_d() { return harness::weighted_tree(harness::WeightStrategy::decreasing); }
ScoringTree tree_n() { return harness::weighted_tree(harness::WeightStrategy::non_increasing); }
ScoringTree tree_i() { return harness::weighted_tree(harness::WeightStrategy::increasing); }

constexpr double kTight = 1e-12;

}  // namespace

TEST_CASE("offset must be non-positive and finite") {
    CHECK_THROWS_AS(Offset(0.5), DataError);
    CHECK_THROWS_AS(Offset(std::numeric_limits<double>::quiet_NaN()), DataError);
    CHECK(Offset(-1.0).value() == -1.0);
    CHECK(Offset().value() == 0.0);
}

TEST_CASE("path-length score") {
    const ScoringTree t = tree_d();
    CHECK(score_pl(t, "C", "E") == doctest::Approx(0.4).epsilon(kTight));
    CHECK(score_pl(t, "D", "L") == 0.0);
    CHECK(score_pl(t, "C", "E", Offset(-1.0)) == doctest::Approx(0.5).epsilon(kTight));
    CHECK(score_pl(t, "C", "C") == 1.0);
    CHECK(score_pl(t, "C", "C", Offset(-2.0)) == 1.0);
    for (double o : {0.0, -0.5, -1.0}) {
        CHECK(score_pl(t, t.id_of("K"), kNoNode, Offset(o)) == 0.0);
        CHECK(score_pl(t, kNoNode, t.id_of("K"), Offset(o)) == 0.0);
    }
}

TEST_CASE("reward follows the shared root-path weight") {
    const ScoringTree d = tree_d();
    CHECK(reward(d, "B", "C") == 0.0);
    CHECK(reward(d, "L", "L") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(reward(d, "H", "L") == doctest::Approx(0.9).epsilon(kTight));
    CHECK(reward(d, "D", "D") == doctest::Approx(d.path_weight("D")).epsilon(kTight));
}

TEST_CASE("penalty follows the symmetric-difference weight") {
    const ScoringTree d = tree_d();
    const ScoringTree n = tree_n();
    CHECK(penalty(d, "D", "L") == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(penalty(d, "G", "G") == 0.0);
    CHECK(penalty(n, "D", "B") == doctest::Approx(-0.5).epsilon(kTight));
    CHECK(penalty(n, "B", "D") == penalty(n, "D", "B"));
}

TEST_CASE("lca reward score") {
    const ScoringTree n = tree_n();
    CHECK(score_l(n, "F", "G") == doctest::Approx(0.5).epsilon(kTight));
    for (const ScoringTree& t : {tree_d(), tree_n(), tree_i()}) {
        CHECK(score_l(t, "B", "C", Offset(-1.0)) == doctest::Approx(0.5).epsilon(kTight));
    }
    CHECK(score_l(n, kNoNode, n.id_of("K")) == 0.0);
}

TEST_CASE("lpp score") {
    const ScoringTree d = tree_d();
    const ScoringTree n = tree_n();
    const ScoringTree i = tree_i();
    CHECK(score_lpp(d, "D", "L") == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(score_lpp(n, "D", "B") == doctest::Approx(2.0 / 3.0).epsilon(kTight));
    CHECK(score_lpp(i, "B", "B", Offset(-1.0)) == doctest::Approx(0.775).epsilon(kTight));
    // Self score rises with path weight: (W + 2) / 3 at zero offset.
    for (const char* label : {"B", "C", "F", "G", "D", "L"}) {
        CHECK(score_lpp(d, label, label) ==
              doctest::Approx((d.path_weight(label) + 2.0) / 3.0).epsilon(kTight));
    }
}

TEST_CASE("path-standardized scores") {
    const ScoringTree d = tree_d();
    CHECK(score_tps(d, "C", "C") == 1.0);
    CHECK(score_tps(d, "D", "B") == doctest::Approx(0.9333333333333333).epsilon(kTight));
    CHECK(score_tps(d, "B", "L", Offset(-1.0)) ==
          doctest::Approx(0.28205128205128205).epsilon(kTight));
    CHECK(score_pps(d, "D", "B") == doctest::Approx(0.9655172413793104).epsilon(kTight));
    for (const char* label : {"B", "F", "L"}) {
        for (double o : {0.0, -0.5, -1.0}) {
            CHECK(score_pps(d, d.id_of(label), d.id_of(label), Offset(o)) == 1.0);
            CHECK(score_tps(d, d.id_of(label), d.id_of(label), Offset(o)) == 1.0);
        }
    }
    CHECK(score_pps(d, d.id_of("D"), kNoNode) == 0.0);
    CHECK(score_tps(d, kNoNode, d.id_of("D")) == 0.0);
    // TPS standardizes by the truth node, PPS by the predicted node.
    CHECK(score_tps(d, "D", "B") != score_pps(d, "D", "B"));
}

TEST_CASE("root is rejected as a label") {
    const ScoringTree d = tree_d();
    CHECK_THROWS_AS(score_pl(d, "A", "B"), DataError);
    CHECK_THROWS_AS(score_lpp(d, "B", "A"), DataError);
    try {
        score_tps(d, "A", "A");
    } catch (const DataError& e) {
        CHECK(e.code() == errc::root_as_label);
    }
}

TEST_CASE("symmetry, range and offset monotonicity on the strategy trees") {
    const double offsets[] = {0.0, -0.5, -1.0, -2.0};
    for (const ScoringTree& t : {tree_d(), tree_n(), tree_i(), harness::example_tree()}) {
        for (NodeId a = 0; a < static_cast<NodeId>(t.node_count()); ++a) {
            if (a == t.root()) continue;
            for (NodeId b = 0; b < static_cast<NodeId>(t.node_count()); ++b) {
                if (b == t.root()) continue;
                double previous[5] = {-1.0, -1.0, -1.0, -1.0, -1.0};
                for (double o : offsets) {
                    const Offset off(o);
                    const double scores[5] = {
                        score_pl(t, a, b, off),  score_l(t, a, b, off),  score_lpp(t, a, b, off),
                        score_tps(t, a, b, off), score_pps(t, a, b, off),
                    };
                    for (int m = 0; m < 5; ++m) {
                        CHECK(scores[m] >= -1e-9);
                        CHECK(scores[m] <= 1.0 + 1e-9);
                        CHECK(scores[m] >= previous[m] - 1e-12);  // raising as o drops
                        previous[m] = scores[m];
                    }
                    CHECK(score_pl(t, a, b, off) == score_pl(t, b, a, off));
                    CHECK(score_l(t, a, b, off) == score_l(t, b, a, off));
                    CHECK(score_lpp(t, a, b, off) == score_lpp(t, b, a, off));
                }
            }
        }
    }
}

TEST_CASE("reward and penalty match brute-force path sums on random trees") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const int nodes = 4 + static_cast<int>(rng() % 5);
        const auto edges = testsupport::random_weighted_edges(rng, nodes);
        const ScoringTree tree = ScoringTree::build(edges);
        const auto view = testsupport::EdgeListView::from_edges(edges);
        for (const std::string& a : view.nodes) {
            for (const std::string& b : view.nodes) {
                CHECK(reward(tree, a, b) == doctest::Approx(view.reward_brute(a, b)).epsilon(kTight));
                CHECK(penalty(tree, a, b) ==
                      doctest::Approx(view.penalty_brute(a, b)).epsilon(kTight));
            }
        }
    }
}

TEST_CASE("lpp ranking never contradicts path-length ranking on the uniform tree") {
    // Holds for equal per-path weights when both the distance and LCA-depth
    // orderings already agree.
    const ScoringTree t = harness::example_tree();
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 0; a < static_cast<NodeId>(t.node_count()); ++a) {
        for (NodeId b = 0; b < static_cast<NodeId>(t.node_count()); ++b) {
            if (a != t.root() && b != t.root()) pairs.emplace_back(a, b);
        }
    }
    for (const auto& [a1, b1] : pairs) {
        for (const auto& [a2, b2] : pairs) {
            const bool closer = t.edge_distance(a1, b1) < t.edge_distance(a2, b2);
            const bool deeper = t.depth(t.lca(a1, b1)) >= t.depth(t.lca(a2, b2));
            if (closer && deeper) {
                CHECK(score_lpp(t, a1, b1) >= score_lpp(t, a2, b2) - 1e-12);
            }
        }
    }
}

TEST_CASE("ancestor-set precision, recall and F-measure") {
    const ScoringTree t = harness::example_tree();
    std::vector<PredictionPair> correct;
    for (const char* leaf : {"D", "E", "H", "I", "J", "K", "L"}) {
        correct.push_back({ClassRef::node(leaf), ClassRef::node(leaf), 100});
    }
    const PrfScores perfect = ancestor_prf(t, correct, 1.0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f_measure == 1.0);

    std::vector<PredictionPair> shallow = {{ClassRef::node("D"), ClassRef::node("B"), 1}};
    const PrfScores db = ancestor_prf(t, shallow, 1.0);
    CHECK(db.precision == doctest::Approx(1.0).epsilon(kTight));
    CHECK(db.recall == doctest::Approx(0.5).epsilon(kTight));
    CHECK(db.f_measure == doctest::Approx(2.0 / 3.0).epsilon(kTight));

    std::vector<PredictionPair> disjoint = {{ClassRef::node("B"), ClassRef::node("C"), 1}};
    const PrfScores bc = ancestor_prf(t, disjoint, 1.0);
    CHECK(bc.precision == 0.0);
    CHECK(bc.recall == 0.0);
    CHECK(bc.f_measure == 0.0);

    std::vector<PredictionPair> detection = {{ClassRef::node("B"), ClassRef::none(), 1}};
    CHECK_THROWS_AS(ancestor_prf(t, detection, 1.0), DataError);
    CHECK_THROWS_AS(ancestor_prf(t, std::vector<PredictionPair>{}, 1.0), DataError);
    CHECK_THROWS_AS(ancestor_prf(t, shallow, -1.0), DataError);

    // beta = 0 collapses the F-measure onto precision.
    const PrfScores beta0 = ancestor_prf(t, shallow, 0.0);
    CHECK(beta0.f_measure == doctest::Approx(beta0.precision).epsilon(kTight));
}
