#include "hiscore/pairwise.hpp"

#include <cassert>

namespace hiscore {

namespace {

bool is_detection(NodeId truth, NodeId predicted) {
    return truth == kNoNode || predicted == kNoNode;
}

void require_label(const ScoringTree& tree, NodeId node) {
    if (node == tree.root())
        throw DataError(errc::root_as_label,
                        "root '" + tree.label(node) + "' cannot be used as a label");
}

// LPP on the raw [-2, 1] reward+penalty scale shifted into [0, 1], with the
// offset widening the denominator so detection errors keep the bottom.
double lpp_value(const ScoringTree& tree, NodeId t, NodeId p, double o) {
    return (reward(tree, t, p) + penalty(tree, t, p) + 2.0 - o) / (3.0 - o);
}

// Best achievable LPP for a node: reward is its full path weight, no penalty.
double lpp_self(const ScoringTree& tree, NodeId node, double o) {
    return (tree.path_weight(node) + 2.0 - o) / (3.0 - o);
}

}  // namespace

double reward(const ScoringTree& tree, NodeId truth, NodeId predicted) {
    return tree.path_weight(tree.lca(truth, predicted));
}

double penalty(const ScoringTree& tree, NodeId truth, NodeId predicted) {
    double shared = tree.path_weight(tree.lca(truth, predicted));
    return -(tree.path_weight(truth) + tree.path_weight(predicted) - 2.0 * shared);
}

double score_pl(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset) {
    if (is_detection(truth, predicted)) return 0.0;
    require_label(tree, truth);
    require_label(tree, predicted);
    const double o = offset.value();
    const double max_path = static_cast<double>(tree.diameter());
    return (max_path - o - tree.edge_distance(truth, predicted)) / (max_path - o);
}

double score_l(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset) {
    if (is_detection(truth, predicted)) return 0.0;
    require_label(tree, truth);
    require_label(tree, predicted);
    const double o = offset.value();
    return (reward(tree, truth, predicted) - o) / (1.0 - o);
}

double score_lpp(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset) {
    if (is_detection(truth, predicted)) return 0.0;
    require_label(tree, truth);
    require_label(tree, predicted);
    return lpp_value(tree, truth, predicted, offset.value());
}

double score_tps(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset) {
    if (is_detection(truth, predicted)) return 0.0;
    require_label(tree, truth);
    require_label(tree, predicted);
    const double o = offset.value();
    const double denom = lpp_self(tree, truth, o);
    assert(denom > 0.0);  // (2 - o) / (3 - o) > 0 for every o <= 0
    return lpp_value(tree, truth, predicted, o) / denom;
}

double score_pps(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset) {
    if (is_detection(truth, predicted)) return 0.0;
    require_label(tree, truth);
    require_label(tree, predicted);
    const double o = offset.value();
    const double denom = lpp_self(tree, predicted, o);
    assert(denom > 0.0);
    return lpp_value(tree, truth, predicted, o) / denom;
}

double score_pair(const ScoringTree& tree, PairMetric metric, NodeId truth, NodeId predicted,
                  Offset offset) {
    switch (metric) {
        case PairMetric::pl: return score_pl(tree, truth, predicted, offset);
        case PairMetric::l: return score_l(tree, truth, predicted, offset);
        case PairMetric::lpp: return score_lpp(tree, truth, predicted, offset);
        case PairMetric::tps: return score_tps(tree, truth, predicted, offset);
        case PairMetric::pps: return score_pps(tree, truth, predicted, offset);
    }
    throw DataError(errc::invalid_argument, "unknown pair metric");
}

PrfScores ancestor_prf(const ScoringTree& tree, std::span<const PredictionPair> pairs,
                       double beta) {
    if (!(beta >= 0.0))
        throw DataError(errc::invalid_argument, "beta must be >= 0");
    // The ancestor set of a node is its root path including itself and
    // excluding the root, so |anc(x)| = depth(x) and the intersection size
    // for two nodes is the depth of their LCA.
    double shared = 0.0, pred_total = 0.0, truth_total = 0.0;
    std::uint64_t pair_count = 0;
    for (const PredictionPair& pp : pairs) {
        if (pp.count == 0) continue;
        if (pp.truth.is_none() || pp.predicted.is_none())
            throw DataError(errc::detection_pair_unsupported,
                            "ancestor precision/recall is undefined for detection pairs");
        NodeId t = tree.id_of(pp.truth.label());
        NodeId p = tree.id_of(pp.predicted.label());
        require_label(tree, t);
        require_label(tree, p);
        const double c = static_cast<double>(pp.count);
        shared += c * tree.depth(tree.lca(t, p));
        pred_total += c * tree.depth(p);
        truth_total += c * tree.depth(t);
        pair_count += pp.count;
    }
    if (pair_count == 0)
        throw DataError(errc::empty_input, "no prediction pairs given");

    PrfScores out;
    out.precision = pred_total > 0.0 ? shared / pred_total : 0.0;
    out.recall = truth_total > 0.0 ? shared / truth_total : 0.0;
    const double b2 = beta * beta;
    const double denom = b2 * out.precision + out.recall;
    out.f_measure = denom > 0.0 ? (b2 + 1.0) * out.precision * out.recall / denom : 0.0;
    return out;
}

}  // namespace hiscore
