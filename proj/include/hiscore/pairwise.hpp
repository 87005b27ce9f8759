#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "hiscore/tree.hpp"

namespace hiscore {

// Non-positive detection-error offset. Lowering the offset raises
// misclassification scores, reserving the bottom of the [0,1] scale for
// ghost and missed detections (which always score 0).
class Offset {
public:
    Offset() = default;
    explicit Offset(double value) : value_(value) {
        if (!(value <= 0.0) || !std::isfinite(value))
            throw DataError(errc::invalid_argument, "offset must be a finite value <= 0");
    }
    double value() const { return value_; }

private:
    double value_ = 0.0;
};

// Either a tree-node label or the no-detection marker.
class ClassRef {
public:
    static ClassRef none() { return ClassRef{}; }
    static ClassRef node(std::string label) {
        ClassRef ref;
        ref.label_ = std::move(label);
        return ref;
    }

    bool is_none() const { return !label_.has_value(); }
    const std::string& label() const { return label_.value(); }

    friend bool operator==(const ClassRef&, const ClassRef&) = default;
    friend auto operator<=>(const ClassRef&, const ClassRef&) = default;

private:
    std::optional<std::string> label_;
};

struct PredictionPair {
    ClassRef truth;
    ClassRef predicted;
    std::uint64_t count = 1;
};

// Depth-based reward: total edge weight shared by the two root paths, i.e.
// the weight of the path from the root to their lowest common ancestor.
double reward(const ScoringTree& tree, NodeId truth, NodeId predicted);

// Distance-based penalty: negated total weight on the symmetric difference
// of the two root paths. 0 iff the nodes coincide, never below -2.
double penalty(const ScoringTree& tree, NodeId truth, NodeId predicted);

// Pairwise scorers. `kNoNode` on either side marks a detection error and
// scores exactly 0 under every metric regardless of the offset. All scores
// lie in [0,1]; PL, L and LPP are symmetric, TPS and PPS are not.
double score_pl(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset = {});
double score_l(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset = {});
double score_lpp(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset = {});
double score_tps(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset = {});
double score_pps(const ScoringTree& tree, NodeId truth, NodeId predicted, Offset offset = {});

enum class PairMetric { pl, l, lpp, tps, pps };

double score_pair(const ScoringTree& tree, PairMetric metric, NodeId truth, NodeId predicted,
                  Offset offset = {});

struct PrfScores {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

// Ancestor-set precision/recall/F over a pair multiset. The ancestor set of
// a node includes the node itself and excludes the root. Detection pairs are
// unsupported here.
PrfScores ancestor_prf(const ScoringTree& tree, std::span<const PredictionPair> pairs,
                       double beta = 1.0);

// Label-based conveniences.
inline double score_pl(const ScoringTree& t, std::string_view a, std::string_view b, Offset o = {}) {
    return score_pl(t, t.id_of(a), t.id_of(b), o);
}
inline double score_l(const ScoringTree& t, std::string_view a, std::string_view b, Offset o = {}) {
    return score_l(t, t.id_of(a), t.id_of(b), o);
}
inline double score_lpp(const ScoringTree& t, std::string_view a, std::string_view b, Offset o = {}) {
    return score_lpp(t, t.id_of(a), t.id_of(b), o);
}
inline double score_tps(const ScoringTree& t, std::string_view a, std::string_view b, Offset o = {}) {
    return score_tps(t, t.id_of(a), t.id_of(b), o);
}
inline double score_pps(const ScoringTree& t, std::string_view a, std::string_view b, Offset o = {}) {
    return score_pps(t, t.id_of(a), t.id_of(b), o);
}
inline double reward(const ScoringTree& t, std::string_view a, std::string_view b) {
    return reward(t, t.id_of(a), t.id_of(b));
}
inline double penalty(const ScoringTree& t, std::string_view a, std::string_view b) {
    return penalty(t, t.id_of(a), t.id_of(b));
}

}  // namespace hiscore
