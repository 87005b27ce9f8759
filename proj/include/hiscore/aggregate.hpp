#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hiscore/pairwise.hpp"
#include "hiscore/tree.hpp"

namespace hiscore {

// Per-cell scoring runs either on a single thread (reference path) or as an
// OpenMP-parallel kernel. Both produce bit-identical results: scores are
// written to a per-cell buffer and reduced serially in declaration order.
enum class Execution { serial, parallel };

// Confusion matrix: counts per (truth, predicted) ClassRef pair over an
// ordered class list. The no-detection marker may appear as a class; the
// (none, none) cell must stay zero.
class PredictionCounts {
public:
    PredictionCounts() = default;

    // Declares a class without adding counts (fixes its position).
    void declare(const ClassRef& cls);
    void add(const ClassRef& truth, const ClassRef& predicted, std::uint64_t count = 1);

    static PredictionCounts from_pairs(std::span<const PredictionPair> pairs);

    const std::vector<ClassRef>& classes() const { return classes_; }
    std::uint64_t count(const ClassRef& truth, const ClassRef& predicted) const;
    std::uint64_t total() const { return total_; }

    struct Cell {
        const ClassRef* truth;
        const ClassRef* predicted;
        std::uint64_t count;
    };
    // Non-zero cells in row-major declaration order.
    std::vector<Cell> cells() const;

private:
    std::size_t index_of(const ClassRef& cls) const;  // npos when absent
    std::size_t intern(const ClassRef& cls);

    std::vector<ClassRef> classes_;
    std::map<ClassRef, std::size_t> index_;
    std::size_t capacity_ = 0;           // grid stride; grows geometrically
    std::vector<std::uint64_t> counts_;  // dense capacity x capacity, row-major
    std::uint64_t total_ = 0;
};

// Count-weighted mean of per-pair scores over all matrix cells.
double micro_mean(const ScoringTree& tree, const PredictionCounts& counts, PairMetric metric,
                  Offset offset = {}, Execution exec = Execution::parallel);

struct HpHr {
    double precision = 0.0;  // bucket mean of PPS
    double recall = 0.0;     // bucket mean of TPS
    std::uint64_t bucket = 0;
};

// Per-node precision/recall buckets: every pair where the node appears as
// truth or prediction (once for identity pairs); detection pairs contribute
// a zero score to the bucket of their labeled member. Nodes with empty
// buckets are omitted. Results ordered by node id.
std::vector<std::pair<NodeId, HpHr>> per_class_hp_hr(const ScoringTree& tree,
                                                     const PredictionCounts& counts,
                                                     Offset offset = {},
                                                     Execution exec = Execution::parallel);

struct HfBetaResult {
    std::vector<std::pair<NodeId, double>> per_class;
    double overall = 0.0;  // unweighted mean over nodes with non-empty buckets
};

HfBetaResult hf_beta(const ScoringTree& tree, const PredictionCounts& counts, Offset offset = {},
                     double beta = 1.0, Execution exec = Execution::parallel);

// Harmonic mean of the micro-averaged PPS and TPS scores; 0 when both are 0.
double hf1_micro(const ScoringTree& tree, const PredictionCounts& counts, Offset offset = {},
                 Execution exec = Execution::parallel);

struct FlatScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Flat per-class precision/recall/F1 with the 0/0 -> 1 convention for
// undefined precision or recall (F1 is 0 when P + R = 0). The no-detection
// marker participates as an ordinary class when declared.
std::vector<std::pair<ClassRef, FlatScores>> flat_per_class(const PredictionCounts& counts);
FlatScores flat_macro(const PredictionCounts& counts);
FlatScores flat_micro(const PredictionCounts& counts);

enum class Metric { pl, l, lpp, tps, pps, hf1_micro, flat };
enum class Averaging { micro, macro_flat_only };

struct MetricConfig {
    Metric metric = Metric::lpp;
    Offset offset{};
    double beta = 1.0;
    Averaging averaging = Averaging::micro;
};

struct EvaluationReport {
    MetricConfig config;
    double overall = 0.0;
    std::uint64_t total_pairs = 0;
    // Per-class values where the metric defines them (TPS/PPS buckets,
    // per-class hF, flat per-class F1), keyed by label; empty label = none.
    std::vector<std::pair<std::string, double>> per_class;
    // Named companion values (flat macro/micro rows, hF1 factors).
    std::vector<std::pair<std::string, double>> extras;
};

EvaluationReport evaluate(const ScoringTree& tree, const PredictionCounts& counts,
                          const MetricConfig& config, Execution exec = Execution::parallel);

}  // namespace hiscore
