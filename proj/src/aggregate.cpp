#include "hiscore/aggregate.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

namespace hiscore {

namespace {

constexpr std::size_t kNpos = std::numeric_limits<std::size_t>::max();

// Matrix cell resolved against a tree; kNoNode marks the no-detection side.
struct ResolvedCell {
    NodeId truth;
    NodeId predicted;
    std::uint64_t count;
};

std::vector<ResolvedCell> resolve_cells(const ScoringTree& tree, const PredictionCounts& counts) {
    if (counts.total() == 0)
        throw DataError(errc::empty_matrix, "prediction counts are empty");
    auto resolve = [&](const ClassRef& ref) -> NodeId {
        if (ref.is_none()) return kNoNode;
        if (!tree.contains(ref.label()))
            throw DataError(errc::unknown_label, "label '" + ref.label() + "' is not in the tree");
        NodeId id = tree.id_of(ref.label());
        if (id == tree.root())
            throw DataError(errc::root_as_label,
                            "root '" + ref.label() + "' cannot be used as a label");
        return id;
    };
    std::vector<ResolvedCell> cells;
    for (const PredictionCounts::Cell& cell : counts.cells()) {
        cells.push_back({resolve(*cell.truth), resolve(*cell.predicted), cell.count});
    }
    return cells;
}

// Scores every cell into `out`, preserving cell order so downstream
// reductions are deterministic regardless of thread count. Cells are
// pre-validated; the scorer cannot throw here.
void score_cells(const ScoringTree& tree, const std::vector<ResolvedCell>& cells,
                 PairMetric metric, Offset offset, Execution exec, std::vector<double>& out) {
    const auto n = static_cast<std::ptrdiff_t>(cells.size());
    out.resize(cells.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) if (n >= 512)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            out[i] = score_pair(tree, metric, cells[i].truth, cells[i].predicted, offset);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            out[i] = score_pair(tree, metric, cells[i].truth, cells[i].predicted, offset);
        }
    }
}

double weighted_mean(const std::vector<ResolvedCell>& cells, const std::vector<double>& scores) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        num += static_cast<double>(cells[i].count) * scores[i];
        den += static_cast<double>(cells[i].count);
    }
    return num / den;
}

double micro_mean_resolved(const ScoringTree& tree, const std::vector<ResolvedCell>& cells,
                           PairMetric metric, Offset offset, Execution exec) {
    std::vector<double> scores;
    score_cells(tree, cells, metric, offset, exec, scores);
    return weighted_mean(cells, scores);
}

std::vector<std::pair<NodeId, HpHr>> per_class_resolved(const ScoringTree& tree,
                                                        const std::vector<ResolvedCell>& cells,
                                                        Offset offset, Execution exec) {
    std::vector<double> tps_scores, pps_scores;
    score_cells(tree, cells, PairMetric::tps, offset, exec, tps_scores);
    score_cells(tree, cells, PairMetric::pps, offset, exec, pps_scores);

    const std::size_t n = tree.node_count();
    std::vector<double> sum_tps(n, 0.0), sum_pps(n, 0.0);
    std::vector<std::uint64_t> bucket(n, 0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const ResolvedCell& cell = cells[i];
        const double c = static_cast<double>(cell.count);
        auto put = [&](NodeId node) {
            bucket[node] += cell.count;
            sum_tps[node] += c * tps_scores[i];
            sum_pps[node] += c * pps_scores[i];
        };
        if (cell.truth != kNoNode) put(cell.truth);
        if (cell.predicted != kNoNode && cell.predicted != cell.truth) put(cell.predicted);
    }

    std::vector<std::pair<NodeId, HpHr>> out;
    for (std::size_t v = 0; v < n; ++v) {
        if (bucket[v] == 0) continue;
        const double d = static_cast<double>(bucket[v]);
        out.emplace_back(static_cast<NodeId>(v), HpHr{sum_pps[v] / d, sum_tps[v] / d, bucket[v]});
    }
    return out;
}

double f_measure(double precision, double recall, double beta) {
    const double b2 = beta * beta;
    const double denom = b2 * precision + recall;
    return denom > 0.0 ? (b2 + 1.0) * precision * recall / denom : 0.0;
}

}  // namespace

void PredictionCounts::declare(const ClassRef& cls) { intern(cls); }

std::size_t PredictionCounts::index_of(const ClassRef& cls) const {
    const auto it = index_.find(cls);
    return it == index_.end() ? kNpos : it->second;
}

std::size_t PredictionCounts::intern(const ClassRef& cls) {
    const auto it = index_.find(cls);
    if (it != index_.end()) return it->second;
    if (classes_.size() == capacity_) {
        const std::size_t grown_capacity = capacity_ == 0 ? 4 : capacity_ * 2;
        std::vector<std::uint64_t> grown(grown_capacity * grown_capacity, 0);
        for (std::size_t r = 0; r < classes_.size(); ++r) {
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                grown[r * grown_capacity + c] = counts_[r * capacity_ + c];
            }
        }
        counts_ = std::move(grown);
        capacity_ = grown_capacity;
    }
    const std::size_t idx = classes_.size();
    classes_.push_back(cls);
    index_.emplace(cls, idx);
    return idx;
}

void PredictionCounts::add(const ClassRef& truth, const ClassRef& predicted, std::uint64_t count) {
    if (truth.is_none() && predicted.is_none())
        throw DataError(errc::invalid_argument,
                        "a prediction pair cannot be no-detection on both sides");
    const std::size_t t = intern(truth);
    const std::size_t p = intern(predicted);
    counts_[t * capacity_ + p] += count;
    total_ += count;
}

PredictionCounts PredictionCounts::from_pairs(std::span<const PredictionPair> pairs) {
    PredictionCounts counts;
    for (const PredictionPair& pair : pairs) {
        counts.add(pair.truth, pair.predicted, pair.count);
    }
    return counts;
}

std::uint64_t PredictionCounts::count(const ClassRef& truth, const ClassRef& predicted) const {
    const std::size_t t = index_of(truth);
    const std::size_t p = index_of(predicted);
    if (t == kNpos || p == kNpos) return 0;
    return counts_[t * capacity_ + p];
}

std::vector<PredictionCounts::Cell> PredictionCounts::cells() const {
    std::vector<Cell> out;
    const std::size_t n = classes_.size();
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t p = 0; p < n; ++p) {
            const std::uint64_t c = counts_[t * capacity_ + p];
            if (c > 0) out.push_back({&classes_[t], &classes_[p], c});
        }
    }
    return out;
}

double micro_mean(const ScoringTree& tree, const PredictionCounts& counts, PairMetric metric,
                  Offset offset, Execution exec) {
    return micro_mean_resolved(tree, resolve_cells(tree, counts), metric, offset, exec);
}

std::vector<std::pair<NodeId, HpHr>> per_class_hp_hr(const ScoringTree& tree,
                                                     const PredictionCounts& counts, Offset offset,
                                                     Execution exec) {
    return per_class_resolved(tree, resolve_cells(tree, counts), offset, exec);
}

HfBetaResult hf_beta(const ScoringTree& tree, const PredictionCounts& counts, Offset offset,
                     double beta, Execution exec) {
    if (!(beta >= 0.0))
        throw DataError(errc::invalid_argument, "beta must be >= 0");
    HfBetaResult result;
    double sum = 0.0;
    for (const auto& [node, hp_hr] : per_class_hp_hr(tree, counts, offset, exec)) {
        const double f = f_measure(hp_hr.precision, hp_hr.recall, beta);
        result.per_class.emplace_back(node, f);
        sum += f;
    }
    result.overall = result.per_class.empty() ? 0.0 : sum / result.per_class.size();
    return result;
}

double hf1_micro(const ScoringTree& tree, const PredictionCounts& counts, Offset offset,
                 Execution exec) {
    const auto cells = resolve_cells(tree, counts);
    const double tps = micro_mean_resolved(tree, cells, PairMetric::tps, offset, exec);
    const double pps = micro_mean_resolved(tree, cells, PairMetric::pps, offset, exec);
    return tps + pps > 0.0 ? 2.0 * pps * tps / (pps + tps) : 0.0;
}

std::vector<std::pair<ClassRef, FlatScores>> flat_per_class(const PredictionCounts& counts) {
    if (counts.total() == 0)
        throw DataError(errc::empty_matrix, "prediction counts are empty");
    const auto& classes = counts.classes();
    std::vector<std::uint64_t> row(classes.size(), 0), col(classes.size(), 0),
        diag(classes.size(), 0);
    for (const PredictionCounts::Cell& cell : counts.cells()) {
        const auto t = static_cast<std::size_t>(cell.truth - classes.data());
        const auto p = static_cast<std::size_t>(cell.predicted - classes.data());
        row[t] += cell.count;
        col[p] += cell.count;
        if (t == p) diag[t] += cell.count;
    }
    std::vector<std::pair<ClassRef, FlatScores>> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const double tp = static_cast<double>(diag[i]);
        FlatScores s;
        // No predictions (or no true samples) means no errors of that kind.
        s.precision = col[i] > 0 ? tp / static_cast<double>(col[i]) : 1.0;
        s.recall = row[i] > 0 ? tp / static_cast<double>(row[i]) : 1.0;
        s.f1 = s.precision + s.recall > 0.0
                   ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
                   : 0.0;
        out.emplace_back(classes[i], s);
    }
    return out;
}

FlatScores flat_macro(const PredictionCounts& counts) {
    const auto per_class = flat_per_class(counts);
    FlatScores sum;
    for (const auto& [cls, s] : per_class) {
        sum.precision += s.precision;
        sum.recall += s.recall;
        sum.f1 += s.f1;
    }
    const double n = static_cast<double>(per_class.size());
    return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

FlatScores flat_micro(const PredictionCounts& counts) {
    if (counts.total() == 0)
        throw DataError(errc::empty_matrix, "prediction counts are empty");
    const auto& classes = counts.classes();
    std::uint64_t tp = 0;
    for (const ClassRef& cls : classes) tp += counts.count(cls, cls);
    // Pooled precision and recall share the total pair count as denominator,
    // so the harmonic mean collapses onto the same value.
    const double pooled_score = static_cast<double>(tp) / static_cast<double>(counts.total());
    return {pooled_score, pooled_score, pooled_score};
}

EvaluationReport evaluate(const ScoringTree& tree, const PredictionCounts& counts,
                          const MetricConfig& config, Execution exec) {
    if (config.averaging == Averaging::macro_flat_only && config.metric != Metric::flat)
        throw DataError(errc::invalid_argument,
                        "macro averaging is only defined for the flat metric");
    if (!(config.beta >= 0.0))
        throw DataError(errc::invalid_argument, "beta must be >= 0");
    EvaluationReport report;
    report.config = config;
    report.total_pairs = counts.total();

    auto label_of = [&](NodeId node) { return tree.label(node); };

    switch (config.metric) {
        case Metric::pl:
        case Metric::l:
        case Metric::lpp: {
            const auto metric = config.metric == Metric::pl  ? PairMetric::pl
                                : config.metric == Metric::l ? PairMetric::l
                                                             : PairMetric::lpp;
            report.overall = micro_mean(tree, counts, metric, config.offset, exec);
            break;
        }
        case Metric::tps:
        case Metric::pps: {
            const auto metric =
                config.metric == Metric::tps ? PairMetric::tps : PairMetric::pps;
            report.overall = micro_mean(tree, counts, metric, config.offset, exec);
            for (const auto& [node, hp_hr] : per_class_hp_hr(tree, counts, config.offset, exec)) {
                report.per_class.emplace_back(
                    label_of(node), config.metric == Metric::tps ? hp_hr.recall : hp_hr.precision);
            }
            break;
        }
        case Metric::hf1_micro: {
            report.overall = hf1_micro(tree, counts, config.offset, exec);
            const double tps_mu = micro_mean(tree, counts, PairMetric::tps, config.offset, exec);
            const double pps_mu = micro_mean(tree, counts, PairMetric::pps, config.offset, exec);
            report.extras.emplace_back("tps_micro", tps_mu);
            report.extras.emplace_back("pps_micro", pps_mu);
            for (const auto& [node, f] : hf_beta(tree, counts, config.offset, config.beta, exec)
                                             .per_class) {
                report.per_class.emplace_back(label_of(node), f);
            }
            break;
        }
        case Metric::flat: {
            // Flat scoring never touches the tree, but labels must still be
            // resolvable so mixed-up inputs fail loudly.
            resolve_cells(tree, counts);
            const FlatScores macro = flat_macro(counts);
            const FlatScores micro = flat_micro(counts);
            report.overall =
                config.averaging == Averaging::macro_flat_only ? macro.f1 : micro.f1;
            report.extras.emplace_back("precision_macro", macro.precision);
            report.extras.emplace_back("recall_macro", macro.recall);
            report.extras.emplace_back("f1_macro", macro.f1);
            report.extras.emplace_back("precision_micro", micro.precision);
            report.extras.emplace_back("recall_micro", micro.recall);
            report.extras.emplace_back("f1_micro", micro.f1);
            for (const auto& [cls, s] : flat_per_class(counts)) {
                report.per_class.emplace_back(cls.is_none() ? std::string() : cls.label(), s.f1);
            }
            break;
        }
    }
    return report;
}

}  // namespace hiscore
