#include "hiscore/harness.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

namespace hiscore::harness {

namespace {

struct WeightedEdge {
    const char* parent;
    const char* child;
    int weight_hundredths;  // exact decimals keep leaf path sums at exactly 1
};

constexpr WeightedEdge kShape[] = {
    {"A", "B", 0}, {"A", "C", 0}, {"B", "D", 0}, {"B", "E", 0}, {"C", "F", 0}, {"C", "G", 0},
    {"F", "H", 0}, {"F", "I", 0}, {"G", "J", 0}, {"G", "K", 0}, {"G", "L", 0},
};

// 90% of the weight on root edges, shrinking by a decade per level.
constexpr int kDecreasing[] = {90, 90, 10, 10, 9, 9, 1, 1, 1, 1, 1};
// Equal split along each path, never growing toward the leaves.
constexpr int kNonIncreasing[] = {50, 50, 50, 50, 25, 25, 25, 25, 25, 25, 25};
// 10% on root edges, growing toward the leaves.
constexpr int kIncreasing[] = {10, 10, 90, 90, 20, 20, 70, 70, 70, 70, 70};

struct MatrixRow {
    const char* truth;  // empty string = no-detection row
    std::initializer_list<std::pair<const char*, int>> predictions;
};

constexpr const char* kLabels[] = {"B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L"};

PredictionCounts build_matrix(std::initializer_list<MatrixRow> rows, bool declare_none) {
    PredictionCounts counts;
    for (const char* label : kLabels) counts.declare(ClassRef::node(label));
    if (declare_none) counts.declare(ClassRef::none());
    for (const MatrixRow& row : rows) {
        const ClassRef truth =
            row.truth[0] == '\0' ? ClassRef::none() : ClassRef::node(row.truth);
        for (const auto& [pred, count] : row.predictions) {
            const ClassRef predicted =
                pred[0] == '\0' ? ClassRef::none() : ClassRef::node(pred);
            counts.add(truth, predicted, static_cast<std::uint64_t>(count));
        }
    }
    return counts;
}

PredictionCounts matrix_m1() {
    PredictionCounts counts;
    for (const char* label : kLabels) counts.declare(ClassRef::node(label));
    for (const char* label : kLabels) counts.add(ClassRef::node(label), ClassRef::node(label), 100);
    return counts;
}

PredictionCounts matrix_m2() {
    return build_matrix(
        {
            {"B", {{"L", 100}}}, {"C", {{"E", 100}}}, {"D", {{"K", 100}}}, {"E", {{"K", 100}}},
            {"F", {{"E", 100}}}, {"G", {{"E", 100}}}, {"H", {{"E", 100}}}, {"I", {{"E", 100}}},
            {"J", {{"E", 100}}}, {"K", {{"E", 100}}}, {"L", {{"E", 100}}},
        },
        false);
}

PredictionCounts matrix_m3() {
    return build_matrix(
        {
            {"B", {{"B", 100}}}, {"C", {{"C", 100}}}, {"D", {{"B", 100}}}, {"E", {{"B", 100}}},
            {"F", {{"C", 100}}}, {"G", {{"C", 100}}},
            {"H", {{"C", 50}, {"F", 50}}}, {"I", {{"C", 50}, {"F", 50}}},
            {"J", {{"C", 50}, {"G", 50}}}, {"K", {{"C", 50}, {"G", 50}}},
            {"L", {{"C", 50}, {"G", 50}}},
        },
        false);
}

PredictionCounts matrix_m4() {
    return build_matrix(
        {
            {"B", {{"D", 50}, {"E", 50}}},
            {"C", {{"H", 20}, {"I", 20}, {"J", 20}, {"K", 20}, {"L", 20}}},
            {"D", {{"D", 30}, {"E", 70}}}, {"E", {{"D", 70}, {"E", 30}}},
            {"F", {{"H", 50}, {"I", 50}}},
            {"G", {{"J", 33}, {"K", 33}, {"L", 34}}},
            {"H", {{"H", 28}, {"I", 72}}}, {"I", {{"H", 72}, {"I", 28}}},
            {"J", {{"J", 28}, {"K", 36}, {"L", 36}}},
            {"K", {{"J", 36}, {"K", 28}, {"L", 36}}},
            {"L", {{"J", 36}, {"K", 36}, {"L", 28}}},
        },
        false);
}

PredictionCounts matrix_m3b() {
    return build_matrix(
        {
            {"B", {{"B", 90}, {"", 10}}}, {"C", {{"C", 90}, {"", 10}}},
            {"D", {{"B", 90}, {"", 10}}}, {"E", {{"B", 90}, {"", 10}}},
            {"F", {{"C", 90}, {"", 10}}}, {"G", {{"C", 90}, {"", 10}}},
            {"H", {{"C", 45}, {"F", 45}, {"", 10}}}, {"I", {{"C", 45}, {"F", 45}, {"", 10}}},
            {"J", {{"C", 45}, {"G", 45}, {"", 10}}}, {"K", {{"C", 45}, {"G", 45}, {"", 10}}},
            {"L", {{"C", 45}, {"G", 45}, {"", 10}}},
        },
        true);
}

PredictionCounts matrix_m4b() {
    return build_matrix(
        {
            {"B", {{"D", 45}, {"E", 45}, {"", 10}}},
            {"C", {{"H", 18}, {"I", 18}, {"J", 18}, {"K", 18}, {"L", 18}, {"", 10}}},
            {"D", {{"D", 27}, {"E", 63}, {"", 10}}}, {"E", {{"D", 63}, {"E", 27}, {"", 10}}},
            {"F", {{"H", 45}, {"I", 45}, {"", 10}}},
            {"G", {{"J", 30}, {"K", 30}, {"L", 30}, {"", 10}}},
            {"H", {{"H", 25}, {"I", 65}, {"", 10}}}, {"I", {{"H", 65}, {"I", 25}, {"", 10}}},
            {"J", {{"J", 25}, {"K", 32}, {"L", 33}, {"", 10}}},
            {"K", {{"J", 33}, {"K", 25}, {"L", 32}, {"", 10}}},
            {"L", {{"J", 32}, {"K", 33}, {"L", 25}, {"", 10}}},
        },
        true);
}

PredictionCounts with_ghost_row(PredictionCounts counts) {
    counts.declare(ClassRef::none());
    for (const char* label : kLabels) counts.add(ClassRef::none(), ClassRef::node(label), 10);
    return counts;
}

// Reference score tables (two-decimal values) the reproduce command checks
// against, one per offset, in row-major table order.
constexpr double kReference0[kTableRows][kTableCols] = {
    {1.00, 0.00, 0.18, 0.23, 0.17, 0.18, 0.24, 0.17},  // R_M
    {1.00, 0.73, 0.68, 0.63, 0.13, 0.48, 0.44, 0.18},  // P_M
    {1.00, 0.00, 0.07, 0.07, 0.07, 0.14, 0.13, 0.13},  // F1_M
    {1.00, 0.00, 0.18, 0.16, 0.17, 0.18, 0.17, 0.17},  // R_mu
    {1.00, 0.00, 0.18, 0.16, 0.17, 0.18, 0.17, 0.17},  // P_mu
    {1.00, 0.00, 0.18, 0.16, 0.17, 0.18, 0.17, 0.17},  // F1_mu
    {1.00, 0.09, 0.79, 0.71, 0.72, 0.73, 0.66, 0.66},  // PL
    {0.98, 0.00, 0.92, 0.83, 0.84, 0.96, 0.88, 0.88},  // D-L
    {0.99, 0.01, 0.95, 0.86, 0.87, 0.97, 0.88, 0.88},  // D-LPP
    {1.00, 0.03, 0.96, 0.87, 0.87, 0.98, 0.89, 0.89},  // D-TPS
    {1.00, 0.04, 0.98, 0.88, 0.89, 0.97, 0.88, 0.88},  // D-PPS
    {1.00, 0.03, 0.97, 0.87, 0.88, 0.97, 0.89, 0.89},  // D-hF1
    {0.86, 0.00, 0.56, 0.50, 0.51, 0.72, 0.65, 0.65},  // N-L
    {0.95, 0.05, 0.75, 0.68, 0.68, 0.76, 0.69, 0.69},  // N-LPP
    {1.00, 0.19, 0.84, 0.76, 0.76, 0.83, 0.75, 0.75},  // N-TPS
    {1.00, 0.28, 0.86, 0.77, 0.78, 0.82, 0.75, 0.75},  // N-PPS
    {1.00, 0.23, 0.85, 0.76, 0.77, 0.83, 0.75, 0.75},  // N-hF1
    {0.71, 0.00, 0.15, 0.13, 0.13, 0.37, 0.33, 0.33},  // I-L
    {0.90, 0.10, 0.53, 0.47, 0.48, 0.46, 0.42, 0.42},  // I-LPP
    {1.00, 0.58, 0.89, 0.80, 0.81, 0.74, 0.67, 0.67},  // I-TPS
    {1.00, 0.77, 0.62, 0.56, 0.56, 0.87, 0.79, 0.79},  // I-PPS
    {1.00, 0.66, 0.73, 0.66, 0.66, 0.80, 0.73, 0.73},  // I-hF1
};

constexpr double kReferenceNeg1[kTableRows][kTableCols] = {
    {1.00, 0.00, 0.18, 0.23, 0.17, 0.18, 0.24, 0.17},  // R_M
    {1.00, 0.73, 0.68, 0.63, 0.13, 0.48, 0.44, 0.18},  // P_M
    {1.00, 0.00, 0.07, 0.07, 0.07, 0.14, 0.13, 0.13},  // F1_M
    {1.00, 0.00, 0.18, 0.16, 0.17, 0.18, 0.17, 0.17},  // R_mu
    {1.00, 0.00, 0.18, 0.16, 0.17, 0.18, 0.17, 0.17},  // P_mu
    {1.00, 0.00, 0.18, 0.16, 0.17, 0.18, 0.17, 0.17},  // F1_mu
    {1.00, 0.24, 0.83, 0.74, 0.75, 0.77, 0.70, 0.70},  // PL
    {0.99, 0.50, 0.96, 0.86, 0.87, 0.98, 0.89, 0.89},  // D-L
    {0.99, 0.25, 0.97, 0.87, 0.88, 0.98, 0.89, 0.89},  // D-LPP
    {1.00, 0.26, 0.97, 0.87, 0.88, 0.98, 0.89, 0.89},  // D-TPS
    {1.00, 0.28, 0.98, 0.89, 0.89, 0.98, 0.89, 0.89},  // D-PPS
    {1.00, 0.27, 0.98, 0.88, 0.89, 0.98, 0.89, 0.89},  // D-hF1
    {0.93, 0.50, 0.78, 0.70, 0.71, 0.86, 0.78, 0.78},  // N-L
    {0.97, 0.28, 0.81, 0.73, 0.74, 0.82, 0.75, 0.75},  // N-LPP
    {1.00, 0.35, 0.87, 0.78, 0.79, 0.86, 0.79, 0.79},  // N-TPS
    {1.00, 0.43, 0.88, 0.80, 0.80, 0.86, 0.78, 0.78},  // N-PPS
    {1.00, 0.39, 0.88, 0.79, 0.80, 0.86, 0.78, 0.78},  // N-hF1
    {0.85, 0.50, 0.57, 0.52, 0.52, 0.68, 0.62, 0.62},  // I-L
    {0.93, 0.32, 0.65, 0.58, 0.59, 0.60, 0.54, 0.54},  // I-LPP
    {1.00, 0.61, 0.90, 0.81, 0.82, 0.76, 0.69, 0.69},  // I-TPS
    {1.00, 0.79, 0.65, 0.58, 0.59, 0.88, 0.80, 0.80},  // I-PPS
    {1.00, 0.69, 0.75, 0.68, 0.69, 0.82, 0.74, 0.74},  // I-hF1
};

constexpr const char* kRowLabels[kTableRows] = {
    "R_M",   "P_M",   "F1_M",  "R_mu",  "P_mu",  "F1_mu", "PL",    "D-L",
    "D-LPP", "D-TPS", "D-PPS", "D-hF1", "N-L",   "N-LPP", "N-TPS", "N-PPS",
    "N-hF1", "I-L",   "I-LPP", "I-TPS", "I-PPS", "I-hF1",
};

constexpr const char* kColumnLabels[kTableCols] = {"1", "2", "3", "3b", "3c", "4", "4b", "4c"};

enum Row {
    kRM, kPM, kF1M, kRmu, kPmu, kF1mu, kPL, kDL, kDLPP, kDTPS, kDPPS, kDhF,
    kNL, kNLPP, kNTPS, kNPPS, kNhF, kIL, kILPP, kITPS, kIPPS, kIhF,
};

CellCheck cell_check(int row, int col, double offset) {
    const bool neg = offset < 0.0;
    switch (row) {
        case kNTPS: case kNPPS: case kNhF: case kITPS: case kIPPS: case kIhF:
            return col == 0 ? CellCheck::exact_one : CellCheck::known_deviation;
        case kPL:
            return col == 6 ? CellCheck::boundary : CellCheck::verified;
        case kDLPP:
            return (col == 1 && neg) ? CellCheck::boundary : CellCheck::verified;
        case kDTPS:
            if (col == 3 || col == 6) return CellCheck::boundary;
            if (col == 1) return neg ? CellCheck::verified : CellCheck::known_deviation;
            return CellCheck::verified;
        case kDPPS:
            if (col == 6) return CellCheck::boundary;
            if (col == 1) return neg ? CellCheck::boundary : CellCheck::known_deviation;
            if (col == 3) return CellCheck::unverified;
            return CellCheck::verified;
        case kDhF:
            return (col == 1 || col == 3 || col == 6) ? CellCheck::unverified
                                                      : CellCheck::verified;
        default:
            return CellCheck::verified;
    }
}

CellAnnotation annotate(const TableCell& cell) {
    const double diff = std::abs(cell.value - cell.reference);
    switch (cell.check) {
        case CellCheck::verified:
            return diff <= 0.005 + 1e-12 ? CellAnnotation::match : CellAnnotation::mismatch;
        case CellCheck::boundary:
            return diff <= 0.015 + 1e-12 ? CellAnnotation::boundary : CellAnnotation::mismatch;
        case CellCheck::known_deviation:
            return CellAnnotation::known_deviation;
        case CellCheck::exact_one:
            return cell.value == 1.0 ? CellAnnotation::match : CellAnnotation::mismatch;
        case CellCheck::unverified:
            return diff <= 0.005 + 1e-12 ? CellAnnotation::match : CellAnnotation::mismatch;
    }
    return CellAnnotation::mismatch;
}

}  // namespace

std::string_view model_name(AbstractModel model) {
    switch (model) {
        case AbstractModel::m1: return "1";
        case AbstractModel::m2: return "2";
        case AbstractModel::m3: return "3";
        case AbstractModel::m3b: return "3b";
        case AbstractModel::m3c: return "3c";
        case AbstractModel::m4: return "4";
        case AbstractModel::m4b: return "4b";
        case AbstractModel::m4c: return "4c";
    }
    return "?";
}

std::string_view strategy_name(WeightStrategy strategy) {
    switch (strategy) {
        case WeightStrategy::decreasing: return "decreasing";
        case WeightStrategy::non_increasing: return "non-increasing";
        case WeightStrategy::increasing: return "increasing";
    }
    return "?";
}

std::vector<Edge> example_tree_edges() {
    std::vector<Edge> edges;
    for (const WeightedEdge& e : kShape) edges.push_back({e.parent, e.child, std::nullopt});
    return edges;
}

ScoringTree example_tree() {
    BuildOptions options;
    options.uniform_weights = true;
    return ScoringTree::build(example_tree_edges(), options);
}

std::vector<Edge> strategy_edges(WeightStrategy strategy) {
    const int* weights = nullptr;
    switch (strategy) {
        case WeightStrategy::decreasing: weights = kDecreasing; break;
        case WeightStrategy::non_increasing: weights = kNonIncreasing; break;
        case WeightStrategy::increasing: weights = kIncreasing; break;
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < std::size(kShape); ++i) {
        edges.push_back({kShape[i].parent, kShape[i].child, weights[i] / 100.0});
    }
    return edges;
}

ScoringTree weighted_tree(WeightStrategy strategy) {
    return ScoringTree::build(strategy_edges(strategy));
}

PredictionCounts model_matrix(AbstractModel model) {
    switch (model) {
        case AbstractModel::m1: return matrix_m1();
        case AbstractModel::m2: return matrix_m2();
        case AbstractModel::m3: return matrix_m3();
        case AbstractModel::m3b: return matrix_m3b();
        case AbstractModel::m3c: return with_ghost_row(matrix_m3());
        case AbstractModel::m4: return matrix_m4();
        case AbstractModel::m4b: return matrix_m4b();
        case AbstractModel::m4c: return with_ghost_row(matrix_m4());
    }
    throw DataError(errc::unknown_model, "unknown abstract model");
}

ScoreTable reproduce_table(double offset, Execution exec) {
    const double (*reference)[kTableCols] = nullptr;
    if (offset == 0.0) reference = kReference0;
    else if (offset == -1.0) reference = kReferenceNeg1;
    else throw DataError(errc::invalid_argument, "reference tables exist for offsets 0 and -1");

    const Offset off(offset);
    const ScoringTree shape = example_tree();
    const ScoringTree trees[3] = {
        weighted_tree(WeightStrategy::decreasing),
        weighted_tree(WeightStrategy::non_increasing),
        weighted_tree(WeightStrategy::increasing),
    };

    ScoreTable table;
    table.offset = offset;
    for (int r = 0; r < kTableRows; ++r) table.row_labels[r] = kRowLabels[r];
    for (int c = 0; c < kTableCols; ++c) table.column_labels[c] = kColumnLabels[c];

    for (int c = 0; c < kTableCols; ++c) {
        const PredictionCounts matrix = model_matrix(kAllModels[c]);
        const FlatScores macro = flat_macro(matrix);
        const FlatScores micro = flat_micro(matrix);
        std::array<double, kTableRows> column;
        column[kRM] = macro.recall;
        column[kPM] = macro.precision;
        column[kF1M] = macro.f1;
        column[kRmu] = micro.recall;
        column[kPmu] = micro.precision;
        column[kF1mu] = micro.f1;
        column[kPL] = micro_mean(shape, matrix, PairMetric::pl, off, exec);
        for (int s = 0; s < 3; ++s) {
            const int base = kDL + 5 * s;
            column[base + 0] = micro_mean(trees[s], matrix, PairMetric::l, off, exec);
            column[base + 1] = micro_mean(trees[s], matrix, PairMetric::lpp, off, exec);
            column[base + 2] = micro_mean(trees[s], matrix, PairMetric::tps, off, exec);
            column[base + 3] = micro_mean(trees[s], matrix, PairMetric::pps, off, exec);
            column[base + 4] = hf1_micro(trees[s], matrix, off, exec);
        }
        for (int r = 0; r < kTableRows; ++r) {
            TableCell& cell = table.cells[r][c];
            cell.value = column[r];
            cell.reference = reference[r][c];
            cell.check = cell_check(r, c, offset);
            cell.annotation = annotate(cell);
        }
    }
    return table;
}

}  // namespace hiscore::harness
