#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hiscore/aggregate.hpp"
#include "hiscore/tree.hpp"

namespace hiscore::harness {

// Edge-weight families for the bundled twelve-node label tree, tuning
// whether errors near the root or near the leaves are penalized harder.
enum class WeightStrategy { decreasing, non_increasing, increasing };

enum class AbstractModel { m1, m2, m3, m3b, m3c, m4, m4b, m4c };

inline constexpr std::array<AbstractModel, 8> kAllModels = {
    AbstractModel::m1, AbstractModel::m2,  AbstractModel::m3, AbstractModel::m3b,
    AbstractModel::m3c, AbstractModel::m4, AbstractModel::m4b, AbstractModel::m4c,
};

std::string_view model_name(AbstractModel model);
std::string_view strategy_name(WeightStrategy strategy);

// The fixed tree shape: root A, children B and C; B over leaves D, E; C over
// F (leaves H, I) and G (leaves J, K, L).
std::vector<Edge> example_tree_edges();
// Shape with uniform per-path weights.
ScoringTree example_tree();

// Weighted edge lists are plain data so callers can tweak them and rebuild.
std::vector<Edge> strategy_edges(WeightStrategy strategy);
ScoringTree weighted_tree(WeightStrategy strategy);

// The eight bundled confusion matrices (100 samples per truth label; the
// b-variants convert 10% of predictions to missed detections, the c-variants
// add 10% ghost detections spread evenly over the labels).
PredictionCounts model_matrix(AbstractModel model);

// How a reproduced cell is checked against the bundled reference value.
enum class CellCheck {
    verified,         // must match the reference within 0.005
    boundary,         // reference sits on a rounding edge; matched within 0.015
    known_deviation,  // reference is not reproducible from the stated formulas
    exact_one,        // must equal 1.0 exactly
    unverified,       // informational only
};

enum class CellAnnotation { match, boundary, known_deviation, mismatch };

struct TableCell {
    double value = 0.0;      // computed, full precision
    double reference = 0.0;  // bundled two-decimal reference value
    CellCheck check = CellCheck::unverified;
    CellAnnotation annotation = CellAnnotation::match;
};

inline constexpr int kTableRows = 22;
inline constexpr int kTableCols = 8;

struct ScoreTable {
    double offset = 0.0;
    std::array<std::string, kTableRows> row_labels;
    std::array<std::string, kTableCols> column_labels;
    std::array<std::array<TableCell, kTableCols>, kTableRows> cells;
};

// Recomputes the full score table for offset 0 or -1 over all eight models
// and annotates every cell against the bundled reference values.
// Deterministic: repeated calls produce identical values bit for bit.
ScoreTable reproduce_table(double offset, Execution exec = Execution::parallel);

}  // namespace hiscore::harness
