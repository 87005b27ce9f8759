#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hiscore/aggregate.hpp"
#include "hiscore/harness.hpp"
#include "hiscore/tree.hpp"

namespace hiscore::io {

// Tree files are JSON objects with exactly two keys:
//   root:  root label (string)
//   edges: array of [parent, child, weight] triples; the weight may be
//          omitted ([parent, child]) when building with uniform weights
// Unknown keys are rejected.
struct TreeDocument {
    std::string root;
    std::vector<Edge> edges;
};

TreeDocument parse_tree_json(const std::string& text);
ScoringTree read_tree(const std::string& text, const BuildOptions& options = {});
// Canonical serialization: edge order preserved, weights emitted with
// shortest round-trip precision. parse(write(t)) reproduces t bit for bit.
std::string write_tree(const ScoringTree& tree);

struct ParsedPair {
    PredictionPair pair;
    int line = 0;
};

// Delimited pair rows under a mandatory `truth,predicted,count` header. The
// count is optional per row (default 1). An empty field encodes the
// no-detection marker unless `none_token` overrides it. Accepts LF or CRLF.
std::vector<ParsedPair> read_pairs_csv(std::istream& in, const std::string& none_token = "");

// Confusion-matrix CSV: header `truth,<class>,...` declares the class list;
// each row is a truth label followed by one count per declared class.
PredictionCounts read_matrix_csv(std::istream& in, const std::string& none_token = "");

// Score-table renderers for the reproduce command.
std::string format_table_text(const harness::ScoreTable& table);
std::string format_table_csv(const harness::ScoreTable& table);

std::string format_double(double value);  // shortest round-trip decimal form
std::string format_fixed2(double value);  // two decimals, ties to even

}  // namespace hiscore::io
