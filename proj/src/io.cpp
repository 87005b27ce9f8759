#include "hiscore/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace hiscore::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(int line, int column, const std::string& message) {
    throw DataError(errc::parse_error, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + message);
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::uint64_t parse_count(const std::string& field, int line) {
    std::uint64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        parse_fail(line, 1, "expected a non-negative integer count, got '" + field + "'");
    return value;
}

ClassRef field_to_ref(const std::string& field, const std::string& none_token) {
    if (none_token.empty() ? field.empty() : field == none_token) return ClassRef::none();
    return ClassRef::node(field);
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

TreeDocument parse_tree_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        parse_fail(line, column, e.what());
    }
    if (!doc.is_object()) throw DataError(errc::parse_error, "tree document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "root" && key != "edges")
            throw DataError(errc::parse_error, "unknown key '" + key + "' in tree document");
    }
    if (!doc.contains("root") || !doc["root"].is_string())
        throw DataError(errc::parse_error, "tree document needs a string 'root' field");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw DataError(errc::parse_error, "tree document needs an 'edges' array");

    TreeDocument out;
    out.root = doc["root"].get<std::string>();
    for (const json& entry : doc["edges"]) {
        if (!entry.is_array() || entry.size() < 2 || entry.size() > 3 ||
            !entry[0].is_string() || !entry[1].is_string())
            throw DataError(errc::parse_error,
                            "each edge must be [parent, child] or [parent, child, weight]");
        Edge edge{entry[0].get<std::string>(), entry[1].get<std::string>(), std::nullopt};
        if (entry.size() == 3) {
            if (!entry[2].is_number())
                throw DataError(errc::parse_error, "edge weight must be a number");
            edge.weight = entry[2].get<double>();
        }
        out.edges.push_back(std::move(edge));
    }
    return out;
}

ScoringTree read_tree(const std::string& text, const BuildOptions& options) {
    TreeDocument doc = parse_tree_json(text);
    ScoringTree tree = ScoringTree::build(doc.edges, options);
    if (tree.label(tree.root()) != doc.root) {
        const std::string msg = "declared root '" + doc.root + "' but edges imply root '" +
                                tree.label(tree.root()) + "'";
        throw ValidationError(errc::multiple_roots, msg, {std::string("MultipleRoots: ") + msg});
    }
    return tree;
}

std::string write_tree(const ScoringTree& tree) {
    json edges = json::array();
    for (const Edge& edge : tree.edges()) {
        edges.push_back(json::array({edge.parent, edge.child, edge.weight.value()}));
    }
    json doc;
    doc["root"] = tree.label(tree.root());
    doc["edges"] = edges;
    return doc.dump(2) + "\n";
}

std::vector<ParsedPair> read_pairs_csv(std::istream& in, const std::string& none_token) {
    std::string line;
    if (!read_line(in, line))
        throw DataError(errc::parse_error, "pairs file is empty; expected header truth,predicted,count");
    if (line != "truth,predicted,count")
        throw DataError(errc::parse_error,
                        "line 1, column 1: expected header 'truth,predicted,count', got '" + line + "'");
    std::vector<ParsedPair> pairs;
    int line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2 && fields.size() != 3)
            parse_fail(line_no, 1, "expected 2 or 3 fields, got " + std::to_string(fields.size()));
        PredictionPair pair;
        pair.truth = field_to_ref(fields[0], none_token);
        pair.predicted = field_to_ref(fields[1], none_token);
        pair.count = fields.size() == 3 ? parse_count(fields[2], line_no) : 1;
        if (pair.truth.is_none() && pair.predicted.is_none())
            parse_fail(line_no, 1, "a pair cannot be no-detection on both sides");
        pairs.push_back({std::move(pair), line_no});
    }
    return pairs;
}

PredictionCounts read_matrix_csv(std::istream& in, const std::string& none_token) {
    std::string line;
    if (!read_line(in, line))
        throw DataError(errc::parse_error, "matrix file is empty");
    const auto header = split_fields(line);
    if (header.size() < 2 || header[0] != "truth")
        throw DataError(errc::parse_error,
                        "line 1, column 1: matrix header must be 'truth,<class>,...'");
    std::vector<ClassRef> classes;
    PredictionCounts counts;
    for (std::size_t i = 1; i < header.size(); ++i) {
        ClassRef cls = field_to_ref(header[i], none_token);
        for (const ClassRef& seen : classes) {
            if (seen == cls) parse_fail(1, static_cast<int>(i + 1), "duplicate class in header");
        }
        counts.declare(cls);
        classes.push_back(std::move(cls));
    }

    std::vector<ClassRef> seen_rows;
    int line_no = 1;
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            parse_fail(line_no, 1, "expected " + std::to_string(header.size()) + " fields, got " +
                                       std::to_string(fields.size()));
        ClassRef truth = field_to_ref(fields[0], none_token);
        bool declared = false;
        for (const ClassRef& cls : classes) declared = declared || cls == truth;
        if (!declared)
            parse_fail(line_no, 1, "row class is not declared in the header");
        for (const ClassRef& row : seen_rows) {
            if (row == truth) parse_fail(line_no, 1, "duplicate row class");
        }
        seen_rows.push_back(truth);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const std::uint64_t count = parse_count(fields[i], line_no);
            if (count == 0) continue;
            if (truth.is_none() && classes[i - 1].is_none())
                parse_fail(line_no, static_cast<int>(i + 1),
                           "the (none, none) cell must stay zero");
            counts.add(truth, classes[i - 1], count);
        }
    }
    if (counts.total() == 0) throw DataError(errc::empty_matrix, "matrix has no counts");
    return counts;
}

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

std::string format_fixed2(double value) {
    // nearbyint under the default rounding mode resolves ties to even,
    // matching the report convention.
    long long units = static_cast<long long>(std::nearbyint(value * 100.0));
    const bool negative = units < 0;
    if (negative) units = -units;
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%s%lld.%02lld", negative ? "-" : "", units / 100,
                  units % 100);
    return buffer;
}

namespace {

const char* annotation_name(harness::CellAnnotation a) {
    switch (a) {
        case harness::CellAnnotation::match: return "MATCH";
        case harness::CellAnnotation::boundary: return "BOUNDARY";
        case harness::CellAnnotation::known_deviation: return "KNOWN-DEVIATION";
        case harness::CellAnnotation::mismatch: return "MISMATCH";
    }
    return "?";
}

char annotation_mark(harness::CellAnnotation a) {
    switch (a) {
        case harness::CellAnnotation::match: return ' ';
        case harness::CellAnnotation::boundary: return '*';
        case harness::CellAnnotation::known_deviation: return 'd';
        case harness::CellAnnotation::mismatch: return '!';
    }
    return '?';
}

}  // namespace

std::string format_table_text(const harness::ScoreTable& table) {
    std::ostringstream out;
    out << "scores, detection-error offset " << format_double(table.offset) << "\n";
    out << "metric ";
    for (const auto& col : table.column_labels) {
        out << ' ' << col;
        for (std::size_t i = col.size(); i < 6; ++i) out << ' ';
    }
    out << "\n";
    for (int r = 0; r < harness::kTableRows; ++r) {
        out << table.row_labels[r];
        for (std::size_t i = table.row_labels[r].size(); i < 7; ++i) out << ' ';
        for (int c = 0; c < harness::kTableCols; ++c) {
            const auto& cell = table.cells[r][c];
            const std::string v = format_fixed2(cell.value);
            out << ' ' << v << annotation_mark(cell.annotation);
            for (std::size_t i = v.size() + 1; i < 6; ++i) out << ' ';
        }
        out << "\n";
    }
    out << "marks: ' ' match, '*' boundary cell, 'd' known deviation, '!' mismatch\n";
    int flagged = 0;
    for (int r = 0; r < harness::kTableRows; ++r) {
        for (int c = 0; c < harness::kTableCols; ++c) {
            const auto& cell = table.cells[r][c];
            if (cell.annotation == harness::CellAnnotation::match) continue;
            ++flagged;
            out << annotation_name(cell.annotation) << ' ' << table.row_labels[r] << " model "
                << table.column_labels[c] << ": computed " << format_double(cell.value)
                << " reference " << format_fixed2(cell.reference) << "\n";
        }
    }
    out << "flagged cells: " << flagged << "\n";
    return out.str();
}

std::string format_table_csv(const harness::ScoreTable& table) {
    std::ostringstream out;
    out << "metric";
    for (const auto& col : table.column_labels) out << ',' << col;
    out << '\n';
    for (int r = 0; r < harness::kTableRows; ++r) {
        out << table.row_labels[r];
        for (int c = 0; c < harness::kTableCols; ++c) {
            out << ',' << format_double(table.cells[r][c].value);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hiscore::io
