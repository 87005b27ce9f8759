#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hiscore/aggregate.hpp"
#include "hiscore/harness.hpp"
#include "hiscore/io.hpp"
#include "hiscore/pairwise.hpp"
#include "hiscore/tree.hpp"

namespace {

using namespace hiscore;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(errc::parse_error, "cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct ScoreArgs {
    std::string tree_path;
    std::string pairs_path;
    std::string matrix_path;
    std::string metric = "all";
    double offset = 0.0;
    double beta = 1.0;
    std::string format = "text";
    std::string none_token;
    bool uniform_weights = false;
};

ScoringTree load_tree(const std::string& path, bool uniform_weights) {
    BuildOptions options;
    options.uniform_weights = uniform_weights;
    return io::read_tree(read_file(path), options);
}

PredictionCounts load_counts(const ScoringTree& tree, const ScoreArgs& args) {
    if (!args.matrix_path.empty()) {
        std::istringstream in(read_file(args.matrix_path));
        return io::read_matrix_csv(in, args.none_token);
    }
    std::istringstream in(read_file(args.pairs_path));
    PredictionCounts counts;
    for (const io::ParsedPair& parsed : io::read_pairs_csv(in, args.none_token)) {
        for (const ClassRef* ref : {&parsed.pair.truth, &parsed.pair.predicted}) {
            if (ref->is_none()) continue;
            if (!tree.contains(ref->label()))
                throw DataError(errc::unknown_label, "row " + std::to_string(parsed.line) +
                                                         ": unknown label '" + ref->label() + "'");
            if (tree.id_of(ref->label()) == tree.root())
                throw DataError(errc::root_as_label, "row " + std::to_string(parsed.line) +
                                                         ": root '" + ref->label() +
                                                         "' cannot be used as a label");
        }
        if (parsed.pair.count > 0)
            counts.add(parsed.pair.truth, parsed.pair.predicted, parsed.pair.count);
    }
    return counts;
}

void print_rows(const std::vector<std::pair<std::string, double>>& rows, std::uint64_t pairs,
                const std::string& format) {
    if (format == "csv") {
        std::cout << "metric,value\n";
        for (const auto& [name, value] : rows) {
            std::cout << name << ',' << io::format_double(value) << '\n';
        }
        return;
    }
    std::cout << "pairs: " << pairs << '\n';
    std::cout << "metric        value                display\n";
    for (const auto& [name, value] : rows) {
        std::string padded = name;
        if (padded.size() < 13) padded.resize(13, ' ');
        std::string full = io::format_double(value);
        if (full.size() < 20) full.resize(20, ' ');
        std::cout << padded << ' ' << full << ' ' << io::format_fixed2(value) << '\n';
    }
}

int run_validate_tree(const std::string& path, bool uniform_weights) {
    const ScoringTree tree = load_tree(path, uniform_weights);
    std::cout << "OK: " << tree.node_count() << " nodes, diameter " << tree.diameter() << '\n';
    return 0;
}

int run_score(const ScoreArgs& args) {
    if (args.pairs_path.empty() && args.matrix_path.empty()) {
        std::cerr << "error: exactly one of --pairs or --matrix is required\n";
        return 1;
    }
    const ScoringTree tree = load_tree(args.tree_path, args.uniform_weights);
    const PredictionCounts counts = load_counts(tree, args);
    const Offset offset(args.offset);

    std::vector<std::pair<std::string, double>> rows;
    auto flat_rows = [&] {
        const FlatScores macro = flat_macro(counts);
        const FlatScores micro = flat_micro(counts);
        rows.emplace_back("R_M", macro.recall);
        rows.emplace_back("P_M", macro.precision);
        rows.emplace_back("F1_M", macro.f1);
        rows.emplace_back("R_mu", micro.recall);
        rows.emplace_back("P_mu", micro.precision);
        rows.emplace_back("F1_mu", micro.f1);
    };

    if (args.metric == "all") {
        flat_rows();
        rows.emplace_back("PL", micro_mean(tree, counts, PairMetric::pl, offset));
        rows.emplace_back("L", micro_mean(tree, counts, PairMetric::l, offset));
        rows.emplace_back("LPP", micro_mean(tree, counts, PairMetric::lpp, offset));
        rows.emplace_back("TPS", micro_mean(tree, counts, PairMetric::tps, offset));
        rows.emplace_back("PPS", micro_mean(tree, counts, PairMetric::pps, offset));
        rows.emplace_back("hF1", hf1_micro(tree, counts, offset));
    } else if (args.metric == "flat") {
        flat_rows();
    } else if (args.metric == "hf1") {
        rows.emplace_back("hF1", hf1_micro(tree, counts, offset));
        // Unweighted mean of the per-class F-measures at the requested beta.
        rows.emplace_back("hF_beta_mean", hf_beta(tree, counts, offset, args.beta).overall);
    } else {
        const PairMetric metric = args.metric == "pl"    ? PairMetric::pl
                                  : args.metric == "l"   ? PairMetric::l
                                  : args.metric == "lpp" ? PairMetric::lpp
                                  : args.metric == "tps" ? PairMetric::tps
                                                         : PairMetric::pps;
        std::string name = args.metric;
        for (char& ch : name) ch = static_cast<char>(std::toupper(ch));
        rows.emplace_back(name, micro_mean(tree, counts, metric, offset));
    }
    print_rows(rows, counts.total(), args.format);
    return 0;
}

int run_reproduce(const std::string& offset_sel, const std::string& format) {
    std::vector<double> offsets;
    if (offset_sel == "0") offsets = {0.0};
    else if (offset_sel == "-1") offsets = {-1.0};
    else offsets = {0.0, -1.0};

    int flagged = 0;
    bool first = true;
    for (double offset : offsets) {
        const harness::ScoreTable table = harness::reproduce_table(offset);
        if (!first) std::cout << '\n';
        first = false;
        if (format == "csv") {
            std::cout << io::format_table_csv(table);
        } else {
            std::cout << io::format_table_text(table);
        }
        for (const auto& row : table.cells) {
            for (const auto& cell : row) {
                if (cell.annotation != harness::CellAnnotation::match) ++flagged;
            }
        }
    }
    if (offsets.size() > 1 && format != "csv") {
        std::cout << "\ntotal flagged cells across tables: " << flagged << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchical classification scoring over weighted label trees"};
    app.require_subcommand(1);

    std::string validate_path;
    bool validate_uniform = false;
    CLI::App* validate = app.add_subcommand("validate-tree", "check a tree file and report violations");
    validate->add_option("--tree", validate_path, "tree JSON file")->required();
    validate->add_flag("--uniform-weights", validate_uniform,
                       "ignore weights and assign equal per-path weights");

    ScoreArgs score_args;
    const std::vector<std::string> metrics = {"pl", "l", "lpp", "tps", "pps", "hf1", "flat", "all"};
    auto add_score_options = [&](CLI::App* cmd, bool fixed_metric) {
        cmd->add_option("--tree", score_args.tree_path, "tree JSON file")->required();
        auto* pairs = cmd->add_option("--pairs", score_args.pairs_path, "prediction pairs CSV");
        auto* matrix = cmd->add_option("--matrix", score_args.matrix_path, "confusion matrix CSV");
        pairs->excludes(matrix);
        if (!fixed_metric) {
            cmd->add_option("--metric", score_args.metric, "metric to compute")
                ->check(CLI::IsMember(metrics));
        }
        cmd->add_option("--offset", score_args.offset, "detection-error offset (<= 0)")
            ->check(CLI::Range(-1e9, 0.0));
        cmd->add_option("--beta", score_args.beta, "F-measure beta (>= 0)")
            ->check(CLI::Range(0.0, 1e9));
        cmd->add_option("--format", score_args.format, "output format")
            ->check(CLI::IsMember({"text", "csv"}));
        cmd->add_option("--none-token", score_args.none_token,
                        "token encoding the no-detection marker (default: empty field)");
        cmd->add_flag("--uniform-weights", score_args.uniform_weights,
                      "ignore weights and assign equal per-path weights");
    };
    CLI::App* score = app.add_subcommand("score", "score predictions against a tree");
    add_score_options(score, false);
    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score with every metric (alias)");
    add_score_options(evaluate_cmd, true);

    std::string reproduce_offset = "both";
    std::string reproduce_format = "text";
    CLI::App* reproduce =
        app.add_subcommand("reproduce", "recompute the bundled abstract-model score tables");
    reproduce->add_option("--offset", reproduce_offset, "offset selector")
        ->check(CLI::IsMember({"0", "-1", "both"}));
    reproduce->add_option("--format", reproduce_format, "output format")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(validate)) {
            return run_validate_tree(validate_path, validate_uniform);
        }
        if (app.got_subcommand(score)) {
            return run_score(score_args);
        }
        if (app.got_subcommand(evaluate_cmd)) {
            score_args.metric = "all";
            return run_score(score_args);
        }
        return run_reproduce(reproduce_offset, reproduce_format);
    } catch (const hiscore::ValidationError& e) {
        for (const std::string& diagnostic : e.diagnostics()) {
            std::cerr << "error: " << diagnostic << '\n';
        }
        return 2;
    } catch (const hiscore::DataError& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
