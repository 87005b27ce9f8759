// Times the aggregation kernels on large synthetic inputs, comparing the
// serial reference path against the OpenMP-parallel path. Both must produce
// bit-identical results.
//
//   hiscore_bench [nodes] [pairs]   (defaults: 1500 nodes, 3000000 pairs)

#include <omp.h>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "hiscore/aggregate.hpp"
#include "hiscore/pairwise.hpp"
#include "hiscore/tree.hpp"

using namespace hiscore;

namespace {

ScoringTree random_tree(std::mt19937& rng, int nodes) {
    std::vector<Edge> edges;
    std::vector<double> budget(nodes, 0.0);
    std::vector<int> degree(nodes, 0);
    budget[0] = 1.0;
    std::uniform_real_distribution<double> fraction(0.2, 0.8);
    // Attach under a recent node to get realistic depth, then close each
    // path budget on the leaf edge during a second pass.
    std::vector<int> parent(nodes, -1);
    for (int i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<int> pick(std::max(0, i - 40), i - 1);
        parent[i] = pick(rng);
        ++degree[parent[i]];
    }
    std::vector<double> weight(nodes, 0.0);
    for (int i = 1; i < nodes; ++i) {
        if (degree[i] == 0) {
            weight[i] = budget[parent[i]];
        } else {
            weight[i] = fraction(rng) * budget[parent[i]];
            budget[i] = budget[parent[i]] - weight[i];
        }
    }
    for (int i = 1; i < nodes; ++i) {
        edges.push_back({"n" + std::to_string(parent[i]), "n" + std::to_string(i), weight[i]});
    }
    return ScoringTree::build(edges);
}

template <typename F>
double best_of(int repetitions, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int nodes = argc > 1 ? std::atoi(argv[1]) : 1500;
    const long pairs = argc > 2 ? std::atol(argv[2]) : 3000000L;

    std::mt19937 rng(1234);
    const ScoringTree tree = random_tree(rng, nodes);

    PredictionCounts counts;
    std::uniform_int_distribution<int> pick(1, nodes - 1);
    std::uniform_int_distribution<int> kind(0, 19);
    for (long k = 0; k < pairs; ++k) {
        const int mode = kind(rng);
        ClassRef truth = ClassRef::node("n" + std::to_string(pick(rng)));
        ClassRef predicted = ClassRef::node("n" + std::to_string(pick(rng)));
        if (mode == 0) truth = ClassRef::none();
        else if (mode == 1) predicted = ClassRef::none();
        counts.add(truth, predicted, 1);
    }

    std::cout << "tree nodes: " << nodes << ", diameter: " << tree.diameter()
              << ", pairs: " << pairs << ", distinct cells: " << counts.cells().size()
              << ", threads: " << omp_get_max_threads() << "\n\n";
    std::cout << "kernel            serial ms   parallel ms   speedup   identical\n";

    const Offset offset(-1.0);
    const struct {
        const char* name;
        PairMetric metric;
    } kernels[] = {
        {"micro PL", PairMetric::pl},   {"micro L", PairMetric::l},
        {"micro LPP", PairMetric::lpp}, {"micro TPS", PairMetric::tps},
        {"micro PPS", PairMetric::pps},
    };
    for (const auto& kernel : kernels) {
        double serial_value = 0.0, parallel_value = 0.0;
        const double serial_ms = best_of(3, [&] {
            serial_value = micro_mean(tree, counts, kernel.metric, offset, Execution::serial);
        });
        const double parallel_ms = best_of(3, [&] {
            parallel_value = micro_mean(tree, counts, kernel.metric, offset, Execution::parallel);
        });
        std::printf("%-16s %10.1f %13.1f %9.2f   %s\n", kernel.name, serial_ms, parallel_ms,
                    serial_ms / parallel_ms, serial_value == parallel_value ? "yes" : "NO");
    }

    double serial_hf = 0.0, parallel_hf = 0.0;
    const double serial_hf_ms =
        best_of(3, [&] { serial_hf = hf1_micro(tree, counts, offset, Execution::serial); });
    const double parallel_hf_ms =
        best_of(3, [&] { parallel_hf = hf1_micro(tree, counts, offset, Execution::parallel); });
    std::printf("%-16s %10.1f %13.1f %9.2f   %s\n", "micro hF1", serial_hf_ms, parallel_hf_ms,
                serial_hf_ms / parallel_hf_ms, serial_hf == parallel_hf ? "yes" : "NO");

    std::size_t serial_classes = 0, parallel_classes = 0;
    const double serial_pc_ms = best_of(3, [&] {
        serial_classes = per_class_hp_hr(tree, counts, offset, Execution::serial).size();
    });
    const double parallel_pc_ms = best_of(3, [&] {
        parallel_classes = per_class_hp_hr(tree, counts, offset, Execution::parallel).size();
    });
    std::printf("%-16s %10.1f %13.1f %9.2f   %s\n", "per-class hP/hR", serial_pc_ms,
                parallel_pc_ms, serial_pc_ms / parallel_pc_ms,
                serial_classes == parallel_classes ? "yes" : "NO");
    return 0;
}
