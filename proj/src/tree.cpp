#include "hiscore/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>

namespace hiscore {

const char* errc_name(errc code) {
    switch (code) {
        case errc::empty_input: return "EmptyInput";
        case errc::multiple_roots: return "MultipleRoots";
        case errc::cycle_detected: return "CycleDetected";
        case errc::duplicate_child: return "DuplicateChild";
        case errc::negative_weight: return "NegativeWeight";
        case errc::path_sum_violation: return "PathSumViolation";
        case errc::degenerate_tree: return "DegenerateTree";
        case errc::unknown_node: return "UnknownNode";
        case errc::root_as_label: return "RootAsLabel";
        case errc::empty_matrix: return "EmptyMatrix";
        case errc::unknown_model: return "UnknownModel";
        case errc::parse_error: return "ParseError";
        case errc::unknown_label: return "UnknownLabel";
        case errc::detection_pair_unsupported: return "DetectionPairUnsupported";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

namespace {

struct Violation {
    errc code;
    std::string message;
};

[[noreturn]] void throw_violations(std::vector<Violation> violations) {
    std::vector<std::string> diagnostics;
    diagnostics.reserve(violations.size());
    for (const auto& v : violations) {
        diagnostics.push_back(std::string(errc_name(v.code)) + ": " + v.message);
    }
    const errc code = violations.front().code;
    const std::string what = diagnostics.front();
    throw ValidationError(code, what, std::move(diagnostics));
}

std::string fmt_weight(double w) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), w);
    return std::string(buffer, ptr);
}

}  // namespace

NodeId ScoringTree::id_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        throw DataError(errc::unknown_node, "unknown node '" + std::string(label) + "'");
    return it->second;
}

NodeId ScoringTree::checked(NodeId node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= labels_.size())
        throw DataError(errc::unknown_node, "node id out of range");
    return node;
}

std::span<const NodeId> ScoringTree::children(NodeId node) const {
    const auto& c = children_.at(node);
    return {c.data(), c.size()};
}

NodeId ScoringTree::lca(NodeId a, NodeId b) const {
    a = checked(a);
    b = checked(b);
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
    }
    return a;
}

int ScoringTree::edge_distance(NodeId a, NodeId b) const {
    NodeId anc = lca(a, b);
    return depth_[a] + depth_[b] - 2 * depth_[anc];
}

std::vector<std::pair<NodeId, NodeId>> ScoringTree::root_path_edges(NodeId node) const {
    node = checked(node);
    std::vector<std::pair<NodeId, NodeId>> path;
    for (NodeId cur = node; cur != root_; cur = parent_[cur]) {
        path.emplace_back(parent_[cur], cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

ScoringTree ScoringTree::build(std::span<const Edge> edges, const BuildOptions& options) {
    std::vector<Violation> violations;
    if (edges.empty()) {
        violations.push_back({errc::empty_input, "edge list is empty"});
        throw_violations(std::move(violations));
    }

    ScoringTree tree;
    auto intern = [&tree](const std::string& label) -> NodeId {
        auto [it, inserted] = tree.index_.try_emplace(label, static_cast<NodeId>(tree.labels_.size()));
        if (inserted) tree.labels_.push_back(label);
        return it->second;
    };

    // First pass: intern nodes in order of appearance, record parent links.
    std::vector<NodeId> parent_of;
    std::vector<double> weight_of;
    for (const Edge& e : edges) {
        NodeId p = intern(e.parent);
        NodeId c = intern(e.child);
        parent_of.resize(tree.labels_.size(), kNoNode);
        weight_of.resize(tree.labels_.size(), 0.0);
        if (parent_of[c] != kNoNode) {
            violations.push_back({errc::duplicate_child,
                                  "node '" + e.child + "' already has a parent"});
            continue;
        }
        if (c == p) {
            violations.push_back({errc::cycle_detected, "self edge on node '" + e.child + "'"});
            continue;
        }
        parent_of[c] = p;
        double w = 0.0;
        if (!options.uniform_weights) {
            if (!e.weight) {
                violations.push_back({errc::negative_weight,
                                      "edge (" + e.parent + ", " + e.child + ") has no weight"});
            } else {
                w = *e.weight;
                if (!std::isfinite(w) || w < 0.0) {
                    violations.push_back({errc::negative_weight,
                                          "edge (" + e.parent + ", " + e.child +
                                              ") has invalid weight " + fmt_weight(w)});
                    w = 0.0;
                }
            }
        }
        weight_of[c] = w;
    }
    parent_of.resize(tree.labels_.size(), kNoNode);
    weight_of.resize(tree.labels_.size(), 0.0);

    const std::size_t n = tree.labels_.size();
    std::vector<NodeId> roots;
    for (std::size_t v = 0; v < n; ++v) {
        if (parent_of[v] == kNoNode) roots.push_back(static_cast<NodeId>(v));
    }
    if (roots.empty()) {
        violations.push_back({errc::cycle_detected, "every node has a parent; no root exists"});
    } else if (roots.size() > 1) {
        std::string msg = "expected one root, found " + std::to_string(roots.size()) + ":";
        for (NodeId r : roots) msg += " '" + tree.labels_[r] + "'";
        violations.push_back({errc::multiple_roots, msg});
    }

    if (!violations.empty()) throw_violations(std::move(violations));
    tree.root_ = roots.front();

    tree.parent_ = std::move(parent_of);
    tree.edge_weight_ = std::move(weight_of);
    tree.children_.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
        if (tree.parent_[v] != kNoNode) tree.children_[tree.parent_[v]].push_back(static_cast<NodeId>(v));
    }

    // Depth assignment doubles as reachability: with single parents and one
    // root, any unreached node sits on a cycle.
    tree.depth_.assign(n, -1);
    std::deque<NodeId> queue{tree.root_};
    tree.depth_[tree.root_] = 0;
    std::size_t reached = 0;
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        ++reached;
        for (NodeId c : tree.children_[v]) {
            tree.depth_[c] = tree.depth_[v] + 1;
            queue.push_back(c);
        }
    }
    if (reached != n) {
        std::string msg = "nodes unreachable from root '" + tree.labels_[tree.root_] + "':";
        for (std::size_t v = 0; v < n; ++v) {
            if (tree.depth_[v] < 0) msg += " '" + tree.labels_[v] + "'";
        }
        violations.push_back({errc::cycle_detected, msg});
        throw_violations(std::move(violations));
    }

    if (options.uniform_weights) {
        // Equal per-edge weights along each root-to-leaf path. Deepest leaves
        // claim their full path first; later leaves keep the already-assigned
        // prefix and split the remaining budget over the unassigned suffix.
        std::vector<NodeId> leaves;
        for (std::size_t v = 0; v < n; ++v) {
            if (tree.children_[v].empty()) leaves.push_back(static_cast<NodeId>(v));
        }
        std::sort(leaves.begin(), leaves.end(), [&](NodeId a, NodeId b) {
            if (tree.depth_[a] != tree.depth_[b]) return tree.depth_[a] > tree.depth_[b];
            return a < b;
        });
        std::vector<bool> assigned(n, false);
        for (NodeId leaf : leaves) {
            double prefix = 0.0;
            int todo = 0;
            for (NodeId v = leaf; v != tree.root_; v = tree.parent_[v]) {
                if (assigned[v]) prefix += tree.edge_weight_[v];
                else ++todo;
            }
            const double share = todo > 0 ? (1.0 - prefix) / todo : 0.0;
            for (NodeId v = leaf; v != tree.root_; v = tree.parent_[v]) {
                if (!assigned[v]) {
                    tree.edge_weight_[v] = share;
                    assigned[v] = true;
                }
            }
        }
    }

    tree.path_weight_.assign(n, 0.0);
    {
        std::deque<NodeId> q{tree.root_};
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop_front();
            if (v != tree.root_)
                tree.path_weight_[v] = tree.path_weight_[tree.parent_[v]] + tree.edge_weight_[v];
            for (NodeId c : tree.children_[v]) q.push_back(c);
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (!tree.children_[v].empty() || static_cast<NodeId>(v) == tree.root_) continue;
        double sum = tree.path_weight_[v];
        if (std::abs(sum - 1.0) > options.path_sum_tolerance) {
            violations.push_back({errc::path_sum_violation,
                                  "leaf '" + tree.labels_[v] + "' has root-path weight sum " +
                                      fmt_weight(sum) + " (expected 1)"});
        }
    }

    if (options.strict && n < 3) {
        violations.push_back({errc::degenerate_tree,
                              "strict mode requires at least two non-root nodes, got " +
                                  std::to_string(n > 0 ? n - 1 : 0)});
    }
    if (!violations.empty()) throw_violations(std::move(violations));

    // Farthest-node sweep twice gives the tree diameter.
    auto farthest = [&](NodeId start) {
        std::vector<int> dist(n, -1);
        std::deque<NodeId> q{start};
        dist[start] = 0;
        NodeId best = start;
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop_front();
            if (dist[v] > dist[best]) best = v;
            auto visit = [&](NodeId u) {
                if (u != kNoNode && dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            };
            visit(tree.parent_[v]);
            for (NodeId c : tree.children_[v]) visit(c);
        }
        return std::pair{best, dist[best]};
    };
    auto [far_node, _] = farthest(tree.root_);
    tree.diameter_ = farthest(far_node).second;

    tree.edges_.assign(edges.begin(), edges.end());
    for (Edge& e : tree.edges_) {
        e.weight = tree.edge_weight_[tree.index_.at(e.child)];
    }
    return tree;
}

}  // namespace hiscore
