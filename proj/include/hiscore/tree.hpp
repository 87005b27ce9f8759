#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hiscore/errors.hpp"

namespace hiscore {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct Edge {
    std::string parent;
    std::string child;
    std::optional<double> weight;
};

struct BuildOptions {
    // Strict mode requires at least two non-root nodes so the root is never
    // forced to act as a label. Lenient mode admits degenerate trees.
    bool strict = true;
    // Ignore supplied weights and assign each root-to-leaf path equal
    // per-edge weights summing to 1 (deepest leaves resolved first, shared
    // prefixes kept, remaining suffixes rescaled).
    bool uniform_weights = false;
    double path_sum_tolerance = 1e-9;
};

// Rooted weighted tree over class labels. Every edge weight is >= 0 and every
// root-to-leaf path has weight sum 1 (within tolerance). Immutable after
// build; all queries are pure and safe for concurrent use.
class ScoringTree {
public:
    // Validates the edge list and constructs the tree. Collects every
    // violation before throwing, so callers can report them all.
    static ScoringTree build(std::span<const Edge> edges, const BuildOptions& options = {});

    std::size_t node_count() const { return labels_.size(); }
    NodeId root() const { return root_; }
    int diameter() const { return diameter_; }

    bool contains(std::string_view label) const { return index_.find(std::string(label)) != index_.end(); }
    NodeId id_of(std::string_view label) const;  // throws DataError(unknown_node)
    const std::string& label(NodeId node) const { return labels_.at(node); }

    NodeId parent(NodeId node) const { return parent_.at(node); }
    std::span<const NodeId> children(NodeId node) const;
    bool is_leaf(NodeId node) const { return children(node).empty(); }
    int depth(NodeId node) const { return depth_.at(node); }

    // Weight of the edge connecting `node` to its parent; 0 for the root.
    double edge_weight(NodeId node) const { return edge_weight_.at(node); }
    // Sum of edge weights from the root down to `node`; 1 for every leaf.
    double path_weight(NodeId node) const { return path_weight_.at(node); }

    // Deepest node that is an ancestor-or-self of both arguments.
    NodeId lca(NodeId a, NodeId b) const;
    // Number of edges on the unique tree path between the two nodes.
    int edge_distance(NodeId a, NodeId b) const;
    // Edges from the root to `node`, in root-first order, as (parent, child).
    std::vector<std::pair<NodeId, NodeId>> root_path_edges(NodeId node) const;

    // Edges in original build order, weights resolved. Serialization relies
    // on this order being stable.
    const std::vector<Edge>& edges() const { return edges_; }

    NodeId lca(std::string_view a, std::string_view b) const { return lca(id_of(a), id_of(b)); }
    int edge_distance(std::string_view a, std::string_view b) const {
        return edge_distance(id_of(a), id_of(b));
    }
    double path_weight(std::string_view label) const { return path_weight(id_of(label)); }

private:
    ScoringTree() = default;
    NodeId checked(NodeId node) const;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<NodeId> parent_;
    std::vector<double> edge_weight_;
    std::vector<double> path_weight_;
    std::vector<int> depth_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<Edge> edges_;
    NodeId root_ = kNoNode;
    int diameter_ = 0;
};

}  // namespace hiscore
