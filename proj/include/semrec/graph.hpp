#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "semrec/error.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Undirected weighted customer graph. Nodes are customer ids held in
// ascending order; adjacency is symmetric with positive integer weights.
// Immutable after construction.
class SocialGraph {
public:
    struct Neighbor {
        int node = 0;
        int weight = 0;
    };

    SocialGraph() = default;
    // node ids need not be sorted; edges reference ids. Self-loops and
    // non-positive weights are rejected.
    SocialGraph(std::vector<UserId> nodes,
                const std::vector<std::tuple<UserId, UserId, int>>& edges);

    std::size_t node_count() const { return node_ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<UserId>& nodes() const { return node_ids_; }
    const UserId& node_id(int idx) const { return node_ids_.at(static_cast<std::size_t>(idx)); }
    int node_index(const UserId& id) const;
    bool has_node(const UserId& id) const { return index_.count(id) > 0; }

    std::span<const Neighbor> neighbors(int idx) const {
        return adjacency_.at(static_cast<std::size_t>(idx));
    }
    std::size_t degree(int idx) const { return adjacency_.at(static_cast<std::size_t>(idx)).size(); }

    // Edges as (u_idx, v_idx, weight) with u_idx < v_idx, sorted.
    std::vector<std::tuple<int, int, int>> edges() const;

private:
    std::vector<UserId> node_ids_;
    std::unordered_map<UserId, int> index_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Connect customers that gave exactly equal scores to at least
// min_agreements common items on the agreement attribute. Edge weight is
// the agreement count. Every rater becomes a node.
SocialGraph build_co_rating_graph(const RatingsStore& store, AttributeId agreement_attribute,
                                  int min_agreements = 1);

// 2m / (n(n-1)); throws ValidationError when n < 2.
double density(const SocialGraph& g);

// Edge-list export/import: `# nodes:` and `# node:` header lines keep
// isolated nodes alive across round-trips, then `u,v,weight` lines.
void write_graph(std::ostream& out, const SocialGraph& g);
SocialGraph read_graph(std::istream& in);

}  // namespace semrec
