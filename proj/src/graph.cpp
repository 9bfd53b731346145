#include "semrec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace semrec {

SocialGraph::SocialGraph(std::vector<UserId> nodes,
                         const std::vector<std::tuple<UserId, UserId, int>>& edges) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    node_ids_ = std::move(nodes);
    index_.reserve(node_ids_.size());
    for (std::size_t i = 0; i < node_ids_.size(); ++i)
        index_.emplace(node_ids_[i], static_cast<int>(i));
    adjacency_.assign(node_ids_.size(), {});

    for (const auto& [u, v, w] : edges) {
        if (u == v) throw ValidationError("self-loop on node '" + u + "'");
        if (w <= 0) throw ValidationError("non-positive edge weight on (" + u + ", " + v + ")");
        int ui = node_index(u);
        int vi = node_index(v);
        adjacency_[static_cast<std::size_t>(ui)].push_back({vi, w});
        adjacency_[static_cast<std::size_t>(vi)].push_back({ui, w});
        ++edge_count_;
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
        for (std::size_t i = 1; i < adj.size(); ++i)
            if (adj[i].node == adj[i - 1].node)
                throw ValidationError("duplicate edge on node '" +
                                      node_ids_[static_cast<std::size_t>(adj[i].node)] + "'");
    }
}

int SocialGraph::node_index(const UserId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw LookupError("unknown node '" + id + "'");
    return it->second;
}

std::vector<std::tuple<int, int, int>> SocialGraph::edges() const {
    std::vector<std::tuple<int, int, int>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u)
        for (const Neighbor& nb : adjacency_[u])
            if (static_cast<int>(u) < nb.node) out.emplace_back(static_cast<int>(u), nb.node, nb.weight);
    std::sort(out.begin(), out.end());
    return out;
}

SocialGraph build_co_rating_graph(const RatingsStore& store, AttributeId agreement_attribute,
                                  int min_agreements) {
    if (agreement_attribute < 1 || agreement_attribute > store.attribute_count())
        throw ConfigError("agreement attribute " + std::to_string(agreement_attribute) +
                          " outside [1.." + std::to_string(store.attribute_count()) + "]");
    if (min_agreements < 1) throw ConfigError("min_agreements must be >= 1");

    // Node order is ascending id; map store user indexes onto it.
    std::vector<UserId> nodes = store.users();
    std::sort(nodes.begin(), nodes.end());
    std::unordered_map<UserId, int> node_of;
    node_of.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) node_of.emplace(nodes[i], static_cast<int>(i));

    std::vector<int> store_to_node(store.user_count());
    for (std::size_t u = 0; u < store.user_count(); ++u)
        store_to_node[u] = node_of.at(store.user_id(static_cast<int>(u)));

    // For every item, raters that gave the same exact score pair up.
    std::unordered_map<std::uint64_t, int> pair_counts;
    std::map<double, std::vector<int>> by_score;
    for (std::size_t i = 0; i < store.item_count(); ++i) {
        by_score.clear();
        for (const auto& r : store.ratings_of_item(static_cast<int>(i)))
            if (r.attribute == agreement_attribute) by_score[r.score].push_back(store_to_node[r.user]);
        for (auto& [score, raters] : by_score) {
            if (raters.size() < 2) continue;
            std::sort(raters.begin(), raters.end());
            for (std::size_t a = 0; a < raters.size(); ++a)
                for (std::size_t b = a + 1; b < raters.size(); ++b) {
                    std::uint64_t key = (static_cast<std::uint64_t>(raters[a]) << 32) |
                                        static_cast<std::uint32_t>(raters[b]);
                    ++pair_counts[key];
                }
        }
    }

    std::vector<std::tuple<UserId, UserId, int>> edges;
    for (const auto& [key, count] : pair_counts) {
        if (count < min_agreements) continue;
        int u = static_cast<int>(key >> 32);
        int v = static_cast<int>(key & 0xffffffffu);
        edges.emplace_back(nodes[static_cast<std::size_t>(u)], nodes[static_cast<std::size_t>(v)], count);
    }
    return SocialGraph(std::move(nodes), edges);
}

double density(const SocialGraph& g) {
    const double n = static_cast<double>(g.node_count());
    if (g.node_count() < 2) throw ValidationError("density undefined for graphs with fewer than 2 nodes");
    return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

void write_graph(std::ostream& out, const SocialGraph& g) {
    out << "# nodes: " << g.node_count() << "\n";
    for (const UserId& id : g.nodes()) out << "# node: " << id << "\n";
    for (const auto& [u, v, w] : g.edges())
        out << g.node_id(u) << "," << g.node_id(v) << "," << w << "\n";
}

SocialGraph read_graph(std::istream& in) {
    std::vector<UserId> nodes;
    std::vector<std::tuple<UserId, UserId, int>> edges;
    std::size_t declared_nodes = 0;
    bool have_count = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string tag;
            hs >> tag;
            if (tag == "nodes:") {
                hs >> declared_nodes;
                have_count = true;
            } else if (tag == "node:") {
                std::string id;
                hs >> id;
                if (!id.empty()) nodes.push_back(id);
            }
            continue;
        }
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError(lineno, "expected u,v,weight");
        std::string u = line.substr(0, c1);
        std::string v = line.substr(c1 + 1, c2 - c1 - 1);
        int w = 0;
        try {
            w = std::stoi(line.substr(c2 + 1));
        } catch (const std::exception&) {
            throw ParseError(lineno, "non-integer weight");
        }
        nodes.push_back(u);
        nodes.push_back(v);
        edges.emplace_back(u, v, w);
    }

    SocialGraph g(std::move(nodes), edges);
    if (have_count && g.node_count() != declared_nodes)
        throw ValidationError("graph header declares " + std::to_string(declared_nodes) +
                              " nodes but " + std::to_string(g.node_count()) + " were found");
    return g;
}

}  // namespace semrec
