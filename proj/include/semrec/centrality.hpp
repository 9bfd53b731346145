#pragma once

#include <string>
#include <vector>

#include "semrec/graph.hpp"
#include "semrec/types.hpp"

namespace semrec {

enum class CentralityMeasure { degree, closeness, betweenness };

const char* to_string(CentralityMeasure m);
CentralityMeasure centrality_measure_from_string(const std::string& s);

// Node scores for one measure, aligned with the graph's node order.
struct CentralityScores {
    CentralityMeasure measure = CentralityMeasure::degree;
    bool normalized = false;
    std::vector<double> score;  // indexed by graph node index

    double of(int node_idx) const { return score.at(static_cast<std::size_t>(node_idx)); }
};

// Raw score = degree; normalized = degree / (n - 1).
CentralityScores degree_centrality(const SocialGraph& g, bool normalized = true);

// Component-scaled closeness over unweighted hops:
// (c_v - 1) / sum(d(v, u)) * (c_v - 1) / (n - 1) for a component of size
// c_v; isolated nodes score 0.
CentralityScores closeness_centrality(const SocialGraph& g, unsigned workers = 0);

// Unnormalized shortest-path betweenness, each unordered pair counted once.
CentralityScores betweenness_centrality(const SocialGraph& g, unsigned workers = 0);

CentralityScores compute_centrality(const SocialGraph& g, CentralityMeasure measure);

// Node indexes ordered by descending score, ties by ascending node id.
std::vector<int> influence_order(const SocialGraph& g, const CentralityScores& scores);
std::vector<UserId> influence_ranking(const SocialGraph& g, CentralityMeasure measure);

// `node,measure,score` lines in ranking order is the caller's job; this
// writes them in node-id order.
void write_centrality(std::ostream& out, const SocialGraph& g, const CentralityScores& scores);

}  // namespace semrec
