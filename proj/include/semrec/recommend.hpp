#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semrec/centrality.hpp"
#include "semrec/concept_catalog.hpp"
#include "semrec/graph.hpp"
#include "semrec/profile.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/types.hpp"

namespace semrec {

// influence_scan walks all customers in global influence order; neighbor
// expansion walks the graph from the most influential node, always examining
// the best discovered-but-unvisited customer next and reseeding from the
// best unvisited node when a component is exhausted.
enum class TraversalMode { influence_scan, neighbor_expansion };

TraversalMode traversal_mode_from_string(const std::string& s);
const char* to_string(TraversalMode m);

struct RecommendationQuery {
    ItemId product;
    double threshold = 0.5;                 // acceptance cut on profile-product similarity
    CentralityMeasure influence_measure = CentralityMeasure::degree;
    double coverage_budget = 0.8;           // max fraction of customers examined, in (0, 1]
    std::optional<std::size_t> max_results; // stop after this many acceptances
    TraversalMode traversal = TraversalMode::influence_scan;
    ProfileComparison comparison = ProfileComparison::mass;

    void check() const;
};

struct AcceptedCustomer {
    UserId user;
    double score = 0.0;
};

struct RecommendationResult {
    std::vector<AcceptedCustomer> accepted;  // in acceptance order
    std::size_t examined = 0;                // customers looked at before stopping
    double elapsed_ms = 0.0;
    // effective query echo
    ItemId product;
    double threshold = 0.0;
    CentralityMeasure influence_measure = CentralityMeasure::degree;
    double coverage_budget = 1.0;
    TraversalMode traversal = TraversalMode::influence_scan;
};

// Influence-ordered traversal with semantic threshold acceptance.
RecommendationResult recommend_customers(const SocialGraph& g, const ProfileSet& profiles,
                                         const ConceptCatalog& catalog,
                                         const RecommendationQuery& query);

// Pearson correlation over the items two users co-rated on one attribute,
// centered by each user's mean over the co-rated set. Fewer than two
// co-rated items or zero variance yields {0, degenerate}.
SimValue pearson_user_similarity(const RatingsStore& store, const UserId& user_u,
                                 const UserId& user_v, AttributeId attribute);

struct RatingPrediction {
    UserId user;
    ItemId item;
    double predicted = 0.0;  // clamped to the rating scale
    std::size_t neighbors_used = 0;
};

struct BaselineResult {
    std::vector<UserId> recommended;           // prediction >= liking threshold, sorted desc
    std::vector<RatingPrediction> predictions; // all candidates with a usable neighborhood
    double elapsed_ms = 0.0;
};

// Classic user-based CF: predicts the product rating of every customer who
// has not rated it from the k most-similar raters (positive similarities
// only) and recommends those predicted at or above the liking threshold.
BaselineResult baseline_cf_recommend(const RatingsStore& store, const ItemId& product,
                                     std::size_t neighborhood_size, double liking_threshold,
                                     AttributeId overall_attribute);

// Fraction-of-n node cap: ceil(budget * n) capped at n.
std::size_t coverage_limit(double budget, std::size_t n);

}  // namespace semrec
