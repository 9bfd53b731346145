#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semrec/centrality.hpp"
#include "semrec/profile.hpp"
#include "semrec/recommend.hpp"
#include "semrec/similarity.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Every free parameter of the engine, loadable from a JSON config file.
// Missing keys fall back to the defaults below; unknown keys are rejected;
// cross-field constraints are validated on load.
struct EngineConfig {
    RatingScale scale;
    std::vector<std::string> attribute_names = {"subject", "performance", "overall likability"};
    AttributeWeights attribute_weights = AttributeWeights::uniform(3);
    HybridWeights hybrid_weights;
    double liking_threshold = 4.0;
    double recommendation_threshold = 0.5;
    CentralityMeasure influence_measure = CentralityMeasure::degree;
    double coverage_budget = 0.8;
    int min_agreements = 1;
    AttributeId agreement_attribute = 3;  // attribute used for co-rating edges
    AttributeId overall_attribute = 3;    // attribute treated as overall likability
    TraversalMode traversal = TraversalMode::influence_scan;
    ProfileComparison profile_comparison = ProfileComparison::mass;
    std::size_t neighborhood_size = 10;   // baseline CF k
    double holdout_fraction = 0.2;
    std::uint64_t seed = 1;

    int attribute_count() const { return static_cast<int>(attribute_names.size()); }
    void check() const;

    std::string to_json_string() const;
    static EngineConfig from_json_string(const std::string& text);
    static EngineConfig load(const std::string& path);
    void save(const std::string& path) const;

    // FNV-1a over the canonical JSON form; identifies a workspace's config.
    std::string hash() const;
};

}  // namespace semrec
