#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semrec/concept_catalog.hpp"
#include "semrec/config.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/recommend.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Metric value with a degeneracy marker for empty input sets.
struct MetricValue {
    double value = 0.0;
    bool flagged = false;  // set when the defining set was empty
};

MetricValue precision(const std::set<UserId>& recommended, const std::set<UserId>& relevant);
MetricValue recall(const std::set<UserId>& recommended, const std::set<UserId>& relevant);

struct MaeResult {
    double value = 0.0;
    std::size_t matched = 0;
    std::size_t unmatched = 0;  // predictions without a held-out actual
};

// Mean |predicted - actual| over predictions whose (user, item) pair has a
// held-out actual. Throws NoOverlapError when nothing matches.
MaeResult mean_absolute_error(const std::vector<RatingPrediction>& predictions,
                              const std::map<std::pair<UserId, ItemId>, double>& actuals);

// Held-out overall ratings per product. Relevance = withheld score at or
// above the liking threshold. Pairs present here must not exist in the
// training store.
class GroundTruth {
public:
    void add(const ItemId& item, const UserId& user, double withheld_score);
    bool has_item(const ItemId& item) const { return withheld_.count(item) > 0; }
    const std::map<UserId, double>& withheld(const ItemId& item) const;
    std::set<UserId> relevant(const ItemId& item, double liking_threshold) const;
    std::vector<ItemId> items() const;
    std::size_t pair_count() const;

    // Throws ValidationError if any withheld pair still appears in store.
    void check_disjoint(const RatingsStore& store) const;

    const std::map<ItemId, std::map<UserId, double>>& all() const { return withheld_; }

private:
    std::map<ItemId, std::map<UserId, double>> withheld_;
};

struct HoldoutSplit {
    RatingsStore train;
    GroundTruth truth;
};

// Withholds ceil(fraction * raters) raters per listed product: all their
// ratings of that product leave the training store and their overall score
// enters the ground truth. Deterministic per (seed, product).
HoldoutSplit split_holdout(const RatingsStore& store, const std::vector<ItemId>& products,
                           double fraction, AttributeId overall_attribute, std::uint64_t seed);

// One method's outcome on one query.
struct EvaluationRow {
    ItemId item;
    std::string method;  // "semantic-social" | "baseline-cf"
    bool ok = true;
    std::string error;
    std::size_t accepted_count = 0;
    std::size_t examined = 0;  // semantic-social only; 0 for baseline
    double elapsed_ms = 0.0;
    MetricValue precision_value;
    MetricValue recall_value;
    std::vector<UserId> accepted;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;  // query order, semantic row then baseline row
    double mean_precision_semantic = 0.0;
    double mean_recall_semantic = 0.0;
    double mean_precision_baseline = 0.0;
    double mean_recall_baseline = 0.0;
    std::optional<MaeResult> baseline_mae;  // empty when nothing matched
    std::size_t graph_nodes = 0;
    std::size_t graph_edges = 0;
    EngineConfig config;

    // Stable-schema JSON; informational timings stay out so equal seeds give
    // byte-identical files.
    std::string to_json_string() const;
    // Aligned-column table including per-row timings.
    std::string to_text() const;
};

// Runs every query through the semantic-social recommender and the baseline
// CF recommender against the same training data and ground truth. Per-query
// failures mark the row and never abort the batch.
EvaluationReport run_benchmark(const RatingsStore& train, const ConceptCatalog& catalog,
                               const GroundTruth& truth, const std::vector<ItemId>& query_items,
                               const EngineConfig& config);

}  // namespace semrec
