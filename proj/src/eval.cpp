#include "semrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "semrec/centrality.hpp"
#include "semrec/graph.hpp"
#include "semrec/profile.hpp"

namespace semrec {

using nlohmann::ordered_json;

namespace {
std::size_t intersection_size(const std::set<UserId>& a, const std::set<UserId>& b) {
    const std::set<UserId>& small = a.size() <= b.size() ? a : b;
    const std::set<UserId>& large = a.size() <= b.size() ? b : a;
    std::size_t n = 0;
    for (const UserId& u : small) n += large.count(u);
    return n;
}
}  // namespace

MetricValue precision(const std::set<UserId>& recommended, const std::set<UserId>& relevant) {
    if (recommended.empty()) return {0.0, true};
    return {static_cast<double>(intersection_size(recommended, relevant)) /
                static_cast<double>(recommended.size()),
            false};
}

MetricValue recall(const std::set<UserId>& recommended, const std::set<UserId>& relevant) {
    if (relevant.empty()) return {0.0, true};
    return {static_cast<double>(intersection_size(recommended, relevant)) /
                static_cast<double>(relevant.size()),
            false};
}

MaeResult mean_absolute_error(const std::vector<RatingPrediction>& predictions,
                              const std::map<std::pair<UserId, ItemId>, double>& actuals) {
    MaeResult out;
    double total = 0.0;
    for (const RatingPrediction& p : predictions) {
        auto it = actuals.find({p.user, p.item});
        if (it == actuals.end()) {
            ++out.unmatched;
            continue;
        }
        total += std::abs(p.predicted - it->second);
        ++out.matched;
    }
    if (out.matched == 0) throw NoOverlapError("no prediction matches a held-out rating");
    out.value = total / static_cast<double>(out.matched);
    return out;
}

void GroundTruth::add(const ItemId& item, const UserId& user, double withheld_score) {
    withheld_[item][user] = withheld_score;
}

const std::map<UserId, double>& GroundTruth::withheld(const ItemId& item) const {
    auto it = withheld_.find(item);
    if (it == withheld_.end()) throw LookupError("no ground truth for item '" + item + "'");
    return it->second;
}

std::set<UserId> GroundTruth::relevant(const ItemId& item, double liking_threshold) const {
    std::set<UserId> out;
    auto it = withheld_.find(item);
    if (it == withheld_.end()) return out;
    for (const auto& [user, score] : it->second)
        if (score >= liking_threshold) out.insert(user);
    return out;
}

std::vector<ItemId> GroundTruth::items() const {
    std::vector<ItemId> out;
    out.reserve(withheld_.size());
    for (const auto& [item, _] : withheld_) out.push_back(item);
    return out;
}

std::size_t GroundTruth::pair_count() const {
    std::size_t n = 0;
    for (const auto& [item, users] : withheld_) n += users.size();
    return n;
}

void GroundTruth::check_disjoint(const RatingsStore& store) const {
    for (const auto& [item, users] : withheld_) {
        if (!store.has_item(item)) continue;
        int item_idx = store.item_index(item);
        for (const auto& [user, score] : users) {
            if (!store.has_user(user)) continue;
            int user_idx = store.user_index(user);
            for (AttributeId a = 1; a <= store.attribute_count(); ++a)
                if (store.rating(user_idx, item_idx, a))
                    throw ValidationError("holdout leak: training store still holds (" + user +
                                          ", " + item + ", attribute " + std::to_string(a) + ")");
        }
    }
}

HoldoutSplit split_holdout(const RatingsStore& store, const std::vector<ItemId>& products,
                           double fraction, AttributeId overall_attribute, std::uint64_t seed) {
    if (fraction <= 0.0 || fraction >= 1.0)
        throw ConfigError("holdout fraction must lie in (0, 1)");
    store.check_attribute(overall_attribute);

    std::set<std::pair<UserId, ItemId>> removed;
    GroundTruth truth;
    for (const ItemId& product : products) {
        int item_idx = store.item_index(product);
        std::vector<std::pair<UserId, double>> raters;
        for (const auto& r : store.ratings_of_item(item_idx))
            if (r.attribute == overall_attribute)
                raters.emplace_back(store.user_id(r.user), r.score);
        std::sort(raters.begin(), raters.end());
        if (raters.empty()) continue;

        // Deterministic per product regardless of list order: Fisher-Yates
        // driven by a sub-seed derived from (seed, product id).
        std::uint64_t state = seed ^ fnv1a(product);
        auto next = [&state](std::uint64_t bound) {
            // splitmix64 step
            state += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            z ^= z >> 31;
            return z % bound;
        };
        for (std::size_t i = raters.size(); i > 1; --i)
            std::swap(raters[i - 1], raters[next(i)]);

        auto hold = static_cast<std::size_t>(
            std::ceil(fraction * static_cast<double>(raters.size()) - 1e-9));
        hold = std::min(hold, raters.size());
        for (std::size_t i = 0; i < hold; ++i) {
            truth.add(product, raters[i].first, raters[i].second);
            removed.insert({raters[i].first, product});
        }
    }

    RatingsStore train(store.scale(), store.attribute_count());
    for (const RatingRecord& r : store.sorted_records())
        if (!removed.count({r.user, r.item})) train.add(r.user, r.item, r.attribute, r.score);
    train.finalize();

    HoldoutSplit split{std::move(train), std::move(truth)};
    split.truth.check_disjoint(split.train);
    return split;
}

EvaluationReport run_benchmark(const RatingsStore& train, const ConceptCatalog& catalog,
                               const GroundTruth& truth, const std::vector<ItemId>& query_items,
                               const EngineConfig& config) {
    config.check();
    if (query_items.empty()) throw ConfigError("benchmark needs at least one query");
    truth.check_disjoint(train);

    EvaluationReport report;
    report.config = config;

    SocialGraph graph = build_co_rating_graph(train, config.agreement_attribute, config.min_agreements);
    ProfileSet profiles =
        ProfileSet::build_all(train, catalog, config.liking_threshold, config.overall_attribute);
    report.graph_nodes = graph.node_count();
    report.graph_edges = graph.edge_count();

    double sum_p_sem = 0.0, sum_r_sem = 0.0, sum_p_base = 0.0, sum_r_base = 0.0;
    std::size_t ok_sem = 0, ok_base = 0;
    std::vector<RatingPrediction> all_predictions;
    std::map<std::pair<UserId, ItemId>, double> actuals;
    for (const auto& [item, users] : truth.all())
        for (const auto& [user, score] : users) actuals[{user, item}] = score;

    for (const ItemId& item : query_items) {
        std::set<UserId> relevant = truth.relevant(item, config.liking_threshold);

        EvaluationRow sem;
        sem.item = item;
        sem.method = "semantic-social";
        try {
            RecommendationQuery q;
            q.product = item;
            q.threshold = config.recommendation_threshold;
            q.influence_measure = config.influence_measure;
            q.coverage_budget = config.coverage_budget;
            q.traversal = config.traversal;
            q.comparison = config.profile_comparison;
            RecommendationResult r = recommend_customers(graph, profiles, catalog, q);
            std::set<UserId> accepted_set;
            for (const auto& a : r.accepted) {
                sem.accepted.push_back(a.user);
                accepted_set.insert(a.user);
            }
            sem.accepted_count = r.accepted.size();
            sem.examined = r.examined;
            sem.elapsed_ms = r.elapsed_ms;
            sem.precision_value = precision(accepted_set, relevant);
            sem.recall_value = recall(accepted_set, relevant);
            sum_p_sem += sem.precision_value.value;
            sum_r_sem += sem.recall_value.value;
            ++ok_sem;
        } catch (const Error& e) {
            sem.ok = false;
            sem.error = e.what();
        }
        report.rows.push_back(std::move(sem));

        EvaluationRow base;
        base.item = item;
        base.method = "baseline-cf";
        try {
            BaselineResult r = baseline_cf_recommend(train, item, config.neighborhood_size,
                                                     config.liking_threshold, config.overall_attribute);
            std::set<UserId> recommended_set(r.recommended.begin(), r.recommended.end());
            base.accepted = r.recommended;
            base.accepted_count = r.recommended.size();
            base.elapsed_ms = r.elapsed_ms;
            base.precision_value = precision(recommended_set, relevant);
            base.recall_value = recall(recommended_set, relevant);
            sum_p_base += base.precision_value.value;
            sum_r_base += base.recall_value.value;
            ++ok_base;
            all_predictions.insert(all_predictions.end(), r.predictions.begin(), r.predictions.end());
        } catch (const Error& e) {
            base.ok = false;
            base.error = e.what();
        }
        report.rows.push_back(std::move(base));
    }

    if (ok_sem > 0) {
        report.mean_precision_semantic = sum_p_sem / static_cast<double>(ok_sem);
        report.mean_recall_semantic = sum_r_sem / static_cast<double>(ok_sem);
    }
    if (ok_base > 0) {
        report.mean_precision_baseline = sum_p_base / static_cast<double>(ok_base);
        report.mean_recall_baseline = sum_r_base / static_cast<double>(ok_base);
    }
    try {
        report.baseline_mae = mean_absolute_error(all_predictions, actuals);
    } catch (const NoOverlapError&) {
        report.baseline_mae = std::nullopt;
    }
    return report;
}

std::string EvaluationReport::to_json_string() const {
    ordered_json j;
    j["config"] = ordered_json::parse(config.to_json_string());
    j["graph"] = {{"nodes", graph_nodes}, {"edges", graph_edges}};

    ordered_json rows_json = ordered_json::array();
    for (const EvaluationRow& row : rows) {
        ordered_json r;
        r["item"] = row.item;
        r["method"] = row.method;
        r["ok"] = row.ok;
        if (!row.ok) r["error"] = row.error;
        r["accepted_count"] = row.accepted_count;
        if (row.method == "semantic-social") r["examined"] = row.examined;
        r["precision"] = row.precision_value.value;
        r["precision_defined"] = !row.precision_value.flagged;
        r["recall"] = row.recall_value.value;
        r["recall_defined"] = !row.recall_value.flagged;
        r["accepted"] = row.accepted;
        rows_json.push_back(std::move(r));
    }
    j["rows"] = std::move(rows_json);

    j["aggregates"] = {{"mean_precision_semantic", mean_precision_semantic},
                       {"mean_recall_semantic", mean_recall_semantic},
                       {"mean_precision_baseline", mean_precision_baseline},
                       {"mean_recall_baseline", mean_recall_baseline}};
    if (baseline_mae) {
        j["aggregates"]["baseline_mae"] = baseline_mae->value;
        j["aggregates"]["baseline_mae_matched"] = baseline_mae->matched;
        j["aggregates"]["baseline_mae_unmatched"] = baseline_mae->unmatched;
    } else {
        j["aggregates"]["baseline_mae"] = nullptr;
    }
    return j.dump(2) + "\n";
}

namespace {
std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}
}  // namespace

std::string EvaluationReport::to_text() const {
    std::ostringstream os;
    os << "graph: " << graph_nodes << " nodes, " << graph_edges << " edges\n";
    os << "config: threshold=" << config.recommendation_threshold
       << " measure=" << to_string(config.influence_measure)
       << " budget=" << config.coverage_budget << " liking=" << config.liking_threshold
       << " min_agreements=" << config.min_agreements << " k=" << config.neighborhood_size
       << " traversal=" << to_string(config.traversal) << " seed=" << config.seed << "\n\n";

    os << "item            method           accepted  examined  elapsed_ms  precision  recall\n";
    os << "--------------  ---------------  --------  --------  ----------  ---------  ------\n";
    char line[256];
    for (const EvaluationRow& row : rows) {
        if (!row.ok) {
            std::snprintf(line, sizeof(line), "%-14s  %-15s  failed: %s\n", row.item.c_str(),
                          row.method.c_str(), row.error.c_str());
            os << line;
            continue;
        }
        std::string examined = row.method == "semantic-social" ? std::to_string(row.examined) : "-";
        std::snprintf(line, sizeof(line), "%-14s  %-15s  %8zu  %8s  %10.1f  %9s  %6s\n",
                      row.item.c_str(), row.method.c_str(), row.accepted_count, examined.c_str(),
                      row.elapsed_ms, fixed3(row.precision_value.value).c_str(),
                      fixed3(row.recall_value.value).c_str());
        os << line;
    }
    os << "\naggregates:\n";
    os << "  semantic-social  mean precision " << fixed3(mean_precision_semantic)
       << "  mean recall " << fixed3(mean_recall_semantic) << "\n";
    os << "  baseline-cf      mean precision " << fixed3(mean_precision_baseline)
       << "  mean recall " << fixed3(mean_recall_baseline) << "\n";
    if (baseline_mae)
        os << "  baseline-cf      MAE " << fixed3(baseline_mae->value) << " over "
           << baseline_mae->matched << " matched predictions (" << baseline_mae->unmatched
           << " unmatched)\n";
    else
        os << "  baseline-cf      MAE undefined (no matched predictions)\n";
    os << "\nnote: timings are informational and excluded from the JSON report.\n";
    return os.str();
}

}  // namespace semrec
