#include "semrec/recommend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <set>

namespace semrec {

TraversalMode traversal_mode_from_string(const std::string& s) {
    if (s == "scan") return TraversalMode::influence_scan;
    if (s == "expand") return TraversalMode::neighbor_expansion;
    throw ConfigError("unknown traversal mode '" + s + "' (scan|expand)");
}

const char* to_string(TraversalMode m) {
    return m == TraversalMode::influence_scan ? "scan" : "expand";
}

void RecommendationQuery::check() const {
    if (threshold < 0.0) throw ConfigError("recommendation threshold must be >= 0");
    if (!(coverage_budget > 0.0) || coverage_budget > 1.0)
        throw ConfigError("coverage budget must lie in (0, 1]");
    if (max_results && *max_results == 0) throw ConfigError("max_results must be positive");
}

std::size_t coverage_limit(double budget, std::size_t n) {
    // Nudge below the product before ceil so budgets like 0.8 * 50 do not
    // round up through floating-point error.
    double raw = budget * static_cast<double>(n);
    auto lim = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(lim, n);
}

namespace {

// Emits node indexes in traversal order, lazily for the expansion mode.
class Traversal {
public:
    Traversal(const SocialGraph& g, const CentralityScores& scores, TraversalMode mode)
        : g_(g), mode_(mode), order_(influence_order(g, scores)) {
        if (mode_ == TraversalMode::neighbor_expansion) {
            rank_of_.assign(g.node_count(), 0);
            for (std::size_t r = 0; r < order_.size(); ++r)
                rank_of_[static_cast<std::size_t>(order_[r])] = static_cast<int>(r);
            discovered_.assign(g.node_count(), false);
            emitted_.assign(g.node_count(), false);
        }
    }

    // Returns -1 when all nodes were emitted.
    int next() {
        if (mode_ == TraversalMode::influence_scan) {
            if (cursor_ >= order_.size()) return -1;
            return order_[cursor_++];
        }
        if (frontier_.empty() && !reseed()) return -1;
        int rank = *frontier_.begin();
        frontier_.erase(frontier_.begin());
        int node = order_[static_cast<std::size_t>(rank)];
        emitted_[static_cast<std::size_t>(node)] = true;
        for (const auto& nb : g_.neighbors(node)) {
            std::size_t w = static_cast<std::size_t>(nb.node);
            if (!discovered_[w] && !emitted_[w]) {
                discovered_[w] = true;
                frontier_.insert(rank_of_[w]);
            }
        }
        return node;
    }

private:
    bool reseed() {
        // Best-ranked node not yet emitted seeds the next component.
        while (seed_cursor_ < order_.size()) {
            int node = order_[seed_cursor_++];
            if (!emitted_[static_cast<std::size_t>(node)]) {
                discovered_[static_cast<std::size_t>(node)] = true;
                frontier_.insert(rank_of_[static_cast<std::size_t>(node)]);
                return true;
            }
        }
        return false;
    }

    const SocialGraph& g_;
    TraversalMode mode_;
    std::vector<int> order_;   // influence rank -> node index
    std::size_t cursor_ = 0;

    std::vector<int> rank_of_;
    std::vector<char> discovered_, emitted_;
    std::set<int> frontier_;   // ranks of discovered, unvisited nodes
    std::size_t seed_cursor_ = 0;
};

}  // namespace

RecommendationResult recommend_customers(const SocialGraph& g, const ProfileSet& profiles,
                                         const ConceptCatalog& catalog,
                                         const RecommendationQuery& query) {
    query.check();
    const std::set<ConceptId>& product_concepts = catalog.concepts(query.product);

    RecommendationResult result;
    result.product = query.product;
    result.threshold = query.threshold;
    result.influence_measure = query.influence_measure;
    result.coverage_budget = query.coverage_budget;
    result.traversal = query.traversal;
    if (g.node_count() == 0) return result;

    auto started = std::chrono::steady_clock::now();
    CentralityScores scores = compute_centrality(g, query.influence_measure);
    Traversal traversal(g, scores, query.traversal);

    const std::size_t examine_limit = coverage_limit(query.coverage_budget, g.node_count());
    while (result.examined < examine_limit) {
        int node = traversal.next();
        if (node < 0) break;
        ++result.examined;
        const UserId& user = g.node_id(node);
        const SemanticUserProfile& profile = profiles.of(user);
        double score = profile_product_similarity(profile, product_concepts, query.comparison);
        // Customers without a profile cannot express a preference and are
        // never accepted, whatever the threshold.
        if (!profile.empty() && score >= query.threshold) {
            result.accepted.push_back({user, score});
            if (query.max_results && result.accepted.size() >= *query.max_results) break;
        }
    }
    result.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return result;
}

SimValue pearson_user_similarity(const RatingsStore& store, const UserId& user_u,
                                 const UserId& user_v, AttributeId attribute) {
    store.check_attribute(attribute);
    if (user_v < user_u) return pearson_user_similarity(store, user_v, user_u, attribute);
    int u = store.user_index(user_u);
    int v = store.user_index(user_v);
    if (u == v) throw ValidationError("user similarity requires two distinct users");

    std::vector<std::pair<double, double>> co;
    for (const auto& r : store.ratings_of_user(u)) {
        if (r.attribute != attribute) continue;
        auto sv = store.rating(v, r.item, attribute);
        if (sv) co.emplace_back(r.score, *sv);
    }
    if (co.size() <= 1) return {0.0, true};

    double mu = 0.0, mv = 0.0;
    for (const auto& [a, b] : co) {
        mu += a;
        mv += b;
    }
    mu /= static_cast<double>(co.size());
    mv /= static_cast<double>(co.size());

    double num = 0.0, du2 = 0.0, dv2 = 0.0;
    for (const auto& [a, b] : co) {
        double da = a - mu;
        double db = b - mv;
        num += da * db;
        du2 += da * da;
        dv2 += db * db;
    }
    if (du2 == 0.0 || dv2 == 0.0) return {0.0, true};
    return {std::clamp(num / (std::sqrt(du2) * std::sqrt(dv2)), -1.0, 1.0), false};
}

BaselineResult baseline_cf_recommend(const RatingsStore& store, const ItemId& product,
                                     std::size_t neighborhood_size, double liking_threshold,
                                     AttributeId overall_attribute) {
    store.check_attribute(overall_attribute);
    if (neighborhood_size == 0) throw ConfigError("neighborhood size must be positive");
    int product_idx = store.item_index(product);

    auto started = std::chrono::steady_clock::now();

    // Raters of the product on the prediction attribute, by ascending id.
    std::vector<std::pair<UserId, double>> raters;
    for (const auto& r : store.ratings_of_item(product_idx))
        if (r.attribute == overall_attribute)
            raters.emplace_back(store.user_id(r.user), r.score);
    if (raters.empty())
        throw NoOverlapError("no user has rated item '" + product + "' on attribute " +
                             std::to_string(overall_attribute));
    std::sort(raters.begin(), raters.end());

    std::vector<UserId> candidates;
    for (const UserId& user : store.users())
        if (!store.rating(store.user_index(user), product_idx, overall_attribute))
            candidates.push_back(user);
    std::sort(candidates.begin(), candidates.end());

    BaselineResult result;
    for (const UserId& candidate : candidates) {
        int c_idx = store.user_index(candidate);
        auto candidate_mean = store.mean_rating(c_idx, overall_attribute);
        if (!candidate_mean) continue;  // candidate never rated anything on this attribute

        // Positive similarities only; ties broken by ascending rater id, which
        // is the iteration order.
        std::vector<std::pair<double, std::size_t>> sims;  // (similarity, rater index)
        for (std::size_t r = 0; r < raters.size(); ++r) {
            SimValue s = pearson_user_similarity(store, candidate, raters[r].first, overall_attribute);
            if (!s.degenerate && s.value > 0.0) sims.emplace_back(s.value, r);
        }
        if (sims.empty()) continue;
        std::stable_sort(sims.begin(), sims.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        if (sims.size() > neighborhood_size) sims.resize(neighborhood_size);

        double num = 0.0, den = 0.0;
        for (const auto& [sim, r] : sims) {
            const UserId& rater = raters[r].first;
            double rater_mean = *store.mean_rating(store.user_index(rater), overall_attribute);
            num += sim * (raters[r].second - rater_mean);
            den += sim;
        }
        double predicted = store.scale().clamp(*candidate_mean + num / den);
        result.predictions.push_back({candidate, product, predicted, sims.size()});
        if (predicted >= liking_threshold) result.recommended.push_back(candidate);
    }

    // Predictions were produced in ascending candidate id order; re-rank the
    // recommendation list by prediction, ties ascending id.
    std::vector<std::pair<double, UserId>> ranked;
    ranked.reserve(result.recommended.size());
    for (const auto& p : result.predictions)
        if (p.predicted >= liking_threshold) ranked.emplace_back(p.predicted, p.user);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    result.recommended.clear();
    for (const auto& [score, user] : ranked) result.recommended.push_back(user);

    result.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return result;
}

}  // namespace semrec
