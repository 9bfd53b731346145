#include "semrec/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace semrec {

void AttributeWeights::check(int attribute_count) const {
    if (static_cast<int>(w.size()) != attribute_count)
        throw ConfigError("attribute weights: expected " + std::to_string(attribute_count) +
                          " entries, got " + std::to_string(w.size()));
    double total = 0.0;
    for (double x : w) {
        if (x < 0.0) throw ConfigError("attribute weights must be non-negative");
        total += x;
    }
    if (total <= 0.0) throw ConfigError("attribute weights must have a positive sum");
}

double AttributeWeights::sum() const {
    double total = 0.0;
    for (double x : w) total += x;
    return total;
}

void HybridWeights::check() const {
    if (multi_attribute < 0.0 || semantic < 0.0)
        throw ConfigError("hybrid weights must be non-negative");
    if (multi_attribute + semantic <= 0.0)
        throw ConfigError("hybrid weights must have a positive sum");
}

SimValue attribute_item_similarity(const RatingsStore& store, const ItemId& item_i,
                                   const ItemId& item_j, AttributeId attribute) {
    store.check_attribute(attribute);
    // Canonical pair order makes the accumulation order, and therefore the
    // floating-point result, identical for (I, J) and (J, I).
    if (item_j < item_i) return attribute_item_similarity(store, item_j, item_i, attribute);

    int i_idx = store.item_index(item_i);
    int j_idx = store.item_index(item_j);
    if (i_idx == j_idx) throw ValidationError("item similarity requires two distinct items");

    double num = 0.0, den_i = 0.0, den_j = 0.0;
    std::size_t co_raters = 0;
    for (const auto& r : store.ratings_of_item(i_idx)) {
        if (r.attribute != attribute) continue;
        auto score_j = store.rating(r.user, j_idx, attribute);
        if (!score_j) continue;
        ++co_raters;
        double mean = *store.mean_rating(r.user, attribute);
        double di = r.score - mean;
        double dj = *score_j - mean;
        num += di * dj;
        den_i += di * di;
        den_j += dj * dj;
    }
    if (co_raters == 0 || den_i == 0.0 || den_j == 0.0) return {0.0, true};
    double v = num / (std::sqrt(den_i) * std::sqrt(den_j));
    return {std::clamp(v, -1.0, 1.0), false};
}

double multi_attribute_similarity(const RatingsStore& store, const ItemId& item_i,
                                  const ItemId& item_j, const AttributeWeights& weights) {
    weights.check(store.attribute_count());
    double num = 0.0;
    for (AttributeId a = 1; a <= store.attribute_count(); ++a) {
        double w = weights.w[static_cast<std::size_t>(a - 1)];
        if (w == 0.0) continue;
        num += w * attribute_item_similarity(store, item_i, item_j, a).value;
    }
    return num / weights.sum();
}

double semantic_item_similarity(const ConceptCatalog& catalog, const ItemId& item_i,
                                const ItemId& item_j) {
    const std::set<ConceptId>& a = catalog.concepts(item_i);
    const std::set<ConceptId>& b = catalog.concepts(item_j);
    std::size_t common = 0;
    const std::set<ConceptId>& small = a.size() <= b.size() ? a : b;
    const std::set<ConceptId>& large = a.size() <= b.size() ? b : a;
    for (const ConceptId& c : small) common += large.count(c);
    std::size_t total = a.size() + b.size() - common;
    if (total == 0) return 0.0;
    return static_cast<double>(common) / static_cast<double>(total);
}

double hybrid_similarity(const RatingsStore& store, const ConceptCatalog& catalog,
                         const ItemId& item_i, const ItemId& item_j,
                         const AttributeWeights& weights, const HybridWeights& hybrid) {
    hybrid.check();
    double mult = hybrid.multi_attribute == 0.0
                      ? 0.0
                      : multi_attribute_similarity(store, item_i, item_j, weights);
    double sem = hybrid.semantic == 0.0 ? 0.0 : semantic_item_similarity(catalog, item_i, item_j);
    return hybrid.multi_attribute * mult + hybrid.semantic * sem;
}

}  // namespace semrec
