#pragma once

#include <vector>

#include "semrec/concept_catalog.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Per-attribute weights W_A, A = 1..K. Non-negative with positive sum.
struct AttributeWeights {
    std::vector<double> w;

    static AttributeWeights uniform(int k) { return {std::vector<double>(static_cast<std::size_t>(k), 1.0)}; }
    void check(int attribute_count) const;
    double sum() const;
};

// Blend weights for the CF-multiattribute and semantic components.
struct HybridWeights {
    double multi_attribute = 0.5;
    double semantic = 0.5;

    void check() const;
};

// Correlation of mean-centered ratings of two items over their co-raters on
// one attribute. Each user's scores are centered by that user's global mean
// on the attribute. Empty co-rater set or zero-norm centered vector yields
// {0, degenerate}.
SimValue attribute_item_similarity(const RatingsStore& store, const ItemId& item_i,
                                   const ItemId& item_j, AttributeId attribute);

// Weighted blend over all attributes: sum(W_A * Sim_A) / sum(W_A).
double multi_attribute_similarity(const RatingsStore& store, const ItemId& item_i,
                                  const ItemId& item_j, const AttributeWeights& weights);

// Jaccard overlap of the two items' concept sets. Throws
// UnannotatedItemError for items missing from the catalog.
double semantic_item_similarity(const ConceptCatalog& catalog, const ItemId& item_i,
                                const ItemId& item_j);

// W_M * MultSim + W_S * SemSim.
double hybrid_similarity(const RatingsStore& store, const ConceptCatalog& catalog,
                         const ItemId& item_i, const ItemId& item_j,
                         const AttributeWeights& weights, const HybridWeights& hybrid);

}  // namespace semrec
