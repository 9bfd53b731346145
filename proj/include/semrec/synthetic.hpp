#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "semrec/concept_catalog.hpp"
#include "semrec/eval.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Community-structured dataset: users of a community rate their community's
// items with identical overall scores (so the co-rating graph grows dense
// intra-community edges) and those items share a community concept pool (so
// member profiles align with member products). A sample of active community
// members per query item is withheld as planted ground truth.
struct SyntheticParams {
    std::size_t n_users = 500;
    std::size_t n_items = 200;
    std::size_t n_concepts = 40;
    std::size_t community_count = 5;
    std::uint64_t seed = 1;

    // agreement / density knobs
    std::size_t in_ratings_active = 12;  // community items rated by an active user
    std::size_t in_ratings_casual = 5;   // and by a casual one
    std::size_t out_ratings = 4;         // ratings outside the home community
    double active_fraction = 0.6;        // leading share of each community that is active

    std::size_t concepts_per_item_min = 2;
    std::size_t concepts_per_item_max = 4;

    std::size_t query_count = 10;
    double withheld_fraction = 0.3;  // active members withheld per query item

    void check() const;
};

struct SyntheticDataset {
    RatingsStore store;  // training ratings; withheld pairs never enter it
    ConceptCatalog catalog;
    GroundTruth truth;
    std::vector<ItemId> query_items;
};

SyntheticDataset generate_synthetic(const SyntheticParams& params);

// `item,user,score` lines with header.
void write_ground_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth read_ground_truth(std::istream& in);

// One item id per line with an `item` header.
void write_queries(std::ostream& out, const std::vector<ItemId>& items);
std::vector<ItemId> read_queries(std::istream& in);

}  // namespace semrec
