#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "semrec/error.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Multi-attribute user x item rating matrix with dual indexing.
// Mutable while loading; finalize() deduplicates, builds both indexes and
// the per-(user, attribute) mean cache. Immutable afterwards.
class RatingsStore {
public:
    struct UserRating {
        int item = 0;  // dense item index
        AttributeId attribute = 0;
        double score = 0.0;
    };
    struct ItemRating {
        int user = 0;  // dense user index
        AttributeId attribute = 0;
        double score = 0.0;
    };

    RatingsStore() = default;
    RatingsStore(RatingScale scale, int attribute_count);

    // Loading phase. Validates scale bounds and attribute range.
    void add(const UserId& user, const ItemId& item, AttributeId attribute, double score);
    // Deduplicates (user, item, attribute) keys last-write-wins, sorts both
    // indexes and computes mean caches. Idempotent calls are an error.
    void finalize();
    bool finalized() const { return finalized_; }

    const RatingScale& scale() const { return scale_; }
    int attribute_count() const { return attribute_count_; }

    std::size_t user_count() const { return user_ids_.size(); }
    std::size_t item_count() const { return item_ids_.size(); }
    std::size_t record_count() const { return record_count_; }
    std::size_t duplicate_count() const { return duplicate_count_; }

    // Ids in dense-index order (first appearance during load).
    const std::vector<UserId>& users() const { return user_ids_; }
    const std::vector<ItemId>& items() const { return item_ids_; }

    bool has_user(const UserId& u) const { return user_index_.count(u) > 0; }
    bool has_item(const ItemId& i) const { return item_index_.count(i) > 0; }

    // Dense index lookups; throw LookupError on unknown ids.
    int user_index(const UserId& u) const;
    int item_index(const ItemId& i) const;
    const UserId& user_id(int idx) const { return user_ids_.at(static_cast<std::size_t>(idx)); }
    const ItemId& item_id(int idx) const { return item_ids_.at(static_cast<std::size_t>(idx)); }

    // Ratings of one user / one item, sorted by (item, attribute) resp.
    // (user, attribute).
    std::span<const UserRating> ratings_of_user(int user_idx) const;
    std::span<const ItemRating> ratings_of_item(int item_idx) const;

    // Single-cell lookup; empty when the user never rated (item, attribute).
    std::optional<double> rating(int user_idx, int item_idx, AttributeId attribute) const;

    // Cached mean of all scores user gave on one attribute; empty if none.
    std::optional<double> mean_rating(int user_idx, AttributeId attribute) const;
    std::size_t rating_count(int user_idx, AttributeId attribute) const;

    // Record multiset as (user, item, attribute, score) tuples sorted by ids;
    // used for round-trip checks and serialization.
    std::vector<RatingRecord> sorted_records() const;

    void check_attribute(AttributeId a) const;

private:
    int intern_user(const UserId& u);
    int intern_item(const ItemId& i);
    void require_finalized() const;

    RatingScale scale_;
    int attribute_count_ = 3;
    bool finalized_ = false;

    std::vector<UserId> user_ids_;
    std::vector<ItemId> item_ids_;
    std::unordered_map<UserId, int> user_index_;
    std::unordered_map<ItemId, int> item_index_;

    // Loading buffer: (user, item, attribute, score) in arrival order.
    struct PendingRating {
        int user, item;
        AttributeId attribute;
        double score;
    };
    std::vector<PendingRating> pending_;

    std::vector<std::vector<UserRating>> by_user_;
    std::vector<std::vector<ItemRating>> by_item_;
    // means_[user * K + (a-1)], counts likewise.
    std::vector<double> mean_;
    std::vector<std::size_t> count_;

    std::size_t record_count_ = 0;
    std::size_t duplicate_count_ = 0;
};

}  // namespace semrec
