#include "semrec/ratings_store.hpp"

#include <algorithm>
#include <cmath>

namespace semrec {

RatingsStore::RatingsStore(RatingScale scale, int attribute_count)
    : scale_(scale), attribute_count_(attribute_count) {
    if (attribute_count_ < 1)
        throw ConfigError("attribute count must be >= 1, got " + std::to_string(attribute_count_));
    if (!(scale_.min_score < scale_.max_score))
        throw ConfigError("rating scale must be a non-empty interval");
}

void RatingsStore::check_attribute(AttributeId a) const {
    if (a < 1 || a > attribute_count_)
        throw ValidationError("attribute id " + std::to_string(a) + " outside [1.." +
                              std::to_string(attribute_count_) + "]");
}

void RatingsStore::add(const UserId& user, const ItemId& item, AttributeId attribute, double score) {
    if (finalized_) throw Error("RatingsStore is immutable after finalize()");
    check_attribute(attribute);
    if (!scale_.contains(score))
        throw ValidationError("score " + std::to_string(score) + " outside scale [" +
                              std::to_string(scale_.min_score) + ", " +
                              std::to_string(scale_.max_score) + "]");
    pending_.push_back({intern_user(user), intern_item(item), attribute, score});
}

int RatingsStore::intern_user(const UserId& u) {
    auto it = user_index_.find(u);
    if (it != user_index_.end()) return it->second;
    int idx = static_cast<int>(user_ids_.size());
    user_ids_.push_back(u);
    user_index_.emplace(u, idx);
    return idx;
}

int RatingsStore::intern_item(const ItemId& i) {
    auto it = item_index_.find(i);
    if (it != item_index_.end()) return it->second;
    int idx = static_cast<int>(item_ids_.size());
    item_ids_.push_back(i);
    item_index_.emplace(i, idx);
    return idx;
}

void RatingsStore::finalize() {
    if (finalized_) throw Error("finalize() called twice");

    // Last write wins per (user, item, attribute): stable-sort by key keeps
    // arrival order inside each key group, then keep the last entry.
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const PendingRating& a, const PendingRating& b) {
                         if (a.user != b.user) return a.user < b.user;
                         if (a.item != b.item) return a.item < b.item;
                         return a.attribute < b.attribute;
                     });

    by_user_.assign(user_ids_.size(), {});
    by_item_.assign(item_ids_.size(), {});
    mean_.assign(user_ids_.size() * static_cast<std::size_t>(attribute_count_), 0.0);
    count_.assign(user_ids_.size() * static_cast<std::size_t>(attribute_count_), 0);

    record_count_ = 0;
    duplicate_count_ = 0;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
        const PendingRating& r = pending_[i];
        bool last_of_key = i + 1 == pending_.size() || pending_[i + 1].user != r.user ||
                           pending_[i + 1].item != r.item || pending_[i + 1].attribute != r.attribute;
        if (!last_of_key) {
            ++duplicate_count_;
            continue;
        }
        by_user_[static_cast<std::size_t>(r.user)].push_back({r.item, r.attribute, r.score});
        by_item_[static_cast<std::size_t>(r.item)].push_back({r.user, r.attribute, r.score});
        std::size_t slot = static_cast<std::size_t>(r.user) * attribute_count_ + (r.attribute - 1);
        mean_[slot] += r.score;
        count_[slot] += 1;
        ++record_count_;
    }
    for (std::size_t s = 0; s < mean_.size(); ++s)
        if (count_[s] > 0) mean_[s] /= static_cast<double>(count_[s]);

    for (auto& v : by_item_)
        std::sort(v.begin(), v.end(), [](const ItemRating& a, const ItemRating& b) {
            if (a.user != b.user) return a.user < b.user;
            return a.attribute < b.attribute;
        });
    // by_user_ is already sorted by (item, attribute) thanks to the key sort.

    pending_.clear();
    pending_.shrink_to_fit();
    finalized_ = true;
}

void RatingsStore::require_finalized() const {
    if (!finalized_) throw Error("RatingsStore not finalized");
}

int RatingsStore::user_index(const UserId& u) const {
    auto it = user_index_.find(u);
    if (it == user_index_.end()) throw LookupError("unknown user '" + u + "'");
    return it->second;
}

int RatingsStore::item_index(const ItemId& i) const {
    auto it = item_index_.find(i);
    if (it == item_index_.end()) throw LookupError("unknown item '" + i + "'");
    return it->second;
}

std::span<const RatingsStore::UserRating> RatingsStore::ratings_of_user(int user_idx) const {
    require_finalized();
    return by_user_.at(static_cast<std::size_t>(user_idx));
}

std::span<const RatingsStore::ItemRating> RatingsStore::ratings_of_item(int item_idx) const {
    require_finalized();
    return by_item_.at(static_cast<std::size_t>(item_idx));
}

std::optional<double> RatingsStore::rating(int user_idx, int item_idx, AttributeId attribute) const {
    require_finalized();
    const auto& v = by_user_.at(static_cast<std::size_t>(user_idx));
    UserRating key{item_idx, attribute, 0.0};
    auto it = std::lower_bound(v.begin(), v.end(), key, [](const UserRating& a, const UserRating& b) {
        if (a.item != b.item) return a.item < b.item;
        return a.attribute < b.attribute;
    });
    if (it == v.end() || it->item != item_idx || it->attribute != attribute) return std::nullopt;
    return it->score;
}

std::optional<double> RatingsStore::mean_rating(int user_idx, AttributeId attribute) const {
    require_finalized();
    check_attribute(attribute);
    std::size_t slot = static_cast<std::size_t>(user_idx) * attribute_count_ + (attribute - 1);
    if (count_.at(slot) == 0) return std::nullopt;
    return mean_[slot];
}

std::size_t RatingsStore::rating_count(int user_idx, AttributeId attribute) const {
    require_finalized();
    check_attribute(attribute);
    return count_.at(static_cast<std::size_t>(user_idx) * attribute_count_ + (attribute - 1));
}

std::vector<RatingRecord> RatingsStore::sorted_records() const {
    require_finalized();
    std::vector<RatingRecord> out;
    out.reserve(record_count_);
    for (std::size_t u = 0; u < by_user_.size(); ++u)
        for (const UserRating& r : by_user_[u])
            out.push_back({user_ids_[u], item_ids_[static_cast<std::size_t>(r.item)], r.attribute, r.score});
    std::sort(out.begin(), out.end(), [](const RatingRecord& a, const RatingRecord& b) {
        if (a.user != b.user) return a.user < b.user;
        if (a.item != b.item) return a.item < b.item;
        return a.attribute < b.attribute;
    });
    return out;
}

}  // namespace semrec
