#pragma once

#include <cstdint>
#include <string>

namespace semrec {

using UserId = std::string;
using ItemId = std::string;
using ConceptId = std::string;

// Attributes are 1-based indices in [1..K].
using AttributeId = int;

struct RatingScale {
    double min_score = 1.0;
    double max_score = 5.0;

    bool contains(double s) const { return s >= min_score && s <= max_score; }
    double clamp(double s) const {
        if (s < min_score) return min_score;
        if (s > max_score) return max_score;
        return s;
    }
};

struct RatingRecord {
    UserId user;
    ItemId item;
    AttributeId attribute = 0;
    double score = 0.0;

    friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

// Similarity value plus a degeneracy marker for empty/zero-variance inputs.
struct SimValue {
    double value = 0.0;
    bool degenerate = false;
};

// FNV-1a, used for config hashes and per-key sub-seeds. Stable across
// platforms, unlike std::hash.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace semrec
