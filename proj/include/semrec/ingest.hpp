#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "semrec/concept_catalog.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/types.hpp"

namespace semrec {

// Result of cross-checking a ratings store against a concept catalog.
// Report-only; inputs are never mutated.
struct ValidationReport {
    // Items that carry ratings but have no concept annotations.
    std::vector<ItemId> unannotated_items;
    // attribute -> users whose scores on that attribute are all identical
    // (constant rating vectors contribute nothing to mean-centered sums).
    std::map<AttributeId, std::vector<UserId>> zero_variance_users;

    std::size_t user_count = 0;
    std::size_t item_count = 0;
    std::size_t record_count = 0;
    std::size_t annotated_item_count = 0;
    std::size_t duplicate_count = 0;

    bool clean() const { return unannotated_items.empty() && zero_variance_users.empty(); }
};

// Parse comma-separated rating lines `user,item,attribute,score`.
// `#` comments and a leading `user,item,attribute,score` header are skipped.
// Duplicate (user, item, attribute) keys resolve last-write-wins and are
// counted in the returned store.
RatingsStore parse_ratings(std::istream& in, RatingScale scale = {}, int attribute_count = 3);

// Parse comma-separated `item,concept` lines into a deduplicated catalog.
ConceptCatalog parse_concepts(std::istream& in);

ValidationReport validate(const RatingsStore& store, const ConceptCatalog& catalog);

// File loaders; names ending in .gz are decompressed transparently.
RatingsStore load_ratings_file(const std::string& path, RatingScale scale = {}, int attribute_count = 3);
ConceptCatalog load_concepts_file(const std::string& path);

// Serialize back to the file formats (header + sorted records).
void write_ratings(std::ostream& out, const RatingsStore& store);
void write_concepts(std::ostream& out, const ConceptCatalog& catalog);

// Opens a path as a text stream, gunzipping when the name ends in .gz.
std::unique_ptr<std::istream> open_input(const std::string& path);

std::string format_validation_report(const ValidationReport& report);

}  // namespace semrec
