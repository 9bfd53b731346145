#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semrec/error.hpp"
#include "semrec/types.hpp"

namespace semrec {

// item -> deduplicated set of concept identifiers.
class ConceptCatalog {
public:
    void add(const ItemId& item, const ConceptId& concept) {
        if (concept.empty()) throw ValidationError("empty concept id for item '" + item + "'");
        items_[item].insert(concept);
    }

    bool has_item(const ItemId& item) const { return items_.count(item) > 0; }
    std::size_t item_count() const { return items_.size(); }

    // Throws UnannotatedItemError when the item is absent.
    const std::set<ConceptId>& concepts(const ItemId& item) const {
        auto it = items_.find(item);
        if (it == items_.end()) throw UnannotatedItemError(item);
        return it->second;
    }

    // Items in ascending id order.
    std::vector<ItemId> item_ids() const {
        std::vector<ItemId> out;
        out.reserve(items_.size());
        for (const auto& [id, _] : items_) out.push_back(id);
        return out;
    }

    friend bool operator==(const ConceptCatalog&, const ConceptCatalog&) = default;

private:
    std::map<ItemId, std::set<ConceptId>> items_;
};

}  // namespace semrec
