#pragma once

#include <string>

#include "semrec/concept_catalog.hpp"
#include "semrec/config.hpp"
#include "semrec/ratings_store.hpp"

namespace semrec {

// On-disk workspace: normalized ratings.csv and concepts.csv plus a
// manifest.json echoing the configuration and its hash. Text formats only.
struct Workspace {
    EngineConfig config;
    RatingsStore store;
    ConceptCatalog catalog;

    static Workspace create(const std::string& dir, const RatingsStore& store,
                            const ConceptCatalog& catalog, const EngineConfig& config);
    static Workspace load(const std::string& dir);

    static std::string manifest_path(const std::string& dir);
};

}  // namespace semrec
