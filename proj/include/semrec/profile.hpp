#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semrec/concept_catalog.hpp"
#include "semrec/ratings_store.hpp"
#include "semrec/types.hpp"

namespace semrec {

enum class ProfileComparison { mass, cosine };

ProfileComparison profile_comparison_from_string(const std::string& s);
const char* to_string(ProfileComparison c);

// Normalized concept-weight vector derived from a customer's liked items.
struct SemanticUserProfile {
    UserId user;
    std::map<ConceptId, double> weights;  // sum to 1 when non-empty

    bool empty() const { return weights.empty(); }
    double weight(const ConceptId& c) const {
        auto it = weights.find(c);
        return it == weights.end() ? 0.0 : it->second;
    }
};

// Accumulates, for every item the user rated at least liking_threshold on
// the overall attribute, each of its concepts weighted by that score, then
// normalizes to sum 1. Items missing from the catalog contribute nothing.
SemanticUserProfile build_user_profile(const RatingsStore& store, const ConceptCatalog& catalog,
                                       const UserId& user, double liking_threshold,
                                       AttributeId overall_attribute);

// mass: share of the profile's weight that falls inside the product's
// concept set. cosine: cosine between the profile vector and the product's
// binary concept vector. Both are 0 for empty inputs.
double profile_product_similarity(const SemanticUserProfile& profile,
                                  const std::set<ConceptId>& product_concepts,
                                  ProfileComparison comparison = ProfileComparison::mass);

// Profiles for every user of the store, keyed by user id.
class ProfileSet {
public:
    ProfileSet() = default;
    static ProfileSet build_all(const RatingsStore& store, const ConceptCatalog& catalog,
                                double liking_threshold, AttributeId overall_attribute);

    void insert(SemanticUserProfile profile);
    const SemanticUserProfile& of(const UserId& user) const;  // empty profile if unknown
    std::size_t size() const { return profiles_.size(); }
    const std::map<UserId, SemanticUserProfile>& all() const { return profiles_; }

private:
    std::map<UserId, SemanticUserProfile> profiles_;
    SemanticUserProfile empty_;
};

// `user,concept,weight` lines, weights to 6 decimal places.
void write_profiles(std::ostream& out, const ProfileSet& profiles);

}  // namespace semrec
