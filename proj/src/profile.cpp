#include "semrec/profile.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace semrec {

ProfileComparison profile_comparison_from_string(const std::string& s) {
    if (s == "mass") return ProfileComparison::mass;
    if (s == "cosine") return ProfileComparison::cosine;
    throw ConfigError("unknown profile comparison '" + s + "' (mass|cosine)");
}

const char* to_string(ProfileComparison c) {
    return c == ProfileComparison::mass ? "mass" : "cosine";
}

SemanticUserProfile build_user_profile(const RatingsStore& store, const ConceptCatalog& catalog,
                                       const UserId& user, double liking_threshold,
                                       AttributeId overall_attribute) {
    store.check_attribute(overall_attribute);
    int u = store.user_index(user);

    SemanticUserProfile profile;
    profile.user = user;
    double total = 0.0;
    for (const auto& r : store.ratings_of_user(u)) {
        if (r.attribute != overall_attribute || r.score < liking_threshold) continue;
        const ItemId& item = store.item_id(r.item);
        if (!catalog.has_item(item)) continue;
        for (const ConceptId& c : catalog.concepts(item)) {
            profile.weights[c] += r.score;
            total += r.score;
        }
    }
    if (total > 0.0)
        for (auto& [c, w] : profile.weights) w /= total;
    return profile;
}

double profile_product_similarity(const SemanticUserProfile& profile,
                                  const std::set<ConceptId>& product_concepts,
                                  ProfileComparison comparison) {
    if (profile.empty() || product_concepts.empty()) return 0.0;
    double mass = 0.0;
    for (const ConceptId& c : product_concepts) mass += profile.weight(c);
    if (comparison == ProfileComparison::mass) return mass;

    double norm_sq = 0.0;
    for (const auto& [c, w] : profile.weights) norm_sq += w * w;
    if (norm_sq == 0.0) return 0.0;
    return mass / (std::sqrt(norm_sq) * std::sqrt(static_cast<double>(product_concepts.size())));
}

ProfileSet ProfileSet::build_all(const RatingsStore& store, const ConceptCatalog& catalog,
                                 double liking_threshold, AttributeId overall_attribute) {
    ProfileSet set;
    for (const UserId& user : store.users())
        set.insert(build_user_profile(store, catalog, user, liking_threshold, overall_attribute));
    return set;
}

void ProfileSet::insert(SemanticUserProfile profile) {
    UserId key = profile.user;
    profiles_[std::move(key)] = std::move(profile);
}

const SemanticUserProfile& ProfileSet::of(const UserId& user) const {
    auto it = profiles_.find(user);
    return it == profiles_.end() ? empty_ : it->second;
}

void write_profiles(std::ostream& out, const ProfileSet& profiles) {
    out << "user,concept,weight\n";
    char buf[32];
    for (const auto& [user, profile] : profiles.all())
        for (const auto& [concept, weight] : profile.weights) {
            std::snprintf(buf, sizeof(buf), "%.6f", weight);
            out << user << "," << concept << "," << buf << "\n";
        }
}

}  // namespace semrec
