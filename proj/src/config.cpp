#include "semrec/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace semrec {

using nlohmann::ordered_json;

void EngineConfig::check() const {
    if (attribute_names.empty()) throw ConfigError("attributes: need at least one attribute name");
    if (!(scale.min_score < scale.max_score))
        throw ConfigError("rating_scale: min must be strictly below max");
    attribute_weights.check(attribute_count());
    hybrid_weights.check();
    if (!scale.contains(liking_threshold))
        throw ConfigError("liking_threshold must lie within the rating scale");
    if (recommendation_threshold < 0.0 || recommendation_threshold > 1.0)
        throw ConfigError("recommendation_threshold must lie in [0, 1]");
    if (!(coverage_budget > 0.0) || coverage_budget > 1.0)
        throw ConfigError("coverage_budget must lie in (0, 1]");
    if (min_agreements < 1) throw ConfigError("min_agreements must be >= 1");
    if (agreement_attribute < 1 || agreement_attribute > attribute_count())
        throw ConfigError("agreement_attribute outside [1.." + std::to_string(attribute_count()) + "]");
    if (overall_attribute < 1 || overall_attribute > attribute_count())
        throw ConfigError("overall_attribute outside [1.." + std::to_string(attribute_count()) + "]");
    if (neighborhood_size == 0) throw ConfigError("neighborhood_size must be positive");
    if (holdout_fraction <= 0.0 || holdout_fraction >= 1.0)
        throw ConfigError("holdout_fraction must lie in (0, 1)");
}

std::string EngineConfig::to_json_string() const {
    ordered_json j;
    j["rating_scale"] = {{"min", scale.min_score}, {"max", scale.max_score}};
    j["attributes"] = attribute_names;
    j["attribute_weights"] = attribute_weights.w;
    j["hybrid_weights"] = {{"multi_attribute", hybrid_weights.multi_attribute},
                           {"semantic", hybrid_weights.semantic}};
    j["liking_threshold"] = liking_threshold;
    j["recommendation_threshold"] = recommendation_threshold;
    j["influence_measure"] = to_string(influence_measure);
    j["coverage_budget"] = coverage_budget;
    j["min_agreements"] = min_agreements;
    j["agreement_attribute"] = agreement_attribute;
    j["overall_attribute"] = overall_attribute;
    j["traversal"] = to_string(traversal);
    j["profile_comparison"] = to_string(profile_comparison);
    j["neighborhood_size"] = neighborhood_size;
    j["holdout_fraction"] = holdout_fraction;
    j["seed"] = seed;
    return j.dump(2) + "\n";
}

namespace {

const std::set<std::string> kKnownKeys = {
    "rating_scale",       "attributes",       "attribute_weights", "hybrid_weights",
    "liking_threshold",   "recommendation_threshold", "influence_measure", "coverage_budget",
    "min_agreements",     "agreement_attribute", "overall_attribute", "traversal",
    "profile_comparison", "neighborhood_size", "holdout_fraction",  "seed"};

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

}  // namespace

EngineConfig EngineConfig::from_json_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    for (const auto& [key, value] : j.items())
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");

    EngineConfig cfg;
    bool weights_given = false;
    try {
        if (j.contains("rating_scale")) {
            cfg.scale.min_score = j["rating_scale"].at("min").get<double>();
            cfg.scale.max_score = j["rating_scale"].at("max").get<double>();
        }
        if (j.contains("attributes"))
            cfg.attribute_names = j["attributes"].get<std::vector<std::string>>();
        if (j.contains("attribute_weights")) {
            cfg.attribute_weights.w = j["attribute_weights"].get<std::vector<double>>();
            weights_given = true;
        }
        if (j.contains("hybrid_weights")) {
            cfg.hybrid_weights.multi_attribute = j["hybrid_weights"].at("multi_attribute").get<double>();
            cfg.hybrid_weights.semantic = j["hybrid_weights"].at("semantic").get<double>();
        }
        if (j.contains("liking_threshold")) cfg.liking_threshold = j["liking_threshold"].get<double>();
        if (j.contains("recommendation_threshold"))
            cfg.recommendation_threshold = j["recommendation_threshold"].get<double>();
        if (j.contains("influence_measure"))
            cfg.influence_measure = centrality_measure_from_string(j["influence_measure"].get<std::string>());
        if (j.contains("coverage_budget")) cfg.coverage_budget = j["coverage_budget"].get<double>();
        if (j.contains("min_agreements")) cfg.min_agreements = j["min_agreements"].get<int>();
        if (j.contains("agreement_attribute")) cfg.agreement_attribute = j["agreement_attribute"].get<int>();
        if (j.contains("overall_attribute")) cfg.overall_attribute = j["overall_attribute"].get<int>();
        if (j.contains("traversal"))
            cfg.traversal = traversal_mode_from_string(j["traversal"].get<std::string>());
        if (j.contains("profile_comparison"))
            cfg.profile_comparison = profile_comparison_from_string(j["profile_comparison"].get<std::string>());
        if (j.contains("neighborhood_size")) cfg.neighborhood_size = j["neighborhood_size"].get<std::size_t>();
        if (j.contains("holdout_fraction")) cfg.holdout_fraction = j["holdout_fraction"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("malformed config value: ") + e.what());
    }

    // A non-default attribute list without matching weights is the classic
    // half-edited config; name the missing key explicitly.
    if (!weights_given) {
        if (cfg.attribute_count() != 3)
            bad_key("attribute_weights",
                    "missing, and the default cannot cover " +
                        std::to_string(cfg.attribute_count()) + " attributes (W_A)");
        cfg.attribute_weights = AttributeWeights::uniform(cfg.attribute_count());
    }
    // Default the overall/agreement attribute to the last attribute when the
    // attribute list shrinks or grows.
    if (!j.contains("agreement_attribute") && cfg.attribute_count() != 3)
        cfg.agreement_attribute = cfg.attribute_count();
    if (!j.contains("overall_attribute") && cfg.attribute_count() != 3)
        cfg.overall_attribute = cfg.attribute_count();

    cfg.check();
    return cfg;
}

EngineConfig EngineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

void EngineConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config '" + path + "'");
    out << to_json_string();
}

std::string EngineConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(to_json_string())));
    return buf;
}

}  // namespace semrec
