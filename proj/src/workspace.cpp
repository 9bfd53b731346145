#include "semrec/workspace.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semrec/ingest.hpp"

namespace semrec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string Workspace::manifest_path(const std::string& dir) {
    return (fs::path(dir) / "manifest.json").string();
}

Workspace Workspace::create(const std::string& dir, const RatingsStore& store,
                            const ConceptCatalog& catalog, const EngineConfig& config) {
    config.check();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create workspace directory '" + dir + "': " + ec.message());

    {
        std::ofstream out(fs::path(dir) / "ratings.csv");
        if (!out) throw IoError("cannot write ratings.csv in '" + dir + "'");
        write_ratings(out, store);
    }
    {
        std::ofstream out(fs::path(dir) / "concepts.csv");
        if (!out) throw IoError("cannot write concepts.csv in '" + dir + "'");
        write_concepts(out, catalog);
    }
    {
        ordered_json manifest;
        manifest["format"] = "semrec-workspace-v1";
        manifest["config"] = ordered_json::parse(config.to_json_string());
        manifest["config_hash"] = config.hash();
        manifest["users"] = store.user_count();
        manifest["items"] = store.item_count();
        manifest["records"] = store.record_count();
        manifest["annotated_items"] = catalog.item_count();
        std::ofstream out(manifest_path(dir));
        if (!out) throw IoError("cannot write manifest.json in '" + dir + "'");
        out << manifest.dump(2) << "\n";
    }

    return Workspace{config, store, catalog};
}

Workspace Workspace::load(const std::string& dir) {
    if (!fs::exists(manifest_path(dir)))
        throw IoError("no workspace at '" + dir + "' (missing manifest.json)");

    std::ifstream mf(manifest_path(dir));
    std::ostringstream buf;
    buf << mf.rdbuf();
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(buf.str());
    } catch (const ordered_json::parse_error& e) {
        throw IoError("corrupt manifest.json in '" + dir + "': " + e.what());
    }
    if (!manifest.contains("config")) throw IoError("manifest.json lacks a config section");

    Workspace ws;
    ws.config = EngineConfig::from_json_string(manifest["config"].dump());
    ws.store = load_ratings_file((fs::path(dir) / "ratings.csv").string(), ws.config.scale,
                                 ws.config.attribute_count());
    ws.catalog = load_concepts_file((fs::path(dir) / "concepts.csv").string());
    return ws;
}

}  // namespace semrec
