#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semrec/centrality.hpp"
#include "semrec/config.hpp"
#include "semrec/eval.hpp"
#include "semrec/graph.hpp"
#include "semrec/ingest.hpp"
#include "semrec/profile.hpp"
#include "semrec/recommend.hpp"
#include "semrec/synthetic.hpp"
#include "semrec/workspace.hpp"

namespace fs = std::filesystem;
using namespace semrec;

namespace {

// Command-line overrides shared by recommend/evaluate/compare. Flags beat
// the config file, which beats built-in defaults.
struct Overrides {
    std::optional<double> threshold;
    std::optional<std::string> measure;
    std::optional<double> budget;
    std::optional<std::string> traversal;
    std::optional<std::uint64_t> seed;
    std::optional<double> liking;
    std::optional<std::size_t> neighborhood;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--threshold", threshold, "Acceptance threshold in [0,1]")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--measure", measure, "Influence measure: degree|closeness|betweenness");
        cmd->add_option("--budget", budget, "Coverage budget in (0,1]")
            ->check(CLI::Range(1e-9, 1.0));
        cmd->add_option("--traversal", traversal, "Traversal mode: scan|expand");
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--liking", liking, "Liking threshold on the rating scale");
        cmd->add_option("--k", neighborhood, "Baseline CF neighborhood size");
    }

    void apply(EngineConfig& cfg) const {
        if (threshold) cfg.recommendation_threshold = *threshold;
        if (measure) cfg.influence_measure = centrality_measure_from_string(*measure);
        if (budget) cfg.coverage_budget = *budget;
        if (traversal) cfg.traversal = traversal_mode_from_string(*traversal);
        if (seed) cfg.seed = *seed;
        if (liking) cfg.liking_threshold = *liking;
        if (neighborhood) cfg.neighborhood_size = *neighborhood;
        cfg.check();
    }
};

struct SyntheticFlags {
    std::size_t users = 500, items = 200, concepts = 40, communities = 5, queries = 10;
    std::size_t in_active = 12, in_casual = 5, out_ratings = 4;

    void add_flags(CLI::App* cmd, bool* enabled) {
        cmd->add_flag("--synthetic", *enabled, "Evaluate on a generated synthetic dataset");
        cmd->add_option("--users", users, "Synthetic user count");
        cmd->add_option("--items", items, "Synthetic item count");
        cmd->add_option("--concepts", concepts, "Synthetic concept count");
        cmd->add_option("--communities", communities, "Synthetic community count");
        cmd->add_option("--queries-count", queries, "Synthetic query count");
        cmd->add_option("--in-ratings", in_active, "In-community ratings per active user");
        cmd->add_option("--in-ratings-casual", in_casual, "In-community ratings per casual user");
        cmd->add_option("--out-ratings", out_ratings, "Out-of-community ratings per user");
    }

    SyntheticParams params(std::uint64_t seed) const {
        SyntheticParams p;
        p.n_users = users;
        p.n_items = items;
        p.n_concepts = concepts;
        p.community_count = communities;
        p.query_count = queries;
        p.in_ratings_active = in_active;
        p.in_ratings_casual = in_casual;
        p.out_ratings = out_ratings;
        p.seed = seed;
        return p;
    }
};

void echo_config(const EngineConfig& cfg) {
    std::cout << "effective config: threshold=" << cfg.recommendation_threshold
              << " measure=" << to_string(cfg.influence_measure)
              << " budget=" << cfg.coverage_budget << " liking=" << cfg.liking_threshold
              << " min_agreements=" << cfg.min_agreements
              << " agreement_attribute=" << cfg.agreement_attribute
              << " overall_attribute=" << cfg.overall_attribute
              << " traversal=" << to_string(cfg.traversal) << " k=" << cfg.neighborhood_size
              << " seed=" << cfg.seed << "\n";
}

int cmd_ingest(const std::string& ratings_path, const std::string& concepts_path,
               const std::string& config_path, const std::string& workspace_dir) {
    EngineConfig cfg;
    if (!config_path.empty()) cfg = EngineConfig::load(config_path);
    cfg.check();

    RatingsStore store = load_ratings_file(ratings_path, cfg.scale, cfg.attribute_count());
    ConceptCatalog catalog = load_concepts_file(concepts_path);
    ValidationReport report = validate(store, catalog);

    Workspace::create(workspace_dir, store, catalog, cfg);
    std::cout << format_validation_report(report);
    std::cout << "workspace written to " << workspace_dir << " (config " << cfg.hash() << ")\n";
    return 0;
}

int cmd_analyze(const std::string& workspace_dir) {
    Workspace ws = Workspace::load(workspace_dir);
    echo_config(ws.config);

    SocialGraph g = build_co_rating_graph(ws.store, ws.config.agreement_attribute,
                                          ws.config.min_agreements);
    std::cout << "nodes: " << g.node_count() << "\n";
    std::cout << "edges: " << g.edge_count() << "\n";
    if (g.node_count() < 2) {
        std::cout << "density: undefined (fewer than 2 nodes)\n";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", density(g));
        std::cout << "density: " << buf << "\n";
    }

    {
        std::ofstream out(fs::path(workspace_dir) / "graph.csv");
        write_graph(out, g);
    }

    for (CentralityMeasure m : {CentralityMeasure::degree, CentralityMeasure::closeness,
                                CentralityMeasure::betweenness}) {
        CentralityScores scores = compute_centrality(g, m);
        {
            std::ofstream out(fs::path(workspace_dir) /
                              (std::string("centrality_") + to_string(m) + ".csv"));
            write_centrality(out, g, scores);
        }
        std::cout << "top customers by " << to_string(m) << ":\n";
        std::vector<int> order = influence_order(g, scores);
        for (std::size_t i = 0; i < order.size() && i < 10; ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", scores.of(order[i]));
            std::cout << "  " << (i + 1) << ". " << g.node_id(order[i]) << " " << buf << "\n";
        }
    }
    return 0;
}

int cmd_recommend(const std::string& workspace_dir, const std::string& item,
                  const Overrides& overrides, std::optional<std::size_t> max_results) {
    Workspace ws = Workspace::load(workspace_dir);
    overrides.apply(ws.config);
    echo_config(ws.config);

    SocialGraph g = build_co_rating_graph(ws.store, ws.config.agreement_attribute,
                                          ws.config.min_agreements);
    ProfileSet profiles = ProfileSet::build_all(ws.store, ws.catalog, ws.config.liking_threshold,
                                                ws.config.overall_attribute);

    RecommendationQuery q;
    q.product = item;
    q.threshold = ws.config.recommendation_threshold;
    q.influence_measure = ws.config.influence_measure;
    q.coverage_budget = ws.config.coverage_budget;
    q.traversal = ws.config.traversal;
    q.comparison = ws.config.profile_comparison;
    q.max_results = max_results;

    RecommendationResult r = recommend_customers(g, profiles, ws.catalog, q);
    std::cout << "item: " << item << "\n";
    std::cout << "accepted customers: " << r.accepted.size() << "\n";
    for (const auto& a : r.accepted) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", a.score);
        std::cout << "  " << a.user << " " << buf << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", r.elapsed_ms);
    std::cout << "examined nodes: " << r.examined << " of " << g.node_count() << "\n";
    std::cout << "elapsed: " << buf << " ms\n";
    return 0;
}

EvaluationReport evaluate_report(const std::string& workspace_dir, const std::string& queries_path,
                                 bool synthetic, const SyntheticFlags& sflags,
                                 const std::string& config_path, const Overrides& overrides) {
    if (synthetic) {
        EngineConfig cfg;
        if (!config_path.empty()) cfg = EngineConfig::load(config_path);
        overrides.apply(cfg);
        SyntheticDataset data = generate_synthetic(sflags.params(cfg.seed));
        return run_benchmark(data.store, data.catalog, data.truth, data.query_items, cfg);
    }
    Workspace ws = Workspace::load(workspace_dir);
    overrides.apply(ws.config);
    if (queries_path.empty())
        throw ConfigError("evaluate needs --queries FILE or --synthetic");
    auto in = open_input(queries_path);
    std::vector<ItemId> queries = read_queries(*in);
    if (queries.empty()) throw ConfigError("queries file lists no items");

    HoldoutSplit split = split_holdout(ws.store, queries, ws.config.holdout_fraction,
                                       ws.config.overall_attribute, ws.config.seed);
    return run_benchmark(split.train, ws.catalog, split.truth, queries, ws.config);
}

int cmd_evaluate(const std::string& workspace_dir, const std::string& queries_path, bool synthetic,
                 const SyntheticFlags& sflags, const std::string& config_path,
                 const Overrides& overrides, const std::string& out_prefix,
                 const std::string& format) {
    EvaluationReport report =
        evaluate_report(workspace_dir, queries_path, synthetic, sflags, config_path, overrides);

    std::string text_path = out_prefix + ".txt";
    std::string json_path = out_prefix + ".json";
    {
        std::ofstream out(text_path);
        if (!out) throw IoError("cannot write '" + text_path + "'");
        out << report.to_text();
    }
    {
        std::ofstream out(json_path);
        if (!out) throw IoError("cannot write '" + json_path + "'");
        out << report.to_json_string();
    }
    std::cout << (format == "json" ? report.to_json_string() : report.to_text());
    std::cerr << "report written to " << text_path << " and " << json_path << "\n";
    return 0;
}

int cmd_compare(const std::string& report_path, const std::string& workspace_dir,
                const std::string& queries_path, bool synthetic, const SyntheticFlags& sflags,
                const std::string& config_path, const Overrides& overrides) {
    double p_sem, r_sem, p_base, r_base;
    std::optional<double> mae;
    if (!report_path.empty()) {
        std::ifstream in(report_path);
        if (!in) throw IoError("cannot open report '" + report_path + "'");
        nlohmann::json j = nlohmann::json::parse(in);
        const auto& agg = j.at("aggregates");
        p_sem = agg.at("mean_precision_semantic").get<double>();
        r_sem = agg.at("mean_recall_semantic").get<double>();
        p_base = agg.at("mean_precision_baseline").get<double>();
        r_base = agg.at("mean_recall_baseline").get<double>();
        if (agg.contains("baseline_mae") && !agg.at("baseline_mae").is_null())
            mae = agg.at("baseline_mae").get<double>();
    } else {
        EvaluationReport report =
            evaluate_report(workspace_dir, queries_path, synthetic, sflags, config_path, overrides);
        p_sem = report.mean_precision_semantic;
        r_sem = report.mean_recall_semantic;
        p_base = report.mean_precision_baseline;
        r_base = report.mean_recall_baseline;
        if (report.baseline_mae) mae = report.baseline_mae->value;
    }

    char line[128];
    std::cout << "method           mean precision  mean recall\n";
    std::snprintf(line, sizeof(line), "semantic-social  %14.3f  %11.3f\n", p_sem, r_sem);
    std::cout << line;
    std::snprintf(line, sizeof(line), "baseline-cf      %14.3f  %11.3f\n", p_base, r_base);
    std::cout << line;
    if (mae) {
        std::snprintf(line, sizeof(line), "baseline-cf      MAE %.3f\n", *mae);
        std::cout << line;
    }
    std::cout << (p_sem >= p_base && r_sem >= r_base
                      ? "semantic-social matches or beats the baseline on both means\n"
                      : "baseline leads on at least one mean\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semrec - semantic-social recommender engine"};
    app.require_subcommand(1);

    std::string workspace_dir;
    std::string ratings_path, concepts_path, config_path, queries_path;
    std::string item, out_prefix = "report", format = "text", report_path;
    bool synthetic = false;
    std::optional<std::size_t> max_results;
    Overrides overrides;
    SyntheticFlags sflags;

    auto add_workspace = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--workspace,-w", workspace_dir, "Workspace directory")
                        ->envname("SEMREC_WORKSPACE");
        if (required) opt->required();
    };

    CLI::App* ingest = app.add_subcommand("ingest", "Parse and validate ratings + concepts into a workspace");
    ingest->add_option("--ratings", ratings_path, "Ratings CSV (optionally .gz)")->required();
    ingest->add_option("--concepts", concepts_path, "Concepts CSV (optionally .gz)")->required();
    ingest->add_option("--config", config_path, "Engine config JSON");
    add_workspace(ingest, true);

    CLI::App* analyze = app.add_subcommand("analyze", "Print co-rating network statistics");
    add_workspace(analyze, true);

    CLI::App* recommend = app.add_subcommand("recommend", "Recommend customers for a product");
    add_workspace(recommend, true);
    recommend->add_option("--item", item, "Product item id")->required();
    recommend->add_option("--max-results", max_results, "Stop after this many acceptances");
    overrides.add_flags(recommend);

    CLI::App* evaluate = app.add_subcommand("evaluate", "Run the paired semantic-social vs baseline benchmark");
    add_workspace(evaluate, false);
    evaluate->add_option("--queries", queries_path, "Queries file (one item id per line)");
    evaluate->add_option("--config", config_path, "Engine config JSON (synthetic mode)");
    evaluate->add_option("--out", out_prefix, "Report path prefix (writes .txt and .json)");
    evaluate->add_option("--format", format, "Stdout format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sflags.add_flags(evaluate, &synthetic);
    overrides.add_flags(evaluate);

    CLI::App* compare = app.add_subcommand("compare", "Side-by-side aggregate comparison");
    compare->add_option("--report", report_path, "Existing JSON report from evaluate");
    add_workspace(compare, false);
    compare->add_option("--queries", queries_path, "Queries file (one item id per line)");
    compare->add_option("--config", config_path, "Engine config JSON (synthetic mode)");
    sflags.add_flags(compare, &synthetic);
    overrides.add_flags(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(ratings_path, concepts_path, config_path, workspace_dir);
        if (analyze->parsed()) return cmd_analyze(workspace_dir);
        if (recommend->parsed()) return cmd_recommend(workspace_dir, item, overrides, max_results);
        if (evaluate->parsed())
            return cmd_evaluate(workspace_dir, queries_path, synthetic, sflags, config_path,
                                overrides, out_prefix, format);
        if (compare->parsed())
            return cmd_compare(report_path, workspace_dir, queries_path, synthetic, sflags,
                               config_path, overrides);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
