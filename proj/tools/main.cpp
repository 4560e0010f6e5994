#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlsn/pipeline.hpp"
#include "mlsn/synth.hpp"

namespace {

// 0 success; distinct codes per failure class
constexpr int kConfigExit = 2;
constexpr int kParseExit = 3;
constexpr int kCleanseExit = 4;
constexpr int kHierarchyExit = 5;

std::filesystem::path default_out_dir() {
    const char* env = std::getenv("MLSN_OUT_DIR");
    return (env && *env) ? std::filesystem::path(env) : std::filesystem::path("out");
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const mlsn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const mlsn::AmbiguousInitials& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const mlsn::UnknownLayer& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const mlsn::UncoverableRange& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const mlsn::SchemaError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseExit;
    } catch (const mlsn::ParseFatal& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseExit;
    } catch (const mlsn::HierarchyError& e) {
        std::cerr << "hierarchy error: " << e.what() << "\n";
        return kHierarchyExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

struct ValidateArgs {
    mlsn::InputPaths inputs;
    std::filesystem::path report;
};

int cmd_validate(const ValidateArgs& args) {
    mlsn::ValidateResult result = mlsn::run_validate(args.inputs);

    nlohmann::ordered_json doc;
    doc["ok"] = result.ok();
    doc["diagnostics"] = nlohmann::ordered_json::array();
    for (const mlsn::Diagnostic& d : result.parse.diagnostics) {
        doc["diagnostics"].push_back({{"file", d.file}, {"line", d.line}, {"message", d.message}});
    }
    doc["cleansing"] = nlohmann::ordered_json::parse(result.cleansing.to_json());
    doc["hierarchy"] = nlohmann::ordered_json::array();
    for (const mlsn::Violation& v : result.hierarchy.violations) {
        doc["hierarchy"].push_back({{"kind", mlsn::to_string(v.kind)},
                                    {"object", v.object_id},
                                    {"detail", v.detail}});
    }
    if (!args.report.empty()) {
        std::filesystem::create_directories(args.report.parent_path());
        mlsn::write_file(args.report, doc.dump(2) + "\n");
    }

    for (const mlsn::Diagnostic& d : result.parse.diagnostics) {
        std::cout << d.file << ":" << d.line << ": " << d.message << "\n";
    }
    for (const mlsn::Rejection& r : result.cleansing.rejections) {
        std::cout << r.file << ":" << r.line << ": " << to_string(r.kind) << " " << r.id
                  << " rejected, " << to_string(r.rule)
                  << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
    }
    for (const mlsn::Violation& v : result.hierarchy.violations) {
        std::cout << "hierarchy: " << to_string(v.kind) << " at object " << v.object_id
                  << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
    }
    std::cout << "users " << result.cleansing.accepted_users << "/"
              << result.cleansing.total_users << ", objects "
              << result.cleansing.accepted_objects << "/" << result.cleansing.total_objects
              << ", activities " << result.cleansing.accepted_activities << "/"
              << result.cleansing.total_activities << "\n";

    if (!result.parse.diagnostics.empty()) return kParseExit;
    if (!result.cleansing.clean()) return kCleanseExit;
    if (!result.hierarchy.ok() || !result.built) return kHierarchyExit;
    std::cout << "ok\n";
    return 0;
}

struct PipelineArgs {
    std::filesystem::path config;
    std::string users, objects, activities, schema;
    std::vector<std::string> end_levels;
    std::vector<std::string> layers;
    std::string model, naming, separator, out;
    std::string window_mode;
    std::int64_t window_length = 0, window_interval = 0;
    int window_periods = 0;
    std::vector<double> window_weights;
};

int cmd_pipeline(const PipelineArgs& args) {
    mlsn::PipelineConfig config;
    if (!args.config.empty()) {
        config = mlsn::PipelineConfig::load(args.config);
    }

    // flags win over the config file
    if (!args.users.empty()) config.inputs.users = args.users;
    if (!args.objects.empty()) config.inputs.objects = args.objects;
    if (!args.activities.empty()) config.inputs.activities = args.activities;
    if (!args.schema.empty()) config.inputs.schema = args.schema;
    if (!args.end_levels.empty()) config.end_levels = args.end_levels;
    if (!args.layers.empty()) {
        config.layers = args.layers;
        if (args.layers.size() == 1 && args.layers[0] == "all") config.layers.clear();
    }
    if (!args.model.empty()) {
        if (args.model == "ngraph") {
            config.model = mlsn::SnModel::NGraph;
        } else if (args.model == "multigraph") {
            config.model = mlsn::SnModel::MultiGraph;
        } else {
            throw mlsn::ConfigError("model must be \"ngraph\" or \"multigraph\"");
        }
    }
    if (!args.naming.empty()) {
        if (args.naming == "initials") {
            config.naming.mode = mlsn::RoleNaming::Mode::Initials;
        } else if (args.naming == "full-labels") {
            config.naming.mode = mlsn::RoleNaming::Mode::FullLabels;
        } else {
            throw mlsn::ConfigError("naming must be \"initials\" or \"full-labels\"");
        }
    }
    if (!args.separator.empty()) config.naming.separator = args.separator;
    if (!args.window_mode.empty()) {
        if (args.window_mode == "sliding") {
            config.windows = mlsn::TimeWindowSpec::sliding(mlsn::Rational{args.window_length},
                                                           mlsn::Rational{args.window_interval},
                                                           args.window_weights);
        } else if (args.window_mode == "equal-periods") {
            config.windows =
                mlsn::TimeWindowSpec::equal_periods(args.window_periods, args.window_weights);
        } else {
            throw mlsn::ConfigError("window mode must be \"sliding\" or \"equal-periods\"");
        }
    }
    if (!args.out.empty()) config.out_dir = args.out;
    if (config.out_dir.empty()) config.out_dir = default_out_dir();

    if (config.inputs.users.empty() || config.inputs.objects.empty() ||
        config.inputs.activities.empty() || config.inputs.schema.empty()) {
        throw mlsn::ConfigError("users, objects, activities and schema paths are all required");
    }

    mlsn::PipelineResult result = mlsn::run_pipeline(config);
    std::cout << "accepted users " << result.cleansing.accepted_users << "/"
              << result.cleansing.total_users << ", objects "
              << result.cleansing.accepted_objects << "/" << result.cleansing.total_objects
              << ", activities " << result.cleansing.accepted_activities << "/"
              << result.cleansing.total_activities << "\n";
    if (!result.cleansing.clean()) {
        std::cout << result.cleansing.rejections.size()
                  << " record(s) rejected during cleansing, see cleansing_report.json\n";
    }
    for (const mlsn::EndLevelArtifacts& level : result.levels) {
        std::cout << "end level " << level.label << ": " << level.flattening.total_before
                  << " -> " << level.flattening.total_after << " activities, "
                  << level.layers.rows.size() << " layer(s), " << level.layers.total_edges
                  << " edge(s)\n";
    }
    std::cout << result.files.size() << " file(s) under " << config.out_dir.string() << "\n";
    return 0;
}

struct GenerateArgs {
    std::filesystem::path params;
    std::string out;
    std::int64_t seed = -1;
};

int cmd_generate(const GenerateArgs& args) {
    mlsn::GenParams params;
    try {
        params = mlsn::GenParams::from_json(mlsn::read_file(args.params));
    } catch (const mlsn::ParseFatal& e) {
        throw mlsn::ConfigError(e.what());
    }
    if (args.seed >= 0) params.seed = static_cast<std::uint64_t>(args.seed);
    const std::filesystem::path out =
        args.out.empty() ? default_out_dir() : std::filesystem::path(args.out);

    mlsn::Generated g = mlsn::generate(params, out);
    std::cout << "seed " << params.seed << ": " << g.net.users().size() << " users, "
              << g.net.objects().size() << " objects, " << g.net.activities().size()
              << " activities -> " << out.string() << "\n";
    return 0;
}

}   // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Extracts multi-layered social networks from hierarchical activity logs.\n"
        "Inputs: users.csv (id,label), objects.csv (id,level,parent_id,created_at,creator_id),\n"
        "activities.csv (user_id,object_id,activity_type,timestamp), schema.json (levels,\n"
        "activity map, optional time_range and inference sections).\n"
        "Exit codes: 0 ok, 2 config, 3 parse, 4 cleansing, 5 hierarchy."};
    app.require_subcommand(1);

    ValidateArgs vargs;
    CLI::App* validate = app.add_subcommand(
        "validate", "Parse, cleanse and check the hierarchy without building anything");
    validate->add_option("--users", vargs.inputs.users, "users.csv path")->required();
    validate->add_option("--objects", vargs.inputs.objects, "objects.csv path")->required();
    validate->add_option("--activities", vargs.inputs.activities, "activities.csv path")
        ->required();
    validate->add_option("--schema", vargs.inputs.schema, "schema.json path")->required();
    validate->add_option("--report", vargs.report,
                         "where to write the JSON validation report (optional)");

    PipelineArgs pargs;
    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "Ingest, flatten per end level, extract layers, write reports");
    pipeline->add_option("--config", pargs.config, "JSON config; flags override its values");
    pipeline->add_option("--users", pargs.users, "users.csv path");
    pipeline->add_option("--objects", pargs.objects, "objects.csv path");
    pipeline->add_option("--activities", pargs.activities, "activities.csv path");
    pipeline->add_option("--schema", pargs.schema, "schema.json path");
    pipeline->add_option("--end-level", pargs.end_levels,
                         "end level label, repeatable for several runs");
    pipeline->add_option("--layer", pargs.layers,
                         "layer label to extract (repeatable), or \"all\"");
    pipeline->add_option("--model", pargs.model, "ngraph (per-layer files) or multigraph");
    pipeline->add_option("--naming", pargs.naming, "initials or full-labels");
    pipeline->add_option("--separator", pargs.separator, "label separator for full-labels");
    pipeline->add_option("--out", pargs.out,
                         "output directory (default: $MLSN_OUT_DIR, then ./out)");
    pipeline->add_option("--window-mode", pargs.window_mode, "sliding or equal-periods");
    pipeline->add_option("--window-length", pargs.window_length, "sliding window length");
    pipeline->add_option("--window-interval", pargs.window_interval, "sliding window shift");
    pipeline->add_option("--window-periods", pargs.window_periods, "equal-periods count");
    pipeline->add_option("--window-weight", pargs.window_weights,
                         "per-window weight, repeatable; must sum to 1");

    GenerateArgs gargs;
    CLI::App* generate =
        app.add_subcommand("generate", "Write a deterministic synthetic dataset");
    generate->add_option("--params", gargs.params, "generator parameters JSON")->required();
    generate->add_option("--out", gargs.out,
                         "output directory (default: $MLSN_OUT_DIR, then ./out)");
    generate->add_option("--seed", gargs.seed, "override the seed from the params file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigExit;   // usage problems are config problems
    }

    if (validate->parsed()) return guarded([&] { return cmd_validate(vargs); });
    if (pipeline->parsed()) return guarded([&] { return cmd_pipeline(pargs); });
    if (generate->parsed()) return guarded([&] { return cmd_generate(gargs); });
    return kConfigExit;
}
