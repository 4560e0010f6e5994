#include "mlsn/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "mlsn/csv.hpp"
#include "mlsn/flatten.hpp"

namespace mlsn {

using nlohmann::ordered_json;

namespace {

TimeWindowSpec windows_from_json(const ordered_json& w) {
    std::vector<double> weights;
    if (w.contains("weights")) {
        for (const auto& v : w["weights"]) weights.push_back(v.get<double>());
    }
    const std::string mode = w.value("mode", "equal-periods");
    if (mode == "sliding") {
        if (!w.contains("window_length") || !w.contains("interval")) {
            throw ConfigError("sliding windows need window_length and interval");
        }
        return TimeWindowSpec::sliding(Rational{w["window_length"].get<std::int64_t>()},
                                       Rational{w["interval"].get<std::int64_t>()},
                                       std::move(weights));
    }
    if (mode == "equal-periods") {
        if (!w.contains("periods")) {
            throw ConfigError("equal-periods windows need a periods count");
        }
        return TimeWindowSpec::equal_periods(w["periods"].get<int>(), std::move(weights));
    }
    throw ConfigError("unknown window mode \"" + mode + "\"");
}

}   // namespace

PipelineConfig PipelineConfig::from_json(const std::string& text,
                                         const std::filesystem::path& base_dir) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    PipelineConfig config;
    auto path_of = [&](const char* key) -> std::filesystem::path {
        if (!doc.contains(key) || !doc[key].is_string()) {
            throw ConfigError(std::string("config needs a \"") + key + "\" path");
        }
        std::filesystem::path p = doc[key].get<std::string>();
        return p.is_absolute() ? p : base_dir / p;
    };
    config.inputs.users = path_of("users");
    config.inputs.objects = path_of("objects");
    config.inputs.activities = path_of("activities");
    config.inputs.schema = path_of("schema");

    if (!doc.contains("end_levels") || !doc["end_levels"].is_array() ||
        doc["end_levels"].empty()) {
        throw ConfigError("config needs a non-empty \"end_levels\" array");
    }
    for (const auto& l : doc["end_levels"]) {
        config.end_levels.push_back(l.get<std::string>());
    }
    if (doc.contains("layers")) {
        if (doc["layers"].is_string()) {
            if (doc["layers"].get<std::string>() != "all") {
                throw ConfigError("\"layers\" must be \"all\" or an array of layer labels");
            }
        } else {
            for (const auto& l : doc["layers"]) config.layers.push_back(l.get<std::string>());
        }
    }
    if (doc.contains("model")) {
        const std::string m = doc["model"].get<std::string>();
        if (m == "ngraph") {
            config.model = SnModel::NGraph;
        } else if (m == "multigraph") {
            config.model = SnModel::MultiGraph;
        } else {
            throw ConfigError("model must be \"ngraph\" or \"multigraph\"");
        }
    }
    if (doc.contains("naming")) {
        const auto& n = doc["naming"];
        const std::string mode = n.value("mode", "initials");
        if (mode == "initials") {
            config.naming.mode = RoleNaming::Mode::Initials;
        } else if (mode == "full-labels") {
            config.naming.mode = RoleNaming::Mode::FullLabels;
        } else {
            throw ConfigError("naming mode must be \"initials\" or \"full-labels\"");
        }
        config.naming.separator = n.value("separator", std::string("-"));
    }
    if (doc.contains("windows")) {
        config.windows = windows_from_json(doc["windows"]);
    }
    if (doc.contains("out_dir")) {
        std::filesystem::path p = doc["out_dir"].get<std::string>();
        config.out_dir = p.is_absolute() ? p : base_dir / p;
    }
    return config;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& config_path) {
    return from_json(read_file(config_path), config_path.parent_path());
}

std::string edge_tsv(const std::vector<Edge>& edges) {
    std::string out = "from_user\tto_user\tstrength\tsupport\tlayer\n";
    for (const Edge& e : edges) {
        out += e.from + "\t" + e.to + "\t" + std::to_string(e.strength.num) + "/" +
               std::to_string(e.strength.den) + "\t" + std::to_string(e.strength.num) + "\t" +
               e.oriented_label() + "\n";
    }
    return out;
}

namespace {

std::string slug(const std::string& label) {
    std::string out;
    for (char c : label) {
        out += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(
                                                                 static_cast<unsigned char>(c)))
                                                           : '_';
    }
    return out;
}

std::string fpsn_summary(const PreSocialNetwork& fpsn, const RoleNaming& naming) {
    std::map<std::string, std::int64_t> by_role;
    for (const Activity& a : fpsn.activities()) {
        ++by_role[render_role(a.role, naming)];
    }
    std::string out = "users\t" + std::to_string(fpsn.users().size()) + "\n";
    out += "objects\t" + std::to_string(fpsn.objects().size()) + "\n";
    out += "end_level\t" + fpsn.schema().label(fpsn.end_level()) + "\n";
    out += "activities\t" + std::to_string(fpsn.activities().size()) + "\n";
    for (const auto& [role, count] : by_role) {
        out += "role\t" + role + "\t" + std::to_string(count) + "\n";
    }
    return out;
}

std::string diagnostics_text(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const Diagnostic& d : diagnostics) {
        out += d.file + ":" + std::to_string(d.line) + ": " + d.message + "\n";
    }
    return out;
}

std::string fmt_decimal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}   // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    if (config.end_levels.empty()) {
        throw ConfigError("at least one end level is required");
    }
    if (config.out_dir.empty()) {
        throw ConfigError("an output directory is required");
    }

    IngestResult ingest = ingest_dataset(config.inputs);
    const PreSocialNetwork& net = ingest.net;

    for (const std::string& label : config.end_levels) {
        if (!net.schema().level_of(label)) {
            throw ConfigError("end level \"" + label + "\" is not in the schema");
        }
    }
    if (config.naming.mode == RoleNaming::Mode::Initials) {
        if (std::string problem = check_naming(net.schema(), config.naming); !problem.empty()) {
            throw ConfigError(problem);
        }
    }

    PipelineResult result;
    result.cleansing = ingest.cleansing;
    result.diagnostics = ingest.parse.diagnostics;
    result.inventory = activity_inventory(net);

    std::filesystem::create_directories(config.out_dir);
    auto emit = [&](const std::filesystem::path& rel, const std::string& content) {
        write_file(config.out_dir / rel, content);
        result.files.push_back(rel);
    };
    emit("cleansing_report.json", ingest.cleansing.to_json());
    emit("diagnostics.txt", diagnostics_text(ingest.parse.diagnostics));
    emit("inventory.txt", inventory_text(result.inventory));
    emit("inventory.csv", inventory_csv(result.inventory));

    std::vector<LayerStats> per_level;
    for (const std::string& label : config.end_levels) {
        const int e = *net.schema().level_of(label);
        const std::filesystem::path dir = "level-" + label;
        std::filesystem::create_directories(config.out_dir / dir);

        PreSocialNetwork fpsn = flatten(net, e);
        FlatteningStats fstats = flattening_stats(net, fpsn);
        emit(dir / "fpsn_summary.txt", fpsn_summary(fpsn, config.naming));
        emit(dir / "flattening_stats.txt", flattening_text(fstats));
        emit(dir / "flattening_stats.csv", flattening_csv(fstats));

        std::vector<LayerKey> available = enumerate_layers(fpsn, config.naming);
        std::vector<LayerKey> selection;
        if (config.layers.empty()) {
            selection = available;
        } else {
            for (const std::string& wanted : config.layers) {
                auto hit = std::find_if(available.begin(), available.end(),
                                        [&](const LayerKey& k) { return k.label() == wanted; });
                if (hit == available.end()) {
                    throw ConfigError("layer \"" + wanted + "\" does not exist at end level \"" +
                                      label + "\"");
                }
                selection.push_back(*hit);
            }
        }

        SocialNetwork sn = selection.empty()
                               ? SocialNetwork{config.model, {}}
                               : build_sn(fpsn, selection, config.model, config.naming);
        SocialNetwork baseline = make_baseline(net, e, config.model, config.naming);
        LayerStats lstats = layer_stats(fpsn, sn, baseline, config.naming);
        emit(dir / "layer_stats.txt", layer_text(lstats));
        emit(dir / "layer_stats.csv", layer_csv(lstats));

        if (config.model == SnModel::NGraph) {
            std::size_t i = 0;
            for (const LayerGraph& layer : sn.layers()) {
                char prefix[16];
                std::snprintf(prefix, sizeof(prefix), "layer-%02zu-", i++);
                emit(dir / (prefix + slug(layer.key.label()) + ".tsv"), edge_tsv(layer.edges));
            }
        } else {
            emit(dir / "edges.tsv", edge_tsv(sn.edges));
        }

        if (config.windows) {
            std::string win = "from_user\tto_user\tstrength\tlayer\n";
            for (const Edge& edge : sn.edges) {
                RolePairQuery query{edge.from_role(), edge.to_role()};
                auto s = windowed_strength(fpsn, edge.from, edge.to, query, *config.windows,
                                           config.naming);
                win += edge.from + "\t" + edge.to + "\t" + (s ? fmt_decimal(*s) : "absent") +
                       "\t" + edge.oriented_label() + "\n";
            }
            emit(dir / "edges_windowed.tsv", win);
        }

        result.levels.push_back({e, label, dir, std::move(fstats), lstats});
        per_level.push_back(std::move(lstats));
    }

    emit("plot_data.csv", emit_plot_data(per_level));

    std::string ratios = "base_a,base_b,level_from,level_to,count_from,count_to,ratio\n";
    for (const CrossLevelRatio& r : cross_level_ratios(per_level)) {
        ratios += csv::join_row({r.base_a, r.base_b, std::to_string(r.level_from),
                                 std::to_string(r.level_to), std::to_string(r.count_from),
                                 std::to_string(r.count_to), fmt_decimal(r.ratio)});
    }
    emit("ratios.csv", ratios);
    return result;
}

ValidateResult run_validate(const InputPaths& paths) {
    ValidateResult result;
    DatasetSchema schema = load_schema(paths.schema);
    result.parse = parse_input(paths, schema);
    CleanDataset clean = cleanse(result.parse.records, schema);
    result.cleansing = clean.report;
    try {
        std::vector<ActivityRecord> inferred =
            infer_activities(clean.objects, clean.activities, schema);
        build_hpsn(clean, inferred, schema);
        result.built = true;
    } catch (const HierarchyError& e) {
        result.hierarchy = e.report;
    }
    return result;
}

}   // namespace mlsn
