#pragma once
// End-to-end wiring: ingest -> flatten -> extract -> report, one output
// directory per end level, plus the validate-only entry point. Used by the
// command-line tool and driven directly by tests.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlsn/ingest.hpp"
#include "mlsn/layers.hpp"
#include "mlsn/report.hpp"

namespace mlsn {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct PipelineConfig {
    InputPaths inputs;
    std::vector<std::string> end_levels;   // level labels, one run each
    std::vector<std::string> layers;       // layer labels; empty or "all" selects every layer
    SnModel model = SnModel::NGraph;
    RoleNaming naming;
    std::optional<TimeWindowSpec> windows;
    std::filesystem::path out_dir;

    // Relative paths in the file resolve against its directory.
    static PipelineConfig from_json(const std::string& text,
                                    const std::filesystem::path& base_dir);
    static PipelineConfig load(const std::filesystem::path& config_path);
};

struct EndLevelArtifacts {
    int end_level = 0;
    std::string label;
    std::filesystem::path dir;
    FlatteningStats flattening;
    LayerStats layers;
};

struct PipelineResult {
    CleansingReport cleansing;
    std::vector<Diagnostic> diagnostics;
    ActivityInventory inventory;
    std::vector<EndLevelArtifacts> levels;
    std::vector<std::filesystem::path> files;   // everything written, relative to out_dir
};

// Runs the full pipeline and writes all artifacts under config.out_dir.
// Output depends only on the input files and the configuration; a rerun
// produces byte-identical files.
PipelineResult run_pipeline(const PipelineConfig& config);

struct ValidateResult {
    ParseResult parse;
    CleansingReport cleansing;
    ValidationReport hierarchy;
    bool built = false;   // the network assembled and validated clean

    bool ok() const {
        return built && parse.diagnostics.empty() && cleansing.clean() && hierarchy.ok();
    }
};

ValidateResult run_validate(const InputPaths& paths);

// One line per edge: from_user, to_user, strength (exact fraction), support
// (shared-object count), layer (oriented role pair), tab-separated, in
// canonical edge order.
std::string edge_tsv(const std::vector<Edge>& edges);

}   // namespace mlsn
