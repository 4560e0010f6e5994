#pragma once
// Tabular analyses over pre-social and social networks: activity inventories,
// before/after flattening counts, per-layer relationship counts with
// new-vs-moved classification, and plot-ready long-format data.

#include <cstdint>
#include <string>
#include <vector>

#include "mlsn/core_model.hpp"
#include "mlsn/flatten.hpp"
#include "mlsn/layers.hpp"

namespace mlsn {

struct InventoryRow {
    std::string type;   // base role
    std::int64_t count = 0;
    std::int64_t distinct_users = 0;
    double user_pct = 0.0;   // distinct_users / total users, in percent

    bool operator==(const InventoryRow&) const = default;
};

struct ActivityInventory {
    std::int64_t total_users = 0;
    std::int64_t active_users = 0;   // users with at least one activity
    std::vector<InventoryRow> rows;  // sorted by type

    // exact ratio; the pretty-printers round, this does not
    double active_share() const {
        return total_users == 0 ? 0.0
                                : static_cast<double>(active_users) /
                                      static_cast<double>(total_users);
    }
};

ActivityInventory activity_inventory(const PreSocialNetwork& net);

struct FlattenRow {
    std::string type;   // base role
    std::int64_t before = 0;
    std::int64_t after = 0;
    std::int64_t vanished = 0;   // activities lost to childless pushes
    bool changed = false;        // some activity of this type was moved or multiplied

    bool operator==(const FlattenRow&) const = default;
};

struct FlatteningStats {
    int end_level = 0;
    std::vector<FlattenRow> rows;   // sorted by type
    std::int64_t total_before = 0;
    std::int64_t total_after = 0;
    std::int64_t total_vanished = 0;
};

// Per-type before/after counts. Checks the bookkeeping against the
// hierarchy: lifted activities are conserved one-for-one, pushed ones
// multiply by the descendant count at the end level; a mismatch means
// `after` did not come from flattening `before` and raises invalid_argument.
FlatteningStats flattening_stats(const PreSocialNetwork& before, const PreSocialNetwork& after);

struct LayerRow {
    LayerKey layer;
    std::string base_a;   // base roles behind the rendered pair, for
    std::string base_b;   // cross-end-level comparisons
    std::int64_t relationships = 0;   // directed edges
    bool new_layer = false;           // no baseline counterpart at all
    std::int64_t new_edges = 0;
    std::int64_t moved_edges = 0;

    bool operator==(const LayerRow&) const = default;
};

struct LayerStats {
    int end_level = 0;
    std::vector<LayerRow> rows;
    std::int64_t total_edges = 0;
    std::int64_t new_edges = 0;
    std::int64_t moved_edges = 0;
    double new_pct = 0.0;     // of total_edges; zero when there are no edges
    double moved_pct = 0.0;
};

// Classifies every edge as new (absent from the baseline) or moved (present
// there). Edge identity is (layer, from, to, orientation); strength does not
// matter for the classification.
LayerStats layer_stats(const PreSocialNetwork& flat, const SocialNetwork& sn,
                       const SocialNetwork& baseline, const RoleNaming& naming = {});

// The comparison point for "new": the social network extracted from the
// activities that already sat at the end level, with no flattening involved.
SocialNetwork make_baseline(const PreSocialNetwork& hpsn, int end_level, SnModel model,
                            const RoleNaming& naming = {});

struct CrossLevelRatio {
    std::string base_a;
    std::string base_b;
    int level_from = 0;   // shallower end level
    int level_to = 0;     // deeper end level
    std::int64_t count_from = 0;
    std::int64_t count_to = 0;
    double ratio = 0.0;   // count_to / count_from

    bool operator==(const CrossLevelRatio&) const = default;
};

// Matches layers across consecutive end levels by their base-role pair
// (rendered names differ per level) and emits count ratios where the
// shallower count is nonzero. Input must be sorted by end level.
std::vector<CrossLevelRatio> cross_level_ratios(const std::vector<LayerStats>& per_level);

// Long-format CSV: end_level,layer,count,is_new, one row per layer per end
// level, ready for any plotting tool.
std::string emit_plot_data(const std::vector<LayerStats>& per_level);

// Human-readable fixed-width tables and their machine-readable CSV twins.
std::string inventory_text(const ActivityInventory& inv);
std::string inventory_csv(const ActivityInventory& inv);
std::string flattening_text(const FlatteningStats& stats);
std::string flattening_csv(const FlatteningStats& stats);
std::string layer_text(const LayerStats& stats);
std::string layer_csv(const LayerStats& stats);

}   // namespace mlsn
