#include "mlsn/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "mlsn/csv.hpp"

namespace mlsn {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}   // namespace

ActivityInventory activity_inventory(const PreSocialNetwork& net) {
    ActivityInventory inv;
    inv.total_users = static_cast<std::int64_t>(net.users().size());

    std::map<std::string, std::pair<std::int64_t, std::set<std::string>>> by_type;
    std::unordered_set<std::string> active;
    for (const Activity& a : net.activities()) {
        auto& [count, users] = by_type[a.role.base];
        ++count;
        users.insert(a.user_id);
        active.insert(a.user_id);
    }
    inv.active_users = static_cast<std::int64_t>(active.size());

    for (const auto& [type, entry] : by_type) {
        InventoryRow row;
        row.type = type;
        row.count = entry.first;
        row.distinct_users = static_cast<std::int64_t>(entry.second.size());
        row.user_pct = inv.total_users == 0
                           ? 0.0
                           : 100.0 * static_cast<double>(row.distinct_users) /
                                 static_cast<double>(inv.total_users);
        inv.rows.push_back(std::move(row));
    }
    return inv;
}

FlatteningStats flattening_stats(const PreSocialNetwork& before, const PreSocialNetwork& after) {
    if (after.kind() != NetworkKind::Flat) {
        throw std::invalid_argument("flattening stats compare a hierarchical net to a flat one");
    }
    const int e = after.end_level();

    struct Tally {
        std::int64_t before = 0, after = 0, predicted = 0, vanished = 0;
        bool changed = false;
    };
    std::map<std::string, Tally> by_type;

    for (const Activity& a : before.activities()) {
        auto obj = before.object_index(a.object_id);
        if (!obj) {
            throw std::invalid_argument("activity on unknown object: " + a.object_id);
        }
        Tally& t = by_type[a.role.base];
        ++t.before;
        const int level = before.objects()[*obj].level;
        if (level == e) {
            ++t.predicted;
        } else if (level > e) {
            ++t.predicted;   // lifted, conserved one-for-one
            t.changed = true;
        } else {
            auto copies =
                static_cast<std::int64_t>(before.descendants_at_level(*obj, e).size());
            t.predicted += copies;
            if (copies == 0) ++t.vanished;
            t.changed = true;
        }
    }
    for (const Activity& a : after.activities()) {
        ++by_type[a.role.base].after;
    }

    FlatteningStats stats;
    stats.end_level = e;
    for (const auto& [type, t] : by_type) {
        if (t.after != t.predicted) {
            throw std::invalid_argument(
                "flattened counts for \"" + type + "\" do not match the hierarchy: expected " +
                std::to_string(t.predicted) + ", got " + std::to_string(t.after));
        }
        stats.rows.push_back({type, t.before, t.after, t.vanished, t.changed});
        stats.total_before += t.before;
        stats.total_after += t.after;
        stats.total_vanished += t.vanished;
    }
    return stats;
}

SocialNetwork make_baseline(const PreSocialNetwork& hpsn, int end_level, SnModel model,
                            const RoleNaming& naming) {
    std::vector<Activity> kept;
    for (const Activity& a : hpsn.activities()) {
        auto obj = hpsn.object_index(a.object_id);
        if (obj && hpsn.objects()[*obj].level == end_level) {
            kept.push_back(a);
        }
    }
    PreSocialNetwork restricted(hpsn.schema(), hpsn.users(), hpsn.objects(), std::move(kept),
                                NetworkKind::Hierarchical, 0, hpsn.range());
    std::vector<LayerKey> layers = enumerate_layers(restricted, naming);
    if (layers.empty()) {
        return SocialNetwork{model, {}};
    }
    return build_sn(restricted, layers, model, naming);
}

LayerStats layer_stats(const PreSocialNetwork& flat, const SocialNetwork& sn,
                       const SocialNetwork& baseline, const RoleNaming& naming) {
    std::unordered_map<std::string, std::string> base_of;
    for (const Activity& a : flat.activities()) {
        base_of.emplace(render_role(a.role, naming), a.role.base);
    }
    auto base_for = [&](const std::string& rendered) {
        auto it = base_of.find(rendered);
        return it == base_of.end() ? std::string{} : it->second;
    };

    std::set<LayerKey> baseline_layers;
    std::set<std::tuple<LayerKey, std::string, std::string, bool>> baseline_edges;
    for (const Edge& e : baseline.edges) {
        baseline_layers.insert(e.layer);
        baseline_edges.insert({e.layer, e.from, e.to, e.from_first});
    }

    LayerStats stats;
    stats.end_level = flat.end_level();
    for (const LayerGraph& layer : sn.layers()) {
        LayerRow row;
        row.layer = layer.key;
        row.base_a = base_for(layer.key.role_a);
        row.base_b = base_for(layer.key.role_b);
        row.relationships = static_cast<std::int64_t>(layer.edges.size());
        row.new_layer = !baseline_layers.contains(layer.key);
        for (const Edge& e : layer.edges) {
            if (baseline_edges.contains({e.layer, e.from, e.to, e.from_first})) {
                ++row.moved_edges;
            } else {
                ++row.new_edges;
            }
        }
        stats.total_edges += row.relationships;
        stats.new_edges += row.new_edges;
        stats.moved_edges += row.moved_edges;
        stats.rows.push_back(std::move(row));
    }
    if (stats.total_edges > 0) {
        stats.new_pct = 100.0 * static_cast<double>(stats.new_edges) /
                        static_cast<double>(stats.total_edges);
        stats.moved_pct = 100.0 * static_cast<double>(stats.moved_edges) /
                          static_cast<double>(stats.total_edges);
    }
    return stats;
}

std::vector<CrossLevelRatio> cross_level_ratios(const std::vector<LayerStats>& per_level) {
    std::vector<CrossLevelRatio> out;
    for (std::size_t i = 0; i + 1 < per_level.size(); ++i) {
        const LayerStats& from = per_level[i];
        const LayerStats& to = per_level[i + 1];
        std::map<std::pair<std::string, std::string>, std::int64_t> to_counts;
        for (const LayerRow& row : to.rows) {
            to_counts[{row.base_a, row.base_b}] += row.relationships;
        }
        std::map<std::pair<std::string, std::string>, std::int64_t> from_counts;
        for (const LayerRow& row : from.rows) {
            from_counts[{row.base_a, row.base_b}] += row.relationships;
        }
        for (const auto& [pair, count] : from_counts) {
            if (count == 0) continue;
            auto hit = to_counts.find(pair);
            const std::int64_t count_to = hit == to_counts.end() ? 0 : hit->second;
            out.push_back({pair.first, pair.second, from.end_level, to.end_level, count,
                           count_to,
                           static_cast<double>(count_to) / static_cast<double>(count)});
        }
    }
    return out;
}

std::string emit_plot_data(const std::vector<LayerStats>& per_level) {
    std::string out = "end_level,layer,count,is_new\n";
    for (const LayerStats& stats : per_level) {
        for (const LayerRow& row : stats.rows) {
            out += csv::join_row({std::to_string(stats.end_level), row.layer.label(),
                                  std::to_string(row.relationships),
                                  row.new_layer ? "1" : "0"});
        }
    }
    return out;
}

// --- rendering ---------------------------------------------------------------

namespace {

std::size_t width_of(const std::string& header, const std::vector<std::string>& cells) {
    std::size_t w = header.size();
    for (const auto& c : cells) w = std::max(w, c.size());
    return w;
}

std::string table(const std::vector<std::string>& headers,
                  const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
        std::vector<std::string> cells;
        for (const auto& row : rows) cells.push_back(row[c]);
        widths[c] = width_of(headers[c], cells);
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << std::left << std::setw(static_cast<int>(widths[c])) << cells[c];
            os << (c + 1 == cells.size() ? "\n" : "  ");
        }
    };
    line(headers);
    std::string rule;
    for (std::size_t c = 0; c < widths.size(); ++c) {
        rule += std::string(widths[c], '-');
        if (c + 1 != widths.size()) rule += "  ";
    }
    os << rule << "\n";
    for (const auto& row : rows) line(row);
    return os.str();
}

}   // namespace

std::string inventory_text(const ActivityInventory& inv) {
    std::vector<std::vector<std::string>> rows;
    for (const InventoryRow& r : inv.rows) {
        rows.push_back({r.type, std::to_string(r.count), std::to_string(r.distinct_users),
                        fmt_pct(r.user_pct) + "%"});
    }
    std::string out = table({"activity", "count", "users", "share"}, rows);
    out += "\nusers: " + std::to_string(inv.total_users) +
           ", active: " + std::to_string(inv.active_users) + " (" +
           fmt_pct(100.0 * inv.active_share()) + "%)\n";
    return out;
}

std::string inventory_csv(const ActivityInventory& inv) {
    std::string out = "type,count,distinct_users,user_pct\n";
    for (const InventoryRow& r : inv.rows) {
        out += csv::join_row({r.type, std::to_string(r.count), std::to_string(r.distinct_users),
                              fmt(r.user_pct)});
    }
    return out;
}

std::string flattening_text(const FlatteningStats& stats) {
    std::vector<std::vector<std::string>> rows;
    for (const FlattenRow& r : stats.rows) {
        rows.push_back({r.type, std::to_string(r.before), std::to_string(r.after),
                        std::to_string(r.vanished), r.changed ? "+" : ""});
    }
    rows.push_back({"total", std::to_string(stats.total_before),
                    std::to_string(stats.total_after), std::to_string(stats.total_vanished),
                    ""});
    return table({"activity", "before", "after", "vanished", "changed"}, rows);
}

std::string flattening_csv(const FlatteningStats& stats) {
    std::string out = "type,before,after,vanished,changed\n";
    for (const FlattenRow& r : stats.rows) {
        out += csv::join_row({r.type, std::to_string(r.before), std::to_string(r.after),
                              std::to_string(r.vanished), r.changed ? "1" : "0"});
    }
    return out;
}

std::string layer_text(const LayerStats& stats) {
    std::vector<std::vector<std::string>> rows;
    for (const LayerRow& r : stats.rows) {
        rows.push_back({r.layer.label(), std::to_string(r.relationships),
                        r.new_layer ? "new" : "", std::to_string(r.new_edges),
                        std::to_string(r.moved_edges)});
    }
    std::string out = table({"layer", "edges", "layer status", "new", "moved"}, rows);
    out += "\nedges: " + std::to_string(stats.total_edges) + ", new: " +
           fmt_pct(stats.new_pct) + "%, moved: " + fmt_pct(stats.moved_pct) + "%\n";
    return out;
}

std::string layer_csv(const LayerStats& stats) {
    std::string out = "layer,base_a,base_b,relationships,new_layer,new_edges,moved_edges\n";
    for (const LayerRow& r : stats.rows) {
        out += csv::join_row({r.layer.label(), r.base_a, r.base_b,
                              std::to_string(r.relationships), r.new_layer ? "1" : "0",
                              std::to_string(r.new_edges), std::to_string(r.moved_edges)});
    }
    return out;
}

}   // namespace mlsn
