#include "mlsn/synth.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace mlsn {

using nlohmann::ordered_json;

GenParams GenParams::from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw std::invalid_argument(std::string("params are not valid JSON: ") + e.what());
    }
    GenParams p;
    p.seed = doc.value("seed", std::uint64_t{1});
    p.user_count = doc.value("users", std::int64_t{0});
    p.start = doc.value("start", Timestamp{0});
    p.activity_horizon = doc.value("activity_horizon", Timestamp{1000});
    if (doc.contains("levels")) {
        for (const auto& l : doc["levels"]) {
            LevelGen g;
            g.label = l.at("label").get<std::string>();
            if (l.contains("total")) g.total = l["total"].get<std::int64_t>();
            g.min_children = l.value("min_children", std::int64_t{1});
            g.max_children = l.value("max_children", std::int64_t{1});
            p.levels.push_back(std::move(g));
        }
    }
    if (doc.contains("activities")) {
        for (const auto& a : doc["activities"]) {
            ActivityGen g;
            g.type = a.at("type").get<std::string>();
            g.level = a.at("level").get<std::string>();
            g.rate = a.value("rate", 0.0);
            g.by_creator = a.value("by_creator", false);
            p.activities.push_back(std::move(g));
        }
    }
    if (doc.contains("inference")) {
        const auto& inf = doc["inference"];
        if (inf.contains("creation")) {
            for (const auto& [label, type] : inf["creation"].items()) {
                p.creation_types[label] = type.get<std::string>();
            }
        }
        if (inf.contains("subscription")) {
            for (const auto& [label, type] : inf["subscription"].items()) {
                p.subscription_types[label] = type.get<std::string>();
            }
        }
    }
    return p;
}

std::string GenParams::to_json() const {
    ordered_json doc;
    doc["seed"] = seed;
    doc["users"] = user_count;
    doc["start"] = start;
    doc["activity_horizon"] = activity_horizon;
    doc["levels"] = ordered_json::array();
    for (const LevelGen& l : levels) {
        ordered_json entry{{"label", l.label}};
        if (l.total) entry["total"] = *l.total;
        entry["min_children"] = l.min_children;
        entry["max_children"] = l.max_children;
        doc["levels"].push_back(std::move(entry));
    }
    doc["activities"] = ordered_json::array();
    for (const ActivityGen& a : activities) {
        doc["activities"].push_back({{"type", a.type},
                                     {"level", a.level},
                                     {"rate", a.rate},
                                     {"by_creator", a.by_creator}});
    }
    if (!creation_types.empty() || !subscription_types.empty()) {
        ordered_json inf = ordered_json::object();
        if (!creation_types.empty()) {
            inf["creation"] = ordered_json::object();
            for (const auto& [label, type] : creation_types) inf["creation"][label] = type;
        }
        if (!subscription_types.empty()) {
            inf["subscription"] = ordered_json::object();
            for (const auto& [label, type] : subscription_types) {
                inf["subscription"][label] = type;
            }
        }
        doc["inference"] = std::move(inf);
    }
    return doc.dump(2) + "\n";
}

namespace {

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::int64_t below(std::int64_t n) {   // 0..n-1
        return static_cast<std::int64_t>(engine() % static_cast<std::uint64_t>(n));
    }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {   // inclusive
        return lo + below(hi - lo + 1);
    }
    bool chance(double rate) {
        double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;   // [0, 1)
        return u < rate;
    }
};

void check_params(const GenParams& p) {
    if (p.user_count < 0) throw std::invalid_argument("user count must be >= 0");
    if (p.levels.empty()) throw std::invalid_argument("at least one level is needed");
    for (const LevelGen& l : p.levels) {
        if (l.total && *l.total < 0) throw std::invalid_argument("level total must be >= 0");
        if (l.min_children < 0 || l.max_children < l.min_children) {
            throw std::invalid_argument("children bounds must satisfy 0 <= min <= max");
        }
    }
    for (const ActivityGen& a : p.activities) {
        if (a.rate < 0.0 || a.rate > 1.0) {
            throw std::invalid_argument("activity rate must be in [0, 1]");
        }
    }
}

}   // namespace

Generated generate_network(const GenParams& params) {
    check_params(params);

    DatasetSchema schema;
    std::vector<std::string> labels;
    for (const LevelGen& l : params.levels) labels.push_back(l.label);
    schema.levels = LevelSchema(std::move(labels));
    for (const ActivityGen& a : params.activities) {
        if (!schema.levels.level_of(a.level)) {
            throw std::invalid_argument("activity type \"" + a.type +
                                        "\" targets unknown level \"" + a.level + "\"");
        }
        auto [it, fresh] = schema.activity_levels.emplace(a.type, a.level);
        if (!fresh && it->second != a.level) {
            throw std::invalid_argument("activity type \"" + a.type +
                                        "\" declared for two levels");
        }
    }
    // inference types count as declared activity types on their own level
    auto declare = [&schema](const std::map<std::string, std::string>& types) {
        for (const auto& [label, type] : types) {
            if (!schema.levels.level_of(label)) {
                throw std::invalid_argument("inference type \"" + type +
                                            "\" targets unknown level \"" + label + "\"");
            }
            auto [it, fresh] = schema.activity_levels.emplace(type, label);
            if (!fresh && it->second != label) {
                throw std::invalid_argument("activity type \"" + type +
                                            "\" declared for two levels");
            }
        }
    };
    declare(params.creation_types);
    declare(params.subscription_types);
    schema.creation_types = params.creation_types;
    schema.subscription_types = params.subscription_types;

    CleanDataset data;
    for (std::int64_t i = 1; i <= params.user_count; ++i) {
        data.users.push_back({"u" + std::to_string(i), "User " + std::to_string(i)});
    }

    Rng rng(params.seed);
    Timestamp clock = params.start;
    if (params.user_count > 0) {
        std::vector<ObjectNode*> parents;   // previous level, creation order
        std::vector<std::size_t> level_begin;
        for (std::size_t li = 0; li < params.levels.size(); ++li) {
            const LevelGen& spec = params.levels[li];
            level_begin.push_back(data.objects.size());

            std::vector<std::pair<std::string, std::int64_t>> plan;   // parent id, child count
            if (li == 0) {
                std::int64_t count =
                    spec.total ? *spec.total : rng.between(spec.min_children, spec.max_children);
                plan.emplace_back("", count);
            } else if (spec.total) {
                for (ObjectNode* parent : parents) plan.emplace_back(parent->id, 0);
                for (std::int64_t i = 0; i < *spec.total && !plan.empty(); ++i) {
                    ++plan[static_cast<std::size_t>(i % static_cast<std::int64_t>(plan.size()))]
                          .second;
                }
            } else {
                for (ObjectNode* parent : parents) {
                    plan.emplace_back(parent->id, rng.between(spec.min_children,
                                                              spec.max_children));
                }
            }

            for (const auto& [parent_id, count] : plan) {
                for (std::int64_t c = 1; c <= count; ++c) {
                    ObjectNode node;
                    node.id = parent_id.empty() ? std::to_string(c)
                                                : parent_id + "." + std::to_string(c);
                    node.level = static_cast<int>(li + 1);
                    node.parent_id = parent_id;
                    node.created_at = clock++;
                    node.creator_id = data.users[static_cast<std::size_t>(
                                                     rng.below(params.user_count))]
                                          .id;
                    data.objects.push_back(std::move(node));
                }
            }

            parents.clear();
            for (std::size_t i = level_begin[li]; i < data.objects.size(); ++i) {
                parents.push_back(&data.objects[i]);
            }
            if (parents.empty()) break;   // nothing left to attach deeper levels to
        }

        for (const ActivityGen& gen : params.activities) {
            int level = *schema.levels.level_of(gen.level);
            for (const ObjectNode& o : data.objects) {
                if (o.level != level || !rng.chance(gen.rate)) continue;
                ActivityRecord act;
                act.type = gen.type;
                act.object_id = o.id;
                if (gen.by_creator) {
                    act.user_id = o.creator_id;
                    act.ts = o.created_at;
                } else {
                    act.user_id =
                        data.users[static_cast<std::size_t>(rng.below(params.user_count))].id;
                    act.ts = o.created_at + rng.between(1, std::max<Timestamp>(
                                                               params.activity_horizon, 1));
                }
                data.activities.push_back(std::move(act));
            }
        }
    }

    std::vector<ActivityRecord> inferred =
        infer_activities(data.objects, data.activities, schema);
    PreSocialNetwork net = build_hpsn(data, inferred, schema);
    schema.declared_range = net.range();   // keep the schema self-describing
    return Generated{std::move(net), std::move(schema)};
}

Generated generate(const GenParams& params, const std::filesystem::path& dir) {
    Generated g = generate_network(params);
    write_dataset(g.net, g.schema, dir);
    return g;
}

// --- case study ---------------------------------------------------------------

DatasetSchema case_study_schema() {
    DatasetSchema schema;
    schema.levels = LevelSchema({"forum", "topic", "post"});
    schema.activity_levels = {{"Is Creator", "forum"},
                              {"Is Moderator", "topic"},
                              {"Is Author", "post"},
                              {"Is Commentator", "post"}};
    schema.declared_range = TimeRange{100, 300};
    return schema;
}

PreSocialNetwork case_study_fixture() {
    DatasetSchema schema = case_study_schema();

    CleanDataset data;
    for (const char* id : {"A", "B", "C", "D", "E"}) {
        data.users.push_back({id, std::string("User ") + id});
    }

    auto object = [&](const char* id, int level, const char* parent, Timestamp at,
                      const char* creator) {
        data.objects.push_back({id, level, parent, at, creator});
    };
    object("1", 1, "", 100, "A");
    object("1.1", 2, "1", 110, "B");
    object("1.1.1", 3, "1.1", 111, "B");
    object("1.1.2", 3, "1.1", 112, "D");
    object("1.2", 2, "1", 120, "A");
    object("1.2.1", 3, "1.2", 121, "A");
    object("2", 1, "", 200, "C");
    object("2.1", 2, "2", 210, "A");
    object("2.1.1", 3, "2.1", 211, "A");
    object("2.2", 2, "2", 220, "D");
    object("2.2.1", 3, "2.2", 221, "D");
    object("2.2.2", 3, "2.2", 222, "C");

    auto act = [&](const char* user, const char* obj, const char* type, Timestamp ts) {
        data.activities.push_back({user, obj, type, ts});
    };
    act("A", "1", "Is Creator", 100);
    act("C", "2", "Is Creator", 200);
    act("A", "1.1", "Is Moderator", 115);
    act("C", "1.2", "Is Moderator", 125);
    act("E", "2.1", "Is Moderator", 215);
    act("E", "2.2", "Is Moderator", 225);
    act("B", "1.1.1", "Is Author", 111);
    act("D", "1.1.2", "Is Author", 112);
    act("A", "1.2.1", "Is Author", 121);
    act("A", "2.1.1", "Is Author", 211);
    act("D", "2.2.1", "Is Author", 221);
    act("C", "2.2.2", "Is Author", 222);
    act("B", "2.1.1", "Is Commentator", 216);
    act("D", "1.2.1", "Is Commentator", 126);
    act("D", "2.1.1", "Is Commentator", 217);
    act("D", "2.2.2", "Is Commentator", 227);

    return build_hpsn(data, {}, schema);
}

}   // namespace mlsn
