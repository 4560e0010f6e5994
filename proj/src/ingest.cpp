#include "mlsn/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mlsn/csv.hpp"

namespace mlsn {

using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseFatal("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw ParseFatal("cannot read " + path.string());
    }
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

namespace {

std::optional<Timestamp> parse_ts(const std::string& s) {
    if (s.empty()) return std::nullopt;
    Timestamp value = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

}   // namespace

HierarchyError::HierarchyError(ValidationReport r)
    : std::runtime_error([&r] {
          std::string msg =
              "hierarchy validation failed, " + std::to_string(r.violations.size()) +
              " violation(s)";
          if (!r.violations.empty()) {
              const Violation& v = r.violations.front();
              msg += "; first: " + std::string(to_string(v.kind)) + " on object " + v.object_id;
          }
          return msg;
      }()),
      report(std::move(r)) {}

const char* to_string(RecordKind k) {
    switch (k) {
        case RecordKind::User: return "user";
        case RecordKind::Object: return "object";
        case RecordKind::Activity: return "activity";
    }
    return "?";
}

const char* to_string(CleanseRule r) {
    switch (r) {
        case CleanseRule::MissingCreationDate: return "MissingCreationDate";
        case CleanseRule::MissingCreator: return "MissingCreator";
        case CleanseRule::UnknownReference: return "UnknownReference";
        case CleanseRule::BadTimestamp: return "BadTimestamp";
    }
    return "?";
}

const std::string& RawRecord::field(const std::string& name) const {
    static const std::string empty;
    auto it = fields.find(name);
    return it == fields.end() ? empty : it->second;
}

// --- schema ----------------------------------------------------------------

DatasetSchema DatasetSchema::from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("schema is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("levels") || !doc["levels"].is_array()) {
        throw SchemaError("schema needs a \"levels\" array");
    }

    DatasetSchema schema;
    std::vector<std::string> labels;
    for (const auto& l : doc["levels"]) {
        if (!l.is_string()) throw SchemaError("level labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    try {
        schema.levels = LevelSchema(std::move(labels));
    } catch (const BuildError& e) {
        throw SchemaError(e.what());
    }

    if (!doc.contains("activities") || !doc["activities"].is_object()) {
        throw SchemaError("schema needs an \"activities\" map of type to level label");
    }
    for (const auto& [type, label] : doc["activities"].items()) {
        if (!label.is_string()) throw SchemaError("activity level must be a string");
        const std::string l = label.get<std::string>();
        if (!schema.levels.level_of(l)) {
            throw SchemaError("activity type \"" + type + "\" targets unknown level \"" + l +
                              "\"");
        }
        schema.activity_levels[type] = l;
    }

    if (doc.contains("time_range")) {
        const auto& tr = doc["time_range"];
        if (!tr.is_object() || !tr.contains("start") || !tr.contains("end") ||
            !tr["start"].is_number_integer() || !tr["end"].is_number_integer()) {
            throw SchemaError("time_range needs integer start and end");
        }
        TimeRange range{tr["start"].get<Timestamp>(), tr["end"].get<Timestamp>()};
        if (range.end < range.start) {
            throw SchemaError("time_range ends before it starts");
        }
        schema.declared_range = range;
    }

    auto read_type_map = [&](const ordered_json& src, const char* what,
                             std::map<std::string, std::string>& out) {
        for (const auto& [label, type] : src.items()) {
            if (!type.is_string()) throw SchemaError(std::string(what) + " types must be strings");
            const std::string t = type.get<std::string>();
            if (!schema.levels.level_of(label)) {
                throw SchemaError(std::string(what) + " references unknown level \"" + label +
                                  "\"");
            }
            auto it = schema.activity_levels.find(t);
            if (it == schema.activity_levels.end()) {
                throw SchemaError(std::string(what) + " type \"" + t +
                                  "\" is not a declared activity type");
            }
            if (it->second != label) {
                throw SchemaError(std::string(what) + " type \"" + t +
                                  "\" is declared for level \"" + it->second +
                                  "\", not \"" + label + "\"");
            }
            out[label] = t;
        }
    };
    if (doc.contains("inference")) {
        const auto& inf = doc["inference"];
        if (!inf.is_object()) throw SchemaError("inference must be an object");
        if (inf.contains("creation")) read_type_map(inf["creation"], "creation", schema.creation_types);
        if (inf.contains("subscription")) {
            read_type_map(inf["subscription"], "subscription", schema.subscription_types);
        }
    }
    return schema;
}

std::string DatasetSchema::to_json() const {
    ordered_json doc;
    doc["levels"] = levels.labels();
    doc["activities"] = ordered_json::object();
    for (const auto& [type, label] : activity_levels) {
        doc["activities"][type] = label;
    }
    if (declared_range) {
        doc["time_range"] = {{"start", declared_range->start}, {"end", declared_range->end}};
    }
    if (!creation_types.empty() || !subscription_types.empty()) {
        ordered_json inf = ordered_json::object();
        if (!creation_types.empty()) {
            inf["creation"] = ordered_json::object();
            for (const auto& [label, type] : creation_types) inf["creation"][label] = type;
        }
        if (!subscription_types.empty()) {
            inf["subscription"] = ordered_json::object();
            for (const auto& [label, type] : subscription_types) inf["subscription"][label] = type;
        }
        doc["inference"] = std::move(inf);
    }
    return doc.dump(2) + "\n";
}

std::optional<int> DatasetSchema::level_for_type(const std::string& activity_type) const {
    auto it = activity_levels.find(activity_type);
    if (it == activity_levels.end()) return std::nullopt;
    return levels.level_of(it->second);
}

DatasetSchema load_schema(const std::filesystem::path& path) {
    return DatasetSchema::from_json(read_file(path));
}

// --- parsing ----------------------------------------------------------------

namespace {

struct FileSpec {
    std::string name;
    RecordKind kind;
    std::vector<std::string> header;
};

void parse_one(const std::string& text, const FileSpec& spec, const DatasetSchema& schema,
               ParseResult& out) {
    std::vector<csv::Row> rows;
    try {
        rows = csv::parse(text);
    } catch (const csv::ParseError& e) {
        out.diagnostics.push_back({spec.name, e.line, e.what()});
        return;
    }
    if (rows.empty()) {
        return;   // an empty file carries no records and no complaints
    }
    if (rows.front().fields != spec.header) {
        out.diagnostics.push_back({spec.name, rows.front().line, "malformed header"});
        return;
    }

    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const csv::Row& row = rows[r];
        if (row.fields.size() != spec.header.size()) {
            out.diagnostics.push_back(
                {spec.name, row.line,
                 "expected " + std::to_string(spec.header.size()) + " columns, got " +
                     std::to_string(row.fields.size())});
            continue;
        }
        RawRecord rec;
        rec.kind = spec.kind;
        rec.file = spec.name;
        rec.line = row.line;
        for (std::size_t c = 0; c < spec.header.size(); ++c) {
            rec.fields[spec.header[c]] = row.fields[c];
        }

        if (spec.kind != RecordKind::Activity) {
            const std::string& id = rec.field("id");
            if (id.empty()) {
                out.diagnostics.push_back({spec.name, row.line, "empty id"});
                continue;
            }
            if (!seen_ids.insert(id).second) {
                out.diagnostics.push_back(
                    {spec.name, row.line, "duplicate id \"" + id + "\", first occurrence kept"});
                continue;
            }
        }
        if (spec.kind == RecordKind::Object &&
            !schema.levels.level_of(rec.field("level"))) {
            out.diagnostics.push_back(
                {spec.name, row.line, "unknown level label \"" + rec.field("level") + "\""});
            continue;
        }
        out.records.push_back(std::move(rec));
    }
}

const FileSpec kUsersSpec{"users.csv", RecordKind::User, {"id", "label"}};
const FileSpec kObjectsSpec{
    "objects.csv", RecordKind::Object, {"id", "level", "parent_id", "created_at", "creator_id"}};
const FileSpec kActivitiesSpec{
    "activities.csv", RecordKind::Activity, {"user_id", "object_id", "activity_type", "timestamp"}};

}   // namespace

ParseResult parse_csv_texts(const std::string& users_csv, const std::string& objects_csv,
                            const std::string& activities_csv, const DatasetSchema& schema) {
    ParseResult out;
    parse_one(users_csv, kUsersSpec, schema, out);
    parse_one(objects_csv, kObjectsSpec, schema, out);
    parse_one(activities_csv, kActivitiesSpec, schema, out);
    return out;
}

ParseResult parse_input(const InputPaths& paths, const DatasetSchema& schema) {
    return parse_csv_texts(read_file(paths.users), read_file(paths.objects),
                           read_file(paths.activities), schema);
}

// --- cleansing ---------------------------------------------------------------

std::map<CleanseRule, std::int64_t> CleansingReport::by_rule() const {
    std::map<CleanseRule, std::int64_t> counts;
    for (const Rejection& r : rejections) {
        ++counts[r.rule];
    }
    return counts;
}

std::string CleansingReport::to_json() const {
    ordered_json doc;
    doc["totals"] = {{"users", total_users},
                     {"objects", total_objects},
                     {"activities", total_activities}};
    doc["accepted"] = {{"users", accepted_users},
                       {"objects", accepted_objects},
                       {"activities", accepted_activities}};
    doc["by_rule"] = ordered_json::object();
    for (const auto& [rule, count] : by_rule()) {
        doc["by_rule"][to_string(rule)] = count;
    }
    doc["rejections"] = ordered_json::array();
    for (const Rejection& r : rejections) {
        doc["rejections"].push_back({{"kind", to_string(r.kind)},
                                     {"id", r.id},
                                     {"file", r.file},
                                     {"line", r.line},
                                     {"rule", to_string(r.rule)},
                                     {"detail", r.detail}});
    }
    return doc.dump(2) + "\n";
}

namespace {

struct ObjectEntry {
    const RawRecord* rec = nullptr;
    ObjectNode node;
    bool rejected = false;
    CleanseRule rule{};
    std::string root_id;   // object whose removal caused this one
};

}   // namespace

CleanDataset cleanse(const std::vector<RawRecord>& records, const DatasetSchema& schema) {
    CleanDataset out;
    auto& report = out.report;

    std::unordered_set<std::string> user_ids;
    for (const RawRecord& rec : records) {
        if (rec.kind != RecordKind::User) continue;
        ++report.total_users;
        out.users.push_back({rec.field("id"), rec.field("label")});
        user_ids.insert(rec.field("id"));
    }
    report.accepted_users = static_cast<std::int64_t>(out.users.size());

    std::vector<std::string> object_order;
    std::unordered_map<std::string, ObjectEntry> objects;
    for (const RawRecord& rec : records) {
        if (rec.kind != RecordKind::Object) continue;
        ++report.total_objects;
        ObjectEntry entry;
        entry.rec = &rec;
        entry.node.id = rec.field("id");
        entry.node.level = *schema.levels.level_of(rec.field("level"));
        entry.node.parent_id = rec.field("parent_id");
        entry.node.creator_id = rec.field("creator_id");

        const std::string& created = rec.field("created_at");
        if (created.empty()) {
            entry.rejected = true;
            entry.rule = CleanseRule::MissingCreationDate;
        } else if (auto ts = parse_ts(created); !ts) {
            entry.rejected = true;
            entry.rule = CleanseRule::BadTimestamp;
        } else {
            entry.node.created_at = *ts;
        }
        if (!entry.rejected && entry.node.creator_id.empty()) {
            entry.rejected = true;
            entry.rule = CleanseRule::MissingCreator;
        }
        if (!entry.rejected && !user_ids.contains(entry.node.creator_id)) {
            entry.rejected = true;
            entry.rule = CleanseRule::UnknownReference;
        }
        if (entry.rejected) {
            entry.root_id = entry.node.id;
        }
        object_order.push_back(entry.node.id);
        objects.emplace(entry.node.id, std::move(entry));
    }

    // cascade: an object whose parent is gone goes too, tagged with the root
    // cause; a fixpoint sweep keeps this independent of input order
    for (bool changed = true; changed;) {
        changed = false;
        for (const std::string& id : object_order) {
            ObjectEntry& entry = objects.at(id);
            if (entry.rejected || !entry.node.has_parent()) continue;
            auto parent = objects.find(entry.node.parent_id);
            if (parent == objects.end()) {
                entry.rejected = true;
                entry.rule = CleanseRule::UnknownReference;
                entry.root_id = entry.node.id;
                changed = true;
            } else if (parent->second.rejected) {
                entry.rejected = true;
                entry.rule = parent->second.rule;
                entry.root_id = parent->second.root_id;
                changed = true;
            }
        }
    }

    for (const std::string& id : object_order) {
        const ObjectEntry& entry = objects.at(id);
        if (!entry.rejected) {
            out.objects.push_back(entry.node);
            continue;
        }
        std::string detail;
        if (entry.root_id != id) {
            detail = "removed with ancestor " + entry.root_id;
        } else if (entry.rule == CleanseRule::UnknownReference) {
            detail = entry.node.has_parent() && !objects.contains(entry.node.parent_id)
                         ? "parent " + entry.node.parent_id + " not found"
                         : "creator " + entry.node.creator_id + " is not a known user";
        }
        report.rejections.push_back(
            {RecordKind::Object, id, entry.rec->file, entry.rec->line, entry.rule, detail});
    }
    report.accepted_objects = static_cast<std::int64_t>(out.objects.size());

    for (const RawRecord& rec : records) {
        if (rec.kind != RecordKind::Activity) continue;
        ++report.total_activities;
        ActivityRecord act;
        act.user_id = rec.field("user_id");
        act.object_id = rec.field("object_id");
        act.type = rec.field("activity_type");
        const std::string key = act.user_id + "->" + act.object_id;

        auto reject = [&](CleanseRule rule, std::string detail) {
            report.rejections.push_back(
                {RecordKind::Activity, key, rec.file, rec.line, rule, std::move(detail)});
        };

        auto ts = parse_ts(rec.field("timestamp"));
        if (!ts) {
            reject(CleanseRule::BadTimestamp, "unparseable timestamp \"" +
                                                  rec.field("timestamp") + "\"");
            continue;
        }
        act.ts = *ts;
        if (schema.declared_range && !schema.declared_range->contains(act.ts)) {
            reject(CleanseRule::BadTimestamp, "timestamp outside the declared range");
            continue;
        }
        if (!user_ids.contains(act.user_id)) {
            reject(CleanseRule::UnknownReference, "user " + act.user_id + " is not known");
            continue;
        }
        auto type_level = schema.level_for_type(act.type);
        if (!type_level) {
            reject(CleanseRule::UnknownReference, "unknown activity type \"" + act.type + "\"");
            continue;
        }
        auto obj = objects.find(act.object_id);
        if (obj == objects.end()) {
            reject(CleanseRule::UnknownReference, "object " + act.object_id + " is not known");
            continue;
        }
        if (obj->second.rejected) {
            reject(obj->second.rule, "removed with object " + obj->second.root_id);
            continue;
        }
        if (obj->second.node.level != *type_level) {
            reject(CleanseRule::UnknownReference,
                   "activity type \"" + act.type + "\" applies to level \"" +
                       schema.activity_levels.at(act.type) + "\", object " + act.object_id +
                       " is at level \"" + schema.levels.label(obj->second.node.level) + "\"");
            continue;
        }
        out.activities.push_back(std::move(act));
    }
    report.accepted_activities = static_cast<std::int64_t>(out.activities.size());
    return out;
}

// --- inference ---------------------------------------------------------------

namespace {

struct CreationEvent {
    Timestamp ts = 0;
    std::string user_id;
};

bool event_earlier(Timestamp ts_a, const std::string& id_a, Timestamp ts_b,
                   const std::string& id_b) {
    return std::tie(ts_a, id_a) < std::tie(ts_b, id_b);
}

}   // namespace

std::vector<ActivityRecord> infer_activities(const std::vector<ObjectNode>& objects,
                                             const std::vector<ActivityRecord>& activities,
                                             const DatasetSchema& schema) {
    std::unordered_map<std::string, const ObjectNode*> by_id;
    std::unordered_map<std::string, std::vector<const ObjectNode*>> children;
    for (const ObjectNode& o : objects) {
        by_id[o.id] = &o;
    }
    for (const ObjectNode& o : objects) {
        if (o.has_parent() && by_id.contains(o.parent_id)) {
            children[o.parent_id].push_back(&o);
        }
    }
    for (auto& [id, kids] : children) {
        std::sort(kids.begin(), kids.end(),
                  [](const ObjectNode* a, const ObjectNode* b) { return a->id < b->id; });
    }

    // explicit creation events, earliest per object by (ts, user)
    std::unordered_map<std::string, CreationEvent> explicit_creation;
    std::unordered_map<std::string, std::vector<const ActivityRecord*>> creation_acts;
    std::unordered_set<std::string> explicit_subscription;   // user \t object
    for (const ActivityRecord& a : activities) {
        auto obj = by_id.find(a.object_id);
        if (obj == by_id.end()) continue;
        const std::string& label = schema.levels.label(obj->second->level);
        auto creation = schema.creation_types.find(label);
        if (creation != schema.creation_types.end() && creation->second == a.type) {
            creation_acts[a.object_id].push_back(&a);
            auto [it, fresh] = explicit_creation.try_emplace(a.object_id,
                                                             CreationEvent{a.ts, a.user_id});
            if (!fresh && std::tie(a.ts, a.user_id) < std::tie(it->second.ts, it->second.user_id)) {
                it->second = {a.ts, a.user_id};
            }
        }
        auto subscription = schema.subscription_types.find(label);
        if (subscription != schema.subscription_types.end() && subscription->second == a.type) {
            explicit_subscription.insert(a.user_id + "\t" + a.object_id);
        }
    }

    // resolve each object's creation event bottom-up: explicit activity if
    // present, else the earliest child's event, else the object's own record
    std::vector<const ObjectNode*> by_level(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) by_level[i] = &objects[i];
    std::sort(by_level.begin(), by_level.end(), [](const ObjectNode* a, const ObjectNode* b) {
        if (a->level != b->level) return a->level > b->level;   // deepest first
        return a->id < b->id;
    });

    std::unordered_map<std::string, CreationEvent> event;
    for (const ObjectNode* o : by_level) {
        if (auto ex = explicit_creation.find(o->id); ex != explicit_creation.end()) {
            event[o->id] = ex->second;
            continue;
        }
        const CreationEvent* best = nullptr;
        const std::string* best_child = nullptr;
        if (auto kids = children.find(o->id); kids != children.end()) {
            for (const ObjectNode* c : kids->second) {
                auto ce = event.find(c->id);
                if (ce == event.end()) continue;   // deeper levels only
                if (!best || event_earlier(ce->second.ts, c->id, best->ts, *best_child)) {
                    best = &ce->second;
                    best_child = &c->id;
                }
            }
        }
        event[o->id] = best ? *best : CreationEvent{o->created_at, o->creator_id};
    }

    std::vector<ActivityRecord> inferred;
    for (const ObjectNode* o : by_level) {
        const std::string& label = schema.levels.label(o->level);
        auto creation = schema.creation_types.find(label);
        if (creation == schema.creation_types.end()) continue;
        if (explicit_creation.contains(o->id)) continue;
        const CreationEvent& e = event.at(o->id);
        inferred.push_back({e.user_id, o->id, creation->second, e.ts, true});
    }

    // a user's first created child of an object subscribes them to it
    for (const ObjectNode* o : by_level) {
        const std::string& label = schema.levels.label(o->level);
        auto subscription = schema.subscription_types.find(label);
        if (subscription == schema.subscription_types.end()) continue;
        auto kids = children.find(o->id);
        if (kids == children.end()) continue;

        std::map<std::string, std::pair<Timestamp, std::string>> first;   // user -> (ts, child)
        auto consider = [&](const std::string& user, Timestamp ts, const std::string& child) {
            auto [it, fresh] = first.try_emplace(user, ts, child);
            if (!fresh && event_earlier(ts, child, it->second.first, it->second.second)) {
                it->second = {ts, child};
            }
        };
        for (const ObjectNode* c : kids->second) {
            if (auto acts = creation_acts.find(c->id); acts != creation_acts.end()) {
                for (const ActivityRecord* a : acts->second) {
                    consider(a->user_id, a->ts, c->id);
                }
            } else if (auto ce = event.find(c->id); ce != event.end()) {
                consider(ce->second.user_id, ce->second.ts, c->id);
            }
        }
        for (const auto& [user, at] : first) {
            if (explicit_subscription.contains(user + "\t" + o->id)) continue;
            inferred.push_back({user, o->id, subscription->second, at.first, true});
        }
    }

    std::sort(inferred.begin(), inferred.end(), [](const ActivityRecord& a,
                                                   const ActivityRecord& b) {
        return std::tie(a.ts, a.object_id, a.user_id, a.type) <
               std::tie(b.ts, b.object_id, b.user_id, b.type);
    });
    return inferred;
}

// --- assembly ----------------------------------------------------------------

PreSocialNetwork build_hpsn(const CleanDataset& data,
                            const std::vector<ActivityRecord>& inferred,
                            const DatasetSchema& schema) {
    std::unordered_map<std::string, int> level_of;
    for (const ObjectNode& o : data.objects) {
        level_of[o.id] = o.level;
    }

    std::vector<Activity> acts;
    acts.reserve(data.activities.size() + inferred.size());
    auto add = [&](const ActivityRecord& r) {
        auto it = level_of.find(r.object_id);
        if (it == level_of.end()) {
            throw BuildError("activity references unknown object: " + r.object_id);
        }
        Activity a;
        a.user_id = r.user_id;
        a.object_id = r.object_id;
        a.role = RolePath{r.type, {schema.levels.label(it->second)}};
        a.ts = r.ts;
        a.inferred = r.inferred;
        acts.push_back(std::move(a));
    };
    for (const ActivityRecord& r : data.activities) add(r);
    for (const ActivityRecord& r : inferred) add(r);

    TimeRange range;
    if (schema.declared_range) {
        range = *schema.declared_range;
    } else {
        bool any = false;
        for (const ObjectNode& o : data.objects) {
            if (!any) {
                range = {o.created_at, o.created_at};
                any = true;
            }
            range.start = std::min(range.start, o.created_at);
            range.end = std::max(range.end, o.created_at);
        }
        for (const Activity& a : acts) {
            if (!any) {
                range = {a.ts, a.ts};
                any = true;
            }
            range.start = std::min(range.start, a.ts);
            range.end = std::max(range.end, a.ts);
        }
    }

    PreSocialNetwork net(schema.levels, data.users, data.objects, std::move(acts),
                         NetworkKind::Hierarchical, 0, range);
    ValidationReport report = validate_hierarchy(net);
    if (!report.ok()) {
        throw HierarchyError(std::move(report));
    }
    return net;
}

IngestResult ingest_dataset(const InputPaths& paths) {
    DatasetSchema schema = load_schema(paths.schema);
    ParseResult parsed = parse_input(paths, schema);
    CleanDataset clean = cleanse(parsed.records, schema);
    std::vector<ActivityRecord> inferred =
        infer_activities(clean.objects, clean.activities, schema);
    PreSocialNetwork net = build_hpsn(clean, inferred, schema);
    return IngestResult{std::move(net), std::move(schema), std::move(parsed),
                        std::move(clean.report)};
}

// --- serialization -------------------------------------------------------------

void write_dataset(const PreSocialNetwork& net, const DatasetSchema& schema,
                   const std::filesystem::path& dir) {
    if (net.kind() != NetworkKind::Hierarchical) {
        throw std::invalid_argument("only hierarchical networks serialize to the input formats");
    }
    std::filesystem::create_directories(dir);

    std::string users = csv::join_row({"id", "label"});
    for (const User& u : net.users()) {
        users += csv::join_row({u.id, u.label});
    }
    write_file(dir / "users.csv", users);

    std::string objects = csv::join_row({"id", "level", "parent_id", "created_at", "creator_id"});
    for (const ObjectNode& o : net.objects()) {
        objects += csv::join_row({o.id, net.schema().label(o.level), o.parent_id,
                                  std::to_string(o.created_at), o.creator_id});
    }
    write_file(dir / "objects.csv", objects);

    std::string acts = csv::join_row({"user_id", "object_id", "activity_type", "timestamp"});
    for (const Activity& a : net.activities()) {
        if (a.inferred) continue;   // re-ingestion re-infers these
        acts += csv::join_row({a.user_id, a.object_id, a.role.base, std::to_string(a.ts)});
    }
    write_file(dir / "activities.csv", acts);

    DatasetSchema pinned = schema;
    pinned.declared_range = net.range();
    write_file(dir / "schema.json", pinned.to_json());
}

}   // namespace mlsn
