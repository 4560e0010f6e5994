#pragma once
// Batch ingestion: CSV/JSON parsing into raw records, cleansing with cascade
// removal, activity inference (creations and subscriptions), and assembly of
// a validated hierarchical pre-social network.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlsn/core_model.hpp"

namespace mlsn {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable file or no usable header; per-row problems are diagnostics.
struct ParseFatal : std::runtime_error {
    explicit ParseFatal(const std::string& what) : std::runtime_error(what) {}
};

struct HierarchyError : std::runtime_error {
    ValidationReport report;

    explicit HierarchyError(ValidationReport r);
};

// Dataset description: hierarchy levels, which activity types attach to
// which level, and optional inference/time-range settings.
//   {
//     "levels": ["forum", "topic", "post"],
//     "activities": {"post authoring": "post", ...},
//     "time_range": {"start": 0, "end": 100},            // optional
//     "inference": {                                      // optional
//       "creation": {"topic": "topic creation", ...},
//       "subscription": {"topic": "topic subscription"}
//     }
//   }
struct DatasetSchema {
    LevelSchema levels;
    std::map<std::string, std::string> activity_levels;       // type -> level label
    std::optional<TimeRange> declared_range;
    std::map<std::string, std::string> creation_types;        // level label -> type
    std::map<std::string, std::string> subscription_types;    // level label -> type

    static DatasetSchema from_json(const std::string& text);
    std::string to_json() const;

    std::optional<int> level_for_type(const std::string& activity_type) const;
    bool operator==(const DatasetSchema&) const = default;
};

DatasetSchema load_schema(const std::filesystem::path& path);

enum class RecordKind { User, Object, Activity };
const char* to_string(RecordKind k);

struct RawRecord {
    RecordKind kind;
    std::string file;
    std::size_t line = 0;
    std::map<std::string, std::string> fields;

    const std::string& field(const std::string& name) const;
    bool operator==(const RawRecord&) const = default;
};

struct Diagnostic {
    std::string file;
    std::size_t line = 0;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

struct ParseResult {
    std::vector<RawRecord> records;
    std::vector<Diagnostic> diagnostics;
};

struct InputPaths {
    std::filesystem::path users;
    std::filesystem::path objects;
    std::filesystem::path activities;
    std::filesystem::path schema;
};

// Every CSV row becomes a record or a diagnostic; nothing is dropped
// silently. Structural checks only (header, column count, empty or duplicate
// ids, unknown level labels); content rules belong to cleanse().
ParseResult parse_input(const InputPaths& paths, const DatasetSchema& schema);
ParseResult parse_csv_texts(const std::string& users_csv, const std::string& objects_csv,
                            const std::string& activities_csv, const DatasetSchema& schema);

enum class CleanseRule { MissingCreationDate, MissingCreator, UnknownReference, BadTimestamp };
const char* to_string(CleanseRule r);

struct Rejection {
    RecordKind kind;
    std::string id;   // object/user id, or "user->object" for activities
    std::string file;
    std::size_t line = 0;
    CleanseRule rule;
    std::string detail;
};

struct CleansingReport {
    std::int64_t total_users = 0, total_objects = 0, total_activities = 0;
    std::int64_t accepted_users = 0, accepted_objects = 0, accepted_activities = 0;
    std::vector<Rejection> rejections;

    bool clean() const { return rejections.empty(); }
    std::map<CleanseRule, std::int64_t> by_rule() const;
    std::string to_json() const;
};

// Activity before role-path assembly; `type` is the raw activity_type.
struct ActivityRecord {
    std::string user_id;
    std::string object_id;
    std::string type;
    Timestamp ts = 0;
    bool inferred = false;

    bool operator==(const ActivityRecord&) const = default;
};

struct CleanDataset {
    std::vector<User> users;
    std::vector<ObjectNode> objects;
    std::vector<ActivityRecord> activities;
    CleansingReport report;
};

// Applies the removal rules, cascading over subtrees and their activities.
// Never throws; everything removed is itemized in the report. Idempotent.
CleanDataset cleanse(const std::vector<RawRecord>& records, const DatasetSchema& schema);

// Adds, where absent and configured in the schema: a creation activity per
// object (user and timestamp taken from the earliest child creation event,
// falling back to the object's own creator/created_at for childless
// objects), and a subscription activity per (user, object) at the first
// child the user created. Earliest is resolved by (timestamp, object id),
// which is a total order, so ties cannot remain.
std::vector<ActivityRecord> infer_activities(const std::vector<ObjectNode>& objects,
                                             const std::vector<ActivityRecord>& activities,
                                             const DatasetSchema& schema);

// Assembles and validates the hierarchical network. Throws HierarchyError
// when validate_hierarchy finds violations. The activity multiset is
// preserved exactly; nothing is merged.
PreSocialNetwork build_hpsn(const CleanDataset& data,
                            const std::vector<ActivityRecord>& inferred,
                            const DatasetSchema& schema);

struct IngestResult {
    PreSocialNetwork net;
    DatasetSchema schema;
    ParseResult parse;
    CleansingReport cleansing;
};

// Full chain: load schema, parse, cleanse, infer, build, validate.
IngestResult ingest_dataset(const InputPaths& paths);

// Serializes a hierarchical network back to the input formats (users.csv,
// objects.csv, activities.csv, schema.json). Inferred activities are not
// written; re-ingesting re-infers them, so the round trip is exact.
void write_dataset(const PreSocialNetwork& net, const DatasetSchema& schema,
                   const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}   // namespace mlsn
