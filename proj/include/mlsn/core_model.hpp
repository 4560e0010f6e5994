#pragma once
// Data model for activity-based network extraction: users, a level hierarchy
// of objects, user->object activities, and the pre-social network container
// that the flattening and layer-extraction stages operate on.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mlsn {

using Timestamp = std::int64_t;

struct TimeRange {
    Timestamp start = 0;
    Timestamp end = 0;

    bool contains(Timestamp t) const { return t >= start && t <= end; }
    Timestamp length() const { return end - start; }
    bool operator==(const TimeRange&) const = default;
};

// Ordered hierarchy levels. Level 1 is the top of the hierarchy, indices
// increase downward (e.g. forum=1, topic=2, post=3).
class LevelSchema {
public:
    LevelSchema() = default;
    explicit LevelSchema(std::vector<std::string> labels);

    int level_count() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int level) const;
    std::optional<int> level_of(std::string_view label) const;
    const std::vector<std::string>& labels() const { return labels_; }
    bool valid_level(int level) const { return level >= 1 && level <= level_count(); }

    bool operator==(const LevelSchema&) const = default;

private:
    std::vector<std::string> labels_;
};

struct User {
    std::string id;
    std::string label;

    bool operator==(const User&) const = default;
};

struct ObjectNode {
    std::string id;
    int level = 1;
    std::string parent_id;   // empty for level-1 objects
    Timestamp created_at = 0;
    std::string creator_id;

    bool has_parent() const { return !parent_id.empty(); }
    bool operator==(const ObjectNode&) const = default;
};

// Role of a user towards an object, together with the sequence of level
// labels the activity traversed while being moved through the hierarchy.
// The path starts at the origin level; an unmoved activity has a single
// entry, the label of its object's level.
struct RolePath {
    std::string base;
    std::vector<std::string> path;

    bool operator==(const RolePath&) const = default;
    auto operator<=>(const RolePath&) const = default;
};

struct Activity {
    std::string user_id;
    std::string object_id;
    RolePath role;
    Timestamp ts = 0;
    std::string origin_object_id;   // empty: original; else moved from that object
    bool inferred = false;

    bool moved() const { return !origin_object_id.empty(); }
    bool operator==(const Activity&) const = default;
};

// Canonical ordering used to make network contents deterministic.
bool activity_less(const Activity& a, const Activity& b);

enum class NetworkKind { Hierarchical, Flat };

struct MissingParent : std::runtime_error {
    explicit MissingParent(const std::string& what) : std::runtime_error(what) {}
};

struct BuildError : std::runtime_error {
    explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

struct Violation {
    enum class Kind { CycleDetected, LevelSkip, MultipleParents, OrphanNonRoot };
    Kind kind;
    std::string object_id;
    std::string detail;
};

const char* to_string(Violation::Kind k);

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind k) const;
};

// Users, objects, hierarchy edges and activities of one dataset. Contents are
// canonically sorted at construction and immutable afterwards; concurrent
// reads are safe. Flat networks reject activities off the end level.
class PreSocialNetwork {
public:
    PreSocialNetwork() = default;
    PreSocialNetwork(LevelSchema schema, std::vector<User> users,
                     std::vector<ObjectNode> objects, std::vector<Activity> activities,
                     NetworkKind kind, int end_level, TimeRange range);

    const LevelSchema& schema() const { return schema_; }
    const std::vector<User>& users() const { return users_; }
    const std::vector<ObjectNode>& objects() const { return objects_; }
    const std::vector<Activity>& activities() const { return activities_; }
    NetworkKind kind() const { return kind_; }
    int end_level() const { return end_level_; }
    TimeRange range() const { return range_; }

    std::optional<std::size_t> user_index(std::string_view id) const;
    std::optional<std::size_t> object_index(std::string_view id) const;
    const std::vector<std::size_t>& children_of(std::size_t object_idx) const;
    std::optional<std::size_t> parent_of(std::size_t object_idx) const;
    std::size_t objects_at_level(int level) const;

    // Unique ancestor at a strictly higher level (target < object's level).
    // Throws MissingParent on a broken parent chain.
    std::size_t ancestor_at_level(std::size_t object_idx, int target_level) const;

    // All objects at a strictly lower level (target > object's level) in the
    // subtree rooted at object_idx; may be empty. Result is sorted by id.
    std::vector<std::size_t> descendants_at_level(std::size_t object_idx, int target_level) const;

private:
    LevelSchema schema_;
    std::vector<User> users_;
    std::vector<ObjectNode> objects_;
    std::vector<Activity> activities_;
    NetworkKind kind_ = NetworkKind::Hierarchical;
    int end_level_ = 0;
    TimeRange range_;

    std::unordered_map<std::string, std::size_t> user_by_id_;
    std::unordered_map<std::string, std::size_t> object_by_id_;
    std::vector<std::vector<std::size_t>> children_;
};

// Checks the parent/level invariants: strict tree, single parent, adjacent
// levels, roots only at level 1. Returns violations instead of throwing so
// callers can report all of them at once.
ValidationReport validate_hierarchy(const PreSocialNetwork& net);

}   // namespace mlsn
