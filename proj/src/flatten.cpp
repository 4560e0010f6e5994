#include "mlsn/flatten.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace mlsn {

namespace {

char initial_of(const std::string& label) {
    return static_cast<char>(std::toupper(static_cast<unsigned char>(label.front())));
}

}   // namespace

std::string render_role(const RolePath& role, const RoleNaming& naming) {
    if (role.path.empty()) {
        throw std::invalid_argument("role path must not be empty");
    }
    std::string prefix;
    if (naming.mode == RoleNaming::Mode::Initials) {
        std::unordered_map<char, std::string> seen;
        for (const auto& label : role.path) {
            char c = initial_of(label);
            auto [it, fresh] = seen.emplace(c, label);
            if (!fresh && it->second != label) {
                throw AmbiguousInitials("levels '" + it->second + "' and '" + label +
                                        "' share the initial '" + std::string(1, c) + "'");
            }
            prefix.push_back(c);
        }
    } else {
        for (std::size_t i = 0; i < role.path.size(); ++i) {
            if (i > 0) prefix += naming.separator;
            prefix += role.path[i];
        }
    }
    return prefix + " " + role.base;
}

std::string check_naming(const LevelSchema& schema, const RoleNaming& naming) {
    if (naming.mode != RoleNaming::Mode::Initials) {
        return {};
    }
    std::unordered_map<char, std::string> seen;
    for (const auto& label : schema.labels()) {
        char c = initial_of(label);
        auto [it, fresh] = seen.emplace(c, label);
        if (!fresh) {
            return "levels '" + it->second + "' and '" + label + "' share the initial '" +
                   std::string(1, c) + "'; use full-label naming";
        }
    }
    return {};
}

FlattenPlan FlattenPlan::make(const LevelSchema& schema, int end_level) {
    if (!schema.valid_level(end_level)) {
        throw std::invalid_argument("end level out of range: " + std::to_string(end_level));
    }
    FlattenPlan plan;
    plan.end_level = end_level;
    for (int l = schema.level_count(); l > end_level; --l) {
        plan.lift_levels.push_back(l);
    }
    for (int l = 1; l < end_level; ++l) {
        plan.push_levels.push_back(l);
    }
    return plan;
}

namespace {

PreSocialNetwork with_activities(const PreSocialNetwork& net, std::vector<Activity> activities,
                                 NetworkKind kind, int end_level) {
    return PreSocialNetwork(net.schema(), net.users(), net.objects(), std::move(activities),
                            kind, end_level, net.range());
}

std::size_t checked_object(const PreSocialNetwork& net, const Activity& a) {
    auto idx = net.object_index(a.object_id);
    if (!idx) {
        throw MissingParent("activity targets unknown object: " + a.object_id);
    }
    return *idx;
}

}   // namespace

PreSocialNetwork lift_step(const PreSocialNetwork& net, int from_level) {
    if (from_level <= 1 || !net.schema().valid_level(from_level)) {
        throw std::invalid_argument("cannot lift from level " + std::to_string(from_level));
    }
    const std::string& father_label = net.schema().label(from_level - 1);
    std::vector<Activity> out;
    out.reserve(net.activities().size());
    for (const Activity& a : net.activities()) {
        std::size_t obj = checked_object(net, a);
        if (net.objects()[obj].level != from_level) {
            out.push_back(a);
            continue;
        }
        std::size_t father = net.ancestor_at_level(obj, from_level - 1);
        Activity moved = a;
        moved.object_id = net.objects()[father].id;
        moved.role.path.push_back(father_label);
        if (moved.origin_object_id.empty()) {
            moved.origin_object_id = a.object_id;
        }
        out.push_back(std::move(moved));
    }
    return with_activities(net, std::move(out), NetworkKind::Hierarchical, 0);
}

PreSocialNetwork push_step(const PreSocialNetwork& net, int from_level) {
    if (from_level >= net.schema().level_count() || from_level < 1) {
        throw std::invalid_argument("cannot push from level " + std::to_string(from_level));
    }
    const std::string& child_label = net.schema().label(from_level + 1);
    std::vector<Activity> out;
    out.reserve(net.activities().size());
    for (const Activity& a : net.activities()) {
        std::size_t obj = checked_object(net, a);
        if (net.objects()[obj].level != from_level) {
            out.push_back(a);
            continue;
        }
        for (std::size_t child : net.children_of(obj)) {
            Activity moved = a;
            moved.object_id = net.objects()[child].id;
            moved.role.path.push_back(child_label);
            if (moved.origin_object_id.empty()) {
                moved.origin_object_id = a.object_id;
            }
            out.push_back(std::move(moved));
        }
        // childless object: the activity has no representation at the end
        // level and vanishes here
    }
    return with_activities(net, std::move(out), NetworkKind::Hierarchical, 0);
}

PreSocialNetwork lift_to(const PreSocialNetwork& net, int end_level) {
    FlattenPlan plan = FlattenPlan::make(net.schema(), end_level);
    PreSocialNetwork cur = net;
    for (int level : plan.lift_levels) {
        cur = lift_step(cur, level);
    }
    return cur;
}

PreSocialNetwork push_to(const PreSocialNetwork& net, int end_level) {
    FlattenPlan plan = FlattenPlan::make(net.schema(), end_level);
    PreSocialNetwork cur = net;
    for (int level : plan.push_levels) {
        cur = push_step(cur, level);
    }
    return cur;
}

PreSocialNetwork flatten(const PreSocialNetwork& net, int end_level) {
    if (net.kind() != NetworkKind::Hierarchical) {
        throw std::invalid_argument("flatten expects a hierarchical network");
    }
    PreSocialNetwork cur = push_to(lift_to(net, end_level), end_level);
    for (const Activity& a : cur.activities()) {
        if (cur.objects()[checked_object(cur, a)].level != end_level) {
            throw BuildError("flattening left an activity off the end level: " + a.object_id);
        }
    }
    return with_activities(cur, cur.activities(), NetworkKind::Flat, end_level);
}

}   // namespace mlsn
