#include "mlsn/core_model.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

namespace mlsn {

LevelSchema::LevelSchema(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw BuildError("level schema needs at least one level");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) {
            throw BuildError("level label must be non-empty");
        }
        if (!seen.insert(l).second) {
            throw BuildError("duplicate level label: " + l);
        }
    }
}

const std::string& LevelSchema::label(int level) const {
    if (!valid_level(level)) {
        throw std::out_of_range("level index out of range: " + std::to_string(level));
    }
    return labels_[static_cast<std::size_t>(level - 1)];
}

std::optional<int> LevelSchema::level_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return static_cast<int>(i + 1);
        }
    }
    return std::nullopt;
}

bool activity_less(const Activity& a, const Activity& b) {
    return std::tie(a.user_id, a.object_id, a.role.base, a.role.path, a.ts,
                    a.origin_object_id, a.inferred) <
           std::tie(b.user_id, b.object_id, b.role.base, b.role.path, b.ts,
                    b.origin_object_id, b.inferred);
}

const char* to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::CycleDetected: return "CycleDetected";
        case Violation::Kind::LevelSkip: return "LevelSkip";
        case Violation::Kind::MultipleParents: return "MultipleParents";
        case Violation::Kind::OrphanNonRoot: return "OrphanNonRoot";
    }
    return "?";
}

bool ValidationReport::has(Violation::Kind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
}

PreSocialNetwork::PreSocialNetwork(LevelSchema schema, std::vector<User> users,
                                   std::vector<ObjectNode> objects,
                                   std::vector<Activity> activities, NetworkKind kind,
                                   int end_level, TimeRange range)
    : schema_(std::move(schema)),
      users_(std::move(users)),
      objects_(std::move(objects)),
      activities_(std::move(activities)),
      kind_(kind),
      end_level_(end_level),
      range_(range) {
    if (kind_ == NetworkKind::Flat && !schema_.valid_level(end_level_)) {
        throw BuildError("flat network end level out of range: " + std::to_string(end_level_));
    }

    std::sort(users_.begin(), users_.end(),
              [](const User& a, const User& b) { return a.id < b.id; });
    std::sort(objects_.begin(), objects_.end(),
              [](const ObjectNode& a, const ObjectNode& b) { return a.id < b.id; });
    std::sort(activities_.begin(), activities_.end(), activity_less);

    user_by_id_.reserve(users_.size());
    for (std::size_t i = 0; i < users_.size(); ++i) {
        user_by_id_.emplace(users_[i].id, i);   // keep-first; duplicates surface in validation
    }
    object_by_id_.reserve(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        object_by_id_.emplace(objects_[i].id, i);
    }

    children_.assign(objects_.size(), {});
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (!objects_[i].has_parent()) {
            continue;
        }
        if (auto p = object_index(objects_[i].parent_id); p && *p != i) {
            children_[*p].push_back(i);
        }
    }

    for (const Activity& a : activities_) {
        auto oi = object_index(a.object_id);
        if (kind_ == NetworkKind::Flat) {
            if (!oi) {
                throw BuildError("flat network activity targets unknown object: " + a.object_id);
            }
            if (objects_[*oi].level != end_level_) {
                throw BuildError("flat network activity off the end level, object: " + a.object_id);
            }
        }
        if (oi && !a.role.path.empty() &&
            a.role.path.back() != schema_.label(objects_[*oi].level)) {
            throw BuildError("activity role path does not end at object level, object: " +
                             a.object_id);
        }
        if (a.role.path.empty()) {
            throw BuildError("activity with empty role path, object: " + a.object_id);
        }
    }
}

std::optional<std::size_t> PreSocialNetwork::user_index(std::string_view id) const {
    auto it = user_by_id_.find(std::string(id));
    if (it == user_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> PreSocialNetwork::object_index(std::string_view id) const {
    auto it = object_by_id_.find(std::string(id));
    if (it == object_by_id_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::size_t>& PreSocialNetwork::children_of(std::size_t object_idx) const {
    return children_.at(object_idx);
}

std::optional<std::size_t> PreSocialNetwork::parent_of(std::size_t object_idx) const {
    const ObjectNode& o = objects_.at(object_idx);
    if (!o.has_parent()) return std::nullopt;
    return object_index(o.parent_id);
}

std::size_t PreSocialNetwork::objects_at_level(int level) const {
    return static_cast<std::size_t>(
        std::count_if(objects_.begin(), objects_.end(),
                      [level](const ObjectNode& o) { return o.level == level; }));
}

std::size_t PreSocialNetwork::ancestor_at_level(std::size_t object_idx, int target_level) const {
    const ObjectNode& start = objects_.at(object_idx);
    if (target_level >= start.level) {
        throw std::invalid_argument("ancestor_at_level: target " + std::to_string(target_level) +
                                    " is not above level " + std::to_string(start.level));
    }
    std::size_t cur = object_idx;
    while (objects_[cur].level > target_level) {
        const ObjectNode& node = objects_[cur];
        if (!node.has_parent()) {
            throw MissingParent("object " + node.id + " at level " + std::to_string(node.level) +
                                " has no parent");
        }
        auto p = object_index(node.parent_id);
        if (!p) {
            throw MissingParent("object " + node.id + " has unknown parent " + node.parent_id);
        }
        if (objects_[*p].level >= node.level) {
            throw MissingParent("parent of " + node.id + " is not on a higher level");
        }
        cur = *p;
    }
    if (objects_[cur].level != target_level) {
        throw MissingParent("parent chain of " + start.id + " skips level " +
                            std::to_string(target_level));
    }
    return cur;
}

std::vector<std::size_t> PreSocialNetwork::descendants_at_level(std::size_t object_idx,
                                                                int target_level) const {
    const ObjectNode& start = objects_.at(object_idx);
    if (target_level <= start.level) {
        throw std::invalid_argument("descendants_at_level: target " +
                                    std::to_string(target_level) + " is not below level " +
                                    std::to_string(start.level));
    }
    std::vector<std::size_t> frontier{object_idx};
    for (int depth = start.level; depth < target_level; ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            const auto& kids = children_[idx];
            next.insert(next.end(), kids.begin(), kids.end());
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    std::erase_if(frontier, [&](std::size_t i) { return objects_[i].level != target_level; });
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

ValidationReport validate_hierarchy(const PreSocialNetwork& net) {
    ValidationReport report;
    const auto& objects = net.objects();

    for (std::size_t i = 1; i < objects.size(); ++i) {
        if (objects[i].id == objects[i - 1].id) {
            report.violations.push_back({Violation::Kind::MultipleParents, objects[i].id,
                                         "object id declared more than once"});
        }
    }

    for (const ObjectNode& o : objects) {
        if (!net.schema().valid_level(o.level)) {
            report.violations.push_back(
                {Violation::Kind::LevelSkip, o.id,
                 "level " + std::to_string(o.level) + " outside schema"});
            continue;
        }
        if (!o.has_parent()) {
            if (o.level != 1) {
                report.violations.push_back({Violation::Kind::OrphanNonRoot, o.id,
                                             "no parent at level " + std::to_string(o.level)});
            }
            continue;
        }
        if (o.level == 1) {
            report.violations.push_back(
                {Violation::Kind::LevelSkip, o.id, "level-1 object declares a parent"});
            continue;
        }
        auto p = net.object_index(o.parent_id);
        if (!p) {
            report.violations.push_back({Violation::Kind::OrphanNonRoot, o.id,
                                         "parent " + o.parent_id + " does not exist"});
            continue;
        }
        int parent_level = net.objects()[*p].level;
        if (parent_level != o.level - 1) {
            report.violations.push_back(
                {Violation::Kind::LevelSkip, o.id,
                 "parent " + o.parent_id + " at level " + std::to_string(parent_level) +
                     ", expected " + std::to_string(o.level - 1)});
        }
    }

    // Parent-chain walk catches cycles longer than one object. Nodes proven to
    // reach a root are memoized so the scan stays linear.
    std::vector<char> safe(objects.size(), 0);
    for (std::size_t i = 0; i < objects.size(); ++i) {
        std::vector<std::size_t> chain;
        std::unordered_set<std::size_t> on_chain;
        std::size_t cur = i;
        bool cycle = false;
        while (true) {
            if (safe[cur]) break;
            if (on_chain.contains(cur)) {
                cycle = true;
                break;
            }
            chain.push_back(cur);
            on_chain.insert(cur);
            const ObjectNode& node = objects[cur];
            if (!node.has_parent()) break;
            auto p = net.object_index(node.parent_id);
            if (!p) break;
            cur = *p;
        }
        if (cycle && !safe[i]) {
            report.violations.push_back(
                {Violation::Kind::CycleDetected, objects[i].id, "parent chain loops"});
        }
        if (!cycle) {
            for (std::size_t idx : chain) safe[idx] = 1;
        }
    }

    return report;
}

}   // namespace mlsn
