#pragma once
// Hierarchy removal: moves every activity to a chosen end level, either by
// lifting it to ancestors (bottom-top) or replicating it onto descendants
// (top-bottom), extending the role path at each step.

#include <string>
#include <vector>

#include "mlsn/core_model.hpp"

namespace mlsn {

struct AmbiguousInitials : std::runtime_error {
    explicit AmbiguousInitials(const std::string& what) : std::runtime_error(what) {}
};

struct RoleNaming {
    enum class Mode { Initials, FullLabels };
    Mode mode = Mode::Initials;
    std::string separator = "-";   // between labels in full-label mode
};

// "PTF Is Author" in initials mode, "post-topic-forum Is Author" in
// full-label mode. Initials mode refuses paths whose labels collide on the
// first letter, since the rendered name would be ambiguous.
std::string render_role(const RolePath& role, const RoleNaming& naming = {});

// Initials mode needs pairwise-distinct first letters across the whole
// schema; returns the offending pair's message or empty when fine.
std::string check_naming(const LevelSchema& schema, const RoleNaming& naming);

// Levels to process for a given end level: lift_levels bottom-up (all levels
// below the end level), push_levels top-down (all levels above it).
struct FlattenPlan {
    int end_level = 1;
    std::vector<int> lift_levels;   // descending, deepest first
    std::vector<int> push_levels;   // ascending, topmost first

    static FlattenPlan make(const LevelSchema& schema, int end_level);
};

// Moves every activity at from_level onto the father object one level up,
// appending the father's level label to the role path. Activity count is
// preserved exactly; multiplicities are kept, never merged.
PreSocialNetwork lift_step(const PreSocialNetwork& net, int from_level);

// Replaces every activity at from_level with one copy per child object one
// level down. An activity on a childless object yields nothing.
PreSocialNetwork push_step(const PreSocialNetwork& net, int from_level);

// All lift steps from the bottom up to end_level.
PreSocialNetwork lift_to(const PreSocialNetwork& net, int end_level);

// All push steps from the top down to end_level.
PreSocialNetwork push_to(const PreSocialNetwork& net, int end_level);

// Full flattening: lifts, then pushes, then re-tags the network as flat at
// end_level. Activities already at the end level are untouched.
PreSocialNetwork flatten(const PreSocialNetwork& net, int end_level);

}   // namespace mlsn
