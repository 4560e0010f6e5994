#pragma once
// Deterministic synthetic dataset generation: forum-shaped hierarchies with
// controllable per-level object counts and activity rates, plus the small
// two-forum case-study network used as a golden fixture.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlsn/core_model.hpp"
#include "mlsn/ingest.hpp"

namespace mlsn {

// One hierarchy level. Either `total` fixes the exact object count at this
// level (children are dealt to parents round-robin), or each parent draws a
// child count uniformly from [min_children, max_children].
struct LevelGen {
    std::string label;
    std::optional<std::int64_t> total;
    std::int64_t min_children = 1;
    std::int64_t max_children = 1;
};

struct ActivityGen {
    std::string type;
    std::string level;          // target level label
    double rate = 0.0;          // per-object probability, in [0, 1]
    bool by_creator = false;    // performer and timestamp come from the object
};

struct GenParams {
    std::uint64_t seed = 1;
    std::int64_t user_count = 0;
    std::vector<LevelGen> levels;   // top to bottom
    std::vector<ActivityGen> activities;
    std::map<std::string, std::string> creation_types;       // forwarded to the schema
    std::map<std::string, std::string> subscription_types;
    Timestamp start = 0;
    Timestamp activity_horizon = 1000;   // random activity offset bound

    static GenParams from_json(const std::string& text);
    std::string to_json() const;
};

struct Generated {
    PreSocialNetwork net;
    DatasetSchema schema;
};

// Same seed, same output, always. Without users there is nobody to create
// objects, so a zero-user parameter set yields an empty dataset. The result
// passes validation and cleanses with zero rejections by construction.
Generated generate_network(const GenParams& params);

// generate_network + write_dataset into dir.
Generated generate(const GenParams& params, const std::filesystem::path& dir);

// Two forums, four topics, six posts, five users A..E, sixteen explicit
// activities (creations, moderations, authorings, comments). Timestamps are
// synthetic: objects are created in id order, activities shortly after the
// object they touch, all inside the declared range [100, 300].
PreSocialNetwork case_study_fixture();
DatasetSchema case_study_schema();

}   // namespace mlsn
