#include <algorithm>
#include <map>

#include "doctest.h"
#include "mlsn/flatten.hpp"
#include "mlsn/synth.hpp"
#include "oracles.hpp"

using namespace mlsn;

namespace {

GenParams forum_params(std::uint64_t seed) {
    GenParams p;
    p.seed = seed;
    p.user_count = 10;
    p.levels = {{"forum", 2, 0, 0}, {"topic", {}, 1, 3}, {"post", {}, 0, 4}};
    p.activities = {{"post authoring", "post", 1.0, true},
                    {"comments", "post", 0.4, false},
                    {"moderates", "topic", 0.3, false}};
    p.creation_types = {{"post", "post authoring"}};
    p.subscription_types = {{"topic", "topic subscription"}};
    return p;
}

}   // namespace

TEST_CASE("the same seed reproduces the dataset exactly") {
    Generated a = generate_network(forum_params(42));
    Generated b = generate_network(forum_params(42));
    CHECK(a.net.users() == b.net.users());
    CHECK(a.net.objects() == b.net.objects());
    CHECK(a.net.activities() == b.net.activities());
    CHECK(a.net.range() == b.net.range());
    CHECK(a.schema == b.schema);

    Generated c = generate_network(forum_params(43));
    CHECK(a.net.objects() != c.net.objects());
}

TEST_CASE("generated hierarchies validate and respect fixed level totals") {
    GenParams p;
    p.seed = 9;
    p.user_count = 4;
    p.levels = {{"forum", 3, 0, 0}, {"topic", 7, 0, 0}, {"post", 11, 0, 0}};
    Generated gen = generate_network(p);

    CHECK(validate_hierarchy(gen.net).ok());
    CHECK(gen.net.objects_at_level(1) == 3);
    CHECK(gen.net.objects_at_level(2) == 7);
    CHECK(gen.net.objects_at_level(3) == 11);

    // round-robin distribution: children per parent differ by at most one
    std::map<std::string, int> topics_per_forum;
    for (const ObjectNode& o : gen.net.objects()) {
        if (o.level == 2) ++topics_per_forum[o.parent_id];
    }
    REQUIRE(topics_per_forum.size() == 3);
    auto [lo, hi] = std::minmax_element(
        topics_per_forum.begin(), topics_per_forum.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    CHECK(hi->second - lo->second <= 1);
}

TEST_CASE("per-parent child counts stay inside the configured bounds") {
    GenParams p;
    p.seed = 11;
    p.user_count = 4;
    p.levels = {{"forum", 2, 0, 0}, {"topic", {}, 2, 5}};
    Generated gen = generate_network(p);

    std::map<std::string, int> per_forum;
    for (const ObjectNode& o : gen.net.objects()) {
        if (o.level == 2) ++per_forum[o.parent_id];
    }
    REQUIRE(per_forum.size() == 2);
    for (const auto& [forum, count] : per_forum) {
        CHECK(count >= 2);
        CHECK(count <= 5);
    }
}

TEST_CASE("by-creator activities mirror the object's creator and date") {
    Generated gen = generate_network(forum_params(12));
    int authored = 0;
    for (const Activity& a : gen.net.activities()) {
        if (a.role.base != "post authoring") continue;
        ++authored;
        auto obj = gen.net.object_index(a.object_id);
        REQUIRE(obj.has_value());
        CHECK(a.user_id == gen.net.objects()[*obj].creator_id);
        CHECK(a.ts == gen.net.objects()[*obj].created_at);
        CHECK(!a.inferred);
    }
    // rate 1.0: exactly one authoring per post
    CHECK(authored == static_cast<int>(gen.net.objects_at_level(3)));
}

TEST_CASE("random activities land after their object inside the horizon") {
    Generated gen = generate_network(forum_params(13));
    for (const Activity& a : gen.net.activities()) {
        if (a.role.base != "comments" && a.role.base != "moderates") continue;
        auto obj = gen.net.object_index(a.object_id);
        REQUIRE(obj.has_value());
        CHECK(a.ts > gen.net.objects()[*obj].created_at);
        CHECK(a.ts <= gen.net.objects()[*obj].created_at + 1000);
        CHECK(gen.net.user_index(a.user_id).has_value());
    }
}

TEST_CASE("generated networks carry their subscriptions as inferred activities") {
    Generated gen = generate_network(forum_params(14));
    int subs = 0;
    for (const Activity& a : gen.net.activities()) {
        if (a.role.base != "topic subscription") continue;
        ++subs;
        CHECK(a.inferred);
    }
    CHECK(subs > 0);
    // one subscription per (user, topic) at most
    std::set<std::pair<std::string, std::string>> seen;
    for (const Activity& a : gen.net.activities()) {
        if (a.role.base != "topic subscription") continue;
        CHECK(seen.emplace(a.user_id, a.object_id).second);
    }
}

TEST_CASE("the declared range covers every generated event") {
    Generated gen = generate_network(forum_params(15));
    REQUIRE(gen.schema.declared_range.has_value());
    CHECK(*gen.schema.declared_range == gen.net.range());
    for (const ObjectNode& o : gen.net.objects()) CHECK(gen.net.range().contains(o.created_at));
    for (const Activity& a : gen.net.activities()) CHECK(gen.net.range().contains(a.ts));
}

TEST_CASE("a zero-user parameter set yields an empty dataset") {
    GenParams p;
    p.user_count = 0;
    p.levels = {{"forum", 5, 0, 0}};
    Generated gen = generate_network(p);
    CHECK(gen.net.users().empty());
    CHECK(gen.net.objects().empty());
    CHECK(gen.net.activities().empty());
}

TEST_CASE("parameter validation rejects inconsistent settings") {
    GenParams p = forum_params(1);

    GenParams bad = p;
    bad.user_count = -1;
    CHECK_THROWS_AS((void)generate_network(bad), std::invalid_argument);

    bad = p;
    bad.levels.clear();
    CHECK_THROWS_AS((void)generate_network(bad), std::invalid_argument);

    bad = p;
    bad.levels[1].min_children = 3;
    bad.levels[1].max_children = 1;
    CHECK_THROWS_AS((void)generate_network(bad), std::invalid_argument);

    bad = p;
    bad.activities[0].rate = 1.5;
    CHECK_THROWS_AS((void)generate_network(bad), std::invalid_argument);

    bad = p;
    bad.activities[0].level = "galaxy";
    CHECK_THROWS_AS((void)generate_network(bad), std::invalid_argument);

    bad = p;
    bad.creation_types = {{"post", "moderates"}};   // declared for topics
    CHECK_THROWS_AS((void)generate_network(bad), std::invalid_argument);
}

TEST_CASE("generation parameters round-trip through json") {
    GenParams p = forum_params(77);
    std::string text = p.to_json();
    GenParams back = GenParams::from_json(text);
    CHECK(back.to_json() == text);
    CHECK(back.seed == 77);
    CHECK(back.user_count == 10);
    REQUIRE(back.levels.size() == 3);
    CHECK(back.levels[0].total == 2);
    CHECK(!back.levels[1].total.has_value());
    CHECK(back.levels[2].max_children == 4);
    REQUIRE(back.activities.size() == 3);
    CHECK(back.activities[0].by_creator);
    CHECK(back.activities[1].rate == doctest::Approx(0.4));
    CHECK(back.creation_types.at("post") == "post authoring");
    CHECK(back.subscription_types.at("topic") == "topic subscription");
}

TEST_CASE("the case-study fixture matches its published shape") {
    PreSocialNetwork net = case_study_fixture();
    CHECK(validate_hierarchy(net).ok());
    CHECK(net.users().size() == 5);
    CHECK(net.objects().size() == 12);
    CHECK(net.activities().size() == 16);
    CHECK(net.objects_at_level(1) == 2);
    CHECK(net.objects_at_level(2) == 4);
    CHECK(net.objects_at_level(3) == 6);
    CHECK(net.range() == TimeRange{100, 300});

    std::map<std::string, int> per_type;
    for (const Activity& a : net.activities()) ++per_type[a.role.base];
    CHECK(per_type.at("Is Creator") == 2);
    CHECK(per_type.at("Is Moderator") == 4);
    CHECK(per_type.at("Is Author") == 6);
    CHECK(per_type.at("Is Commentator") == 4);

    DatasetSchema schema = case_study_schema();
    CHECK(schema.levels.labels() == std::vector<std::string>{"forum", "topic", "post"});
    CHECK(schema.activity_levels.size() == 4);
    CHECK(schema.declared_range == TimeRange{100, 300});

    // every activity sits on the level its type declares
    for (const Activity& a : net.activities()) {
        auto obj = net.object_index(a.object_id);
        REQUIRE(obj.has_value());
        CHECK(schema.activity_levels.at(a.role.base) ==
              net.schema().label(net.objects()[*obj].level));
    }
}

TEST_CASE("fixture role inventory at the forum level") {
    PreSocialNetwork flat = flatten(case_study_fixture(), 1);
    std::map<std::string, int> inventory;
    for (const Activity& a : flat.activities()) ++inventory[render_role(a.role)];
    CHECK(inventory.at("F Is Creator") == 2);
    CHECK(inventory.at("TF Is Moderator") == 4);
    CHECK(inventory.at("PTF Is Author") == 6);
    CHECK(inventory.at("PTF Is Commentator") == 4);
    CHECK(flat.activities().size() == 16);
}
