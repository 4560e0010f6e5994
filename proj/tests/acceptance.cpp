// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every numeric expectation here is either a hand-derived worked example or
// recomputed through the independent oracles in oracles.hpp; nothing is read
// back from the engine under test.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

#include "mlsn/pipeline.hpp"
#include "mlsn/synth.hpp"
#include "oracles.hpp"

using namespace mlsn;
using testutil::TempDir;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// the two-user tagging scenario: 20 shared objects out of x's 60
PreSocialNetwork tags_scenario() {
    std::vector<ObjectNode> objects;
    std::vector<Activity> acts;
    for (int i = 1; i <= 70; ++i) {
        objects.push_back({"o" + std::to_string(i), 1, "", i, ""});
    }
    auto tag = [&](const std::string& user, int lo, int hi) {
        for (int i = lo; i <= hi; ++i) {
            acts.push_back({user, "o" + std::to_string(i), {"tags", {"item"}}, i, "", false});
        }
    };
    tag("x", 1, 60);
    tag("y", 41, 70);
    return PreSocialNetwork(LevelSchema({"item"}), {{"x", ""}, {"y", ""}}, std::move(objects),
                            std::move(acts), NetworkKind::Flat, 1, {0, 100});
}

// favourites/authorship: x favours 60 items, 20 authored by y; y authored 30,
// 20 favoured by x and 10 by z
PreSocialNetwork favourites_scenario() {
    std::vector<ObjectNode> objects;
    std::vector<Activity> acts;
    for (int i = 1; i <= 70; ++i) {
        objects.push_back({"o" + std::to_string(i), 1, "", i, ""});
    }
    auto act = [&](const std::string& user, const std::string& base, int lo, int hi) {
        for (int i = lo; i <= hi; ++i) {
            acts.push_back({user, "o" + std::to_string(i), {base, {"item"}}, i, "", false});
        }
    };
    act("x", "favours", 1, 60);
    act("y", "authors", 1, 20);
    act("w", "authors", 21, 60);
    act("y", "authors", 61, 70);
    act("z", "favours", 61, 70);
    return PreSocialNetwork(LevelSchema({"item"}),
                            {{"x", ""}, {"y", ""}, {"z", ""}, {"w", ""}}, std::move(objects),
                            std::move(acts), NetworkKind::Flat, 1, {0, 100});
}

void criterion_1() {
    PreSocialNetwork net = tags_scenario();
    auto s = strength_equal(net, "x", "y", "I tags");
    require(s.has_value(), "no strength for the tagging pair");
    require(s->num == 20 && s->den == 60, "expected 20/60, got " + str(s->num) + "/" +
                                              str(s->den));
    require(std::abs(s->value() - 1.0 / 3.0) <= 1e-12, "20/60 did not evaluate to 1/3");
}

void criterion_2() {
    PreSocialNetwork net = favourites_scenario();
    auto xy = strength_diff(net, "x", "y", "I favours", "I authors");
    auto yx = strength_diff(net, "y", "x", "I authors", "I favours");
    require(xy.has_value() && yx.has_value(), "missing favourites/author strengths");
    require(xy->num == 20 && xy->den == 60,
            "s_xy expected 20/60, got " + str(xy->num) + "/" + str(xy->den));
    require(yx->num == 20 && yx->den == 30,
            "s_yx expected 20/30, got " + str(yx->num) + "/" + str(yx->den));
    require(std::abs(xy->value() - 1.0 / 3.0) <= 1e-12 &&
                std::abs(yx->value() - 2.0 / 3.0) <= 1e-12,
            "decimal values drifted from 1/3 and 2/3");
}

void criterion_3() {
    auto start = std::chrono::steady_clock::now();

    PreSocialNetwork fixture = case_study_fixture();
    PreSocialNetwork flat = flatten(fixture, 1);

    // exact role-set equality against the published assignments
    using Entry = std::tuple<std::string, std::string, std::string>;
    std::set<Entry> golden = {
        {"A", "1", "PTF Is Author"},      {"A", "2", "PTF Is Author"},
        {"A", "1", "TF Is Moderator"},    {"A", "1", "F Is Creator"},
        {"B", "1", "PTF Is Author"},      {"B", "2", "PTF Is Commentator"},
        {"C", "2", "PTF Is Author"},      {"C", "1", "TF Is Moderator"},
        {"C", "2", "F Is Creator"},       {"D", "1", "PTF Is Author"},
        {"D", "2", "PTF Is Author"},      {"D", "1", "PTF Is Commentator"},
        {"D", "2", "PTF Is Commentator"}, {"E", "2", "TF Is Moderator"},
    };
    std::set<Entry> got;
    for (const Activity& a : flat.activities()) {
        got.insert({a.user_id, a.object_id, render_role(a.role)});
    }
    require(got == golden, "role assignments differ from the published set (" +
                               str(got.size()) + " vs " + str(golden.size()) + " entries)");

    // the moderator-commentator layer carries A -> D
    SocialNetwork sn = build_sn(flat, enumerate_layers(flat), SnModel::NGraph);
    LayerKey mod_comm = LayerKey::make("TF Is Moderator", "PTF Is Commentator");
    bool a_to_d = false;
    for (const Edge& e : sn.edges) {
        if (e.layer == mod_comm && e.from == "A" && e.to == "D") a_to_d = true;
    }
    require(a_to_d, "edge A->D missing from the moderator-commentator layer");

    // D-E, E-B (moderator-commentator) and A-C (moderator-moderator) exist
    // and only through flattening: the unflattened baseline has no trace
    SocialNetwork baseline = make_baseline(fixture, 1, SnModel::NGraph);
    std::set<std::tuple<std::string, std::string, std::string, bool>> base_ids;
    for (const Edge& e : baseline.edges) {
        base_ids.insert({e.layer.label(), e.from, e.to, e.from_first});
    }
    auto is_new = [&](const std::string& u, const std::string& v) {
        bool found = false;
        for (const Edge& e : sn.edges) {
            if ((e.from == u && e.to == v) || (e.from == v && e.to == u)) {
                found = true;
                if (base_ids.contains({e.layer.label(), e.from, e.to, e.from_first})) {
                    return false;
                }
            }
        }
        return found;
    };
    require(is_new("D", "E"), "D-E connection absent or not new");
    require(is_new("E", "B"), "E-B connection absent or not new");
    require(is_new("A", "C"), "A-C connection absent or not new");

    LayerStats stats = layer_stats(flat, sn, baseline);
    require(stats.new_edges == stats.total_edges && stats.moved_edges == 0,
            "forum-level edges should all be flattening-only");

    // every edge agrees with the brute-force oracle
    for (const Edge& e : sn.edges) {
        auto expect = e.layer.equal_roles()
                          ? testutil::oracle_equal(flat, e.from, e.to, e.from_role())
                          : testutil::oracle_diff(flat, e.from, e.to, e.from_role(),
                                                  e.to_role());
        require(expect.has_value(), "oracle found no strength for " + e.from + "->" + e.to);
        require(e.strength.num == expect->first && e.strength.den == expect->second,
                "strength mismatch on " + e.from + "->" + e.to + ": engine " +
                    str(e.strength.num) + "/" + str(e.strength.den) + ", oracle " +
                    str(expect->first) + "/" + str(expect->second));
    }

    double elapsed = seconds_since(start);
    require(elapsed < 1.0, "case study took " + str(elapsed) + " s, limit is 1 s");
}

void criterion_4() {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        PreSocialNetwork net = testutil::random_net(seed);
        const auto total = static_cast<std::int64_t>(net.activities().size());

        // lift-only flattening (end level 1) preserves the count exactly
        require(static_cast<std::int64_t>(lift_to(net, 1).activities().size()) == total,
                "lift-only count changed on seed " + str(seed));

        for (int e = 1; e <= net.schema().level_count(); ++e) {
            auto flat_count = static_cast<std::int64_t>(flatten(net, e).activities().size());
            auto predicted = testutil::predicted_flat_count(net, e);
            require(flat_count == predicted,
                    "seed " + str(seed) + " level " + str(e) + ": flattened " +
                        str(flat_count) + ", predicted " + str(predicted));
        }
    }
}

void criterion_5() {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        PreSocialNetwork net = testutil::random_net(seed);
        for (int e = 1; e <= net.schema().level_count(); ++e) {
            auto got = testutil::flat_multiset(flatten(net, e));
            auto oracle = testutil::path_closure_oracle(net, e);
            require(got == oracle, "seed " + str(seed) + " level " + str(e) +
                                       ": flatten output differs from the path-closure oracle");
        }
    }
}

void criterion_6() {
    auto start = std::chrono::steady_clock::now();

    GenParams params;
    params.seed = 1;
    params.user_count = 50;
    params.levels = {{"forum", 1, 0, 0},
                     {"group", 692, 0, 0},
                     {"thread", 2336, 0, 0},
                     {"message", 13272, 0, 0}};
    params.activities = {{"forum creation", "forum", 1.0, true}};
    Generated gen = generate_network(params);

    require(gen.net.objects_at_level(1) == 1 && gen.net.objects_at_level(2) == 692 &&
                gen.net.objects_at_level(3) == 2336 && gen.net.objects_at_level(4) == 13272,
            "generated object counts do not match the configured totals");
    require(gen.net.activities().size() == 1, "expected the single forum-creation activity");

    const std::int64_t expected[] = {1, 692, 2336, 13272};
    for (int level = 1; level <= 4; ++level) {
        PreSocialNetwork flat = flatten(gen.net, level);
        auto count = static_cast<std::int64_t>(flat.activities().size());
        require(count == expected[level - 1], "push to level " + str(level) + " produced " +
                                                  str(count) + " activities, expected " +
                                                  str(expected[level - 1]));
        FlatteningStats stats = flattening_stats(gen.net, flat);
        require(stats.total_after == expected[level - 1],
                "flattening stats disagree at level " + str(level));
    }

    double elapsed = seconds_since(start);
    require(elapsed < 10.0, "pattern reproduction took " + str(elapsed) + " s, limit is 10 s");
}

void criterion_7() {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        PreSocialNetwork net = testutil::random_net(seed);

        // window equivalence: k equal periods == sliding range/k by range/k
        for (int k = 1; k <= 5; ++k) {
            Rational step{net.range().length(), k};
            require(make_windows(TimeWindowSpec::equal_periods(k), net.range()) ==
                        make_windows(TimeWindowSpec::sliding(step, step), net.range()),
                    "seed " + str(seed) + ": equal-periods(" + str(k) +
                        ") differs from the sliding equivalent");
        }

        for (int e = 1; e <= net.schema().level_count(); ++e) {
            PreSocialNetwork flat = flatten(net, e);
            auto layers = enumerate_layers(flat);
            if (layers.empty()) continue;
            SocialNetwork sn = build_sn(flat, layers, SnModel::NGraph);

            std::set<std::tuple<std::string, std::string, std::string, bool>> ids;
            for (const Edge& edge : sn.edges) {
                require(edge.strength.num >= 1 && edge.strength.num <= edge.strength.den,
                        "seed " + str(seed) + ": strength outside (0,1]");
                ids.insert({edge.layer.label(), edge.from, edge.to, edge.from_first});
            }
            for (const Edge& edge : sn.edges) {
                if (edge.layer.equal_roles()) continue;
                require(ids.contains({edge.layer.label(), edge.to, edge.from,
                                      !edge.from_first}),
                        "seed " + str(seed) + ": different-roles edge " + edge.from + "->" +
                            edge.to + " has no reciprocal");
            }

            // duplicating records must not move any strength
            if (!flat.activities().empty()) {
                std::mt19937_64 pick(seed * 977);
                for (int round = 0; round < 3; ++round) {
                    std::size_t index = pick() % flat.activities().size();
                    PreSocialNetwork doubled = testutil::with_duplicated_activity(flat, index);
                    SocialNetwork again = build_sn(doubled, layers, SnModel::NGraph);
                    require(again.edges == sn.edges,
                            "seed " + str(seed) + ": duplicating a record changed the network");
                }
            }
        }
    }
}

std::map<std::string, std::uint64_t> file_hashes(const std::filesystem::path& root) {
    std::map<std::string, std::uint64_t> hashes;
    for (const auto& [rel, content] : testutil::dir_contents(root)) {
        std::uint64_t h = 1469598103934665603ull;   // FNV-1a
        for (unsigned char c : content) {
            h ^= c;
            h *= 1099511628211ull;
        }
        hashes[rel] = h;
    }
    return hashes;
}

void criterion_8() {
    TempDir dir;
    write_dataset(case_study_fixture(), case_study_schema(), dir / "data");

    PipelineConfig config;
    config.inputs = {dir / "data" / "users.csv", dir / "data" / "objects.csv",
                     dir / "data" / "activities.csv", dir / "data" / "schema.json"};
    config.end_levels = {"forum", "topic", "post"};
    config.windows = TimeWindowSpec::equal_periods(2);

    config.out_dir = dir / "run1";
    run_pipeline(config);
    config.out_dir = dir / "run2";
    run_pipeline(config);

    auto h1 = file_hashes(dir / "run1");
    auto h2 = file_hashes(dir / "run2");
    require(!h1.empty(), "the pipeline wrote nothing");
    require(h1 == h2, "library reruns differ");
    require(testutil::dir_contents(dir / "run1") == testutil::dir_contents(dir / "run2"),
            "library reruns differ byte-for-byte");

    // and through the command line, a separate process each time
    std::string base = std::string(MLSN_CLI_BIN) + " pipeline --users \"" +
                       (dir / "data" / "users.csv").string() + "\" --objects \"" +
                       (dir / "data" / "objects.csv").string() + "\" --activities \"" +
                       (dir / "data" / "activities.csv").string() + "\" --schema \"" +
                       (dir / "data" / "schema.json").string() +
                       "\" --end-level forum --end-level post --out \"";
    require(std::system((base + (dir / "cli1").string() + "\" > /dev/null 2>&1").c_str()) == 0,
            "first cli run failed");
    require(std::system((base + (dir / "cli2").string() + "\" > /dev/null 2>&1").c_str()) == 0,
            "second cli run failed");
    require(file_hashes(dir / "cli1") == file_hashes(dir / "cli2"), "cli reruns differ");
}

void criterion_9() {
    // The published absolute relationship counts and the 90%/10%/3% shares
    // come from a dataset that is not available, so they are not checked
    // anywhere. What is checked: the structural partition behind those
    // tables, on the fixture and on random instances.
    PreSocialNetwork fixture = case_study_fixture();
    for (int e = 1; e <= 3; ++e) {
        PreSocialNetwork flat = flatten(fixture, e);
        SocialNetwork sn = build_sn(flat, enumerate_layers(flat), SnModel::NGraph);
        LayerStats stats = layer_stats(flat, sn, make_baseline(fixture, e, SnModel::NGraph));
        require(stats.new_edges + stats.moved_edges == stats.total_edges,
                "fixture level " + str(e) + ": new + moved != total");
        require(stats.new_pct >= 0.0 && stats.new_pct <= 100.0,
                "fixture level " + str(e) + ": new% outside [0,100]");
    }

    for (std::uint64_t seed = 500; seed < 550; ++seed) {
        PreSocialNetwork net = testutil::random_net(seed);
        for (int e = 1; e <= net.schema().level_count(); ++e) {
            PreSocialNetwork flat = flatten(net, e);
            auto layers = enumerate_layers(flat);
            if (layers.empty()) continue;
            SocialNetwork sn = build_sn(flat, layers, SnModel::NGraph);
            LayerStats stats = layer_stats(flat, sn, make_baseline(net, e, SnModel::NGraph));
            require(stats.new_edges + stats.moved_edges == stats.total_edges,
                    "seed " + str(seed) + " level " + str(e) + ": partition broken");
            std::int64_t row_sum = 0;
            for (const LayerRow& row : stats.rows) {
                require(row.new_edges + row.moved_edges == row.relationships,
                        "seed " + str(seed) + ": row partition broken");
                row_sum += row.relationships;
            }
            require(row_sum == stats.total_edges,
                    "seed " + str(seed) + ": rows do not sum to the total");
            require(stats.new_pct >= 0.0 && stats.new_pct <= 100.0 &&
                        stats.moved_pct >= 0.0 && stats.moved_pct <= 100.0,
                    "seed " + str(seed) + ": percentage outside [0,100]");
        }
    }
}

struct Criterion {
    int id;
    const char* title;
    std::function<void()> run;
};

}   // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "equal-roles worked example, 20 shared of 60 is exactly 1/3", criterion_1},
        {2, "different-roles worked example, s_xy = 1/3 and s_yx = 2/3", criterion_2},
        {3, "case study: role set, A->D edge, new connections, oracle strengths, < 1 s",
         criterion_3},
        {4, "conservation on 100 random instances, exact analytic counts", criterion_4},
        {5, "path-closure oracle equivalence on 100 random instances", criterion_5},
        {6, "single creation pushed through 692 / 2336 / 13272 objects, < 10 s", criterion_6},
        {7, "strength and window invariants across 100 seeds", criterion_7},
        {8, "byte-identical pipeline reruns, library and cli", criterion_8},
        {9, "new/moved partition holds; published absolute counts are not targets",
         criterion_9},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        try {
            c.run();
            std::cout << "criterion " << c.id << ": PASS  " << c.title << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "criterion " << c.id << ": FAIL  " << c.title << " -- " << e.what()
                      << "\n";
        }
    }
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 9 criteria passed\n";
    return 0;
}
