#pragma once
// Social-network extraction from a flat pre-social network: role-pair layers,
// directed relationship strengths, and time-windowed strength variants.
//
// Strengths are ratios of distinct-object counts and are kept exact: the
// numerator is the number of shared objects (the edge's support), never
// reduced, so 1/3 stays 20/60 when that is what the data says.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlsn/core_model.hpp"
#include "mlsn/flatten.hpp"

namespace mlsn {

struct UnknownLayer : std::runtime_error {
    explicit UnknownLayer(const std::string& what) : std::runtime_error(what) {}
};

struct UncoverableRange : std::runtime_error {
    explicit UncoverableRange(const std::string& what) : std::runtime_error(what) {}
};

struct Strength {
    std::int64_t num = 0;   // shared distinct objects (support)
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool same_ratio(std::int64_t n, std::int64_t d) const {
        return static_cast<long long>(num) * d == static_cast<long long>(n) * den;
    }
    bool operator==(const Strength&) const = default;
};

// Unordered role pair naming one layer; equal_roles when both sides match.
// Canonical order (role_a <= role_b) so (a,b) and (b,a) are the same key;
// direction and role orientation live on edges.
struct LayerKey {
    std::string role_a;
    std::string role_b;

    static LayerKey make(std::string x, std::string y);
    bool equal_roles() const { return role_a == role_b; }
    std::string label() const { return role_a + " - " + role_b; }

    bool operator==(const LayerKey&) const = default;
    auto operator<=>(const LayerKey&) const = default;
};

struct Edge {
    std::string from;
    std::string to;
    Strength strength;
    LayerKey layer;
    bool from_first = true;   // from-user performs layer.role_a; false: role_b

    const std::string& from_role() const { return from_first ? layer.role_a : layer.role_b; }
    const std::string& to_role() const { return from_first ? layer.role_b : layer.role_a; }
    std::string oriented_label() const { return from_role() + " - " + to_role(); }

    bool operator==(const Edge&) const = default;
};

bool edge_less(const Edge& a, const Edge& b);

enum class SnModel { NGraph, MultiGraph };

struct LayerGraph {
    LayerKey key;
    std::vector<Edge> edges;

    bool operator==(const LayerGraph&) const = default;
};

// Directed weighted user-user graph(s). Edges are canonically sorted; the
// model tag selects the export shape (per-layer files vs one labeled file),
// the edge content is identical, which makes the two forms interconvertible.
struct SocialNetwork {
    SnModel model = SnModel::NGraph;
    std::vector<Edge> edges;

    std::vector<LayerGraph> layers() const;
    bool operator==(const SocialNetwork&) const = default;
};

SocialNetwork to_model(const SocialNetwork& sn, SnModel model);

// All role-pair layers with at least one potential edge: equal-role layers
// where some object has two distinct performers, different-role layers where
// two distinct users meet on one object. Sorted, duplicate-free.
std::vector<LayerKey> enumerate_layers(const PreSocialNetwork& net, const RoleNaming& naming = {});

// Eq-roles strength from x to y: shared distinct objects / x's distinct
// objects under the role. Absent when they share nothing.
std::optional<Strength> strength_equal(const PreSocialNetwork& net, const std::string& x,
                                       const std::string& y, const std::string& role,
                                       const RoleNaming& naming = {});

// Different-roles strength from x to y: objects where x performed role_a and
// y performed role_b, over objects where x performed role_a and anyone else
// performed role_b. Absent when the numerator is zero.
std::optional<Strength> strength_diff(const PreSocialNetwork& net, const std::string& x,
                                      const std::string& y, const std::string& role_a,
                                      const std::string& role_b, const RoleNaming& naming = {});

// All positive-strength directed edges for the selected layers.
// Throws UnknownLayer for a selection not produced by enumerate_layers and
// std::invalid_argument for an empty selection.
SocialNetwork build_sn(const PreSocialNetwork& net, const std::vector<LayerKey>& selection,
                       SnModel model, const RoleNaming& naming = {});

// Exact rational, normalized (den > 0, gcd(num, den) = 1). Window bounds use
// these so k equal periods of a range are represented without rounding.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);
    Rational(std::int64_t n) : num(n), den(1) {}   // NOLINT: implicit by design

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator*(std::int64_t k) const;
    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational&) const = default;
};

std::string to_string(const Rational& r);

struct Window {
    Rational lo;
    Rational hi;
    bool closed_hi = false;   // last window includes its upper bound

    bool contains(Timestamp t) const;
    bool operator==(const Window&) const = default;
};

struct TimeWindowSpec {
    enum class Mode { Sliding, EqualPeriods };

    Mode mode = Mode::EqualPeriods;
    Rational window_length{0};   // sliding: t_l
    Rational interval{0};        // sliding: t_i, the shift between windows
    int periods = 1;             // equal periods: k
    std::vector<double> weights;   // per window; empty selects linear increasing

    static TimeWindowSpec sliding(Rational t_l, Rational t_i, std::vector<double> weights = {});
    static TimeWindowSpec equal_periods(int k, std::vector<double> weights = {});
};

// Ordered windows covering the range. Sliding windows shift by the interval
// until the range end is reached; the final window is closed at the top (and
// clamped to the range end). Throws UncoverableRange when the parameters
// leave gaps (t_i > t_l) or are non-positive.
std::vector<Window> make_windows(const TimeWindowSpec& spec, TimeRange range);

// Per-window weights: the spec's own when given (validated against the
// window count, non-negative, summing to 1), else linear increasing with the
// most recent window heaviest.
std::vector<double> window_weights(const TimeWindowSpec& spec, std::size_t window_count);

// Oriented role pair for a single directed strength query.
struct RolePairQuery {
    std::string role_from;
    std::string role_to;

    bool equal_roles() const { return role_from == role_to; }
};

// Weighted sum of per-window strengths, each computed over the activities
// whose timestamps fall in that window. Absent only when every window is.
std::optional<double> windowed_strength(const PreSocialNetwork& net, const std::string& x,
                                        const std::string& y, const RolePairQuery& query,
                                        const TimeWindowSpec& spec,
                                        const RoleNaming& naming = {});

}   // namespace mlsn
