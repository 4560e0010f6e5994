#include "mlsn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace mlsn {

LayerKey LayerKey::make(std::string x, std::string y) {
    if (y < x) std::swap(x, y);
    return LayerKey{std::move(x), std::move(y)};
}

bool edge_less(const Edge& a, const Edge& b) {
    int ao = a.from_first ? 0 : 1;
    int bo = b.from_first ? 0 : 1;
    return std::tie(a.layer.role_a, a.layer.role_b, a.from, a.to, ao) <
           std::tie(b.layer.role_a, b.layer.role_b, b.from, b.to, bo);
}

std::vector<LayerGraph> SocialNetwork::layers() const {
    std::vector<LayerGraph> out;
    for (const Edge& e : edges) {
        if (out.empty() || !(out.back().key == e.layer)) {
            out.push_back(LayerGraph{e.layer, {}});
        }
        out.back().edges.push_back(e);
    }
    return out;
}

SocialNetwork to_model(const SocialNetwork& sn, SnModel model) {
    SocialNetwork out = sn;
    out.model = model;
    return out;
}

namespace {

// sorted distinct user indices
using UserList = std::vector<std::size_t>;
// role -> object -> performers
using RoleObjects = std::map<std::string, std::map<std::size_t, UserList>>;

RoleObjects build_role_objects(const PreSocialNetwork& net, const RoleNaming& naming,
                               const Window* window) {
    RoleObjects index;
    for (const Activity& a : net.activities()) {
        if (window && !window->contains(a.ts)) continue;
        auto obj = net.object_index(a.object_id);
        auto user = net.user_index(a.user_id);
        if (!obj || !user) continue;   // unresolved refs are a cleansing concern
        index[render_role(a.role, naming)][*obj].push_back(*user);
    }
    for (auto& [role, objects] : index) {
        for (auto& [obj, users] : objects) {
            std::sort(users.begin(), users.end());
            users.erase(std::unique(users.begin(), users.end()), users.end());
        }
    }
    return index;
}

bool has_distinct_pair(const UserList& a, const UserList& b) {
    if (a.empty() || b.empty()) return false;
    if (a.size() > 1 || b.size() > 1) return true;
    return a[0] != b[0];
}

std::optional<Strength> equal_strength_impl(const PreSocialNetwork& net, const std::string& x,
                                            const std::string& y, const std::string& role,
                                            const RoleNaming& naming, const Window* window) {
    if (x == y) {
        throw std::invalid_argument("strength requires two distinct users");
    }
    std::unordered_set<std::string> objects_x;
    std::unordered_set<std::string> objects_y;
    for (const Activity& a : net.activities()) {
        if (window && !window->contains(a.ts)) continue;
        if (render_role(a.role, naming) != role) continue;
        if (a.user_id == x) objects_x.insert(a.object_id);
        if (a.user_id == y) objects_y.insert(a.object_id);
    }
    std::int64_t shared = 0;
    for (const auto& o : objects_x) {
        if (objects_y.contains(o)) ++shared;
    }
    if (shared == 0) return std::nullopt;
    return Strength{shared, static_cast<std::int64_t>(objects_x.size())};
}

std::optional<Strength> diff_strength_impl(const PreSocialNetwork& net, const std::string& x,
                                           const std::string& y, const std::string& role_a,
                                           const std::string& role_b, const RoleNaming& naming,
                                           const Window* window) {
    if (x == y) {
        throw std::invalid_argument("strength requires two distinct users");
    }
    if (role_a == role_b) {
        throw std::invalid_argument("different-roles strength requires two distinct roles");
    }
    std::unordered_set<std::string> objects_x;
    std::unordered_map<std::string, std::unordered_set<std::string>> b_users;
    for (const Activity& a : net.activities()) {
        if (window && !window->contains(a.ts)) continue;
        const std::string rendered = render_role(a.role, naming);
        if (rendered == role_a && a.user_id == x) objects_x.insert(a.object_id);
        if (rendered == role_b) b_users[a.object_id].insert(a.user_id);
    }
    std::int64_t shared = 0;
    std::int64_t denom = 0;
    for (const auto& o : objects_x) {
        auto it = b_users.find(o);
        if (it == b_users.end()) continue;
        const auto& performers = it->second;
        bool other = performers.size() > 1 || (performers.size() == 1 && !performers.contains(x));
        if (other) ++denom;
        if (performers.contains(y)) ++shared;
    }
    if (shared == 0) return std::nullopt;
    return Strength{shared, denom};
}

}   // namespace

std::vector<LayerKey> enumerate_layers(const PreSocialNetwork& net, const RoleNaming& naming) {
    RoleObjects index = build_role_objects(net, naming, nullptr);
    std::set<LayerKey> keys;

    for (const auto& [role, objects] : index) {
        for (const auto& [obj, users] : objects) {
            if (users.size() >= 2) {
                keys.insert(LayerKey::make(role, role));
                break;
            }
        }
    }

    for (auto it_a = index.begin(); it_a != index.end(); ++it_a) {
        for (auto it_b = std::next(it_a); it_b != index.end(); ++it_b) {
            const auto& objs_a = it_a->second;
            const auto& objs_b = it_b->second;
            for (const auto& [obj, users_a] : objs_a) {
                auto hit = objs_b.find(obj);
                if (hit == objs_b.end()) continue;
                if (has_distinct_pair(users_a, hit->second)) {
                    keys.insert(LayerKey::make(it_a->first, it_b->first));
                    break;
                }
            }
        }
    }

    return {keys.begin(), keys.end()};
}

std::optional<Strength> strength_equal(const PreSocialNetwork& net, const std::string& x,
                                       const std::string& y, const std::string& role,
                                       const RoleNaming& naming) {
    return equal_strength_impl(net, x, y, role, naming, nullptr);
}

std::optional<Strength> strength_diff(const PreSocialNetwork& net, const std::string& x,
                                      const std::string& y, const std::string& role_a,
                                      const std::string& role_b, const RoleNaming& naming) {
    return diff_strength_impl(net, x, y, role_a, role_b, naming, nullptr);
}

namespace {

void emit_equal_layer(const PreSocialNetwork& net, const RoleObjects& index,
                      const LayerKey& key, std::vector<Edge>& out) {
    auto it = index.find(key.role_a);
    if (it == index.end()) return;
    std::map<std::size_t, std::int64_t> object_count;           // n_x
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> shared;   // n_xy, x < y
    for (const auto& [obj, users] : it->second) {
        for (std::size_t i = 0; i < users.size(); ++i) {
            ++object_count[users[i]];
            for (std::size_t j = i + 1; j < users.size(); ++j) {
                ++shared[{users[i], users[j]}];
            }
        }
    }
    for (const auto& [pair, n_xy] : shared) {
        const std::string& ux = net.users()[pair.first].id;
        const std::string& uy = net.users()[pair.second].id;
        out.push_back({ux, uy, Strength{n_xy, object_count[pair.first]}, key, true});
        out.push_back({uy, ux, Strength{n_xy, object_count[pair.second]}, key, true});
    }
}

void emit_diff_layer(const PreSocialNetwork& net, const RoleObjects& index,
                     const LayerKey& key, std::vector<Edge>& out) {
    auto it_a = index.find(key.role_a);
    auto it_b = index.find(key.role_b);
    if (it_a == index.end() || it_b == index.end()) return;

    // one pass per orientation: from-user performs `first`, to-user `second`
    auto orient = [&](const std::map<std::size_t, UserList>& first,
                      const std::map<std::size_t, UserList>& second, bool from_first) {
        std::map<std::size_t, std::int64_t> denom;   // n_x^{ab}
        std::map<std::pair<std::size_t, std::size_t>, std::int64_t> shared;
        for (const auto& [obj, users_from] : first) {
            auto hit = second.find(obj);
            if (hit == second.end()) continue;
            const UserList& users_to = hit->second;
            for (std::size_t x : users_from) {
                bool any_other = false;
                for (std::size_t y : users_to) {
                    if (y == x) continue;
                    any_other = true;
                    ++shared[{x, y}];
                }
                if (any_other) ++denom[x];
            }
        }
        for (const auto& [pair, n_xy] : shared) {
            out.push_back({net.users()[pair.first].id, net.users()[pair.second].id,
                           Strength{n_xy, denom[pair.first]}, key, from_first});
        }
    };
    orient(it_a->second, it_b->second, true);
    orient(it_b->second, it_a->second, false);
}

}   // namespace

SocialNetwork build_sn(const PreSocialNetwork& net, const std::vector<LayerKey>& selection,
                       SnModel model, const RoleNaming& naming) {
    if (selection.empty()) {
        throw std::invalid_argument("layer selection must not be empty");
    }
    std::vector<LayerKey> available = enumerate_layers(net, naming);
    std::set<LayerKey> known(available.begin(), available.end());
    std::set<LayerKey> wanted;
    for (const LayerKey& key : selection) {
        LayerKey canonical = LayerKey::make(key.role_a, key.role_b);
        if (!known.contains(canonical)) {
            throw UnknownLayer("layer not present in this network: " + canonical.label());
        }
        wanted.insert(canonical);
    }

    RoleObjects index = build_role_objects(net, naming, nullptr);
    SocialNetwork sn;
    sn.model = model;
    for (const LayerKey& key : wanted) {
        if (key.equal_roles()) {
            emit_equal_layer(net, index, key, sn.edges);
        } else {
            emit_diff_layer(net, index, key, sn.edges);
        }
    }
    std::sort(sn.edges.begin(), sn.edges.end(), edge_less);
    return sn;
}

// --- time windows ---------------------------------------------------------

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) {
        throw std::overflow_error("rational out of 64-bit range");
    }
    Rational r;   // members set directly, the (n, d) constructor would recurse
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
}

}   // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    Rational r = from128(n, d);
    num = r.num;
    den = r.den;
}

Rational Rational::operator+(const Rational& o) const {
    return from128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                   static_cast<__int128>(den) * o.den);
}

Rational Rational::operator*(std::int64_t k) const {
    return from128(static_cast<__int128>(num) * k, den);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    __int128 lhs = static_cast<__int128>(num) * o.den;
    __int128 rhs = static_cast<__int128>(o.num) * den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

bool Window::contains(Timestamp t) const {
    Rational rt{t};
    if (rt < lo) return false;
    return closed_hi ? rt <= hi : rt < hi;
}

TimeWindowSpec TimeWindowSpec::sliding(Rational t_l, Rational t_i, std::vector<double> weights) {
    TimeWindowSpec spec;
    spec.mode = Mode::Sliding;
    spec.window_length = t_l;
    spec.interval = t_i;
    spec.weights = std::move(weights);
    return spec;
}

TimeWindowSpec TimeWindowSpec::equal_periods(int k, std::vector<double> weights) {
    TimeWindowSpec spec;
    spec.mode = Mode::EqualPeriods;
    spec.periods = k;
    spec.weights = std::move(weights);
    return spec;
}

std::vector<Window> make_windows(const TimeWindowSpec& spec, TimeRange range) {
    if (range.end < range.start) {
        throw UncoverableRange("observation range ends before it starts");
    }
    constexpr std::int64_t max_windows = 1'000'000;
    std::vector<Window> out;

    if (spec.mode == TimeWindowSpec::Mode::Sliding) {
        const Rational zero{0};
        if (!(spec.window_length > zero) || !(spec.interval > zero)) {
            throw UncoverableRange("window length and interval must be positive");
        }
        if (spec.interval > spec.window_length) {
            throw UncoverableRange("interval exceeds window length, the range would have gaps");
        }
        for (std::int64_t i = 0;; ++i) {
            if (i > max_windows) {
                throw std::invalid_argument("window spec produces too many windows");
            }
            Rational lo = Rational{range.start} + spec.interval * i;
            Rational hi = lo + spec.window_length;
            bool last = !(hi < Rational{range.end});
            if (last && Rational{range.end} < hi) hi = Rational{range.end};
            out.push_back(Window{lo, hi, last});
            if (last) break;
        }
        return out;
    }

    const int k = spec.periods;
    if (k < 1) {
        throw std::invalid_argument("equal periods require k >= 1");
    }
    const Rational step{range.length(), k};
    for (int i = 0; i < k; ++i) {
        Rational lo = Rational{range.start} + step * i;
        Rational hi = lo + step;
        bool last = i == k - 1;
        if (last && Rational{range.end} < hi) hi = Rational{range.end};
        out.push_back(Window{lo, hi, last});
    }
    return out;
}

std::vector<double> window_weights(const TimeWindowSpec& spec, std::size_t window_count) {
    if (!spec.weights.empty()) {
        if (spec.weights.size() != window_count) {
            throw std::invalid_argument("weight count does not match window count");
        }
        double sum = 0.0;
        for (double w : spec.weights) {
            if (w < 0.0) throw std::invalid_argument("window weights must be non-negative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("window weights must sum to 1");
        }
        return spec.weights;
    }
    std::vector<double> weights(window_count);
    const double denom = static_cast<double>(window_count) * (window_count + 1) / 2.0;
    for (std::size_t i = 0; i < window_count; ++i) {
        weights[i] = static_cast<double>(i + 1) / denom;
    }
    return weights;
}

std::optional<double> windowed_strength(const PreSocialNetwork& net, const std::string& x,
                                        const std::string& y, const RolePairQuery& query,
                                        const TimeWindowSpec& spec, const RoleNaming& naming) {
    std::vector<Window> windows = make_windows(spec, net.range());
    std::vector<double> weights = window_weights(spec, windows.size());

    bool any = false;
    double total = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        std::optional<Strength> s =
            query.equal_roles()
                ? equal_strength_impl(net, x, y, query.role_from, naming, &windows[i])
                : diff_strength_impl(net, x, y, query.role_from, query.role_to, naming,
                                     &windows[i]);
        if (s) {
            any = true;
            total += weights[i] * s->value();
        }
    }
    if (!any) return std::nullopt;
    return total;
}

}   // namespace mlsn
