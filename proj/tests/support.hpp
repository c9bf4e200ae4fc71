#pragma once

// Fixtures, random instance generators and brute-force oracles shared by the
// unit and acceptance suites. The oracles deliberately avoid the library's
// graph, region and power-control code paths.

#include "tinpc/tinpc.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace tinpc::test {

inline Rational q(const char* s) { return parse_rational(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(q(x));
    return out;
}

inline GdofTuple gd(std::initializer_list<const char*> xs) { return GdofTuple(qs(xs)); }
inline PowerExponents px(std::initializer_list<const char*> xs) { return PowerExponents(qs(xs)); }

inline Matrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    Matrix m;
    for (auto r : rows) m.push_back(qs(r));
    return m;
}

inline RegularChannel ch_a() { return RegularChannel(mat({{"2", "0.8", "0.4"}, {"1.2", "2", "0.6"}, {"0.4", "0.2", "1"}})); }
inline RegularChannel ch_c() { return RegularChannel(mat({{"2", "0.4", "1"}, {"0.5", "1", "0.5"}, {"0.4", "0.5", "1.5"}})); }

inline CompoundChannel ch_b() {
    return CompoundChannel(2, {StateSet{qs({"1", "0.5"}), qs({"0.8", "0.2"})}, StateSet{qs({"0.5", "1"})}});
}

inline RegularChannel ch_sym4() {
    Matrix m(4, std::vector<Rational>(4, Rational(1)));
    for (std::size_t k = 0; k < 4; ++k) m[k][k] = 2;
    return RegularChannel(m);
}

/// Counterpart is TIN-optimal, the compound channel itself is not.
inline CompoundChannel one_way_fixture() {
    return CompoundChannel(2, {StateSet{qs({"1", "0.2"}), qs({"3", "2"})}, StateSet{qs({"0.3", "1"})}});
}

// ---------------------------------------------------------------------------
// Random instances on a 0.1 grid

struct Random {
    std::mt19937_64 rng;
    explicit Random(std::uint64_t seed) : rng(seed) {}

    std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

    Rational tenths(std::size_t lo, std::size_t hi) { return Rational(static_cast<long>(uniform(lo, hi)), 10); }

    /// Direct links in [lo_direct, 2.5], cross links in [0, cross_max].
    CompoundChannel channel(std::size_t K, std::size_t max_states, std::size_t lo_direct = 5,
                            std::size_t cross_max = 15) {
        std::vector<StateSet> rx(K);
        for (std::size_t k = 0; k < K; ++k) {
            std::size_t L = uniform(1, max_states);
            for (std::size_t l = 0; l < L; ++l) {
                StrengthVector s(K);
                for (std::size_t j = 0; j < K; ++j) s[j] = j == k ? tenths(lo_direct, 25) : tenths(0, cross_max);
                rx[k].push_back(std::move(s));
            }
        }
        return CompoundChannel(K, std::move(rx));
    }

    /// Targets on the 0.1 grid, each at most the user's weakest direct link,
    /// scaled down by a random factor so that a fair share is feasible.
    GdofTuple target(const CompoundChannel& ch, bool allow_zero = false) {
        const std::size_t scale = uniform(3, 10);
        std::vector<Rational> d;
        for (std::size_t k = 0; k < ch.users(); ++k) {
            Rational weakest = ch.strength(k, 0, k);
            for (std::size_t l = 0; l < ch.state_count(k); ++l) weakest = std::min(weakest, ch.strength(k, l, k));
            const auto tenths_of_direct = static_cast<std::size_t>(boost::multiprecision::numerator(Rational(weakest * 10)));
            d.push_back(tenths(allow_zero ? 0 : 1, std::max<std::size_t>(tenths_of_direct * scale / 10, 1)));
        }
        return GdofTuple(d);
    }

    PowerExponents exponents(std::size_t K, std::size_t depth = 30) {
        std::vector<Rational> r;
        for (std::size_t k = 0; k < K; ++k) r.push_back(-tenths(0, depth));
        return PowerExponents(r);
    }
};

// ---------------------------------------------------------------------------
// Oracles

/// Edge length of the full potential graph written straight from the
/// definition. Vertices are (user, state) pairs; user == K denotes u.
inline Rational literal_edge(const CompoundChannel& ch, const GdofTuple& d, std::size_t k, std::size_t l, std::size_t j) {
    const std::size_t K = ch.users();
    if (k == K) return 0;
    if (j == K) return ch.strength(k, l, k) - d[k];
    if (j == k) return 0;
    return ch.strength(k, l, k) - ch.strength(k, l, j) - d[k];
}

struct PathEnumeration {
    bool negative_cycle = false;
    std::vector<Rational> l_dst;                  // per user, min over states and simple paths from u
    std::vector<std::vector<Rational>> state_dst;  // per user and state
};

/// Exhaustive DFS over simple cycles and simple paths from u of the full
/// graph. Exponential; meant for graphs with at most eight vertices.
inline PathEnumeration enumerate_paths(const CompoundChannel& ch, const GdofTuple& d) {
    const std::size_t K = ch.users();
    std::vector<std::pair<std::size_t, std::size_t>> vx;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < ch.state_count(k); ++l) vx.emplace_back(k, l);
    vx.emplace_back(K, 0);
    const std::size_t n = vx.size();
    const std::size_t u = n - 1;
    auto w = [&](std::size_t a, std::size_t b) { return literal_edge(ch, d, vx[a].first, vx[a].second, vx[b].first); };

    PathEnumeration out;
    std::vector<bool> on(n, false);

    // Simple cycles, each rooted at its smallest vertex.
    std::function<void(std::size_t, std::size_t, const Rational&)> cycles = [&](std::size_t root, std::size_t v,
                                                                              const Rational& len) {
        for (std::size_t x = root; x < n; ++x) {
            if (x == root) {
                if (v != root && len + w(v, root) < 0) out.negative_cycle = true;
                continue;
            }
            if (on[x]) continue;
            on[x] = true;
            cycles(root, x, len + w(v, x));
            on[x] = false;
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        on.assign(n, false);
        on[s] = true;
        cycles(s, s, Rational(0));
    }
    if (out.negative_cycle) return out;

    std::vector<std::optional<Rational>> best(n);
    std::function<void(std::size_t, const Rational&)> paths = [&](std::size_t v, const Rational& len) {
        if (v != u && (!best[v] || len < *best[v])) best[v] = len;
        for (std::size_t x = 0; x < n; ++x) {
            if (on[x]) continue;
            on[x] = true;
            paths(x, len + w(v, x));
            on[x] = false;
        }
    };
    on.assign(n, false);
    on[u] = true;
    paths(u, Rational(0));
    out.state_dst.resize(K);
    for (std::size_t v = 0; v < u; ++v) out.state_dst[vx[v].first].push_back(*best[v]);
    for (const auto& per_state : out.state_dst) out.l_dst.push_back(*std::min_element(per_state.begin(), per_state.end()));
    return out;
}

/// Every cyclic sequence from scratch: all arrangements of all subsets,
/// canonicalised by rotating the smallest user to the front.
inline std::set<std::vector<std::size_t>> brute_cycles(std::size_t K) {
    std::set<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < K; ++i)
            if (mask >> i & 1u) s.push_back(i);
        if (s.size() < 2) continue;
        do {
            auto c = s;
            std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
            out.insert(c);
        } while (std::next_permutation(s.begin(), s.end()));
    }
    return out;
}

/// Cycle bound minimised literally over every joint choice of receiver states.
inline Rational literal_cycle_bound(const CompoundChannel& ch, const std::vector<std::size_t>& cycle) {
    std::optional<Rational> best;
    std::vector<std::size_t> st(cycle.size(), 0);
    for (;;) {
        Rational s = 0;
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            std::size_t a = cycle[j];
            std::size_t b = cycle[(j + 1) % cycle.size()];
            s += ch.strength(a, st[j], a) - ch.strength(a, st[j], b);
        }
        if (!best || s < *best) best = s;
        std::size_t i = 0;
        while (i < st.size() && ++st[i] == ch.state_count(cycle[i])) st[i++] = 0;
        if (i == st.size()) break;
    }
    return *best;
}

/// Polyhedral membership by brute force over a power grid: some allocation on
/// the grid keeps every state's polyhedral GDoF at or above the target.
/// Grid values are integers in units of `step`; strengths must lie on it.
class PowerGridOracle {
public:
    PowerGridOracle(const CompoundChannel& ch, long step_denominator, long floor_steps)
        : K_(ch.users()), den_(step_denominator) {
        for (std::size_t k = 0; k < K_; ++k) {
            std::vector<std::vector<long>> rows;
            for (const auto& s : ch.states(k)) {
                std::vector<long> row;
                for (const auto& a : s) row.push_back(scaled(a));
                rows.push_back(std::move(row));
            }
            alpha_.push_back(std::move(rows));
        }
        // Polyhedral GDoF tuple of every grid allocation that keeps all users nonnegative.
        std::vector<long> r(K_, 0);
        std::function<void(std::size_t)> walk = [&](std::size_t k) {
            if (k == K_) {
                const std::size_t base = achievable_.size();
                achievable_.resize(base + K_);
                for (std::size_t i = 0; i < K_; ++i) {
                    long best = std::numeric_limits<long>::max();
                    for (const auto& row : alpha_[i]) {
                        long intf = std::numeric_limits<long>::min();
                        for (std::size_t j = 0; j < K_; ++j)
                            if (j != i) intf = std::max(intf, row[j] + r[j]);
                        best = std::min(best, row[i] + r[i] - std::max(0L, intf));
                    }
                    if (best < 0) {
                        achievable_.resize(base);
                        return;
                    }
                    achievable_[base + i] = best;
                }
                return;
            }
            for (long x = 0; x >= -floor_steps; --x) {
                r[k] = x;
                walk(k + 1);
            }
        };
        walk(0);
    }

    bool member(const GdofTuple& d) const {
        std::vector<long> t;
        for (const auto& x : d) t.push_back(scaled(x));
        for (std::size_t base = 0; base < achievable_.size(); base += K_) {
            bool ok = true;
            for (std::size_t k = 0; k < K_ && ok; ++k) ok = achievable_[base + k] >= t[k];
            if (ok) return true;
        }
        return false;
    }

private:
    long scaled(const Rational& x) const {
        Rational y = x * den_;
        if (boost::multiprecision::denominator(y) != 1) throw std::invalid_argument("value off the oracle grid");
        return static_cast<long>(boost::multiprecision::numerator(y));
    }

    std::size_t K_;
    long den_;
    std::vector<std::vector<std::vector<long>>> alpha_;
    std::vector<long> achievable_;  // K_ entries per grid point
};

/// Full-region membership as a literal union over every deactivated subset.
inline bool literal_member_star(const CompoundChannel& ch, const GdofTuple& d) {
    const std::size_t K = ch.users();
    for (std::uint32_t off = 0; off < (1u << K); ++off) {
        std::vector<std::size_t> keep;
        bool ok = true;
        for (std::size_t k = 0; k < K; ++k) {
            if (off >> k & 1u) ok = ok && d[k] == 0;
            else keep.push_back(k);
        }
        if (!ok) continue;
        if (keep.empty()) return true;
        std::vector<Rational> dk;
        for (std::size_t k : keep) dk.push_back(d[k]);
        const CompoundChannel sub = subnetwork(ch, keep);
        if (member(sub, GdofTuple(dk)).member) return true;
    }
    return false;
}

/// Largest GDoF tuple reached by growing coordinates one at a time up to the
/// boundary on a 0.1 grid; used to produce Pareto-optimal targets.
inline GdofTuple grow_to_boundary(const CompoundChannel& ch, GdofTuple d, const std::vector<std::size_t>& order) {
    const RegionConstraints rc = region_constraints(ch);
    std::vector<Rational> v = d.values();
    for (std::size_t k : order) {
        std::optional<Rational> slack;
        for (const auto& ineq : rc.inequalities()) {
            if (!ineq.contains(k)) continue;
            Rational s = ineq.rhs - ineq.lhs(GdofTuple(v));
            if (!slack || s < *slack) slack = s;
        }
        v[k] += *slack;
    }
    return GdofTuple(v);
}

}  // namespace tinpc::test
