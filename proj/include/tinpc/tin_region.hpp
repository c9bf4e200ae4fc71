#pragma once

#include "tinpc/channel.hpp"
#include "tinpc/lexicographic_simplex.hpp"
#include "tinpc/potential_graph.hpp"
#include "tinpc/tuples.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinpc {

/// Largest user count for which cyclic sequences are enumerated explicitly.
/// Beyond it, feasibility should go through shortest_paths(build_reduced(...)).
inline constexpr std::size_t kMaxRegionUsers = 10;

/// Ordered cycle of distinct users (zero-based), rotated to start at its smallest index.
using CyclicSequence = std::vector<std::size_t>;

namespace detail {

inline void check_guard(std::size_t users) {
    if (users == 0) throw std::invalid_argument("need at least one user");
    if (users > kMaxRegionUsers) {
        throw std::length_error(std::to_string(users) + " users exceed the explicit-region limit of " +
                                std::to_string(kMaxRegionUsers));
    }
}

}  // namespace detail

/// Every cyclic sequence over every subset of at least two users, each once,
/// ordered by length and then lexicographically.
inline std::vector<CyclicSequence> enumerate_cycles(std::size_t users) {
    detail::check_guard(users);
    std::vector<CyclicSequence> out;
    for (std::size_t m = 2; m <= users; ++m) {
        std::vector<std::vector<std::size_t>> subsets;
        std::vector<bool> pick(users, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
        do {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < users; ++i)
                if (pick[i]) s.push_back(i);
            subsets.push_back(std::move(s));
        } while (std::prev_permutation(pick.begin(), pick.end()));

        std::vector<CyclicSequence> level;
        for (const auto& s : subsets) {
            std::vector<std::size_t> tail(s.begin() + 1, s.end());
            do {
                CyclicSequence c{s.front()};
                c.insert(c.end(), tail.begin(), tail.end());
                level.push_back(std::move(c));
            } while (std::next_permutation(tail.begin(), tail.end()));
        }
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

/// sum_{i in users} d_i <= rhs
struct Inequality {
    std::vector<std::size_t> users;  // ascending
    Rational rhs;

    bool holds(const GdofTuple& d) const { return lhs(d) <= rhs; }
    Rational lhs(const GdofTuple& d) const {
        Rational s = 0;
        for (std::size_t i : users) s += d[i];
        return s;
    }
    bool contains(std::size_t k) const { return std::find(users.begin(), users.end(), k) != users.end(); }

    friend bool operator==(const Inequality&, const Inequality&) = default;
};

struct CycleBound {
    CyclicSequence cycle;
    Rational rhs;
};

/// Explicit inequality description of the polyhedral TIN region: one bound
/// per user plus one sum bound per cyclic sequence.
struct RegionConstraints {
    std::size_t users = 0;
    std::vector<Rational> user_bounds;  // d_i <= user_bounds[i]
    std::vector<CycleBound> cycle_bounds;

    std::size_t size() const noexcept { return user_bounds.size() + cycle_bounds.size(); }

    /// One inequality per distinct user set, keeping the tightest bound;
    /// ordered by set size, then lexicographically.
    std::vector<Inequality> inequalities() const {
        std::map<std::vector<std::size_t>, Rational> tightest;
        for (std::size_t i = 0; i < user_bounds.size(); ++i) tightest.emplace(std::vector<std::size_t>{i}, user_bounds[i]);
        for (const auto& cb : cycle_bounds) {
            std::vector<std::size_t> key = cb.cycle;
            std::sort(key.begin(), key.end());
            auto [it, inserted] = tightest.emplace(key, cb.rhs);
            if (!inserted && cb.rhs < it->second) it->second = cb.rhs;
        }
        std::vector<Inequality> out;
        for (auto& [key, rhs] : tightest) out.push_back({key, rhs});
        std::stable_sort(out.begin(), out.end(),
                         [](const Inequality& a, const Inequality& b) { return a.users.size() < b.users.size(); });
        return out;
    }

    /// Some right-hand side is negative, so not even the origin is feasible.
    bool empty() const {
        for (const auto& b : user_bounds)
            if (b < 0) return true;
        for (const auto& cb : cycle_bounds)
            if (cb.rhs < 0) return true;
        return false;
    }
};

/// Builds the region from the regular counterpart, where the minimum over
/// state combinations of each cycle sum separates into per-term minima.
inline RegionConstraints region_constraints(const CompoundChannel& ch) {
    detail::check_guard(ch.users());
    const RegularChannel bar = regular_counterpart(ch);
    RegionConstraints rc;
    rc.users = ch.users();
    for (std::size_t i = 0; i < ch.users(); ++i) rc.user_bounds.push_back(bar.alpha(i, i));
    for (auto& cycle : enumerate_cycles(ch.users())) {
        Rational rhs = 0;
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            std::size_t a = cycle[j];
            std::size_t b = cycle[(j + 1) % cycle.size()];
            rhs += bar.alpha(a, a) - bar.alpha(a, b);
        }
        rc.cycle_bounds.push_back({std::move(cycle), rhs});
    }
    return rc;
}

struct Membership {
    bool member = false;
    std::optional<Inequality> violated;
};

inline Membership member(const RegionConstraints& rc, const GdofTuple& d) {
    if (d.size() != rc.users) throw std::invalid_argument("target dimension does not match the channel");
    for (auto& ineq : rc.inequalities()) {
        if (!ineq.holds(d)) return {false, std::move(ineq)};
    }
    return {true, std::nullopt};
}

/// Whether d lies in the polyhedral TIN region; on failure, one violated inequality.
inline Membership member(const CompoundChannel& ch, const GdofTuple& d) {
    detail::check_target(ch, d);
    return member(region_constraints(ch), d);
}

/// Membership in the full TIN region, the union over deactivated user sets S
/// (with d_i = 0 on S) of the polyhedral regions of the remaining
/// subnetworks. A subnetwork's inequalities are exactly those of the full
/// channel whose users avoid S, so switching off every zero-target user is
/// the most permissive choice and the only one that needs checking.
inline bool member_star(const CompoundChannel& ch, const GdofTuple& d) {
    detail::check_target(ch, d);
    const RegionConstraints rc = region_constraints(ch);
    for (const auto& ineq : rc.inequalities()) {
        bool touches_silent = std::any_of(ineq.users.begin(), ineq.users.end(), [&](std::size_t i) { return d[i] == 0; });
        if (!touches_silent && !ineq.holds(d)) return false;
    }
    return true;
}

/// Pareto optimality within the polyhedral region: every coordinate sits on
/// a tight inequality, so none can grow alone.
inline bool pareto(const CompoundChannel& ch, const GdofTuple& d) {
    const RegionConstraints rc = region_constraints(ch);
    if (!member(rc, d).member) throw std::invalid_argument("pareto: target is not in the polyhedral TIN region");
    const auto ineqs = rc.inequalities();
    for (std::size_t k = 0; k < d.size(); ++k) {
        bool blocked = std::any_of(ineqs.begin(), ineqs.end(),
                                   [&](const Inequality& q) { return q.contains(k) && q.lhs(d) == q.rhs; });
        if (!blocked) return false;
    }
    return true;
}

struct SumGdof {
    Rational value;
    GdofTuple maximizer;  // lexicographically greatest optimal vertex
};

/// Maximum sum-GDoF over the polyhedral region; nullopt when the region is empty.
inline std::optional<SumGdof> sum_gdof(const CompoundChannel& ch) {
    const RegionConstraints rc = region_constraints(ch);
    if (rc.empty()) return std::nullopt;
    const std::size_t K = ch.users();
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& q : rc.inequalities()) {
        std::vector<Rational> row(K, Rational(0));
        for (std::size_t i : q.users) row[i] = 1;
        A.push_back(std::move(row));
        b.push_back(q.rhs);
    }
    std::vector<std::vector<Rational>> objectives{std::vector<Rational>(K, Rational(1))};
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<Rational> e(K, Rational(0));
        e[k] = 1;
        objectives.push_back(std::move(e));
    }
    auto sol = maximize_lexicographic(A, b, objectives);
    if (!sol) throw std::logic_error("sum_gdof: region reported unbounded");
    return SumGdof{sol->objective.front(), GdofTuple(sol->x)};
}

/// Largest d with (d, ..., d) in the polyhedral region; nullopt when the region is empty.
inline std::optional<Rational> symmetric_gdof(const CompoundChannel& ch) {
    const RegionConstraints rc = region_constraints(ch);
    if (rc.empty()) return std::nullopt;
    std::optional<Rational> best;
    for (const auto& q : rc.inequalities()) {
        Rational v = q.rhs / static_cast<long>(q.users.size());
        if (!best || v < *best) best = v;
    }
    return best;
}

/// "c1*d1 + ... + cK*dK <= rhs", every coefficient spelled out.
inline std::string format_inequality(const Inequality& q, std::size_t users) {
    std::string s;
    for (std::size_t k = 0; k < users; ++k) {
        if (k) s += " + ";
        s += (q.contains(k) ? "1*d" : "0*d") + std::to_string(k + 1);
    }
    return s + " <= " + to_string(q.rhs);
}

inline void write_constraints(std::ostream& os, const RegionConstraints& rc) {
    for (const auto& q : rc.inequalities()) os << format_inequality(q, rc.users) << '\n';
}

}  // namespace tinpc
