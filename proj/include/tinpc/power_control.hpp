#pragma once

#include "tinpc/channel.hpp"
#include "tinpc/potential_graph.hpp"
#include "tinpc/tuples.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinpc {

/// The target is outside the polyhedral TIN region; carries a negative
/// circuit of the reduced potential graph as evidence.
class InfeasibleTarget : public std::domain_error {
public:
    InfeasibleTarget(std::vector<std::string> cycle, Rational length)
        : std::domain_error("target GDoF tuple is infeasible: negative circuit " + render(cycle) + " of length " +
                            to_string(length)),
          cycle_(std::move(cycle)), length_(std::move(length)) {}

    const std::vector<std::string>& cycle() const noexcept { return cycle_; }
    const Rational& length() const noexcept { return length_; }

private:
    static std::string render(const std::vector<std::string>& c) {
        std::string s;
        for (const auto& v : c) s += v + " -> ";
        return c.empty() ? s : s + c.front();
    }

    std::vector<std::string> cycle_;
    Rational length_;
};

/// A user's polyhedral rate expression went negative.
class PolyhedralViolation : public std::domain_error {
public:
    PolyhedralViolation(std::size_t user, std::size_t state, Rational value)
        : std::domain_error("user " + std::to_string(user + 1) + " state " + std::to_string(state + 1) +
                            " has negative polyhedral GDoF " + to_string(value)),
          user_(user), state_(state), value_(std::move(value)) {}

    std::size_t user() const noexcept { return user_; }
    std::size_t state() const noexcept { return state_; }
    const Rational& value() const noexcept { return value_; }

private:
    std::size_t user_;
    std::size_t state_;
    Rational value_;
};

namespace detail {

inline void check_exponents(const CompoundChannel& ch, const PowerExponents& r) {
    if (r.size() != ch.users()) throw std::invalid_argument("power exponent vector does not match the channel");
}

inline Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

/// (max_{j != k} alpha_kj^[l] + r_j)^+
inline Rational interference_level(const CompoundChannel& ch, std::size_t k, std::size_t l,
                                   const std::vector<Rational>& r) {
    Rational worst = 0;
    for (std::size_t j = 0; j < ch.users(); ++j)
        if (j != k) worst = std::max<Rational>(worst, ch.strength(k, l, j) + r[j]);
    return worst;
}

/// min over states of alpha_kk + r_k - interference, paired with the minimizing state.
inline std::pair<Rational, std::size_t> worst_state_margin(const CompoundChannel& ch, std::size_t k,
                                                            const std::vector<Rational>& r) {
    std::optional<Rational> best;
    std::size_t arg = 0;
    for (std::size_t l = 0; l < ch.state_count(k); ++l) {
        Rational v = ch.strength(k, l, k) + r[k] - interference_level(ch, k, l, r);
        if (!best || v < *best) {
            best = v;
            arg = l;
        }
    }
    return {*best, arg};
}

inline void check_positive_target(const GdofTuple& d) {
    for (std::size_t k = 0; k < d.size(); ++k)
        if (d[k] == 0) throw std::invalid_argument("user " + std::to_string(k + 1) + " has a zero GDoF target; remove it first");
}

}  // namespace detail

/// GDoF per user under TIN, each user limited by its worst state.
inline GdofTuple achieved_gdof(const CompoundChannel& ch, const PowerExponents& r) {
    detail::check_exponents(ch, r);
    std::vector<Rational> d;
    for (std::size_t k = 0; k < ch.users(); ++k)
        d.push_back(detail::positive_part(detail::worst_state_margin(ch, k, r.values()).first));
    return GdofTuple(std::move(d));
}

/// Same expression without the outer max{0, .}; throws if some user's value is negative.
inline GdofTuple achieved_gdof_polyhedral(const CompoundChannel& ch, const PowerExponents& r) {
    detail::check_exponents(ch, r);
    std::vector<Rational> d;
    for (std::size_t k = 0; k < ch.users(); ++k) {
        auto [v, l] = detail::worst_state_margin(ch, k, r.values());
        if (v < 0) throw PolyhedralViolation(k, l, v);
        d.push_back(v);
    }
    return GdofTuple(std::move(d));
}

/// Shortest u -> v_k distances on the reduced potential graph. These are a
/// power allocation whose achieved GDoF dominates d.
inline PowerExponents shortest_path_allocation(const CompoundChannel& ch, const GdofTuple& d) {
    const PotentialGraph g = build_reduced(ch, d);
    const ShortestPathResult sp = shortest_paths(g);
    if (!sp.feasible) {
        std::vector<std::string> labels;
        for (std::size_t v : sp.negative_cycle) labels.push_back(g.label(v));
        throw InfeasibleTarget(std::move(labels), sp.cycle_length);
    }
    return PowerExponents(sp.l_dst);
}

/// Smallest exponent with which user k still reaches d_k when everyone else keeps r.
inline Rational minimum_exponent(const CompoundChannel& ch, const std::vector<Rational>& r, const GdofTuple& d,
                                 std::size_t k) {
    std::optional<Rational> worst;
    for (std::size_t l = 0; l < ch.state_count(k); ++l) {
        Rational v = ch.strength(k, l, k) - detail::interference_level(ch, k, l, r);
        if (!worst || v < *worst) worst = v;
    }
    return d[k] - *worst;
}

/// No single user can lower its exponent and keep its target.
inline bool locally_optimal(const CompoundChannel& ch, const PowerExponents& r, const GdofTuple& d) {
    detail::check_exponents(ch, r);
    detail::check_target(ch, d);
    if (!dominates(achieved_gdof(ch, r).values(), d.values())) {
        throw std::invalid_argument("locally_optimal: allocation does not achieve the target");
    }
    for (std::size_t k = 0; k < ch.users(); ++k)
        if (r[k] != minimum_exponent(ch, r.values(), d, k)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Synchronous fixed-point iteration

struct GsfpcTrace {
    std::vector<PowerExponents> iterates;  // r(0), r(1), ..., last computed
    bool converged = false;
    std::size_t iterations = 0;  // updates until the fixed point was reached
};

struct GsfpcResult {
    PowerExponents exponents;
    GsfpcTrace trace;
};

inline constexpr std::size_t kGsfpcIterationCap = 10000;

/// Starts from the shortest-path allocation and applies
/// r_k <- d_k - min_l {alpha_kk - (max_j alpha_kj + r_j)^+} to all users at
/// once until nothing changes. The iterates never increase. If the cap is
/// reached, converged is false and exponents is the last iterate, which is
/// not a fixed point.
inline GsfpcResult gsfpc(const CompoundChannel& ch, const GdofTuple& d, std::size_t cap = kGsfpcIterationCap) {
    detail::check_target(ch, d);
    detail::check_positive_target(d);
    GsfpcResult res;
    std::vector<Rational> r = shortest_path_allocation(ch, d).values();
    res.trace.iterates.emplace_back(r);
    for (std::size_t n = 0; n < cap; ++n) {
        std::vector<Rational> next;
        for (std::size_t k = 0; k < ch.users(); ++k) next.push_back(minimum_exponent(ch, r, d, k));
        if (next == r) {
            res.trace.converged = true;
            res.trace.iterations = n;
            break;
        }
        r = std::move(next);
        res.trace.iterates.emplace_back(r);
    }
    if (!res.trace.converged) res.trace.iterations = cap;
    res.exponents = PowerExponents(r);
    return res;
}

// ---------------------------------------------------------------------------
// Globally optimal power control

struct GgpcUpdate {
    Rational delta;
    std::vector<std::size_t> fixed;  // users frozen by this update, ascending
    PowerExponents exponents;        // allocation after the update
    GdofTuple achieved;              // achieved GDoF after the update
};

struct GgpcTrace {
    PowerExponents initial;
    std::vector<GgpcUpdate> updates;
};

struct GgpcResult {
    PowerExponents exponents;
    GgpcTrace trace;
};

/// Starting from the shortest-path allocation, all active users lower their
/// power together by the largest common step that keeps every active user
/// on target, given the fixed interference of already frozen users. Users
/// whose margin hits zero freeze, all tied users at once. At most K updates.
/// The margin takes the worst state of each user, which for single-state
/// receivers is the plain regular-channel update.
inline GgpcResult ggpc_compound(const CompoundChannel& ch, const GdofTuple& d) {
    detail::check_target(ch, d);
    detail::check_positive_target(d);
    const std::size_t K = ch.users();
    std::vector<Rational> r = shortest_path_allocation(ch, d).values();

    GgpcResult res;
    res.trace.initial = PowerExponents(r);
    std::vector<bool> frozen(K, false);
    std::size_t remaining = K;
    while (remaining > 0) {
        std::vector<std::optional<Rational>> margin(K);
        std::optional<Rational> delta;
        for (std::size_t i = 0; i < K; ++i) {
            if (frozen[i]) continue;
            std::optional<Rational> worst;
            for (std::size_t l = 0; l < ch.state_count(i); ++l) {
                Rational fixed_interference = 0;
                for (std::size_t m = 0; m < K; ++m)
                    if (frozen[m] && m != i)
                        fixed_interference = std::max<Rational>(fixed_interference, ch.strength(i, l, m) + r[m]);
                Rational v = r[i] + ch.strength(i, l, i) - d[i] - fixed_interference;
                if (!worst || v < *worst) worst = v;
            }
            margin[i] = worst;
            if (!delta || *worst < *delta) delta = worst;
        }

        GgpcUpdate up;
        up.delta = *delta;
        for (std::size_t i = 0; i < K; ++i) {
            if (frozen[i]) continue;
            r[i] -= *delta;
            if (*margin[i] == *delta) up.fixed.push_back(i);
        }
        for (std::size_t i : up.fixed) frozen[i] = true;
        remaining -= up.fixed.size();
        up.exponents = PowerExponents(r);
        up.achieved = achieved_gdof(ch, up.exponents);
        res.trace.updates.push_back(std::move(up));
    }
    res.exponents = PowerExponents(r);
    return res;
}

inline GgpcResult ggpc(const RegularChannel& ch, const GdofTuple& d) { return ggpc_compound(ch.channel(), d); }

// ---------------------------------------------------------------------------
// Brute-force verification

struct GridSearch {
    std::size_t points = 0;
    std::size_t achieving = 0;
    /// Componentwise minimum over achieving grid allocations.
    std::optional<std::vector<Rational>> minimum;
};

inline constexpr std::size_t kMaxGridPoints = 20'000'000;

/// Scans every allocation on the grid {0, -step, -2 step, ...} >= floor in
/// each coordinate and collects those whose TIN GDoF dominates d. Runs in
/// scaled 64-bit integers, independent of the graph and power-control code.
inline GridSearch grid_search(const CompoundChannel& ch, const GdofTuple& d, const Rational& step,
                              const Rational& floor) {
    detail::check_target(ch, d);
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    if (floor >= 0) throw std::invalid_argument("grid floor must be negative");
    const std::size_t K = ch.users();

    Integer scale = boost::multiprecision::denominator(step);
    auto absorb = [&](const Rational& x) { scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(x)); };
    absorb(floor);
    for (std::size_t k = 0; k < K; ++k) {
        absorb(d[k]);
        for (const auto& s : ch.states(k))
            for (const auto& a : s) absorb(a);
    }
    const Integer limit = Integer(1) << 40;
    auto to_int = [&](const Rational& x) -> std::int64_t {
        Rational scaled = x * Rational(scale);
        Integer n = boost::multiprecision::numerator(scaled);
        if (n >= limit || n <= -limit) throw std::length_error("grid search: values too large after scaling");
        return n.convert_to<std::int64_t>();
    };

    const std::int64_t istep = to_int(step);
    const std::int64_t ifloor = to_int(floor);
    const std::size_t levels = static_cast<std::size_t>(-ifloor / istep) + 1;
    double total = 1;
    for (std::size_t k = 0; k < K; ++k) total *= static_cast<double>(levels);
    if (total > static_cast<double>(kMaxGridPoints)) throw std::length_error("grid search space too large");

    std::vector<std::int64_t> target;
    for (std::size_t k = 0; k < K; ++k) target.push_back(to_int(d[k]));
    std::vector<std::vector<std::vector<std::int64_t>>> alpha(K);
    for (std::size_t k = 0; k < K; ++k)
        for (const auto& s : ch.states(k)) {
            std::vector<std::int64_t> row;
            for (const auto& a : s) row.push_back(to_int(a));
            alpha[k].push_back(std::move(row));
        }

    GridSearch out;
    std::vector<std::size_t> idx(K, 0);
    std::vector<std::int64_t> r(K, 0);
    std::vector<std::int64_t> best(K, std::numeric_limits<std::int64_t>::max());
    for (;;) {
        ++out.points;
        bool ok = true;
        for (std::size_t k = 0; k < K && ok; ++k) {
            for (const auto& row : alpha[k]) {
                std::int64_t interference = 0;
                for (std::size_t j = 0; j < K; ++j)
                    if (j != k) interference = std::max(interference, row[j] + r[j]);
                std::int64_t g = std::max<std::int64_t>(0, row[k] + r[k] - interference);
                if (g < target[k]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            ++out.achieving;
            for (std::size_t k = 0; k < K; ++k) best[k] = std::min(best[k], r[k]);
        }
        std::size_t k = 0;
        while (k < K && ++idx[k] == levels) {
            idx[k] = 0;
            r[k] = 0;
            ++k;
        }
        if (k == K) break;
        r[k] = -static_cast<std::int64_t>(idx[k]) * istep;
    }
    if (out.achieving > 0) {
        std::vector<Rational> m;
        for (std::int64_t v : best) m.push_back(Rational(v) / Rational(scale));
        out.minimum = std::move(m);
    }
    return out;
}

/// True iff no grid allocation achieving d undercuts r in any coordinate.
inline bool oracle_globally_optimal(const CompoundChannel& ch, const PowerExponents& r, const GdofTuple& d,
                                    const Rational& step, const Rational& floor) {
    detail::check_exponents(ch, r);
    const GridSearch g = grid_search(ch, d, step, floor);
    if (!g.minimum) return true;
    for (std::size_t k = 0; k < r.size(); ++k)
        if ((*g.minimum)[k] < r[k]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Front door with zero-target handling

enum class Algorithm { shortest_path, gsfpc, ggpc, ggpc_compound };

inline const char* name(Algorithm a) {
    switch (a) {
        case Algorithm::shortest_path: return "sp";
        case Algorithm::gsfpc: return "gsfpc";
        case Algorithm::ggpc: return "ggpc";
        case Algorithm::ggpc_compound: return "ggpc-c";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    for (Algorithm a : {Algorithm::shortest_path, Algorithm::gsfpc, Algorithm::ggpc, Algorithm::ggpc_compound})
        if (s == name(a)) return a;
    return std::nullopt;
}

struct PowerSolution {
    Algorithm algorithm = Algorithm::ggpc;
    Allocation exponents;             // one entry per user, empty for silent users
    std::vector<std::size_t> active;  // users with positive targets; traces index into this list
    bool via_counterpart = false;     // ggpc on a compound channel ran on the regular counterpart
    std::optional<GgpcTrace> ggpc_trace;
    std::optional<GsfpcTrace> gsfpc_trace;
};

/// Users with a zero target are switched off and removed, the algorithm runs
/// on the remaining subnetwork, and their exponents come back empty.
inline PowerSolution solve_power(const CompoundChannel& ch, const GdofTuple& d, Algorithm alg) {
    detail::check_target(ch, d);
    PowerSolution sol;
    sol.algorithm = alg;
    sol.exponents.assign(ch.users(), std::nullopt);
    std::vector<Rational> sub_target;
    for (std::size_t k = 0; k < ch.users(); ++k) {
        if (d[k] > 0) {
            sol.active.push_back(k);
            sub_target.push_back(d[k]);
        }
    }
    if (sol.active.empty()) return sol;

    const CompoundChannel sub = subnetwork(ch, sol.active);
    const GdofTuple dd(sub_target);
    PowerExponents r;
    switch (alg) {
        case Algorithm::shortest_path:
            r = shortest_path_allocation(sub, dd);
            break;
        case Algorithm::gsfpc: {
            auto res = gsfpc(sub, dd);
            if (!res.trace.converged) {
                throw std::runtime_error("gsfpc did not reach a fixed point within " + std::to_string(kGsfpcIterationCap) +
                                         " iterations");
            }
            r = res.exponents;
            sol.gsfpc_trace = std::move(res.trace);
            break;
        }
        case Algorithm::ggpc: {
            sol.via_counterpart = !sub.is_regular();
            auto res = sub.is_regular() ? ggpc(RegularChannel(sub), dd) : ggpc(regular_counterpart(sub), dd);
            r = res.exponents;
            sol.ggpc_trace = std::move(res.trace);
            break;
        }
        case Algorithm::ggpc_compound: {
            auto res = ggpc_compound(sub, dd);
            r = res.exponents;
            sol.ggpc_trace = std::move(res.trace);
            break;
        }
    }
    for (std::size_t i = 0; i < sol.active.size(); ++i) sol.exponents[sol.active[i]] = r[i];
    return sol;
}

}  // namespace tinpc
