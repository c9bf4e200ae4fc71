#pragma once

#include "tinpc/tinpc.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinpc::cli {

using nlohmann::json;

enum Exit : int { kOk = 0, kNegative = 1, kInput = 2, kCrossCheck = 3 };

/// The inequality route and the graph route disagreed on feasibility.
class CrossCheckFailure : public std::logic_error {
    using std::logic_error::logic_error;
};

/// Bad command-line values (target length, P list, exponents).
class UsageError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string channel;
    std::string target;
    std::string alg;
    std::string powers;
    std::string exponents;
    bool json = false;
    bool debug_graph = false;
};

struct Outcome {
    json report;
    int code = kOk;
};

namespace detail {

inline json users_json(const std::vector<std::size_t>& users) {
    json a = json::array();
    for (std::size_t u : users) a.push_back(u + 1);
    return a;
}

inline std::string join_json(const json& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ',';
        if (a[i].is_null()) s += "off";
        else if (a[i].is_string()) s += a[i].get<std::string>();
        else s += a[i].dump();
    }
    return s;
}

inline json rounded(double x) { return std::stod(format_sig10(x)); }

inline std::vector<GdofTuple> targets(const Options& o, const ChannelFile& file) {
    std::vector<GdofTuple> out;
    if (!o.target.empty()) {
        auto d = parse_rational_list(o.target);
        if (d.size() != file.channel.users()) {
            throw UsageError("target has " + std::to_string(d.size()) + " entries, channel has " +
                             std::to_string(file.channel.users()) + " users");
        }
        out.emplace_back(std::move(d));
    } else {
        out = file.targets;
    }
    if (out.empty()) throw UsageError("no target: pass --target or add \"targets\" to the channel file");
    return out;
}

inline std::vector<double> power_list(const std::string& text) {
    if (text.empty()) throw UsageError("--P is required");
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double P = 0;
        try {
            P = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("bad P value '" + tok + "'");
        }
        if (used != tok.size()) throw UsageError("bad P value '" + tok + "'");
        if (!(P > 1)) throw UsageError("P values must exceed 1");
        out.push_back(P);
    }
    return out;
}

inline json edges_json(const PotentialGraph& g) {
    json a = json::array();
    for (const auto& e : g.edges()) a.push_back({{"src", g.label(e.from)}, {"dst", g.label(e.to)}, {"length", to_string(e.length)}});
    return a;
}

inline json inequality_json(const Inequality& q, std::size_t K, const GdofTuple& d) {
    return {{"users", users_json(q.users)},
            {"rhs", to_string(q.rhs)},
            {"lhs", to_string(q.lhs(d))},
            {"text", format_inequality(q, K)}};
}

/// Negative-circuit witness with labels naming users of the original channel.
inline json cycle_json(const PotentialGraph& g, const ShortestPathResult& sp, const std::vector<std::size_t>& users) {
    json labels = json::array();
    for (std::size_t v : sp.negative_cycle) {
        const auto& vx = g.vertices()[v];
        labels.push_back(vx.user ? "v" + std::to_string(users[*vx.user] + 1) : std::string("u"));
    }
    return {{"vertices", labels}, {"length", to_string(sp.cycle_length)}};
}

inline std::vector<std::size_t> all_users(std::size_t K) {
    std::vector<std::size_t> u(K);
    for (std::size_t k = 0; k < K; ++k) u[k] = k;
    return u;
}

/// Both feasibility routes for one target; throws CrossCheckFailure if they disagree.
inline json feasibility(const CompoundChannel& ch, const GdofTuple& d, bool debug_graph) {
    const std::size_t K = ch.users();
    json r;
    r["target"] = rationals_to_json(d.values());
    const PotentialGraph g = build_reduced(ch, d);
    const ShortestPathResult sp = shortest_paths(g);
    json routes = json::array({"reduced-graph"});
    if (K <= kMaxRegionUsers) {
        routes.push_back("inequalities");
        const Membership m = member(region_constraints(ch), d);
        if (m.member != sp.feasible) {
            throw CrossCheckFailure("feasibility routes disagree on target (" + join(d.values()) +
                                    "): inequalities say " + (m.member ? "feasible" : "infeasible") +
                                    ", potential graph says " + (sp.feasible ? "feasible" : "infeasible"));
        }
        if (m.violated) r["violated"] = inequality_json(*m.violated, K, d);
        r["feasible_with_switch_off"] = member_star(ch, d);
    }
    r["routes"] = routes;
    r["feasible"] = sp.feasible;
    if (sp.feasible) r["l_dst"] = rationals_to_json(sp.l_dst);
    else r["negative_cycle"] = cycle_json(g, sp, all_users(K));
    if (debug_graph) {
        r["graph"] = {{"reduced", edges_json(g)}, {"full", edges_json(build_full(ch, d))}};
    }
    return r;
}

inline std::string render_feasibility(const json& r) {
    std::ostringstream os;
    os << "target " << join_json(r["target"]) << ": " << (r["feasible"].get<bool>() ? "feasible" : "infeasible") << '\n';
    if (r.contains("l_dst")) os << "  l_dst " << join_json(r["l_dst"]) << '\n';
    if (r.contains("violated")) {
        os << "  violated " << r["violated"]["text"].get<std::string>() << " (lhs " << r["violated"]["lhs"].get<std::string>()
           << ")\n";
    }
    if (r.contains("negative_cycle")) {
        const auto& c = r["negative_cycle"];
        os << "  negative circuit ";
        for (const auto& v : c["vertices"]) os << v.get<std::string>() << " -> ";
        os << c["vertices"][0].get<std::string>() << " length " << c["length"].get<std::string>() << '\n';
    }
    if (r.contains("feasible_with_switch_off")) {
        os << "  feasible with switch-off " << (r["feasible_with_switch_off"].get<bool>() ? "true" : "false") << '\n';
    }
    if (r.contains("graph")) {
        for (const char* which : {"reduced", "full"}) {
            os << "  " << which << " graph edges\n";
            for (const auto& e : r["graph"][which])
                os << "    " << e["src"].get<std::string>() << ' ' << e["dst"].get<std::string>() << ' '
                   << e["length"].get<std::string>() << '\n';
        }
    }
    return os.str();
}

inline json allocation_on(const std::vector<Rational>& sub, const std::vector<std::size_t>& active, std::size_t K) {
    Allocation a(K);
    for (std::size_t i = 0; i < active.size(); ++i) a[active[i]] = sub[i];
    return allocation_to_json(a);
}

inline json gdof_on(const std::vector<Rational>& sub, const std::vector<std::size_t>& active, std::size_t K) {
    std::vector<Rational> d(K, Rational(0));
    for (std::size_t i = 0; i < active.size(); ++i) d[active[i]] = sub[i];
    return rationals_to_json(d);
}

inline std::vector<std::size_t> map_users(const std::vector<std::size_t>& sub, const std::vector<std::size_t>& active) {
    std::vector<std::size_t> out;
    for (std::size_t i : sub) out.push_back(active[i]);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline Outcome cmd_validate(const Options& o) {
    Outcome out;
    out.report["command"] = "validate";
    try {
        const ChannelFile f = load_channel_file(o.channel);
        out.report["valid"] = true;
        if (f.name) out.report["name"] = *f.name;
        out.report["K"] = f.channel.users();
        json states = json::array();
        for (std::size_t k = 0; k < f.channel.users(); ++k) states.push_back(f.channel.state_count(k));
        out.report["states"] = states;
        out.report["regular"] = f.channel.is_regular();
    } catch (const ChannelError& e) {
        static const char* kinds[] = {"no_users", "receiver_count", "empty_state_set", "dimension", "negative_strength"};
        out.report["valid"] = false;
        out.report["error"] = {{"kind", kinds[static_cast<int>(e.kind())]},
                               {"receiver", e.receiver() + 1},
                               {"state", e.state() + 1},
                               {"entry", e.entry() + 1},
                               {"message", e.what()}};
        out.code = kNegative;
    }
    return out;
}

inline std::string render_validate(const json& r) {
    std::ostringstream os;
    if (r["valid"].get<bool>()) {
        os << "valid: K=" << r["K"].dump() << ", states per receiver " << detail::join_json(r["states"])
           << (r["regular"].get<bool>() ? " (regular)" : " (compound)") << '\n';
    } else {
        os << "invalid: " << r["error"]["message"].get<std::string>() << '\n';
    }
    return os.str();
}

inline Outcome cmd_tin_check(const Options& o) {
    const ChannelFile f = load_channel_file(o.channel);
    const TinOptimality t = tin_optimal(f.channel);
    Outcome out;
    out.report = {{"command", "tin-check"}, {"tin_optimal", t.optimal}};
    if (t.witness) {
        const auto& w = *t.witness;
        out.report["witness"] = {{"user", w.user + 1},
                                 {"state", w.state + 1},
                                 {"interferer", w.interferer + 1},
                                 {"interferer_state", w.interferer_state + 1},
                                 {"victim_of", w.victim_of + 1},
                                 {"direct", to_string(w.direct)},
                                 {"caused", to_string(w.caused)},
                                 {"suffered", to_string(w.suffered)}};
        out.code = kNegative;
    }
    return out;
}

inline std::string render_tin_check(const json& r) {
    std::ostringstream os;
    os << "tin_optimal: " << (r["tin_optimal"].get<bool>() ? "true" : "false") << '\n';
    if (r.contains("witness")) {
        const auto& w = r["witness"];
        os << "witness: user " << w["user"].dump() << " state " << w["state"].dump() << ": direct "
           << w["direct"].get<std::string>() << " < caused " << w["caused"].get<std::string>() << " (at receiver "
           << w["interferer"].dump() << " state " << w["interferer_state"].dump() << ") + suffered "
           << w["suffered"].get<std::string>() << " (from transmitter " << w["victim_of"].dump() << ")\n";
    }
    return os.str();
}

inline Outcome cmd_counterpart(const Options& o, std::ostream& err) {
    const ChannelFile f = load_channel_file(o.channel);
    const RegularChannel bar = regular_counterpart(f.channel);
    for (auto [k, j] : bar.negative_cross_links()) {
        err << "warning: counterpart cross link alpha_" << k + 1 << j + 1 << " = " << to_string(bar.alpha(k, j))
            << " is negative\n";
    }
    Outcome out;
    std::optional<std::string> name;
    if (f.name) name = *f.name + " (regular counterpart)";
    out.report = channel_to_json(bar.channel(), name);
    return out;
}

inline std::string render_counterpart(const json& r) {
    std::ostringstream os;
    os << "regular counterpart (K=" << r["K"].dump() << ")\n";
    for (const auto& rx : r["receivers"]) {
        const auto& row = rx["states"][0];
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j].get<std::string>();
        os << '\n';
    }
    return os.str();
}

inline Outcome cmd_feasible(const Options& o) {
    const ChannelFile f = load_channel_file(o.channel);
    Outcome out;
    out.report = {{"command", "feasible"}, {"results", json::array()}};
    for (const auto& d : detail::targets(o, f)) {
        json r = detail::feasibility(f.channel, d, o.debug_graph);
        if (!r["feasible"].get<bool>()) out.code = kNegative;
        out.report["results"].push_back(std::move(r));
    }
    return out;
}

inline std::string render_results(const json& r, std::string (*one)(const json&)) {
    std::string s;
    for (const auto& x : r["results"]) s += one(x);
    return s;
}

inline Outcome cmd_region(const Options& o) {
    const ChannelFile f = load_channel_file(o.channel);
    const std::size_t K = f.channel.users();
    const RegionConstraints rc = region_constraints(f.channel);
    Outcome out;
    json lines = json::array();
    json ineqs = json::array();
    for (const auto& q : rc.inequalities()) {
        lines.push_back(format_inequality(q, K));
        ineqs.push_back({{"users", detail::users_json(q.users)}, {"rhs", to_string(q.rhs)}});
    }
    out.report = {{"command", "region"}, {"constraints", lines}, {"inequalities", ineqs}, {"empty", rc.empty()}};
    if (auto s = sum_gdof(f.channel)) {
        out.report["sum_gdof"] = {{"value", to_string(s->value)}, {"maximizer", rationals_to_json(s->maximizer.values())}};
    } else {
        out.report["sum_gdof"] = nullptr;
    }
    auto sym = symmetric_gdof(f.channel);
    out.report["symmetric_gdof"] = sym ? json(to_string(*sym)) : json(nullptr);
    return out;
}

inline std::string render_region(const json& r) {
    std::ostringstream os;
    for (const auto& line : r["constraints"]) os << line.get<std::string>() << '\n';
    if (r["empty"].get<bool>()) os << "# region is empty\n";
    if (!r["sum_gdof"].is_null()) {
        os << "# sum_gdof " << r["sum_gdof"]["value"].get<std::string>() << " at "
           << detail::join_json(r["sum_gdof"]["maximizer"]) << '\n';
    }
    if (!r["symmetric_gdof"].is_null()) os << "# symmetric_gdof " << r["symmetric_gdof"].get<std::string>() << '\n';
    return os.str();
}

inline Outcome cmd_pareto(const Options& o) {
    const ChannelFile f = load_channel_file(o.channel);
    const std::size_t K = f.channel.users();
    Outcome out;
    out.report = {{"command", "pareto"}, {"results", json::array()}};
    for (const auto& d : detail::targets(o, f)) {
        json r = detail::feasibility(f.channel, d, o.debug_graph);
        if (!r["feasible"].get<bool>()) {
            out.code = kNegative;
            out.report["results"].push_back(std::move(r));
            continue;
        }
        const bool p = pareto(f.channel, d);
        r["pareto"] = p;
        if (!p) {
            const auto ineqs = region_constraints(f.channel).inequalities();
            std::vector<std::size_t> free;
            for (std::size_t k = 0; k < K; ++k) {
                bool tight = false;
                for (const auto& q : ineqs) tight = tight || (q.contains(k) && q.lhs(d) == q.rhs);
                if (!tight) free.push_back(k);
            }
            r["free_users"] = detail::users_json(free);
            out.code = kNegative;
        }
        out.report["results"].push_back(std::move(r));
    }
    return out;
}

inline std::string render_pareto_one(const json& r) {
    if (!r.contains("pareto")) return detail::render_feasibility(r);
    std::string s = "target " + detail::join_json(r["target"]) + ": pareto " + (r["pareto"].get<bool>() ? "true" : "false");
    if (r.contains("free_users")) s += " (users that can still grow: " + detail::join_json(r["free_users"]) + ")";
    return s + '\n';
}

namespace detail {

/// One power-control run in original user numbering, or the infeasibility witness.
inline json power_result(const CompoundChannel& ch, const GdofTuple& d, Algorithm alg, Allocation* alloc = nullptr) {
    const std::size_t K = ch.users();
    json r;
    r["target"] = rationals_to_json(d.values());
    r["algorithm"] = name(alg);
    std::vector<std::size_t> active;
    std::vector<Rational> dsub;
    for (std::size_t k = 0; k < K; ++k)
        if (d[k] > 0) {
            active.push_back(k);
            dsub.push_back(d[k]);
        }
    r["active"] = users_json(active);
    if (active.empty()) {
        r["feasible"] = true;
        r["exponents"] = allocation_to_json(Allocation(K));
        r["achieved"] = rationals_to_json(std::vector<Rational>(K, Rational(0)));
        if (alloc) *alloc = Allocation(K);
        return r;
    }
    const CompoundChannel sub = subnetwork(ch, active);
    const GdofTuple dd(dsub);
    const PotentialGraph g = build_reduced(sub, dd);
    const ShortestPathResult sp = shortest_paths(g);
    r["feasible"] = sp.feasible;
    if (!sp.feasible) {
        r["negative_cycle"] = cycle_json(g, sp, active);
        return r;
    }
    const PowerSolution sol = solve_power(ch, d, alg);
    std::vector<Rational> rsub;
    for (std::size_t k : active) rsub.push_back(*sol.exponents[k]);
    const PowerExponents pe(rsub);
    r["exponents"] = allocation_to_json(sol.exponents);
    r["achieved"] = gdof_on(achieved_gdof(sub, pe).values(), active, K);
    r["locally_optimal"] = locally_optimal(sub, pe, dd);
    r["via_counterpart"] = sol.via_counterpart;
    if (sol.ggpc_trace) {
        json t;
        t["initial"] = allocation_on(sol.ggpc_trace->initial.values(), active, K);
        t["updates"] = json::array();
        for (const auto& u : sol.ggpc_trace->updates) {
            t["updates"].push_back({{"delta", to_string(u.delta)},
                                    {"fixed", users_json(map_users(u.fixed, active))},
                                    {"exponents", allocation_on(u.exponents.values(), active, K)},
                                    {"achieved", gdof_on(u.achieved.values(), active, K)}});
        }
        r["trace"] = t;
    }
    if (sol.gsfpc_trace) {
        json t;
        t["iterations"] = sol.gsfpc_trace->iterations;
        t["iterates"] = json::array();
        for (const auto& x : sol.gsfpc_trace->iterates) t["iterates"].push_back(allocation_on(x.values(), active, K));
        r["trace"] = t;
    }
    if (alloc) *alloc = sol.exponents;
    return r;
}

}  // namespace detail

inline Outcome cmd_power(const Options& o) {
    const ChannelFile f = load_channel_file(o.channel);
    const std::string alg_name = o.alg.empty() ? "ggpc" : o.alg;
    const auto alg = parse_algorithm(alg_name);
    if (!alg) throw UsageError("unknown algorithm '" + alg_name + "' (expected sp, gsfpc, ggpc or ggpc-c)");
    Outcome out;
    out.report = {{"command", "power"}, {"results", json::array()}};
    for (const auto& d : detail::targets(o, f)) {
        json r = detail::power_result(f.channel, d, *alg);
        if (!r["feasible"].get<bool>()) out.code = kNegative;
        out.report["results"].push_back(std::move(r));
    }
    return out;
}

inline std::string render_power_one(const json& r) {
    using detail::join_json;
    std::ostringstream os;
    os << "target " << join_json(r["target"]) << " alg " << r["algorithm"].get<std::string>();
    if (!r["feasible"].get<bool>()) {
        const auto& c = r["negative_cycle"];
        os << ": infeasible, negative circuit ";
        for (const auto& v : c["vertices"]) os << v.get<std::string>() << " -> ";
        os << c["vertices"][0].get<std::string>() << " length " << c["length"].get<std::string>() << '\n';
        return os.str();
    }
    os << '\n';
    if (r.value("via_counterpart", false)) os << "  computed on the regular counterpart\n";
    if (r.contains("trace") && r["trace"].contains("updates")) {
        const auto& t = r["trace"];
        os << "  initial " << join_json(t["initial"]) << '\n';
        std::size_t n = 0;
        for (const auto& u : t["updates"]) {
            os << "  update " << ++n << ": delta " << u["delta"].get<std::string>() << " fixed {"
               << join_json(u["fixed"]) << "} exponents " << join_json(u["exponents"]) << " achieved "
               << join_json(u["achieved"]) << '\n';
        }
    }
    if (r.contains("trace") && r["trace"].contains("iterates")) {
        const auto& t = r["trace"];
        std::size_t n = 0;
        for (const auto& x : t["iterates"]) os << "  r(" << n++ << ") " << join_json(x) << '\n';
        os << "  fixed point after " << t["iterations"].dump() << " iterations\n";
    }
    os << "  exponents " << join_json(r["exponents"]) << '\n';
    os << "  achieved " << join_json(r["achieved"]) << '\n';
    if (r.contains("locally_optimal")) os << "  locally optimal " << (r["locally_optimal"].get<bool>() ? "true" : "false") << '\n';
    return os.str();
}

inline Outcome cmd_rates(const Options& o, std::ostream& err) {
    const ChannelFile f = load_channel_file(o.channel);
    const CompoundChannel& ch = f.channel;
    const std::vector<double> powers = detail::power_list(o.powers);

    std::vector<NamedAllocation> allocs;
    Outcome out;
    if (!o.exponents.empty()) {
        auto r = parse_rational_list(o.exponents);
        if (r.size() != ch.users()) throw UsageError("--exponents must have one entry per user");
        try {
            allocs.push_back({"explicit", to_allocation(PowerExponents(r))});
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        const auto ts = detail::targets(o, f);
        std::stringstream ss(o.alg.empty() ? "ggpc" : o.alg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto alg = parse_algorithm(tok);
            if (!alg) throw UsageError("unknown algorithm '" + tok + "'");
            for (std::size_t t = 0; t < ts.size(); ++t) {
                Allocation a;
                json r = detail::power_result(ch, ts[t], *alg, &a);
                if (!r["feasible"].get<bool>()) {
                    out.report = {{"command", "rates"}, {"infeasible", r}};
                    out.code = kNegative;
                    return out;
                }
                allocs.push_back({ts.size() == 1 ? tok : tok + "#" + std::to_string(t + 1), std::move(a)});
            }
        }
    }

    // Allocations identical to full power or to an earlier entry are reported once.
    std::vector<NamedAllocation> kept;
    json merged = json::array();
    const Allocation full(ch.users(), Rational(0));
    for (auto& a : allocs) {
        std::string same;
        if (a.exponents == full) same = kFullPowerName;
        for (const auto& k : kept)
            if (same.empty() && k.exponents == a.exponents) same = k.name;
        if (!same.empty()) {
            err << "note: allocation " << a.name << " equals " << same << '\n';
            merged.push_back({{"name", a.name}, {"same_as", same}});
        } else {
            kept.push_back(std::move(a));
        }
    }

    json alloc_json = json::array();
    for (const auto& a : kept) alloc_json.push_back({{"name", a.name}, {"exponents", allocation_to_json(a.exponents)}});
    json rows = json::array();
    for (const auto& row : sweep(ch, kept, powers)) {
        const auto& rep = row.report;
        for (std::size_t k = 0; k < rep.rates.size(); ++k) {
            rows.push_back({{"alloc", row.alloc},
                            {"P", detail::rounded(rep.P)},
                            {"user", k + 1},
                            {"rate", detail::rounded(rep.rates[k])},
                            {"sum_rate", detail::rounded(rep.sum_rate)},
                            {"min_rate", detail::rounded(rep.min_rate)},
                            {"total_power", detail::rounded(rep.total_power)},
                            {"efficiency", detail::rounded(rep.efficiency)}});
        }
    }
    out.report = {{"command", "rates"}, {"allocations", alloc_json}, {"merged", merged}, {"rows", rows}};
    return out;
}

inline std::string render_rates(const json& r) {
    if (r.contains("infeasible")) return render_power_one(r["infeasible"]);
    std::ostringstream os;
    os << "alloc,P,user,rate,sum_rate,min_rate,total_power,efficiency\n";
    for (const auto& row : r["rows"]) {
        os << row["alloc"].get<std::string>();
        for (const char* key : {"P", "user", "rate", "sum_rate", "min_rate", "total_power", "efficiency"}) {
            const auto& v = row[key];
            os << ',' << (v.is_number_integer() ? v.dump() : format_sig10(v.get<double>()));
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs one command. args excludes the program name. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"TIN power control and GDoF region analysis for compound interference channels", "tinpc"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--channel", o.channel, "channel JSON file")->required();
        sub->add_flag("--json", o.json, "machine-readable output");
    };
    auto add_target = [&](CLI::App* sub) {
        sub->add_option("--target", o.target, "GDoF target d1,d2,... (default: targets in the file)");
    };

    auto* validate_cmd = app.add_subcommand("validate", "check a channel file");
    add_common(validate_cmd);
    auto* tin_cmd = app.add_subcommand("tin-check", "TIN-optimality condition with witness");
    add_common(tin_cmd);
    auto* cp_cmd = app.add_subcommand("counterpart", "regular counterpart as a channel file");
    add_common(cp_cmd);
    auto* feas_cmd = app.add_subcommand("feasible", "feasibility of GDoF targets");
    add_common(feas_cmd);
    add_target(feas_cmd);
    feas_cmd->add_flag("--debug-graph", o.debug_graph, "dump potential graph edge lists");
    auto* region_cmd = app.add_subcommand("region", "polyhedral TIN region constraints");
    add_common(region_cmd);
    auto* pareto_cmd = app.add_subcommand("pareto", "Pareto optimality of GDoF targets");
    add_common(pareto_cmd);
    add_target(pareto_cmd);
    pareto_cmd->add_flag("--debug-graph", o.debug_graph, "dump potential graph edge lists");
    auto* power_cmd = app.add_subcommand("power", "power allocation for GDoF targets");
    add_common(power_cmd);
    add_target(power_cmd);
    power_cmd->add_option("--alg", o.alg, "sp, gsfpc, ggpc or ggpc-c (default ggpc)");
    auto* rates_cmd = app.add_subcommand("rates", "finite-SNR rates as CSV");
    add_common(rates_cmd);
    add_target(rates_cmd);
    rates_cmd->add_option("--alg", o.alg, "comma list of algorithms (default ggpc)");
    rates_cmd->add_option("--P", o.powers, "comma list of nominal powers, each > 1")->required();
    rates_cmd->add_option("--exponents", o.exponents, "explicit exponents r1,r2,... instead of --alg");

    std::vector<std::string> argv_store{"tinpc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }

    try {
        Outcome res;
        std::string (*render)(const json&) = nullptr;
        if (validate_cmd->parsed()) {
            res = cmd_validate(o);
            render = render_validate;
        } else if (tin_cmd->parsed()) {
            res = cmd_tin_check(o);
            render = render_tin_check;
        } else if (cp_cmd->parsed()) {
            res = cmd_counterpart(o, err);
            render = render_counterpart;
        } else if (feas_cmd->parsed()) {
            res = cmd_feasible(o);
            render = [](const json& r) { return render_results(r, detail::render_feasibility); };
        } else if (region_cmd->parsed()) {
            res = cmd_region(o);
            render = render_region;
        } else if (pareto_cmd->parsed()) {
            res = cmd_pareto(o);
            render = [](const json& r) { return render_results(r, render_pareto_one); };
        } else if (power_cmd->parsed()) {
            res = cmd_power(o);
            render = [](const json& r) { return render_results(r, render_power_one); };
        } else {
            res = cmd_rates(o, err);
            render = render_rates;
        }
        if (o.json) out << res.report.dump(2) << '\n';
        else out << render(res.report);
        return res.code;
    } catch (const CrossCheckFailure& e) {
        err << "internal error: " << e.what() << '\n';
        return kCrossCheck;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const ChannelError& e) {
        err << "invalid channel: " << e.what() << '\n';
        return kNegative;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kNegative;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNegative;
    }
}

}  // namespace tinpc::cli
