#pragma once

#include "tinpc/channel.hpp"
#include "tinpc/power_control.hpp"
#include "tinpc/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tinpc {

struct RateReport {
    double P = 0;
    std::vector<double> rates;  // bits per channel use, per user
    double sum_rate = 0;
    double min_rate = 0;        // over users that transmit
    double total_power = 0;     // sum_k P^{r_k}
    double efficiency = 0;      // sum_rate / total_power
};

namespace detail {

/// log2(sum_i 2^{x_i}) without overflow.
inline double log2_sum_exp2(const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0;
    for (double x : xs) s += std::exp2(x - m);
    return m + std::log2(s);
}

/// log2(1 + 2^x)
inline double log2_one_plus_exp2(double x) {
    if (x > 0) return x + std::log1p(std::exp2(-x)) / std::log(2.0);
    return std::log1p(std::exp2(x)) / std::log(2.0);
}

}  // namespace detail

/// TIN rates at nominal power P. Powers are P^{r_k} = 2^{r_k log2 P} and the
/// SINR is formed in the log domain, so strong links at large P stay finite.
inline RateReport rates(const CompoundChannel& ch, const Allocation& r, double P) {
    if (!(P > 1)) throw std::invalid_argument("nominal power P must exceed 1");
    if (r.size() != ch.users()) throw std::invalid_argument("allocation does not match the channel");
    const std::size_t K = ch.users();
    const double logP = std::log2(P);

    RateReport rep;
    rep.P = P;
    bool any_active = false;
    rep.min_rate = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
        if (!r[k]) {
            rep.rates.push_back(0);
            continue;
        }
        any_active = true;
        double rk = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < ch.state_count(k); ++l) {
            std::vector<double> noise_plus_interference{0.0};
            for (std::size_t j = 0; j < K; ++j)
                if (j != k && r[j]) noise_plus_interference.push_back(to_double(*r[j] + ch.strength(k, l, j)) * logP);
            double signal = to_double(*r[k] + ch.strength(k, l, k)) * logP;
            double sinr_log2 = signal - detail::log2_sum_exp2(noise_plus_interference);
            rk = std::min(rk, detail::log2_one_plus_exp2(sinr_log2));
        }
        rep.rates.push_back(rk);
        rep.min_rate = std::min(rep.min_rate, rk);
        rep.total_power += std::exp2(to_double(*r[k]) * logP);
    }
    if (!any_active) rep.min_rate = 0;
    for (double x : rep.rates) rep.sum_rate += x;
    rep.efficiency = rep.total_power > 0 ? rep.sum_rate / rep.total_power : 0;
    return rep;
}

inline RateReport rates(const CompoundChannel& ch, const PowerExponents& r, double P) {
    return rates(ch, to_allocation(r), P);
}

struct NamedAllocation {
    std::string name;
    Allocation exponents;
};

struct SweepRow {
    std::string alloc;
    RateReport report;
};

inline constexpr const char* kFullPowerName = "full_power";

/// One report per (allocation, P), plus the full-power baseline, sorted by (allocation name, P).
inline std::vector<SweepRow> sweep(const CompoundChannel& ch, const std::vector<NamedAllocation>& allocations,
                                   const std::vector<double>& powers) {
    std::vector<NamedAllocation> all{{kFullPowerName, Allocation(ch.users(), Rational(0))}};
    all.insert(all.end(), allocations.begin(), allocations.end());
    std::vector<SweepRow> rows;
    for (const auto& a : all)
        for (double P : powers) rows.push_back({a.name, rates(ch, a.exponents, P)});
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.alloc != b.alloc ? a.alloc < b.alloc : a.report.P < b.report.P;
    });
    return rows;
}

struct GdofLimitCheck {
    std::vector<double> powers;
    std::vector<std::vector<double>> normalized;  // [P index][user] R_k / log2 P
    GdofTuple limit;                              // achieved_gdof at the same allocation
    std::vector<double> final_gap;                // |last normalized - limit| per user
};

/// R_k / log2(P) along an increasing list of P, next to the GDoF it should approach.
inline GdofLimitCheck gdof_limit_check(const CompoundChannel& ch, const PowerExponents& r,
                                       const std::vector<double>& powers) {
    if (powers.empty()) throw std::invalid_argument("need at least one P value");
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!(powers[i] > 1)) throw std::invalid_argument("P values must exceed 1");
        if (i && !(powers[i] > powers[i - 1])) throw std::invalid_argument("P values must be strictly increasing");
    }
    GdofLimitCheck out;
    out.powers = powers;
    out.limit = achieved_gdof(ch, r);
    for (double P : powers) {
        RateReport rep = rates(ch, r, P);
        std::vector<double> row;
        for (double x : rep.rates) row.push_back(x / std::log2(P));
        out.normalized.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < ch.users(); ++k)
        out.final_gap.push_back(std::fabs(out.normalized.back()[k] - to_double(out.limit[k])));
    return out;
}

inline std::string format_sig10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "alloc,P,user,rate,sum_rate,min_rate,total_power,efficiency\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        for (std::size_t k = 0; k < r.rates.size(); ++k) {
            os << row.alloc << ',' << format_sig10(r.P) << ',' << (k + 1) << ',' << format_sig10(r.rates[k]) << ','
               << format_sig10(r.sum_rate) << ',' << format_sig10(r.min_rate) << ',' << format_sig10(r.total_power)
               << ',' << format_sig10(r.efficiency) << '\n';
        }
    }
}

}  // namespace tinpc
