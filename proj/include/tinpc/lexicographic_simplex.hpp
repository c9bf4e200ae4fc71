#pragma once

#include "tinpc/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tinpc {

/// Result of a lexicographic LP: objective values in priority order and one optimal vertex.
struct LexLpSolution {
    std::vector<Rational> objective;
    std::vector<Rational> x;
};

/// Maximizes c[0].x, then c[1].x over the optimal face of c[0], and so on,
/// subject to A x <= b and x >= 0 with b >= 0 (the origin is feasible).
///
/// Dictionary simplex over exact rationals. Reduced costs are compared as
/// vectors in priority order, which is the single objective
/// c[0] + eps c[1] + eps^2 c[2] + ... over the ordered field Q(eps); Bland's
/// rule therefore still rules out cycling. Returns nullopt when unbounded.
inline std::optional<LexLpSolution> maximize_lexicographic(const std::vector<std::vector<Rational>>& A,
                                                           const std::vector<Rational>& b,
                                                           const std::vector<std::vector<Rational>>& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.empty() ? 0 : c.front().size();
    const std::size_t p = c.size();
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("constraint row has wrong width");
    for (const auto& bi : b)
        if (bi < 0) throw std::invalid_argument("origin must be feasible (b >= 0)");

    // Basic row i: x_basic[i] = rhs[i] - sum_j coef[i][j] * x_nonbasic[j].
    std::vector<std::vector<Rational>> coef = A;
    std::vector<Rational> rhs = b;
    // Objective t: z_t = value[t] + sum_j cost[t][j] * x_nonbasic[j].
    std::vector<std::vector<Rational>> cost = c;
    std::vector<Rational> value(p, Rational(0));

    // Variable ids: 0..n-1 structural, n..n+m-1 slacks.
    std::vector<std::size_t> basic(m);
    std::vector<std::size_t> nonbasic(n);
    for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
    for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;

    auto lex_positive = [&](std::size_t j) {
        for (std::size_t t = 0; t < p; ++t) {
            if (cost[t][j] > 0) return true;
            if (cost[t][j] < 0) return false;
        }
        return false;
    };

    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < n; ++j) {
            if (lex_positive(j) && (!enter || nonbasic[j] < nonbasic[*enter])) enter = j;
        }
        if (!enter) break;
        const std::size_t e = *enter;

        std::optional<std::size_t> leave;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (coef[i][e] <= 0) continue;
            Rational ratio = rhs[i] / coef[i][e];
            if (!leave || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[*leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (!leave) return std::nullopt;
        const std::size_t r = *leave;

        const Rational pivot = coef[r][e];
        rhs[r] /= pivot;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != e) coef[r][j] /= pivot;
        }
        coef[r][e] = Rational(1) / pivot;

        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || coef[i][e] == 0) continue;
            const Rational factor = coef[i][e];
            rhs[i] -= factor * rhs[r];
            for (std::size_t j = 0; j < n; ++j) {
                if (j != e) coef[i][j] -= factor * coef[r][j];
            }
            coef[i][e] = -factor * coef[r][e];
        }
        for (std::size_t t = 0; t < p; ++t) {
            const Rational factor = cost[t][e];
            if (factor == 0) continue;
            value[t] += factor * rhs[r];
            for (std::size_t j = 0; j < n; ++j) {
                if (j != e) cost[t][j] -= factor * coef[r][j];
            }
            cost[t][e] = -factor * coef[r][e];
        }
        std::swap(basic[r], nonbasic[e]);
    }

    LexLpSolution sol;
    sol.objective = value;
    sol.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < n) sol.x[basic[i]] = rhs[i];
    return sol;
}

}  // namespace tinpc
