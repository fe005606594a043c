#pragma once

// Exact feasibility of { x >= 0 : A x = b } by phase-one simplex with Bland's
// rule. Infeasible systems come back with a Farkas certificate.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hcvr/errors.hpp"

namespace hcvr {

using rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<rational>>; // row-major

struct FeasibilityResult {
    bool feasible = false;
    std::vector<rational> x;      // a solution, when feasible
    std::vector<rational> farkas; // z with A^T z >= 0 and b^T z < 0, when infeasible
};

inline FeasibilityResult solve_feasibility(const RationalMatrix& a, const std::vector<rational>& b)
{
    const std::size_t m = a.size();
    if (b.size() != m) throw usage_error("right-hand side length differs from the row count");
    const std::size_t k = m ? a.front().size() : 0;
    for (const auto& row : a)
        if (row.size() != k) throw usage_error("ragged constraint matrix");

    // Tableau [A' | I | b'] with rows negated so that b' >= 0.
    const std::size_t cols = k + m + 1, rhs = k + m;
    std::vector<int> sign(m, 1);
    RationalMatrix t(m, std::vector<rational>(cols));
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) sign[i] = -1;
        for (std::size_t j = 0; j < k; ++j) t[i][j] = sign[i] * a[i][j];
        t[i][k + i] = 1;
        t[i][rhs] = sign[i] * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;
    auto cost = [&](std::size_t j) { return j >= k ? 1 : 0; };

    for (;;) {
        // Bland: smallest column index with negative reduced cost enters.
        std::size_t enter = rhs;
        for (std::size_t j = 0; j < rhs && enter == rhs; ++j) {
            rational d = cost(j);
            for (std::size_t i = 0; i < m; ++i)
                if (cost(basis[i]) && t[i][j] != 0) d -= t[i][j];
            if (d < 0) enter = j;
        }
        if (enter == rhs) break;

        std::size_t leave = m;
        rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            rational ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break; // cannot happen in phase one: the objective is bounded below

        const rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j)
                if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= k) infeasibility += t[i][rhs];

    FeasibilityResult out;
    if (infeasibility == 0) {
        out.feasible = true;
        out.x.assign(k, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < k) out.x[basis[i]] = t[i][rhs];
        return out;
    }
    // Phase-one duals y = c_B^T B^{-1}; B^{-1} sits in the artificial columns.
    // Then z = -S y certifies infeasibility of the original rows.
    out.farkas.assign(m, 0);
    for (std::size_t col = 0; col < m; ++col) {
        rational y = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= k) y += t[i][k + col];
        out.farkas[col] = -sign[col] * y;
    }
    return out;
}

} // namespace hcvr
