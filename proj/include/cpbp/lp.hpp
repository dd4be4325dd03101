#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cpbp/rational.hpp"

namespace cpbp {

/// Sparse column for max c^T x s.t. A x <= b, x >= 0 with b >= 0.
struct LpColumn {
    std::vector<int> rows;  // rows where the coefficient is 1
    Rat objective;
};

struct LpSolution {
    Rat value;
    std::vector<Rat> primal;  // one weight per column
    std::vector<Rat> dual;    // one price per row
    long pivots = 0;
};

/// Dense tableau simplex in exact rational arithmetic. Dantzig pricing with a
/// permanent switch to Bland's rule after an iteration allowance, so
/// termination is guaranteed without sacrificing typical speed.
inline LpSolution simplex_max_unit_rhs(int rows, const std::vector<LpColumn>& cols) {
    int n = static_cast<int>(cols.size());
    int m = rows;
    int width = n + m + 1;  // structural, slack, rhs
    std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(width));
    for (int j = 0; j < n; ++j) {
        for (int r : cols[j].rows) t[r][j] = 1;
        t[m][j] = cols[j].objective;  // reduced costs start at c
    }
    for (int i = 0; i < m; ++i) {
        t[i][n + i] = 1;
        t[i][width - 1] = 1;  // unit capacities
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    long dantzig_budget = 20L * (m + n) + 200;
    LpSolution sol;
    while (true) {
        bool bland = sol.pivots >= dantzig_budget;
        int enter = -1;
        if (bland) {
            for (int j = 0; j < n + m; ++j)
                if (sgn(t[m][j]) > 0) {
                    enter = j;
                    break;
                }
        } else {
            for (int j = 0; j < n + m; ++j)
                if (sgn(t[m][j]) > 0 && (enter < 0 || t[m][j] > t[m][enter])) enter = j;
        }
        if (enter < 0) break;  // optimal

        int leave = -1;
        Rat best_ratio;
        for (int i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rat ratio = t[i][width - 1] / t[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0)
            throw std::runtime_error("simplex: unbounded program (malformed input)");

        // pivot on (leave, enter)
        Rat piv = t[leave][enter];
        std::vector<int> support;
        support.reserve(width);
        for (int j = 0; j < width; ++j) {
            if (sgn(t[leave][j]) == 0) continue;
            t[leave][j] /= piv;
            support.push_back(j);
        }
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            Rat factor = t[i][enter];
            if (sgn(factor) == 0) continue;
            for (int j : support) t[i][j] -= factor * t[leave][j];
        }
        basis[leave] = enter;
        ++sol.pivots;
    }

    sol.primal.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.primal[basis[i]] = t[i][width - 1];
    sol.dual.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) sol.dual[i] = -t[m][n + i];
    sol.value = -t[m][width - 1];
    return sol;
}

}  // namespace cpbp
