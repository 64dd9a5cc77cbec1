#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "bsc/shape_context.hpp"

namespace bsc {

struct Assignment {
    std::vector<int> permutation;  // row i -> column permutation[i]
    double total_cost = 0.0;
};

// Minimal-cost perfect assignment via shortest augmenting paths with dual
// potentials (Jonker-Volgenant style), O(N^3).
inline Assignment hungarian(const CostMatrix& m) {
    if (m.rows != m.cols)
        throw NonSquare("hungarian: matrix must be square");
    if (m.rows == 0) throw EmptyMatrix("hungarian: empty matrix");
    for (double v : m.values)
        if (!std::isfinite(v)) throw NonFiniteInput("hungarian: non-finite entry");

    const int n = m.rows;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);  // 1-based columns

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = m.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }

    Assignment a;
    a.permutation.assign(n, -1);
    for (int j = 1; j <= n; ++j) a.permutation[match[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) a.total_cost += m.at(i, a.permutation[i]);
    return a;
}

}  // namespace bsc
