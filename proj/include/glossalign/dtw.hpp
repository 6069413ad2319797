#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "glossalign/core.hpp"

namespace glossalign {

using CostMatrix = Matrix;

/// Minimum-cost monotonic alignment between two sequences.
struct DtwResult {
    double cost = 0.0;
    AlignmentPath path;
};

/// entry(q,t) = local_cost(target[q], source[t]); rows follow the target.
inline CostMatrix build_cost_matrix(const Sequence& target, const Sequence& source, CostKind fn) {
    CostMatrix costs(target.length(), source.length());
    for (std::size_t q = 0; q < target.length(); ++q) {
        for (std::size_t t = 0; t < source.length(); ++t) {
            costs(q, t) = local_cost(target[q], source[t], fn);
        }
    }
    return costs;
}

/// Sum of cost-matrix entries visited by a path, accumulated in path order.
inline double path_cost(const CostMatrix& costs, const AlignmentPath& path) {
    double total = 0.0;
    for (const PathStep& s : path.steps()) {
        total += costs(static_cast<std::size_t>(s.q - 1), static_cast<std::size_t>(s.t - 1));
    }
    return total;
}

namespace detail {

inline DtwResult dtw_from_costs(const CostMatrix& costs) {
    const std::size_t q_len = costs.rows();
    const std::size_t t_len = costs.cols();
    Matrix acc(q_len, t_len);

    acc(0, 0) = costs(0, 0);
    for (std::size_t t = 1; t < t_len; ++t) acc(0, t) = acc(0, t - 1) + costs(0, t);
    for (std::size_t q = 1; q < q_len; ++q) acc(q, 0) = acc(q - 1, 0) + costs(q, 0);
    for (std::size_t q = 1; q < q_len; ++q) {
        for (std::size_t t = 1; t < t_len; ++t) {
            acc(q, t) = costs(q, t) + std::min({acc(q - 1, t - 1), acc(q, t - 1), acc(q - 1, t)});
        }
    }

    // Backtrack by recomputing the argmin among predecessors; ties prefer the
    // diagonal, then the step that advanced t, then the step that advanced q.
    std::vector<PathStep> steps;
    std::size_t q = q_len - 1;
    std::size_t t = t_len - 1;
    steps.push_back({static_cast<int>(q + 1), static_cast<int>(t + 1)});
    while (q > 0 || t > 0) {
        if (q == 0) {
            --t;
        } else if (t == 0) {
            --q;
        } else {
            const double diag = acc(q - 1, t - 1);
            const double left = acc(q, t - 1);
            const double up = acc(q - 1, t);
            if (diag <= left && diag <= up) {
                --q;
                --t;
            } else if (left <= up) {
                --t;
            } else {
                --q;
            }
        }
        steps.push_back({static_cast<int>(q + 1), static_cast<int>(t + 1)});
    }
    std::reverse(steps.begin(), steps.end());

    return DtwResult{acc(q_len - 1, t_len - 1),
                     AlignmentPath(std::move(steps), static_cast<int>(q_len), static_cast<int>(t_len))};
}

}  // namespace detail

/// Classic DTW over steps {(1,0),(0,1),(1,1)}: returns the minimum-cost
/// monotonic path from (1,1) to (Q,T) and its cost (unweighted sum of the
/// visited local costs).
inline DtwResult dtw_align(const Sequence& target, const Sequence& source, CostKind fn) {
    return detail::dtw_from_costs(build_cost_matrix(target, source, fn));
}

constexpr std::size_t kOracleMaxLen = 7;

/// Exhaustively enumerates every monotonic path and returns the true minimum.
/// Costs accumulate in path order so float sums match dtw_align's recursion
/// exactly. Exponential; guarded to Q,T <= 7.
inline DtwResult oracle_align(const Sequence& target, const Sequence& source, CostKind fn) {
    if (target.length() > kOracleMaxLen || source.length() > kOracleMaxLen) {
        raise(Errc::too_large_for_oracle,
              "oracle enumeration is limited to sequences of length <= " + std::to_string(kOracleMaxLen));
    }
    const CostMatrix costs = build_cost_matrix(target, source, fn);
    const std::size_t q_len = costs.rows();
    const std::size_t t_len = costs.cols();

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<PathStep> best_path;
    std::vector<PathStep> current;
    current.push_back({1, 1});

    auto walk = [&](auto&& self, std::size_t q, std::size_t t, double cost_so_far) -> void {
        if (q == q_len - 1 && t == t_len - 1) {
            if (cost_so_far < best_cost) {
                best_cost = cost_so_far;
                best_path = current;
            }
            return;
        }
        auto extend = [&](std::size_t nq, std::size_t nt) {
            current.push_back({static_cast<int>(nq + 1), static_cast<int>(nt + 1)});
            self(self, nq, nt, cost_so_far + costs(nq, nt));
            current.pop_back();
        };
        if (q + 1 < q_len && t + 1 < t_len) extend(q + 1, t + 1);
        if (t + 1 < t_len) extend(q, t + 1);
        if (q + 1 < q_len) extend(q + 1, t);
    };
    walk(walk, 0, 0, costs(0, 0));

    return DtwResult{best_cost, AlignmentPath(std::move(best_path), static_cast<int>(q_len),
                                              static_cast<int>(t_len))};
}

/// Reduce a 2D path to one value per target row: the largest source index the
/// path visits at row q, divided by T. The result is non-decreasing in (0,1].
inline AlignmentVector path_to_alignment_vector(const AlignmentPath& path) {
    std::vector<int> t_last(static_cast<std::size_t>(path.q_len()), 0);
    for (const PathStep& s : path.steps()) {
        t_last[static_cast<std::size_t>(s.q - 1)] = std::max(t_last[static_cast<std::size_t>(s.q - 1)], s.t);
    }
    std::vector<double> values(t_last.size());
    for (std::size_t q = 0; q < t_last.size(); ++q) {
        values[q] = static_cast<double>(t_last[q]) / static_cast<double>(path.t_len());
    }
    return AlignmentVector(std::move(values));
}

}  // namespace glossalign
