#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glossalign/core.hpp"
#include "glossalign/dtw.hpp"
#include "glossalign/selection.hpp"

namespace glossalign {

/// Outcome of one oracle-equivalence sweep.
struct CheckStats {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool passed() const noexcept { return failures == 0; }

    void record_failure(const std::string& detail) {
        ++failures;
        if (first_failure.empty()) first_failure = detail;
    }
};

namespace detail {

inline void enumerate_token_sequences(int max_len, int alphabet, std::vector<Sequence>& out) {
    std::vector<int> current;
    auto walk = [&](auto&& self) -> void {
        if (!current.empty()) out.push_back(Sequence::from_tokens(current));
        if (static_cast<int>(current.size()) == max_len) return;
        for (int v = 0; v < alphabet; ++v) {
            current.push_back(v);
            self(self);
            current.pop_back();
        }
    };
    walk(walk);
}

/// Dyadic rationals (multiples of 2^-8) keep every cost sum exactly
/// representable, so DP-vs-oracle comparisons are meaningful at 0 tolerance.
inline double dyadic(Rng& rng, int lo, int hi) {
    return static_cast<double>(rng.uniform_int(lo, hi)) / 256.0;
}

inline Sequence random_dyadic_sequence(Rng& rng, int max_len) {
    const int len = rng.uniform_int(1, max_len);
    std::vector<FeatureVector> frames;
    frames.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) frames.push_back({dyadic(rng, -768, 768)});
    return Sequence(std::move(frames));
}

}  // namespace detail

/// dtw_align vs oracle_align on every ordered pair of token sequences over
/// alphabet {0,1,2} with lengths 1..max_len, abs-diff cost. Exact equality.
inline CheckStats check_dtw_exhaustive(int max_len) {
    std::vector<Sequence> sequences;
    detail::enumerate_token_sequences(max_len, 3, sequences);
    CheckStats stats;
    for (const Sequence& target : sequences) {
        for (const Sequence& source : sequences) {
            ++stats.cases;
            const DtwResult fast = dtw_align(target, source, CostKind::abs_diff);
            const DtwResult truth = oracle_align(target, source, CostKind::abs_diff);
            if (fast.cost != truth.cost) {
                stats.record_failure("dtw cost " + std::to_string(fast.cost) + " != oracle " +
                                     std::to_string(truth.cost));
            }
        }
    }
    return stats;
}

/// dtw_align vs oracle_align on random dyadic-valued pairs with lengths up to
/// max_len (capped by the oracle guard). Exact equality.
inline CheckStats check_dtw_random(int max_len, int trials, std::uint64_t seed) {
    Rng rng(seed);
    CheckStats stats;
    for (int i = 0; i < trials; ++i) {
        ++stats.cases;
        const Sequence target = detail::random_dyadic_sequence(rng, max_len);
        const Sequence source = detail::random_dyadic_sequence(rng, max_len);
        const DtwResult fast = dtw_align(target, source, CostKind::abs_diff);
        const DtwResult truth = oracle_align(target, source, CostKind::abs_diff);
        if (fast.cost != truth.cost) {
            stats.record_failure("trial " + std::to_string(i) + ": dtw cost " +
                                 std::to_string(fast.cost) + " != oracle " + std::to_string(truth.cost));
        }
    }
    return stats;
}

/// decode_monotonic vs brute-force enumeration on random dyadic score grids:
/// totals must match exactly and, with both sides breaking ties toward the
/// lexicographically smallest assignment, so must the assignments.
inline CheckStats check_decode_random(int max_dim, int trials, std::uint64_t seed) {
    Rng rng(seed);
    CheckStats stats;
    for (int i = 0; i < trials; ++i) {
        ++stats.cases;
        const int q_len = rng.uniform_int(1, max_dim);
        const int t_len = rng.uniform_int(1, max_dim);
        ScoreMatrix scores(static_cast<std::size_t>(q_len), static_cast<std::size_t>(t_len));
        for (double& v : scores.data()) v = detail::dyadic(rng, -1024, 1024);

        const DecisionMatrix fast = decode_monotonic(scores);
        const DecisionMatrix truth = oracle_decode_monotonic(scores);
        const double fast_total = assignment_score(scores, fast);
        const double truth_total = assignment_score(scores, truth);
        if (fast_total != truth_total) {
            stats.record_failure("trial " + std::to_string(i) + ": decode total " +
                                 std::to_string(fast_total) + " != oracle " + std::to_string(truth_total));
        } else if (!(fast == truth)) {
            stats.record_failure("trial " + std::to_string(i) + ": tie-break mismatch");
        }
    }
    return stats;
}

}  // namespace glossalign
