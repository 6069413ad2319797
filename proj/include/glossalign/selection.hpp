#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "glossalign/core.hpp"

namespace glossalign {

using ScoreMatrix = Matrix;

/// The two sides of a selection problem: a length-Q summary-side
/// representation and a length-T source-side representation of equal dim.
struct SelectionInputs {
    Sequence summary_repr;
    Sequence source_hidden;
};

/// A binary Q x T selection matrix with exactly one selected column per row,
/// stored as the chosen 1-based source index t(q) per row. Monotone by
/// construction: t(q+1) >= t(q).
class DecisionMatrix {
public:
    DecisionMatrix(std::vector<int> selected, int t_len)
        : selected_(std::move(selected)), t_len_(t_len) {
        if (selected_.empty()) raise(Errc::empty_sequence, "decision matrix must have at least one row");
        int prev = 1;
        for (std::size_t q = 0; q < selected_.size(); ++q) {
            const int t = selected_[q];
            if (t < 1 || t > t_len_) raise(Errc::domain_error, "selected index out of range at row " + std::to_string(q));
            if (t < prev) raise(Errc::domain_error, "selected indices must be non-decreasing");
            prev = t;
        }
    }

    std::size_t q_len() const noexcept { return selected_.size(); }
    int t_len() const noexcept { return t_len_; }
    int selected(std::size_t q) const { return selected_[q]; }
    const std::vector<int>& rows() const noexcept { return selected_; }

    bool operator==(const DecisionMatrix&) const = default;

private:
    std::vector<int> selected_;
    int t_len_ = 0;
};

/// Bilinear pair scorer s(q,t) = r_q^T W h_t + b, the learnable half of the
/// selection network.
class SelectionScorer {
public:
    SelectionScorer(std::size_t dim, std::uint64_t seed)
        : weights_(dim, dim), bias_(0.0), seed_(seed) {
        Rng rng(seed);
        for (double& w : weights_.data()) w = rng.uniform(-0.1, 0.1);
    }

    std::size_t dim() const noexcept { return weights_.rows(); }
    std::uint64_t seed() const noexcept { return seed_; }

    Matrix& weights() noexcept { return weights_; }
    const Matrix& weights() const noexcept { return weights_; }
    double& bias() noexcept { return bias_; }
    double bias() const noexcept { return bias_; }

    double score(const FeatureVector& r, const FeatureVector& h) const {
        double s = bias_;
        for (std::size_t i = 0; i < weights_.rows(); ++i) {
            double wi = 0.0;
            for (std::size_t j = 0; j < weights_.cols(); ++j) wi += weights_(i, j) * h[j];
            s += r[i] * wi;
        }
        return s;
    }

private:
    Matrix weights_;
    double bias_ = 0.0;
    std::uint64_t seed_ = 0;
};

/// Q x T grid of pair scores (higher = better match).
inline ScoreMatrix score_pairs(const SelectionScorer& scorer, const SelectionInputs& inputs) {
    if (inputs.summary_repr.dim() != inputs.source_hidden.dim() ||
        inputs.summary_repr.dim() != scorer.dim()) {
        raise(Errc::dim_mismatch, "selection inputs and scorer dims must agree");
    }
    const std::size_t q_len = inputs.summary_repr.length();
    const std::size_t t_len = inputs.source_hidden.length();
    ScoreMatrix scores(q_len, t_len);
    for (std::size_t q = 0; q < q_len; ++q) {
        for (std::size_t t = 0; t < t_len; ++t) {
            scores(q, t) = scorer.score(inputs.summary_repr[q], inputs.source_hidden[t]);
        }
    }
    return scores;
}

/// Maximizes sum_q scores[q][t(q)] subject to t(1) <= ... <= t(Q) by dynamic
/// programming. Ties resolve to the lexicographically smallest assignment
/// (smallest t row by row, left to right).
inline DecisionMatrix decode_monotonic(const ScoreMatrix& scores) {
    const std::size_t q_len = scores.rows();
    const std::size_t t_len = scores.cols();
    if (q_len == 0 || t_len == 0) raise(Errc::empty_sequence, "score matrix must be non-empty");

    // best(q,t) = best total over rows q..Q-1 given t(q) = t.
    Matrix best(q_len, t_len);
    for (std::size_t t = 0; t < t_len; ++t) best(q_len - 1, t) = scores(q_len - 1, t);
    for (std::size_t q = q_len - 1; q-- > 0;) {
        double suffix_max = best(q + 1, t_len - 1);
        std::vector<double> suffix(t_len);
        suffix[t_len - 1] = suffix_max;
        for (std::size_t t = t_len - 1; t-- > 0;) {
            suffix_max = std::max(suffix_max, best(q + 1, t));
            suffix[t] = suffix_max;
        }
        for (std::size_t t = 0; t < t_len; ++t) best(q, t) = scores(q, t) + suffix[t];
    }

    std::vector<int> selected(q_len);
    std::size_t lo = 0;
    for (std::size_t q = 0; q < q_len; ++q) {
        std::size_t arg = lo;
        for (std::size_t t = lo + 1; t < t_len; ++t) {
            if (best(q, t) > best(q, arg)) arg = t;  // strict: keeps the leftmost max
        }
        selected[q] = static_cast<int>(arg + 1);
        lo = arg;
    }
    return DecisionMatrix(std::move(selected), static_cast<int>(t_len));
}

/// Brute force over all monotone assignments; totals accumulate from the last
/// row so float sums match the decoder's suffix recursion exactly. Used by
/// tests and oracle-check.
inline DecisionMatrix oracle_decode_monotonic(const ScoreMatrix& scores) {
    const std::size_t q_len = scores.rows();
    const std::size_t t_len = scores.cols();
    if (q_len > kOracleMaxLen || t_len > kOracleMaxLen) {
        raise(Errc::too_large_for_oracle, "decode oracle is limited to Q,T <= " + std::to_string(kOracleMaxLen));
    }

    std::vector<int> current(q_len), best_assignment;
    double best_total = 0.0;
    bool have_best = false;

    auto walk = [&](auto&& self, std::size_t q, std::size_t lo) -> void {
        if (q == q_len) {
            double total = 0.0;
            for (std::size_t row = q_len; row-- > 0;) {
                total += scores(row, static_cast<std::size_t>(current[row] - 1));
            }
            if (!have_best || total > best_total) {
                best_total = total;
                best_assignment = current;
                have_best = true;
            }
            return;
        }
        for (std::size_t t = lo; t < t_len; ++t) {
            current[q] = static_cast<int>(t + 1);
            self(self, q + 1, t);
        }
    };
    walk(walk, 0, 0);

    return DecisionMatrix(std::move(best_assignment), static_cast<int>(t_len));
}

/// Total score of an assignment, accumulated from the last row (the decoder's
/// fold order).
inline double assignment_score(const ScoreMatrix& scores, const DecisionMatrix& decision) {
    double total = 0.0;
    for (std::size_t q = decision.q_len(); q-- > 0;) {
        total += scores(q, static_cast<std::size_t>(decision.selected(q) - 1));
    }
    return total;
}

/// Row selection: output frame q is source_pairs[t(q)], i.e. the product of
/// the binary Q x T matrix with the T x F source.
inline Sequence apply_selection(const DecisionMatrix& decision, const Sequence& source_pairs) {
    if (static_cast<std::size_t>(decision.t_len()) != source_pairs.length()) {
        raise(Errc::length_mismatch, "decision matrix covers " + std::to_string(decision.t_len()) +
                                         " source steps, sequence has " +
                                         std::to_string(source_pairs.length()));
    }
    std::vector<FeatureVector> frames;
    frames.reserve(decision.q_len());
    for (std::size_t q = 0; q < decision.q_len(); ++q) {
        frames.push_back(source_pairs[static_cast<std::size_t>(decision.selected(q) - 1)]);
    }
    return Sequence(std::move(frames));
}

/// values[q] = t(q)/T; non-decreasing, in (0,1].
inline AlignmentVector decision_to_alignment_vector(const DecisionMatrix& decision) {
    std::vector<double> values(decision.q_len());
    for (std::size_t q = 0; q < decision.q_len(); ++q) {
        values[q] = static_cast<double>(decision.selected(q)) / static_cast<double>(decision.t_len());
    }
    return AlignmentVector(std::move(values));
}

}  // namespace glossalign
