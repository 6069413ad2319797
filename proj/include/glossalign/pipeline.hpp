#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glossalign/core.hpp"
#include "glossalign/dtw.hpp"
#include "glossalign/losses.hpp"
#include "glossalign/selection.hpp"

namespace glossalign {

// ---------------------------------------------------------------------------
// Dataset records and precomputed supervision
// ---------------------------------------------------------------------------

/// One dataset entry: a source sequence, its summarized counterpart, and an
/// optional gloss label track.
struct PairRecord {
    std::string id;
    Sequence source;
    Sequence summary;
    std::optional<std::vector<int>> gloss_ids;
};

/// Precomputed supervision for one pair: the DTW path between summary (rows)
/// and source (columns), its 1D reduction, the truth column per row and the
/// length-normalized path cost.
struct PairTarget {
    AlignmentPath path;
    AlignmentVector truth_vec;
    std::vector<int> truth_cols;  // 1-based t*(q), the last source index per row
    double norm_cost = 0.0;
};

using TargetMap = std::map<std::string, PairTarget>;

/// DTW targets for every pair; norm_cost = path cost / (Q + T) so thresholds
/// are length-scale free.
inline TargetMap precompute_targets(const std::vector<PairRecord>& dataset, CostKind fn) {
    TargetMap targets;
    for (const PairRecord& pair : dataset) {
        DtwResult res = dtw_align(pair.summary, pair.source, fn);
        AlignmentVector truth = path_to_alignment_vector(res.path);
        std::vector<int> cols(truth.size());
        for (std::size_t q = 0; q < truth.size(); ++q) {
            cols[q] = static_cast<int>(std::lround(truth[q] * static_cast<double>(res.path.t_len())));
        }
        const double norm = res.cost / static_cast<double>(res.path.q_len() + res.path.t_len());
        auto [it, inserted] = targets.emplace(
            pair.id, PairTarget{std::move(res.path), std::move(truth), std::move(cols), norm});
        if (!inserted) raise(Errc::domain_error, "duplicate pair id '" + pair.id + "'");
    }
    return targets;
}

/// Keeps pairs whose normalized DTW cost is at most `threshold`, in stable
/// order.
inline std::vector<PairRecord> filter_dataset(const std::vector<PairRecord>& dataset,
                                              const TargetMap& targets, double threshold) {
    std::vector<PairRecord> kept;
    kept.reserve(dataset.size());
    for (const PairRecord& pair : dataset) {
        auto it = targets.find(pair.id);
        if (it == targets.end()) raise(Errc::missing_target, "no precomputed target for pair '" + pair.id + "'");
        if (it->second.norm_cost <= threshold) kept.push_back(pair);
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Run configuration and reports
// ---------------------------------------------------------------------------

/// The four training-efficiency configurations: base = L2 objective on all
/// data; ds = L2 on the filtered subset; rf = CE+SP supervision on all data;
/// dsrf = CE+SP on the filtered subset.
enum class RunMode { base, ds, rf, dsrf };

inline RunMode run_mode_from_string(const std::string& name) {
    if (name == "base") return RunMode::base;
    if (name == "ds") return RunMode::ds;
    if (name == "rf") return RunMode::rf;
    if (name == "dsrf") return RunMode::dsrf;
    raise(Errc::parse_error, "unknown mode '" + name + "' (expected base|ds|rf|dsrf)");
}

inline std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::base: return "base";
        case RunMode::ds: return "ds";
        case RunMode::rf: return "rf";
        case RunMode::dsrf: return "dsrf";
    }
    return "?";
}

inline bool mode_filters(RunMode mode) { return mode == RunMode::ds || mode == RunMode::dsrf; }
inline bool mode_uses_ce(RunMode mode) { return mode == RunMode::rf || mode == RunMode::dsrf; }

struct RunConfig {
    RunMode mode = RunMode::dsrf;
    LossConfig loss;
    int epochs = 30;
    double lr = 0.5;
    std::uint64_t seed = 0;
    double filter_threshold = 0.5;
};

/// Per-epoch record. wall_seconds is informational only; report files leave
/// it out so seeded runs serialize byte-identically.
struct EpochReport {
    int epoch = 0;
    double loss = 0.0;
    double accuracy = 0.0;
    std::size_t pairs_retained = 0;
    double wall_seconds = 0.0;
};

// ---------------------------------------------------------------------------
// Result Filter training
// ---------------------------------------------------------------------------

namespace detail {

struct NormTrace {
    std::vector<double> normalized;
    std::size_t argmin = 0;
    std::size_t argmax = 0;
    double range = 0.0;
    Normalization method = Normalization::none;
};

inline NormTrace normalize_trace(const std::vector<double>& x, Normalization method) {
    NormTrace trace;
    trace.method = method;
    if (method == Normalization::none) {
        trace.normalized = x;
        return trace;
    }
    trace.argmin = 0;
    trace.argmax = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i] < x[trace.argmin]) trace.argmin = i;
        if (x[i] > x[trace.argmax]) trace.argmax = i;
    }
    trace.range = x[trace.argmax] - x[trace.argmin];
    trace.normalized.assign(x.size(), 0.0);
    if (trace.range > 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            trace.normalized[i] = (x[i] - x[trace.argmin]) / trace.range;
        }
    }
    return trace;
}

inline std::vector<double> normalize_backward(const NormTrace& trace, const std::vector<double>& d_norm) {
    if (trace.method == Normalization::none) return d_norm;
    std::vector<double> dx(d_norm.size(), 0.0);
    if (trace.range <= 0.0) return dx;  // constant input, zero subgradient
    double total = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < d_norm.size(); ++i) {
        total += d_norm[i];
        weighted += d_norm[i] * trace.normalized[i];
    }
    for (std::size_t i = 0; i < d_norm.size(); ++i) dx[i] = d_norm[i] / trace.range;
    dx[trace.argmax] -= weighted / trace.range;
    dx[trace.argmin] += (weighted - total) / trace.range;
    return dx;
}

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Objective value and score-grid gradient for one pair. The CE half follows
/// the row-softmax probabilities at the truth columns; the SP/L2 half runs on
/// the differentiable soft alignment (row-softmax expectation of t/T), since
/// the hard monotone decode has no usable gradient.
struct PairObjective {
    double loss = 0.0;
    Matrix d_scores;
};

inline PairObjective pair_objective(const ScoreMatrix& scores, const PairTarget& target,
                                    RunMode mode, const LossConfig& loss_cfg) {
    const std::size_t q_len = scores.rows();
    const std::size_t t_len = scores.cols();
    const double inv_q = 1.0 / static_cast<double>(q_len);

    PairObjective out;
    out.d_scores = Matrix(q_len, t_len);

    // Row softmax and the soft expected alignment per row.
    Matrix probs(q_len, t_len);
    std::vector<double> soft(q_len, 0.0);
    for (std::size_t q = 0; q < q_len; ++q) {
        double mx = scores(q, 0);
        for (std::size_t t = 1; t < t_len; ++t) mx = std::max(mx, scores(q, t));
        double z = 0.0;
        for (std::size_t t = 0; t < t_len; ++t) {
            probs(q, t) = std::exp(scores(q, t) - mx);
            z += probs(q, t);
        }
        for (std::size_t t = 0; t < t_len; ++t) {
            probs(q, t) /= z;
            soft[q] += probs(q, t) * (static_cast<double>(t + 1) / static_cast<double>(t_len));
        }
    }

    const NormTrace pred_norm = normalize_trace(soft, loss_cfg.normalization);
    const NormTrace truth_norm = normalize_trace(target.truth_vec.values(), loss_cfg.normalization);

    std::vector<double> d_soft_norm(q_len, 0.0);
    if (mode_uses_ce(mode)) {
        double ce = 0.0;
        for (std::size_t q = 0; q < q_len; ++q) {
            const auto truth_col = static_cast<std::size_t>(target.truth_cols[q] - 1);
            ce -= std::log(std::max(probs(q, truth_col), loss_cfg.epsilon));
            for (std::size_t t = 0; t < t_len; ++t) {
                double d = probs(q, t);
                if (t == truth_col) d -= 1.0;
                out.d_scores(q, t) += loss_cfg.lambda_ce * d * inv_q;
            }
        }
        ce *= inv_q;

        double sp = 0.0;
        for (std::size_t q = 0; q < q_len; ++q) {
            const double diff = pred_norm.normalized[q] - truth_norm.normalized[q];
            sp += std::abs(diff);
            d_soft_norm[q] = loss_cfg.lambda_sp * sign(diff) * inv_q;
        }
        sp *= inv_q;
        out.loss = total_loss(loss_cfg, ce, sp);
    } else {
        double l2 = 0.0;
        for (std::size_t q = 0; q < q_len; ++q) {
            const double diff = pred_norm.normalized[q] - truth_norm.normalized[q];
            l2 += diff * diff;
            d_soft_norm[q] = 2.0 * diff * inv_q;
        }
        out.loss = l2 * inv_q;
    }

    const std::vector<double> d_soft = normalize_backward(pred_norm, d_soft_norm);
    for (std::size_t q = 0; q < q_len; ++q) {
        if (d_soft[q] == 0.0) continue;
        for (std::size_t t = 0; t < t_len; ++t) {
            const double v = static_cast<double>(t + 1) / static_cast<double>(t_len);
            out.d_scores(q, t) += d_soft[q] * probs(q, t) * (v - soft[q]);
        }
    }
    return out;
}

}  // namespace detail

/// Fraction of rows where the decoded selection agrees with the DTW truth
/// column, pooled over all evaluation pairs.
inline double alignment_accuracy(const SelectionScorer& scorer, const std::vector<PairRecord>& pairs,
                                 const TargetMap& targets, int tolerance = 0) {
    std::size_t correct = 0;
    std::size_t total = 0;
    for (const PairRecord& pair : pairs) {
        auto it = targets.find(pair.id);
        if (it == targets.end()) raise(Errc::missing_target, "no precomputed target for pair '" + pair.id + "'");
        const ScoreMatrix scores = score_pairs(scorer, SelectionInputs{pair.summary, pair.source});
        const DecisionMatrix decision = decode_monotonic(scores);
        for (std::size_t q = 0; q < decision.q_len(); ++q) {
            correct += std::abs(decision.selected(q) - it->second.truth_cols[q]) <= tolerance ? 1 : 0;
        }
        total += decision.q_len();
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

struct FilterTrainResult {
    SelectionScorer scorer;
    std::vector<EpochReport> epochs;
};

/// Trains the selection scorer against precomputed DTW targets with per-pair
/// gradient steps. Accuracy is measured against `eval_set` when given (the
/// efficiency experiment passes the unfiltered dataset so modes share one
/// yardstick), otherwise against the training set.
inline FilterTrainResult train_result_filter(const std::vector<PairRecord>& dataset,
                                             const TargetMap& targets, const RunConfig& config,
                                             const std::vector<PairRecord>* eval_set = nullptr) {
    if (dataset.empty()) raise(Errc::empty_sequence, "training dataset must be non-empty");
    const std::vector<PairRecord>& eval_pairs = eval_set ? *eval_set : dataset;

    FilterTrainResult result{SelectionScorer(dataset.front().source.dim(), config.seed), {}};
    const double inv_pairs = 1.0 / static_cast<double>(dataset.size());

    result.epochs.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto started = std::chrono::steady_clock::now();
        // Full-batch step: accumulate the mean gradient over the dataset,
        // then one update.
        Matrix w_grad(result.scorer.dim(), result.scorer.dim());
        double b_grad = 0.0;
        double loss_sum = 0.0;
        for (const PairRecord& pair : dataset) {
            auto it = targets.find(pair.id);
            if (it == targets.end()) {
                raise(Errc::missing_target, "no precomputed target for pair '" + pair.id + "'");
            }
            const SelectionInputs inputs{pair.summary, pair.source};
            const ScoreMatrix scores = score_pairs(result.scorer, inputs);
            detail::PairObjective obj = detail::pair_objective(scores, it->second, config.mode, config.loss);
            loss_sum += obj.loss;

            // dL/dW = sum_{q,t} dS(q,t) r_q h_t^T ; dL/db = sum dS.
            for (std::size_t q = 0; q < obj.d_scores.rows(); ++q) {
                for (std::size_t t = 0; t < obj.d_scores.cols(); ++t) {
                    const double d = obj.d_scores(q, t);
                    if (d == 0.0) continue;
                    b_grad += d * inv_pairs;
                    add_outer(w_grad, pair.summary[q], pair.source[t], d * inv_pairs);
                }
            }
        }
        for (std::size_t i = 0; i < w_grad.data().size(); ++i) {
            result.scorer.weights().data()[i] -= config.lr * w_grad.data()[i];
        }
        result.scorer.bias() -= config.lr * b_grad;

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.epochs.push_back(EpochReport{epoch, loss_sum * inv_pairs,
                                            alignment_accuracy(result.scorer, eval_pairs, targets),
                                            dataset.size(), wall});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Training-efficiency experiment
// ---------------------------------------------------------------------------

struct EfficiencyResult {
    std::map<std::string, std::vector<EpochReport>> modes;
};

/// Runs the four configurations under one seed and epoch budget. Filtering
/// modes train on the thresholded subset; every mode is evaluated against the
/// full dataset's DTW targets.
inline EfficiencyResult run_efficiency_experiment(const std::vector<PairRecord>& dataset,
                                                  const RunConfig& base_config, CostKind fn) {
    const TargetMap targets = precompute_targets(dataset, fn);
    EfficiencyResult result;
    for (RunMode mode : {RunMode::base, RunMode::ds, RunMode::rf, RunMode::dsrf}) {
        RunConfig config = base_config;
        config.mode = mode;
        const std::vector<PairRecord> retained =
            mode_filters(mode) ? filter_dataset(dataset, targets, config.filter_threshold) : dataset;
        FilterTrainResult run = train_result_filter(retained, targets, config, &dataset);
        result.modes.emplace(to_string(mode), std::move(run.epochs));
    }
    return result;
}

}  // namespace glossalign
