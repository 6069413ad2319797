#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "glossalign/core.hpp"

namespace glossalign {

enum class Normalization { min_max, none };

inline Normalization normalization_from_string(const std::string& name) {
    if (name == "min-max" || name == "minmax") return Normalization::min_max;
    if (name == "none") return Normalization::none;
    raise(Errc::parse_error, "unknown normalization '" + name + "' (expected min-max|none)");
}

inline std::string to_string(Normalization n) {
    return n == Normalization::min_max ? "min-max" : "none";
}

/// Weights and knobs for composing the training objectives. total = lambda_ce
/// * CE + lambda_sp * SP; the ablation variants are reachable by config alone
/// (lambda_sp = 0 gives CE-only, etc.).
struct LossConfig {
    double lambda_sp = 1.0;
    double lambda_ce = 1.0;
    double epsilon = 1e-12;  // log clamp floor; keeps CE finite at predicted = 0
    Normalization normalization = Normalization::min_max;
};

/// -(1/Q) * sum_q truth_q * log(max(predicted_q, epsilon)) with binary truth.
/// Positions where truth = 0 contribute nothing, so the result is invariant
/// to predicted values there.
inline double cross_entropy_alignment(const AlignmentVector& predicted, const AlignmentVector& truth,
                                      double epsilon = 1e-12) {
    if (predicted.size() != truth.size()) {
        raise(Errc::length_mismatch, "predicted and truth lengths differ");
    }
    if (epsilon <= 0.0) raise(Errc::domain_error, "epsilon must be positive");
    double sum = 0.0;
    for (std::size_t q = 0; q < truth.size(); ++q) {
        const double t = truth[q];
        if (t != 0.0 && t != 1.0) raise(Errc::domain_error, "truth entries must be binary");
        if (t == 1.0) sum -= std::log(std::max(predicted[q], epsilon));
    }
    return sum / static_cast<double>(truth.size());
}

/// Min-max rescale to [0,1]; a constant input maps to all zeros.
inline AlignmentVector normalize_alignment(const std::vector<double>& raw,
                                           Normalization method = Normalization::min_max) {
    if (raw.empty()) raise(Errc::empty_sequence, "cannot normalize an empty vector");
    if (method == Normalization::none) return AlignmentVector(raw);
    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> out(raw.size(), 0.0);
    if (hi > lo) {
        for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - lo) / (hi - lo);
    }
    return AlignmentVector(std::move(out));
}

/// Mean absolute difference of two [0,1]-normalized alignment vectors; lives
/// in [0,1] and is zero iff the vectors are identical.
inline double sp_loss(const AlignmentVector& truth_norm, const AlignmentVector& predicted_norm) {
    if (truth_norm.size() != predicted_norm.size()) {
        raise(Errc::length_mismatch, "alignment vector lengths differ");
    }
    double sum = 0.0;
    for (std::size_t q = 0; q < truth_norm.size(); ++q) {
        sum += std::abs(truth_norm[q] - predicted_norm[q]);
    }
    return sum / static_cast<double>(truth_norm.size());
}

/// Mean squared difference (the baseline objective).
inline double l2_loss(const AlignmentVector& truth, const AlignmentVector& predicted) {
    if (truth.size() != predicted.size()) {
        raise(Errc::length_mismatch, "alignment vector lengths differ");
    }
    double sum = 0.0;
    for (std::size_t q = 0; q < truth.size(); ++q) {
        const double d = truth[q] - predicted[q];
        sum += d * d;
    }
    return sum / static_cast<double>(truth.size());
}

inline double total_loss(const LossConfig& config, double ce, double sp) {
    return config.lambda_ce * ce + config.lambda_sp * sp;
}

}  // namespace glossalign
