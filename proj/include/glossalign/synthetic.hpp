#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "glossalign/core.hpp"
#include "glossalign/gloss.hpp"
#include "glossalign/pipeline.hpp"

namespace glossalign {

// Seeded generators for the desk-scale benchmarks. The encoder is
// permutation-invariant over input positions, so the token tasks sample
// inputs with pairwise-distinct multisets; otherwise two training pairs could
// demand different outputs for indistinguishable inputs.

struct GlossTaskData {
    Vocabulary vocab;
    std::vector<TokenPair> pairs;
};

/// Copy task: target equals the input token sequence.
inline GlossTaskData make_copy_task(std::uint64_t seed, int n_pairs = 500, int vocab_size = 20,
                                    int min_len = 2, int max_len = 8) {
    const int content = vocab_size - 3;
    if (content < 1) raise(Errc::domain_error, "vocab too small");
    Rng rng(seed);
    std::set<std::vector<int>> seen;  // sorted token multisets
    std::vector<TokenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n_pairs));
    while (static_cast<int>(pairs.size()) < n_pairs) {
        const int len = rng.uniform_int(min_len, max_len);
        std::vector<int> tokens(static_cast<std::size_t>(len));
        for (int& t : tokens) t = rng.uniform_int(3, vocab_size - 1);
        std::vector<int> key = tokens;
        std::sort(key.begin(), key.end());
        if (!seen.insert(std::move(key)).second) continue;
        pairs.push_back(TokenPair{tokens, tokens});
    }
    return GlossTaskData{Vocabulary::sized(content), std::move(pairs)};
}

/// Summarization grammar: modifier tokens (the top `modifier_count` ids) are
/// dropped from the input to form the target; content tokens survive in
/// order.
inline GlossTaskData make_summarization_task(std::uint64_t seed, int n_pairs = 500,
                                             int content_count = 12, int modifier_count = 5,
                                             int min_len = 3, int max_len = 8) {
    Rng rng(seed);
    const int first_modifier = 3 + content_count;
    const int vocab_size = first_modifier + modifier_count;
    std::set<std::vector<int>> seen;
    std::vector<TokenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n_pairs));
    while (static_cast<int>(pairs.size()) < n_pairs) {
        const int len = rng.uniform_int(min_len, max_len);
        std::vector<int> input(static_cast<std::size_t>(len));
        std::vector<int> target;
        for (int& t : input) {
            if (rng.uniform(0.0, 1.0) < 0.35) {
                t = rng.uniform_int(first_modifier, vocab_size - 1);
            } else {
                t = rng.uniform_int(3, first_modifier - 1);
                target.push_back(t);
            }
        }
        if (target.empty()) continue;
        std::vector<int> key = input;
        std::sort(key.begin(), key.end());
        if (!seen.insert(std::move(key)).second) continue;
        pairs.push_back(TokenPair{std::move(input), std::move(target)});
    }
    return GlossTaskData{Vocabulary::sized(content_count + modifier_count), std::move(pairs)};
}

/// PairRecords for the token tasks: source carries the input ids, summary and
/// gloss carry the target ids.
inline std::vector<PairRecord> to_pair_records(const GlossTaskData& task, const std::string& id_prefix) {
    std::vector<PairRecord> records;
    records.reserve(task.pairs.size());
    for (std::size_t i = 0; i < task.pairs.size(); ++i) {
        records.push_back(PairRecord{id_prefix + std::to_string(i),
                                     Sequence::from_tokens(task.pairs[i].input),
                                     Sequence::from_tokens(task.pairs[i].target),
                                     task.pairs[i].target});
    }
    return records;
}

struct AlignmentBenchmark {
    std::vector<PairRecord> pairs;
    std::vector<std::string> corrupted_ids;  // generator-side labels, for tests
};

struct BenchmarkParams {
    int n_pairs = 120;
    double corrupt_fraction = 0.1;
    int dim = 3;
    int min_source_len = 12;
    int max_source_len = 20;
    double min_turn = 0.30;       // per-step angular drift of the source frames
    double max_turn = 0.42;
    double summary_noise = 0.01;
    double corrupt_min_cost = 0.55;  // reshuffle until the corrupted pair costs at least this
};

/// Source frames sit on a slowly rotating sphere: consecutive frames stay
/// close while frames far apart in time point in clearly different
/// directions. Summaries subsample the source at increasing indices with
/// slight noise, so clean pairs align at low DTW cost; corrupted pairs get
/// their source frames shuffled after the summary is built, which pairs
/// distant directions and pushes the normalized cost past the filter
/// threshold. Directional frames also give the bilinear scorer something to
/// learn: the inner product peaks at the matching frame.
inline AlignmentBenchmark make_alignment_benchmark(std::uint64_t seed,
                                                   const BenchmarkParams& params = {}) {
    Rng rng(seed);
    AlignmentBenchmark bench;
    bench.pairs.reserve(static_cast<std::size_t>(params.n_pairs));

    const int n_corrupt = static_cast<int>(std::lround(params.corrupt_fraction * params.n_pairs));
    std::vector<std::size_t> indices(static_cast<std::size_t>(params.n_pairs));
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    rng.shuffle(indices);
    std::set<std::size_t> corrupt_set(indices.begin(), indices.begin() + n_corrupt);

    auto normalize = [](FeatureVector& v) {
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    };
    auto random_unit = [&](std::size_t dim) {
        FeatureVector v(dim);
        do {
            for (double& x : v) x = rng.uniform(-1.0, 1.0);
        } while (dot(v, v) < 1e-3);
        normalize(v);
        return v;
    };

    for (int i = 0; i < params.n_pairs; ++i) {
        const int t_len = rng.uniform_int(params.min_source_len, params.max_source_len);
        const double radius = rng.uniform(1.15, 1.35);
        // Total sweep stays under 2*pi so no two time steps share a direction.
        const double turn = std::min(rng.uniform(params.min_turn, params.max_turn),
                                     5.5 / static_cast<double>(t_len));

        // Orthonormal basis of the rotation plane.
        const FeatureVector axis_a = random_unit(static_cast<std::size_t>(params.dim));
        FeatureVector axis_b = random_unit(static_cast<std::size_t>(params.dim));
        const double overlap = dot(axis_b, axis_a);
        for (std::size_t d = 0; d < axis_b.size(); ++d) axis_b[d] -= overlap * axis_a[d];
        if (dot(axis_b, axis_b) < 1e-6) {
            std::size_t k = 0;
            for (std::size_t d = 1; d < axis_a.size(); ++d) {
                if (std::abs(axis_a[d]) < std::abs(axis_a[k])) k = d;
            }
            axis_b.assign(axis_a.size(), 0.0);
            axis_b[k] = 1.0;
            const double o2 = dot(axis_b, axis_a);
            for (std::size_t d = 0; d < axis_b.size(); ++d) axis_b[d] -= o2 * axis_a[d];
        }
        normalize(axis_b);

        std::vector<FeatureVector> source;
        source.reserve(static_cast<std::size_t>(t_len));
        for (int t = 0; t < t_len; ++t) {
            const double angle = turn * static_cast<double>(t);
            FeatureVector frame(static_cast<std::size_t>(params.dim));
            for (std::size_t d = 0; d < frame.size(); ++d) {
                frame[d] = radius * (std::cos(angle) * axis_a[d] + std::sin(angle) * axis_b[d]) +
                           rng.uniform(-0.02, 0.02);
            }
            source.push_back(std::move(frame));
        }

        const int q_len = rng.uniform_int((3 * t_len) / 4, (9 * t_len) / 10);
        std::vector<std::size_t> picks(static_cast<std::size_t>(t_len));
        for (std::size_t p = 0; p < picks.size(); ++p) picks[p] = p;
        rng.shuffle(picks);
        picks.resize(static_cast<std::size_t>(q_len));
        std::sort(picks.begin(), picks.end());

        std::vector<FeatureVector> summary;
        summary.reserve(picks.size());
        for (std::size_t p : picks) {
            FeatureVector frame = source[p];
            for (double& v : frame) v += rng.uniform(-params.summary_noise, params.summary_noise);
            summary.push_back(std::move(frame));
        }

        const bool corrupted = corrupt_set.count(static_cast<std::size_t>(i)) > 0;
        if (corrupted) {
            // Reshuffle until the normalized DTW cost clears the filter
            // threshold with margin; a random permutation can land close to
            // monotone on short sequences. Verified here, at generation time.
            const Sequence summary_seq(summary);
            std::vector<FeatureVector> best = source;
            double best_cost = -1.0;
            for (int attempt = 0; attempt < 50 && best_cost < params.corrupt_min_cost; ++attempt) {
                rng.shuffle(source);
                const double cost = dtw_align(summary_seq, Sequence(source), CostKind::euclidean).cost /
                                    static_cast<double>(q_len + t_len);
                if (cost > best_cost) {
                    best_cost = cost;
                    best = source;
                }
            }
            source = std::move(best);
        }

        std::string id = "pair" + std::to_string(i);
        if (corrupted) bench.corrupted_ids.push_back(id);
        bench.pairs.push_back(
            PairRecord{std::move(id), Sequence(std::move(source)), Sequence(std::move(summary)), {}});
    }
    return bench;
}

}  // namespace glossalign
