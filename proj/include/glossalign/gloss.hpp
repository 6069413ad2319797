#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "glossalign/core.hpp"

namespace glossalign {

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

/// Dense token inventory with fixed reserved ids PAD=0, BOS=1, EOS=2.
class Vocabulary {
public:
    static constexpr int kPad = 0;
    static constexpr int kBos = 1;
    static constexpr int kEos = 2;

    explicit Vocabulary(const std::vector<std::string>& content_tokens) {
        tokens_ = {"<pad>", "<bos>", "<eos>"};
        tokens_.insert(tokens_.end(), content_tokens.begin(), content_tokens.end());
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
                raise(Errc::domain_error, "duplicate token '" + tokens_[i] + "'");
            }
        }
        if (tokens_.size() < 4) raise(Errc::domain_error, "vocabulary needs at least one content token");
    }

    /// Auto-named content tokens t3..t{count+2}; used when ingesting datasets
    /// that carry bare integer ids.
    static Vocabulary sized(int content_count) {
        std::vector<std::string> toks;
        toks.reserve(static_cast<std::size_t>(content_count));
        for (int i = 0; i < content_count; ++i) toks.push_back("t" + std::to_string(i + 3));
        return Vocabulary(toks);
    }

    int size() const noexcept { return static_cast<int>(tokens_.size()); }

    int id(const std::string& token) const {
        auto it = index_.find(token);
        if (it == index_.end()) raise(Errc::unknown_token, "unknown token '" + token + "'");
        return it->second;
    }

    const std::string& token(int id) const {
        if (id < 0 || id >= size()) raise(Errc::unknown_token, "token id " + std::to_string(id) + " out of range");
        return tokens_[static_cast<std::size_t>(id)];
    }

    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct GlossDims {
    int vocab = 0;
    int embed = 16;
    int hidden = 32;
};

/// Encoder-attention-decoder for token-to-gloss mapping.
///
/// Wiring: each input id is embedded (V x E) and projected per position to a
/// hidden state o_n = enc_w * e_n + enc_b; the sentence summary h_L is the
/// mean of the o states. Decoding is a single tanh recurrent cell. At every
/// step the previous decoder state queries a bilinear attention over the o
/// states, the resulting context is added to h_L, and the cell consumes
/// [embed(prev_token); context + h_L] (width E+H) together with its previous
/// state. Logits are a linear readout of the new state.
struct GlossModel {
    GlossDims dims;
    std::uint64_t seed = 0;

    Matrix embed;        // V x E
    Matrix enc_w;        // H x E
    std::vector<double> enc_b;  // H
    Matrix att_w;        // H x H
    Matrix dec_w_in;     // H x (E+H)
    Matrix dec_w_state;  // H x H
    std::vector<double> dec_b;  // H
    Matrix out_w;        // V x H
    std::vector<double> out_b;  // V

    GlossModel(GlossDims d, std::uint64_t rng_seed) : dims(d), seed(rng_seed) {
        if (d.vocab < 4 || d.embed < 1 || d.hidden < 1) {
            raise(Errc::domain_error, "invalid model dims");
        }
        const auto V = static_cast<std::size_t>(d.vocab);
        const auto E = static_cast<std::size_t>(d.embed);
        const auto H = static_cast<std::size_t>(d.hidden);
        embed = Matrix(V, E);
        enc_w = Matrix(H, E);
        enc_b.assign(H, 0.0);
        att_w = Matrix(H, H);
        dec_w_in = Matrix(H, E + H);
        dec_w_state = Matrix(H, H);
        dec_b.assign(H, 0.0);
        out_w = Matrix(V, H);
        out_b.assign(V, 0.0);

        Rng rng(rng_seed);
        auto init = [&rng](Matrix& m, std::size_t fan_in) {
            const double r = 1.0 / std::sqrt(static_cast<double>(fan_in));
            for (double& w : m.data()) w = rng.uniform(-r, r);
        };
        for (double& w : embed.data()) w = rng.uniform(-0.5, 0.5);
        init(enc_w, E);
        init(att_w, H);
        init(dec_w_in, E + H);
        init(dec_w_state, H);
        init(out_w, H);
    }

    void check_token(int id) const {
        if (id < 0 || id >= dims.vocab) {
            raise(Errc::unknown_token, "token id " + std::to_string(id) + " out of range for V=" +
                                           std::to_string(dims.vocab));
        }
    }

    std::vector<double> embedding_of(int id) const {
        check_token(id);
        std::vector<double> e(static_cast<std::size_t>(dims.embed));
        for (std::size_t j = 0; j < e.size(); ++j) e[j] = embed(static_cast<std::size_t>(id), j);
        return e;
    }
};

/// Gradient (or velocity) buffers mirroring GlossModel's weights.
struct GlossGradients {
    Matrix embed, enc_w, att_w, dec_w_in, dec_w_state, out_w;
    std::vector<double> enc_b, dec_b, out_b;

    explicit GlossGradients(const GlossDims& d)
        : embed(static_cast<std::size_t>(d.vocab), static_cast<std::size_t>(d.embed)),
          enc_w(static_cast<std::size_t>(d.hidden), static_cast<std::size_t>(d.embed)),
          att_w(static_cast<std::size_t>(d.hidden), static_cast<std::size_t>(d.hidden)),
          dec_w_in(static_cast<std::size_t>(d.hidden), static_cast<std::size_t>(d.embed + d.hidden)),
          dec_w_state(static_cast<std::size_t>(d.hidden), static_cast<std::size_t>(d.hidden)),
          out_w(static_cast<std::size_t>(d.vocab), static_cast<std::size_t>(d.hidden)),
          enc_b(static_cast<std::size_t>(d.hidden), 0.0),
          dec_b(static_cast<std::size_t>(d.hidden), 0.0),
          out_b(static_cast<std::size_t>(d.vocab), 0.0) {}
};

/// Flat views over every trainable array, in a fixed order shared by the
/// model and its gradient mirror. Drives the optimizer and the
/// finite-difference checks.
struct ParamRef {
    const char* name;
    std::vector<double>* values;
};

inline std::vector<ParamRef> param_refs(GlossModel& m) {
    return {
        {"embed", &m.embed.data()},       {"enc_w", &m.enc_w.data()},
        {"enc_b", &m.enc_b},              {"att_w", &m.att_w.data()},
        {"dec_w_in", &m.dec_w_in.data()}, {"dec_w_state", &m.dec_w_state.data()},
        {"dec_b", &m.dec_b},              {"out_w", &m.out_w.data()},
        {"out_b", &m.out_b},
    };
}

inline std::vector<ParamRef> param_refs(GlossGradients& g) {
    return {
        {"embed", &g.embed.data()},       {"enc_w", &g.enc_w.data()},
        {"enc_b", &g.enc_b},              {"att_w", &g.att_w.data()},
        {"dec_w_in", &g.dec_w_in.data()}, {"dec_w_state", &g.dec_w_state.data()},
        {"dec_b", &g.dec_b},              {"out_w", &g.out_w.data()},
        {"out_b", &g.out_b},
    };
}

struct ConstParamRef {
    const char* name;
    const std::vector<double>* values;
};

inline std::vector<ConstParamRef> param_refs(const GlossModel& m) {
    return {
        {"embed", &m.embed.data()},       {"enc_w", &m.enc_w.data()},
        {"enc_b", &m.enc_b},              {"att_w", &m.att_w.data()},
        {"dec_w_in", &m.dec_w_in.data()}, {"dec_w_state", &m.dec_w_state.data()},
        {"dec_b", &m.dec_b},              {"out_w", &m.out_w.data()},
        {"out_b", &m.out_b},
    };
}

// ---------------------------------------------------------------------------
// Forward operations
// ---------------------------------------------------------------------------

struct EncodeResult {
    Sequence states;             // o_1..o_N, each H-dim
    std::vector<double> pooled;  // h_L = mean of states
};

/// Per-position projection of the embedded inputs plus mean pooling.
inline EncodeResult encode(const GlossModel& model, const std::vector<int>& input_ids) {
    if (input_ids.empty()) raise(Errc::empty_sequence, "encoder input must be non-empty");
    const auto H = static_cast<std::size_t>(model.dims.hidden);
    std::vector<FeatureVector> states;
    states.reserve(input_ids.size());
    std::vector<double> pooled(H, 0.0);
    for (int id : input_ids) {
        std::vector<double> o = matvec(model.enc_w, model.embedding_of(id));
        for (std::size_t i = 0; i < H; ++i) {
            o[i] += model.enc_b[i];
            pooled[i] += o[i];
        }
        states.push_back(std::move(o));
    }
    for (double& v : pooled) v /= static_cast<double>(input_ids.size());
    return EncodeResult{Sequence(std::move(states)), std::move(pooled)};
}

struct AttendResult {
    std::vector<double> context;  // H
    std::vector<double> weights;  // N, sums to 1
};

inline std::vector<double> softmax(const std::vector<double>& scores) {
    const double m = *std::max_element(scores.begin(), scores.end());
    std::vector<double> p(scores.size());
    double z = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        p[i] = std::exp(scores[i] - m);
        z += p[i];
    }
    for (double& v : p) v /= z;
    return p;
}

/// Bilinear attention: weights = softmax over query^T att_w o_n, context =
/// weighted sum of the o states.
inline AttendResult attend(const GlossModel& model, const std::vector<double>& query,
                           const Sequence& states) {
    const std::size_t n_len = states.length();
    std::vector<double> scores(n_len);
    const std::vector<double> qw = matvec_t(model.att_w, query);  // att_w^T q
    for (std::size_t n = 0; n < n_len; ++n) scores[n] = dot(qw, states[n]);
    std::vector<double> weights = softmax(scores);
    std::vector<double> context(static_cast<std::size_t>(model.dims.hidden), 0.0);
    for (std::size_t n = 0; n < n_len; ++n) add_scaled(context, states[n], weights[n]);
    return AttendResult{std::move(context), std::move(weights)};
}

struct DecodeStepResult {
    std::vector<double> logits;       // V
    std::vector<double> state;        // H
    std::vector<double> att_weights;  // N
};

namespace detail {

/// One decoder step plus the intermediates backprop needs.
struct StepTrace {
    std::vector<double> att_weights;  // N
    std::vector<double> context;      // H
    std::vector<double> input;        // E+H: [embed(prev); context + h_L]
    std::vector<double> state;        // H (post-tanh)
    std::vector<double> probs;        // V (softmax of logits)
    std::vector<double> logits;       // V
    int prev_id = 0;
};

inline StepTrace run_decoder_step(const GlossModel& model, const std::vector<double>& pooled,
                                  const Sequence& states, const std::vector<double>& prev_state,
                                  int prev_id) {
    model.check_token(prev_id);
    const auto E = static_cast<std::size_t>(model.dims.embed);
    const auto H = static_cast<std::size_t>(model.dims.hidden);

    StepTrace trace;
    trace.prev_id = prev_id;
    AttendResult att = attend(model, prev_state, states);
    trace.att_weights = std::move(att.weights);
    trace.context = std::move(att.context);

    trace.input.resize(E + H);
    for (std::size_t j = 0; j < E; ++j) trace.input[j] = model.embed(static_cast<std::size_t>(prev_id), j);
    for (std::size_t i = 0; i < H; ++i) trace.input[E + i] = trace.context[i] + pooled[i];

    std::vector<double> z = matvec(model.dec_w_in, trace.input);
    const std::vector<double> rec = matvec(model.dec_w_state, prev_state);
    trace.state.resize(H);
    for (std::size_t i = 0; i < H; ++i) trace.state[i] = std::tanh(z[i] + rec[i] + model.dec_b[i]);

    trace.logits = matvec(model.out_w, trace.state);
    for (std::size_t v = 0; v < trace.logits.size(); ++v) trace.logits[v] += model.out_b[v];
    trace.probs = softmax(trace.logits);
    return trace;
}

}  // namespace detail

/// One recurrent step conditioned on the pooled summary, the encoder states
/// and the previously emitted token. Pure: identical inputs give identical
/// logits.
inline DecodeStepResult decode_step(const GlossModel& model, const std::vector<double>& pooled,
                                    const Sequence& states, const std::vector<double>& prev_state,
                                    int prev_gloss_id) {
    detail::StepTrace t = detail::run_decoder_step(model, pooled, states, prev_state, prev_gloss_id);
    return DecodeStepResult{std::move(t.logits), std::move(t.state), std::move(t.att_weights)};
}

struct DecodeOutput {
    std::vector<int> gloss_ids;             // ends in EOS unless truncated at max_len
    std::vector<std::vector<double>> attention;  // one row per emitted token
};

/// Argmax decoding from BOS with a zero initial state; stops after emitting
/// EOS or at max_len.
inline DecodeOutput greedy_decode(const GlossModel& model, const std::vector<int>& input_ids,
                                  int max_len) {
    if (max_len < 1) raise(Errc::domain_error, "max_len must be >= 1");
    const EncodeResult enc = encode(model, input_ids);
    std::vector<double> state(static_cast<std::size_t>(model.dims.hidden), 0.0);
    int prev = Vocabulary::kBos;
    DecodeOutput out;
    for (int m = 0; m < max_len; ++m) {
        detail::StepTrace t = detail::run_decoder_step(model, enc.pooled, enc.states, state, prev);
        int arg = 0;
        for (std::size_t v = 1; v < t.logits.size(); ++v) {
            if (t.logits[v] > t.logits[static_cast<std::size_t>(arg)]) arg = static_cast<int>(v);
        }
        out.gloss_ids.push_back(arg);
        out.attention.push_back(t.att_weights);
        state = std::move(t.state);
        prev = arg;
        if (arg == Vocabulary::kEos) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Training objective and gradients
// ---------------------------------------------------------------------------

struct TokenPair {
    std::vector<int> input;
    std::vector<int> target;  // gloss ids without the trailing EOS
};

namespace detail {

/// Teacher-forced forward pass; returns summed NLL and the traces needed for
/// the backward pass. Targets are EOS-terminated; PAD targets are skipped.
struct SequenceTrace {
    EncodeResult enc;
    std::vector<StepTrace> steps;
    std::vector<int> step_targets;
    double nll_sum = 0.0;
};

inline SequenceTrace run_teacher_forced(const GlossModel& model, const TokenPair& pair) {
    if (pair.target.empty()) raise(Errc::empty_sequence, "target gloss must be non-empty");
    for (int id : pair.target) model.check_token(id);

    SequenceTrace trace{encode(model, pair.input), {}, {}, 0.0};
    std::vector<double> state(static_cast<std::size_t>(model.dims.hidden), 0.0);
    int prev = Vocabulary::kBos;
    std::vector<int> targets = pair.target;
    targets.push_back(Vocabulary::kEos);
    for (int y : targets) {
        if (y == Vocabulary::kPad) continue;
        StepTrace st = run_decoder_step(model, trace.enc.pooled, trace.enc.states, state, prev);
        trace.nll_sum -= std::log(st.probs[static_cast<std::size_t>(y)]);
        state = st.state;
        trace.steps.push_back(std::move(st));
        trace.step_targets.push_back(y);
        prev = y;
    }
    if (trace.steps.empty()) raise(Errc::empty_sequence, "target gloss contains only PAD");
    return trace;
}

}  // namespace detail

/// Mean token-level negative log-likelihood of the EOS-terminated target
/// under teacher forcing (BOS-shifted inputs); PAD targets are excluded.
inline double teacher_forced_loss(const GlossModel& model, const std::vector<int>& input_ids,
                                  const std::vector<int>& target_gloss_ids) {
    detail::SequenceTrace trace = detail::run_teacher_forced(model, TokenPair{input_ids, target_gloss_ids});
    return trace.nll_sum / static_cast<double>(trace.steps.size());
}

/// Token-mean NLL over a batch: sum of per-token NLL divided by the total
/// number of scored target tokens.
inline double batch_loss(const GlossModel& model, const std::vector<TokenPair>& batch) {
    if (batch.empty()) raise(Errc::empty_sequence, "batch must be non-empty");
    double nll = 0.0;
    std::size_t tokens = 0;
    for (const TokenPair& pair : batch) {
        detail::SequenceTrace trace = detail::run_teacher_forced(model, pair);
        nll += trace.nll_sum;
        tokens += trace.steps.size();
    }
    return nll / static_cast<double>(tokens);
}

struct GradResult {
    GlossGradients grads;
    double loss = 0.0;
    std::size_t tokens = 0;
};

/// Analytic gradients of batch_loss with respect to every weight, by
/// backpropagation through the decoder recurrence, the attention and the
/// pooled encoder.
inline GradResult grad(const GlossModel& model, const std::vector<TokenPair>& batch) {
    if (batch.empty()) raise(Errc::empty_sequence, "batch must be non-empty");
    const auto E = static_cast<std::size_t>(model.dims.embed);
    const auto H = static_cast<std::size_t>(model.dims.hidden);

    std::vector<detail::SequenceTrace> traces;
    traces.reserve(batch.size());
    std::size_t total_tokens = 0;
    double nll = 0.0;
    for (const TokenPair& pair : batch) {
        traces.push_back(detail::run_teacher_forced(model, pair));
        total_tokens += traces.back().steps.size();
        nll += traces.back().nll_sum;
    }
    const double inv_tokens = 1.0 / static_cast<double>(total_tokens);

    GradResult result{GlossGradients(model.dims), nll * inv_tokens, total_tokens};
    GlossGradients& g = result.grads;

    for (std::size_t b = 0; b < batch.size(); ++b) {
        const detail::SequenceTrace& trace = traces[b];
        const Sequence& states = trace.enc.states;
        const std::size_t n_len = states.length();

        // att_w * o_n, reused for the query gradient at every step.
        std::vector<std::vector<double>> att_states(n_len);
        for (std::size_t n = 0; n < n_len; ++n) att_states[n] = matvec(model.att_w, states[n]);

        std::vector<std::vector<double>> d_states(n_len, std::vector<double>(H, 0.0));
        std::vector<double> d_pooled(H, 0.0);
        std::vector<double> d_state_next(H, 0.0);  // dL/ds_m flowing backwards
        const std::vector<double> zero_state(H, 0.0);

        for (std::size_t m = trace.steps.size(); m-- > 0;) {
            const detail::StepTrace& st = trace.steps[m];
            const std::vector<double>& prev_state = (m == 0) ? zero_state : trace.steps[m - 1].state;

            // Readout: dL/dlogits = (p - onehot(y)) / Ntok.
            std::vector<double> d_logits = st.probs;
            d_logits[static_cast<std::size_t>(trace.step_targets[m])] -= 1.0;
            for (double& v : d_logits) v *= inv_tokens;
            add_outer(g.out_w, d_logits, st.state);
            add_scaled(g.out_b, d_logits, 1.0);

            std::vector<double> d_state = matvec_t(model.out_w, d_logits);
            for (std::size_t i = 0; i < H; ++i) d_state[i] += d_state_next[i];

            // Through tanh.
            std::vector<double> d_pre(H);
            for (std::size_t i = 0; i < H; ++i) d_pre[i] = d_state[i] * (1.0 - st.state[i] * st.state[i]);

            add_outer(g.dec_w_in, d_pre, st.input);
            add_scaled(g.dec_b, d_pre, 1.0);
            add_outer(g.dec_w_state, d_pre, prev_state);

            const std::vector<double> d_input = matvec_t(model.dec_w_in, d_pre);
            for (std::size_t j = 0; j < E; ++j) {
                g.embed(static_cast<std::size_t>(st.prev_id), j) += d_input[j];
            }
            std::vector<double> d_mix(H);  // grad of context + h_L
            for (std::size_t i = 0; i < H; ++i) d_mix[i] = d_input[E + i];
            add_scaled(d_pooled, d_mix, 1.0);

            // Attention backward: context = sum_n w_n o_n, w = softmax(a),
            // a_n = prev_state^T att_w o_n.
            std::vector<double> d_weights(n_len);
            for (std::size_t n = 0; n < n_len; ++n) d_weights[n] = dot(d_mix, states[n]);
            double weighted = 0.0;
            for (std::size_t n = 0; n < n_len; ++n) weighted += st.att_weights[n] * d_weights[n];
            std::vector<double> d_scores(n_len);
            for (std::size_t n = 0; n < n_len; ++n) {
                d_scores[n] = st.att_weights[n] * (d_weights[n] - weighted);
            }

            std::vector<double> d_query(H, 0.0);
            const std::vector<double> att_t_query = matvec_t(model.att_w, prev_state);
            for (std::size_t n = 0; n < n_len; ++n) {
                add_scaled(d_query, att_states[n], d_scores[n]);
                add_outer(g.att_w, prev_state, states[n], d_scores[n]);
                add_scaled(d_states[n], att_t_query, d_scores[n]);
                add_scaled(d_states[n], d_mix, st.att_weights[n]);
            }

            // Into the previous decoder state: recurrence plus attention query.
            d_state_next = matvec_t(model.dec_w_state, d_pre);
            for (std::size_t i = 0; i < H; ++i) d_state_next[i] += d_query[i];
        }
        // d_state_next now targets s_0 = 0, a constant: dropped.

        // Pooling: h_L = mean of o states.
        const double inv_n = 1.0 / static_cast<double>(n_len);
        for (std::size_t n = 0; n < n_len; ++n) add_scaled(d_states[n], d_pooled, inv_n);

        // Encoder projection and input embeddings.
        for (std::size_t n = 0; n < n_len; ++n) {
            const int token = batch[b].input[n];
            const std::vector<double> embedded = model.embedding_of(token);
            add_outer(g.enc_w, d_states[n], embedded);
            add_scaled(g.enc_b, d_states[n], 1.0);
            const std::vector<double> d_embed = matvec_t(model.enc_w, d_states[n]);
            for (std::size_t j = 0; j < E; ++j) {
                g.embed(static_cast<std::size_t>(token), j) += d_embed[j];
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

struct GlossTrainConfig {
    int epochs = 1;
    double lr = 0.1;
    std::uint64_t seed = 0;
    double momentum = 0.9;
};

struct GlossEpoch {
    int epoch = 0;
    double loss = 0.0;
    double exact_match = 0.0;
};

/// Exact sequence match under greedy decoding, EOS placement included.
inline bool decodes_exactly(const GlossModel& model, const TokenPair& pair) {
    std::vector<int> expect = pair.target;
    expect.push_back(Vocabulary::kEos);
    const DecodeOutput out = greedy_decode(model, pair.input, static_cast<int>(expect.size()));
    return out.gloss_ids == expect;
}

inline double exact_match_accuracy(const GlossModel& model, const std::vector<TokenPair>& dataset) {
    std::size_t hits = 0;
    for (const TokenPair& pair : dataset) {
        if (decodes_exactly(model, pair)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

/// Per-example gradient descent with fixed momentum and a seeded shuffle each
/// epoch. Single-threaded and bit-reproducible for a given seed.
inline std::vector<GlossEpoch> train(GlossModel& model, const std::vector<TokenPair>& dataset,
                                     const GlossTrainConfig& config) {
    if (dataset.empty()) raise(Errc::empty_sequence, "training dataset must be non-empty");
    Rng rng(config.seed);
    GlossGradients velocity(model.dims);
    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<GlossEpoch> report;
    report.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        rng.shuffle(order);
        double nll = 0.0;
        std::size_t tokens = 0;
        for (std::size_t idx : order) {
            GradResult res = grad(model, {dataset[idx]});
            nll += res.loss * static_cast<double>(res.tokens);
            tokens += res.tokens;

            auto model_params = param_refs(model);
            auto grad_params = param_refs(res.grads);
            auto vel_params = param_refs(velocity);
            for (std::size_t p = 0; p < model_params.size(); ++p) {
                std::vector<double>& w = *model_params[p].values;
                const std::vector<double>& gv = *grad_params[p].values;
                std::vector<double>& v = *vel_params[p].values;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    v[i] = config.momentum * v[i] - config.lr * gv[i];
                    w[i] += v[i];
                }
            }
        }
        report.push_back(GlossEpoch{epoch, nll / static_cast<double>(tokens),
                                    exact_match_accuracy(model, dataset)});
    }
    return report;
}

}  // namespace glossalign
