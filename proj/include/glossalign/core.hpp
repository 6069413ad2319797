#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glossalign {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
    empty_sequence,
    ragged_dims,
    non_finite,
    dim_mismatch,
    length_mismatch,
    domain_error,
    too_large_for_oracle,
    unknown_token,
    missing_target,
    parse_error,
};

/// Library-wide exception; `code()` identifies the failure class so callers
/// and tests can distinguish error kinds without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) {
    throw Error(code, msg);
}

// ---------------------------------------------------------------------------
// Sequence
// ---------------------------------------------------------------------------

using FeatureVector = std::vector<double>;

/// A length-T list of fixed-dimension feature vectors. Token sequences are
/// represented as dim-1 integer-valued frames so one type serves both the
/// gloss (token) and continuous (embedding) paths. Immutable once built.
class Sequence {
public:
    explicit Sequence(std::vector<FeatureVector> frames) : frames_(std::move(frames)) {
        if (frames_.empty()) raise(Errc::empty_sequence, "sequence must contain at least one frame");
        const std::size_t dim = frames_[0].size();
        if (dim == 0) raise(Errc::ragged_dims, "frames must have dimension >= 1");
        for (std::size_t t = 0; t < frames_.size(); ++t) {
            if (frames_[t].size() != dim) {
                raise(Errc::ragged_dims, "frame " + std::to_string(t) + " has dim " +
                                             std::to_string(frames_[t].size()) + ", expected " +
                                             std::to_string(dim));
            }
            for (double v : frames_[t]) {
                if (!std::isfinite(v)) {
                    raise(Errc::non_finite, "frame " + std::to_string(t) + " contains a non-finite value");
                }
            }
        }
    }

    static Sequence from_tokens(const std::vector<int>& ids) {
        std::vector<FeatureVector> frames;
        frames.reserve(ids.size());
        for (int id : ids) frames.push_back({static_cast<double>(id)});
        return Sequence(std::move(frames));
    }

    std::size_t length() const noexcept { return frames_.size(); }
    std::size_t dim() const noexcept { return frames_[0].size(); }

    const FeatureVector& operator[](std::size_t t) const { return frames_[t]; }
    const std::vector<FeatureVector>& frames() const noexcept { return frames_; }

    /// Recover token ids from a dim-1 integer-valued sequence.
    std::vector<int> to_tokens() const {
        if (dim() != 1) raise(Errc::dim_mismatch, "token sequences must have dim 1");
        std::vector<int> ids;
        ids.reserve(frames_.size());
        for (const auto& f : frames_) {
            double v = f[0];
            if (v != std::floor(v)) raise(Errc::domain_error, "token frame is not integer-valued");
            ids.push_back(static_cast<int>(v));
        }
        return ids;
    }

    bool operator==(const Sequence&) const = default;

private:
    std::vector<FeatureVector> frames_;
};

// ---------------------------------------------------------------------------
// Alignment paths and vectors
// ---------------------------------------------------------------------------

/// One cell of a warping path; indices are 1-based as in the file formats.
struct PathStep {
    int q = 0;
    int t = 0;
    bool operator==(const PathStep&) const = default;
};

/// A monotonic warping path through a Q x T grid: starts at (1,1), ends at
/// (Q,T), and every step advances by (1,0), (0,1) or (1,1).
class AlignmentPath {
public:
    AlignmentPath(std::vector<PathStep> steps, int q_len, int t_len)
        : steps_(std::move(steps)), q_len_(q_len), t_len_(t_len) {
        if (q_len_ < 1 || t_len_ < 1 || steps_.empty()) {
            raise(Errc::domain_error, "alignment path must cover a non-empty grid");
        }
        if (steps_.front() != PathStep{1, 1}) {
            raise(Errc::domain_error, "alignment path must start at (1,1)");
        }
        if (steps_.back() != PathStep{q_len_, t_len_}) {
            raise(Errc::domain_error, "alignment path must end at (Q,T)");
        }
        for (std::size_t i = 1; i < steps_.size(); ++i) {
            const int dq = steps_[i].q - steps_[i - 1].q;
            const int dt = steps_[i].t - steps_[i - 1].t;
            const bool ok = (dq == 1 && dt == 0) || (dq == 0 && dt == 1) || (dq == 1 && dt == 1);
            if (!ok) raise(Errc::domain_error, "alignment path step " + std::to_string(i) + " is not monotonic");
        }
    }

    const std::vector<PathStep>& steps() const noexcept { return steps_; }
    int q_len() const noexcept { return q_len_; }
    int t_len() const noexcept { return t_len_; }

    bool operator==(const AlignmentPath&) const = default;

private:
    std::vector<PathStep> steps_;
    int q_len_ = 0;
    int t_len_ = 0;
};

/// A per-target-step alignment summary: Q values in [0,1].
class AlignmentVector {
public:
    explicit AlignmentVector(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) raise(Errc::empty_sequence, "alignment vector must be non-empty");
        for (double v : values_) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                raise(Errc::domain_error, "alignment vector values must lie in [0,1]");
            }
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t q) const { return values_[q]; }
    const std::vector<double>& values() const noexcept { return values_; }

    bool operator==(const AlignmentVector&) const = default;

private:
    std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Local cost functions
// ---------------------------------------------------------------------------

enum class CostKind {
    abs_diff,        // |a - b| on scalar frames
    euclidean,       // L2 distance on vector frames
    token_mismatch,  // 0/1 on scalar token frames
};

inline CostKind cost_kind_from_string(const std::string& name) {
    if (name == "abs") return CostKind::abs_diff;
    if (name == "euclidean") return CostKind::euclidean;
    if (name == "token") return CostKind::token_mismatch;
    raise(Errc::parse_error, "unknown cost function '" + name + "' (expected abs|euclidean|token)");
}

inline std::string to_string(CostKind kind) {
    switch (kind) {
        case CostKind::abs_diff: return "abs";
        case CostKind::euclidean: return "euclidean";
        case CostKind::token_mismatch: return "token";
    }
    return "?";
}

/// Symmetric non-negative local cost between two frames; zero on identical
/// inputs. abs-diff and token-mismatch require scalar (dim-1) frames.
inline double local_cost(const FeatureVector& a, const FeatureVector& b, CostKind kind) {
    if (a.size() != b.size()) {
        raise(Errc::dim_mismatch, "frame dims differ: " + std::to_string(a.size()) + " vs " +
                                      std::to_string(b.size()));
    }
    switch (kind) {
        case CostKind::abs_diff:
            if (a.size() != 1) raise(Errc::dim_mismatch, "abs-diff cost expects dim-1 frames");
            return std::abs(a[0] - b[0]);
        case CostKind::euclidean: {
            double sum = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                sum += d * d;
            }
            return std::sqrt(sum);
        }
        case CostKind::token_mismatch:
            if (a.size() != 1) raise(Errc::dim_mismatch, "token-mismatch cost expects dim-1 frames");
            return a[0] == b[0] ? 0.0 : 1.0;
    }
    raise(Errc::domain_error, "unhandled cost kind");
}

// ---------------------------------------------------------------------------
// Dense row-major matrix
// ---------------------------------------------------------------------------

/// Minimal dense double matrix; shared by cost grids, score grids and model
/// weights.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Small vector helpers
// ---------------------------------------------------------------------------

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// y = M x
inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

/// y = M^T x
inline std::vector<double> matvec_t(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) y[c] += m(r, c) * x[r];
    }
    return y;
}

/// M += scale * a b^T
inline void add_outer(Matrix& m, const std::vector<double>& a, const std::vector<double>& b,
                      double scale = 1.0) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double ar = scale * a[r];
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) += ar * b[c];
    }
}

inline void add_scaled(std::vector<double>& y, const std::vector<double>& x, double scale) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * x[i];
}

// ---------------------------------------------------------------------------
// Deterministic RNG
// ---------------------------------------------------------------------------

/// mt19937_64 with hand-rolled value mapping. std::uniform_* distributions
/// are implementation-defined, so seeded runs stay reproducible only if we
/// map raw draws ourselves.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }

    std::uint64_t next() { return gen_(); }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(gen_() % i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace glossalign
