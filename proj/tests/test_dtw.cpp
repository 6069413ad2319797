#include <catch2/catch_amalgamated.hpp>

#include "glossalign/dtw.hpp"
#include "glossalign/verification.hpp"

using namespace glossalign;

namespace {

Sequence scalars(std::initializer_list<double> values) {
    std::vector<FeatureVector> frames;
    for (double v : values) frames.push_back({v});
    return Sequence(std::move(frames));
}

}  // namespace

TEST_CASE("cost matrix lays out |target - source|", "[dtw]") {
    const CostMatrix costs = build_cost_matrix(scalars({1, 3}), scalars({1, 2, 3}), CostKind::abs_diff);
    REQUIRE(costs.rows() == 2);
    REQUIRE(costs.cols() == 3);
    CHECK(costs(0, 0) == 0);
    CHECK(costs(0, 1) == 1);
    CHECK(costs(0, 2) == 2);
    CHECK(costs(1, 0) == 2);
    CHECK(costs(1, 1) == 1);
    CHECK(costs(1, 2) == 0);

    const CostMatrix identity = build_cost_matrix(scalars({5}), scalars({5}), CostKind::abs_diff);
    CHECK(identity(0, 0) == 0);

    const Sequence two(std::vector<FeatureVector>{{1.0, 2.0}});
    const Sequence three(std::vector<FeatureVector>{{1.0, 2.0, 3.0}});
    CHECK_THROWS_AS(build_cost_matrix(two, three, CostKind::euclidean), Error);
}

TEST_CASE("dtw aligns the worked examples", "[dtw]") {
    SECTION("identity alignment") {
        const Sequence s = scalars({1, 2, 3});
        const DtwResult res = dtw_align(s, s, CostKind::abs_diff);
        CHECK(res.cost == 0.0);
        CHECK(res.path.steps() == std::vector<PathStep>{{1, 1}, {2, 2}, {3, 3}});
    }
    SECTION("2x3 grid minimum") {
        const DtwResult res = dtw_align(scalars({0, 2}), scalars({0, 1, 2}), CostKind::abs_diff);
        CHECK(res.cost == 1.0);
    }
    SECTION("single-row grid has a forced path") {
        const DtwResult res = dtw_align(scalars({5}), scalars({1, 2}), CostKind::abs_diff);
        CHECK(res.cost == 7.0);
        CHECK(res.path.steps() == std::vector<PathStep>{{1, 1}, {1, 2}});
    }
}

TEST_CASE("dtw result cost equals the sum of visited entries", "[dtw]") {
    Rng rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FeatureVector> a, b;
        const int la = rng.uniform_int(1, 7), lb = rng.uniform_int(1, 7);
        for (int i = 0; i < la; ++i) a.push_back({rng.uniform(-3, 3)});
        for (int i = 0; i < lb; ++i) b.push_back({rng.uniform(-3, 3)});
        const Sequence target(a), source(b);
        const DtwResult res = dtw_align(target, source, CostKind::abs_diff);
        const CostMatrix costs = build_cost_matrix(target, source, CostKind::abs_diff);
        CHECK_THAT(res.cost, Catch::Matchers::WithinAbs(path_cost(costs, res.path), 1e-12));
    }
}

TEST_CASE("oracle guard rejects long sequences", "[dtw]") {
    std::vector<FeatureVector> frames(8, FeatureVector{0.0});
    const Sequence long_seq(frames);
    const Sequence short_seq(std::vector<FeatureVector>{{0.0}});
    try {
        oracle_align(long_seq, short_seq, CostKind::abs_diff);
        FAIL("expected TooLargeForOracle");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::too_large_for_oracle);
    }
    // 1x1 grid: the single-cell path
    const DtwResult res = oracle_align(short_seq, short_seq, CostKind::abs_diff);
    CHECK(res.path.steps() == std::vector<PathStep>{{1, 1}});
}

TEST_CASE("dtw equals the exhaustive oracle on token pairs", "[dtw]") {
    const CheckStats stats = check_dtw_exhaustive(3);
    INFO(stats.first_failure);
    CHECK(stats.failures == 0);
    CHECK(stats.cases == 39 * 39);  // 3 + 9 + 27 sequences per side
}

TEST_CASE("dtw equals the oracle on random real pairs", "[dtw]") {
    const CheckStats stats = check_dtw_random(7, 300, 991);
    INFO(stats.first_failure);
    CHECK(stats.failures == 0);
}

TEST_CASE("dtw cost is symmetric under transposition", "[dtw]") {
    Rng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<FeatureVector> a, b;
        const int la = rng.uniform_int(1, 7), lb = rng.uniform_int(1, 7);
        for (int i = 0; i < la; ++i) a.push_back({rng.uniform(-2, 2)});
        for (int i = 0; i < lb; ++i) b.push_back({rng.uniform(-2, 2)});
        const Sequence target(a), source(b);
        CHECK(dtw_align(target, source, CostKind::abs_diff).cost ==
              dtw_align(source, target, CostKind::abs_diff).cost);
    }
}

TEST_CASE("identity alignment has zero cost and a diagonal path", "[dtw]") {
    Rng rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FeatureVector> frames;
        const int len = rng.uniform_int(1, 7);
        for (int i = 0; i < len; ++i) frames.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        const Sequence s(frames);
        const DtwResult res = dtw_align(s, s, CostKind::euclidean);
        CHECK(res.cost == 0.0);
        REQUIRE(res.path.steps().size() == static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) {
            CHECK(res.path.steps()[static_cast<std::size_t>(i)] == PathStep{i + 1, i + 1});
        }
    }
}

TEST_CASE("shifting all costs by a constant still matches the oracle", "[dtw]") {
    // A constant added to every grid entry re-weights paths by their length,
    // so the optimum may move; the DP must still find the shifted optimum.
    Rng rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const int q_len = rng.uniform_int(1, 5), t_len = rng.uniform_int(1, 5);
        CostMatrix base(static_cast<std::size_t>(q_len), static_cast<std::size_t>(t_len));
        for (double& v : base.data()) v = static_cast<double>(rng.uniform_int(0, 512)) / 256.0;
        const double shift = static_cast<double>(rng.uniform_int(1, 256)) / 256.0;

        CostMatrix shifted = base;
        for (double& v : shifted.data()) v += shift;

        const DtwResult fast = detail::dtw_from_costs(shifted);

        // independent enumeration on the shifted grid
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::pair<int, int>> stack;
        auto walk = [&](auto&& self, int q, int t, double acc) -> void {
            if (q == q_len - 1 && t == t_len - 1) {
                best = std::min(best, acc);
                return;
            }
            if (q + 1 < q_len && t + 1 < t_len) self(self, q + 1, t + 1, acc + shifted(q + 1, t + 1));
            if (t + 1 < t_len) self(self, q, t + 1, acc + shifted(q, t + 1));
            if (q + 1 < q_len) self(self, q + 1, t, acc + shifted(q + 1, t));
        };
        walk(walk, 0, 0, shifted(0, 0));
        CHECK(fast.cost == best);

        // and the shifted optimum decomposes as base cost + shift * path length
        const double base_on_path = path_cost(base, fast.path);
        CHECK_THAT(fast.cost,
                   Catch::Matchers::WithinAbs(
                       base_on_path + shift * static_cast<double>(fast.path.steps().size()), 1e-9));
    }
}

TEST_CASE("path reduction takes the last visited column per row", "[dtw]") {
    const AlignmentPath diag({{1, 1}, {2, 2}, {3, 3}}, 3, 3);
    CHECK(path_to_alignment_vector(diag).values() == std::vector<double>{1.0 / 3, 2.0 / 3, 1.0});

    const AlignmentPath row({{1, 1}, {1, 2}}, 1, 2);
    CHECK(path_to_alignment_vector(row).values() == std::vector<double>{1.0});

    const AlignmentPath bent({{1, 1}, {2, 1}, {2, 2}}, 2, 2);
    CHECK(path_to_alignment_vector(bent).values() == std::vector<double>{0.5, 1.0});
}

TEST_CASE("path reduction is always non-decreasing in (0,1]", "[dtw]") {
    Rng rng(8080);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<FeatureVector> a, b;
        const int la = rng.uniform_int(1, 7), lb = rng.uniform_int(1, 7);
        for (int i = 0; i < la; ++i) a.push_back({rng.uniform(-2, 2)});
        for (int i = 0; i < lb; ++i) b.push_back({rng.uniform(-2, 2)});
        const DtwResult res = dtw_align(Sequence(a), Sequence(b), CostKind::abs_diff);
        const AlignmentVector vec = path_to_alignment_vector(res.path);
        double prev = 0.0;
        for (std::size_t q = 0; q < vec.size(); ++q) {
            CHECK(vec[q] > 0.0);
            CHECK(vec[q] <= 1.0);
            CHECK(vec[q] >= prev);
            prev = vec[q];
        }
        CHECK(vec[vec.size() - 1] == 1.0);
    }
}
