#include <catch2/catch_amalgamated.hpp>

#include "glossalign/core.hpp"

using namespace glossalign;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::domain_error;
}

}  // namespace

TEST_CASE("sequence construction validates shape and values", "[core]") {
    const Sequence seq({{1.0}, {2.0}});
    CHECK(seq.length() == 2);
    CHECK(seq.dim() == 1);

    CHECK(code_of([] { Sequence(std::vector<FeatureVector>{}); }) == Errc::empty_sequence);
    CHECK(code_of([] { Sequence({{1.0}, {2.0, 3.0}}); }) == Errc::ragged_dims);
    CHECK(code_of([] {
              Sequence(std::vector<FeatureVector>{{std::numeric_limits<double>::quiet_NaN()}});
          }) == Errc::non_finite);
    CHECK(code_of([] {
              Sequence(std::vector<FeatureVector>{{std::numeric_limits<double>::infinity()}});
          }) == Errc::non_finite);
    CHECK(code_of([] { Sequence({{}, {}}); }) == Errc::ragged_dims);
}

TEST_CASE("token round trip through dim-1 frames", "[core]") {
    const Sequence seq = Sequence::from_tokens({3, 9, 4});
    CHECK(seq.dim() == 1);
    CHECK(seq.to_tokens() == std::vector<int>{3, 9, 4});

    const Sequence fractional(std::vector<FeatureVector>{{1.5}});
    CHECK(code_of([&] { fractional.to_tokens(); }) == Errc::domain_error);
    const Sequence wide(std::vector<FeatureVector>{{1.0, 2.0}});
    CHECK(code_of([&] { wide.to_tokens(); }) == Errc::dim_mismatch);
}

TEST_CASE("local cost matches the worked examples", "[core]") {
    CHECK(local_cost({1.0}, {3.0}, CostKind::abs_diff) == 2.0);
    CHECK(local_cost({0.0, 0.0}, {3.0, 4.0}, CostKind::euclidean) == 5.0);
    CHECK(local_cost({7.0}, {7.0}, CostKind::token_mismatch) == 0.0);
    CHECK(local_cost({7.0}, {8.0}, CostKind::token_mismatch) == 1.0);

    CHECK(code_of([] { local_cost({1.0}, {1.0, 2.0}, CostKind::euclidean); }) == Errc::dim_mismatch);
    CHECK(code_of([] { local_cost({1.0, 2.0}, {1.0, 2.0}, CostKind::abs_diff); }) == Errc::dim_mismatch);
}

TEST_CASE("local cost is symmetric, non-negative and zero on identical inputs", "[core]") {
    Rng rng(7001);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(1, 5));
        FeatureVector a(dim), b(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = rng.uniform(-10.0, 10.0);
            b[i] = rng.uniform(-10.0, 10.0);
        }
        for (CostKind kind : {CostKind::euclidean, CostKind::abs_diff, CostKind::token_mismatch}) {
            if (kind != CostKind::euclidean && dim != 1) continue;
            const double ab = local_cost(a, b, kind);
            CHECK(ab >= 0.0);
            CHECK(ab == local_cost(b, a, kind));
            CHECK(local_cost(a, a, kind) == 0.0);
        }
    }
}

TEST_CASE("alignment path validator enforces the invariants", "[core]") {
    CHECK_NOTHROW(AlignmentPath({{1, 1}, {2, 2}, {3, 3}}, 3, 3));
    CHECK_NOTHROW(AlignmentPath({{1, 1}, {1, 2}, {2, 2}}, 2, 2));

    CHECK(code_of([] { AlignmentPath({{1, 2}, {2, 2}}, 2, 2); }) == Errc::domain_error);   // bad start
    CHECK(code_of([] { AlignmentPath({{1, 1}, {1, 2}}, 2, 2); }) == Errc::domain_error);   // bad end
    CHECK(code_of([] { AlignmentPath({{1, 1}, {3, 3}}, 3, 3); }) == Errc::domain_error);   // jump
    CHECK(code_of([] { AlignmentPath({{1, 1}, {2, 1}, {1, 2}, {2, 2}}, 2, 2); }) == Errc::domain_error);
}

TEST_CASE("alignment vector values must lie in [0,1]", "[core]") {
    CHECK_NOTHROW(AlignmentVector({0.0, 0.5, 1.0}));
    CHECK(code_of([] { AlignmentVector({1.5}); }) == Errc::domain_error);
    CHECK(code_of([] { AlignmentVector({-0.1}); }) == Errc::domain_error);
    CHECK(code_of([] { AlignmentVector({}); }) == Errc::empty_sequence);
}

TEST_CASE("seeded rng reproduces its stream", "[core]") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.uniform(-1.0, 1.0) == b.uniform(-1.0, 1.0));
        CHECK(a.uniform_int(0, 99) == b.uniform_int(0, 99));
    }
}
