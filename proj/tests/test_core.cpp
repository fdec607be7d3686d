#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldh/stack.hpp"
#include "ldh/window.hpp"

#include "oracles.hpp"

using namespace ldh;

namespace {

HologramStack<float> make_stack(Index nx, Index ny, Index nt, double fs, unsigned seed) {
    HologramStack<float> stack;
    stack.nx = nx;
    stack.ny = ny;
    stack.nt = nt;
    stack.fs = fs;
    stack.frames = oracle::random_complex<float>(nx * ny, nt, seed);
    return stack;
}

}  // namespace

TEST_CASE("casorati reshape of constant frames") {
    HologramStack<float> stack;
    stack.nx = 2;
    stack.ny = 2;
    stack.nt = 3;
    stack.fs = 1000.0;
    stack.frames.resize(4, 3);
    for (Index t = 0; t < 3; ++t)
        stack.frames.col(t).setConstant(std::complex<float>(static_cast<float>(t + 1), 0.0f));

    const CMat<float> m = reshape_to_casorati(stack, 0, 3);
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 3);
    for (Index j = 0; j < 3; ++j)
        for (Index p = 0; p < 4; ++p)
            CHECK(m(p, j) == std::complex<float>(static_cast<float>(j + 1), 0.0f));
}

TEST_CASE("casorati reshape of a single-pixel stack keeps time order") {
    HologramStack<float> stack;
    stack.nx = 1;
    stack.ny = 1;
    stack.nt = 4;
    stack.fs = 1.0;
    stack.frames.resize(1, 4);
    const std::complex<float> values[4] = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
    for (Index t = 0; t < 4; ++t) stack.frames(0, t) = values[t];

    const CMat<float> m = reshape_to_casorati(stack, 0, 4);
    REQUIRE(m.rows() == 1);
    for (Index t = 0; t < 4; ++t) CHECK(m(0, t) == values[t]);
}

TEST_CASE("flattening is row-major over (y, x)") {
    // Frame value = x + 10*y lets us pin the documented pixel order.
    HologramStack<float> stack;
    stack.nx = 3;
    stack.ny = 2;
    stack.nt = 1;
    stack.fs = 1.0;
    stack.frames.resize(6, 1);
    for (Index y = 0; y < 2; ++y)
        for (Index x = 0; x < 3; ++x)
            stack.frames(flat_pixel(x, y, 3), 0) =
                std::complex<float>(static_cast<float>(x + 10 * y), 0.0f);

    const CMat<float> m = reshape_to_casorati(stack, 0, 1);
    CHECK(m(0, 0).real() == 0.0f);   // (x=0, y=0)
    CHECK(m(2, 0).real() == 2.0f);   // (x=2, y=0)
    CHECK(m(3, 0).real() == 10.0f);  // (x=0, y=1)
    CHECK(m(5, 0).real() == 12.0f);  // (x=2, y=1)

    const auto image = frame_view(stack, 0);
    CHECK(image(2, 1).real() == 12.0f);
}

TEST_CASE("reshape round trip is lossless on random stacks") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const auto stack = make_stack(3, 2, 5, 1000.0, seed);
        const CMat<float> m = reshape_to_casorati(stack, 0, 5);
        const auto back = reshape_from_casorati(m, 3, 2, stack.fs);
        CHECK(back.frames == stack.frames);
        CHECK(back.nx == stack.nx);
        CHECK(back.ny == stack.ny);

        // Frobenius norm preserved exactly by the reshape pair.
        CHECK(m.norm() == stack.frames.norm());
    }

    const auto big = make_stack(8, 8, 16, 1.0, 9u);
    const auto round = reshape_from_casorati(reshape_to_casorati(big, 0, 16), 8, 8, 1.0);
    CHECK(round.frames == big.frames);
}

TEST_CASE("constant-column matrix becomes constant frames") {
    CMat<float> m(4, 3);
    for (Index j = 0; j < 3; ++j)
        m.col(j).setConstant(std::complex<float>(static_cast<float>(j + 1), 0.0f));
    const auto slice = reshape_from_casorati(m, 2, 2, 1.0);
    REQUIRE(slice.nt == 3);
    for (Index t = 0; t < 3; ++t) {
        const auto image = frame_view(slice, t);
        for (Index y = 0; y < 2; ++y)
            for (Index x = 0; x < 2; ++x)
                CHECK(image(x, y) == std::complex<float>(static_cast<float>(t + 1), 0.0f));
    }
}

TEST_CASE("reshape rejects mismatched dimensions") {
    CMat<float> m(5, 2);
    m.setZero();
    CHECK_THROWS_AS(reshape_from_casorati(m, 2, 2, 1.0), InvalidInput);

    const auto stack = make_stack(2, 2, 4, 1.0, 5u);
    CHECK_THROWS_AS(casorati_view(stack, 2, 4), InvalidInput);
    CHECK_THROWS_AS(casorati_view(stack, 0, 0), InvalidInput);
}

TEST_CASE("window plan covers the paper's full-window case") {
    const WindowPlan plan = plan_windows(1024, 1024, 512, 75000.0);
    REQUIRE(plan.starts == std::vector<Index>{0});
    CHECK(plan.t_win == doctest::Approx(0.0136533).epsilon(1e-4));  // quoted as 13.7 ms
}

TEST_CASE("window plan with half overlap") {
    const WindowPlan plan = plan_windows(2048, 1024, 512, 75000.0);
    CHECK(plan.starts == std::vector<Index>{0, 512, 1024});

    const WindowPlan defaulted = plan_windows(2048, 1024, 75000.0);
    CHECK(defaulted.hop == 512);
    CHECK(defaulted.starts == plan.starts);
}

TEST_CASE("window plan rejects oversized windows") {
    CHECK_THROWS_AS(plan_windows(100, 256, 128, 1000.0), InvalidInput);
    CHECK_THROWS_AS(plan_windows(100, 50, 0, 1000.0), InvalidInput);
    CHECK_THROWS_AS(plan_windows(100, 50, 51, 1000.0), InvalidInput);
}

TEST_CASE("window plan yields every admissible start and no others") {
    std::mt19937 rng(42);
    for (int it = 0; it < 200; ++it) {
        const Index nt_total = 1 + static_cast<Index>(rng() % 500);
        const Index n_t = 1 + static_cast<Index>(rng() % static_cast<unsigned long>(nt_total));
        const Index hop = 1 + static_cast<Index>(rng() % static_cast<unsigned long>(n_t));
        const WindowPlan plan = plan_windows(nt_total, n_t, hop, 1000.0);
        REQUIRE(!plan.starts.empty());
        Index expected = 0;
        for (const Index start : plan.starts) {
            CHECK(start == expected);
            CHECK(start + n_t <= nt_total);
            expected += hop;
        }
        CHECK(expected + n_t > nt_total);  // nothing admissible was dropped
    }
}

TEST_CASE("roi helpers validate and enumerate") {
    const Roi roi = roi_disk(8, 8, 4.0, 4.0, 0.5);
    CHECK(roi.count() == 1);
    CHECK(roi.pixel_indices() == std::vector<Index>{flat_pixel(4, 4, 8)});

    Roi empty{BoolGrid::Constant(8, 8, false)};
    CHECK_THROWS_AS(validate(empty, 8, 8), InvalidInput);
    CHECK_THROWS_AS(validate(roi, 4, 4), InvalidInput);

    const Roi rect = roi_rect(8, 8, 1, 2, 3, 4);
    CHECK(rect.count() == 9);
}

TEST_CASE("stack validation flags corrupt inputs") {
    auto stack = make_stack(2, 2, 3, 1000.0, 11u);
    CHECK_NOTHROW(validate(stack));
    stack.frames(1, 1) = std::complex<float>(std::numeric_limits<float>::quiet_NaN(), 0.0f);
    CHECK_THROWS_AS(validate(stack), InvalidInput);
    stack = make_stack(2, 2, 3, -1.0, 11u);
    CHECK_THROWS_AS(validate(stack), InvalidInput);
}
