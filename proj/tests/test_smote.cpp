#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "yieldctl/error.hpp"
#include "yieldctl/smote.hpp"

using namespace yieldctl;

TEST_CASE("nearest_neighbors basic geometry") {
    // points 0, 1, 10 on a line: the neighbor of 0 is 1 (distance 1 vs 10)
    std::vector<std::vector<double>> line{{0.0}, {1.0}, {10.0}};
    CHECK(nearest_neighbors(line, 0, 1) == std::vector<std::size_t>{1});
    CHECK(nearest_neighbors(line, 0, 2) == std::vector<std::size_t>{1, 2});

    // a duplicate point at zero distance comes first
    std::vector<std::vector<double>> dup{{2.0, 2.0}, {5.0, 5.0}, {2.0, 2.0}};
    CHECK(nearest_neighbors(dup, 0, 2) == std::vector<std::size_t>{2, 1});

    // equidistant neighbors resolve to the lower index
    std::vector<std::vector<double>> tie{{0.0}, {1.0}, {-1.0}};
    CHECK(nearest_neighbors(tie, 0, 1) == std::vector<std::size_t>{1});

    CHECK_THROWS_AS(nearest_neighbors(line, 0, 3), Error);
    CHECK_THROWS_AS(nearest_neighbors(line, 0, 0), Error);
}

TEST_CASE("synthesize interpolates coordinate-wise") {
    std::vector<double> a{0.0, 0.0}, b{2.0, 4.0};
    CHECK(synthesize(a, b, 0.0) == a);
    CHECK(synthesize(a, b, 1.0) == b);
    CHECK(synthesize(a, b, 0.5) == std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(synthesize(a, {1.0}, 0.5), Error);
}

TEST_CASE("oversample balances the minority class exactly") {
    Rng rng(31);
    std::vector<std::vector<double>> rows;
    std::vector<int> target;
    for (int i = 0; i < 40; ++i) {
        rows.push_back({rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
        target.push_back(1);
    }
    for (int i = 0; i < 7; ++i) {
        rows.push_back({rng.uniform(5, 6), rng.uniform(5, 6), rng.uniform(5, 6)});
        target.push_back(0);
    }
    ProcessDataset train = testutil::make_dataset(3, rows, target);

    SmoteConfig cfg{.k = 3, .target_count = std::nullopt, .seed = 9};
    ProcessDataset balanced = oversample(train, cfg);

    CHECK(balanced.count_label(1) == 40);
    CHECK(balanced.count_label(0) == 40);
    // originals retained unchanged, synthetic rows appended
    for (std::size_t i = 0; i < train.rows(); ++i) {
        CHECK(balanced.target()[i] == train.target()[i]);
        auto a = balanced.row(i);
        auto b = train.row(i);
        CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
    // synthetic rows stay inside the minority bounding box (majority rows
    // never act as parents)
    for (std::size_t i = train.rows(); i < balanced.rows(); ++i) {
        CHECK(balanced.target()[i] == 0);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(balanced.at(i, j) >= 5.0);
            CHECK(balanced.at(i, j) <= 6.0);
        }
    }

    // determinism: byte-identical output for the same config
    ProcessDataset again = oversample(train, cfg);
    CHECK(again.values() == balanced.values());
    CHECK(again.target() == balanced.target());
}

TEST_CASE("oversample with target equal to minority is the identity") {
    ProcessDataset train =
        testutil::make_dataset(2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, {1, 1, 0, 0});
    SmoteConfig cfg{.k = 1, .target_count = 2, .seed = 1};
    ProcessDataset out = oversample(train, cfg);
    CHECK(out.values() == train.values());
    CHECK(out.target() == train.target());
}

TEST_CASE("two-point minority: every synthetic row lies on the segment") {
    std::vector<std::vector<double>> rows{{0, 0, 0}, {8, 8, 8}, {9, 9, 9}, {10, 10, 10},
                                          {1.0, 2.0, 3.0}, {3.0, 6.0, 7.0}};
    std::vector<int> target{1, 1, 1, 1, 0, 0};
    ProcessDataset train = testutil::make_dataset(3, rows, target);

    SmoteConfig cfg{.k = 1, .target_count = 4, .seed = 77};
    ProcessDataset out = oversample(train, cfg);
    REQUIRE(out.rows() == 8);

    const std::vector<double> p{1.0, 2.0, 3.0}, q{3.0, 6.0, 7.0};
    for (std::size_t i = 6; i < 8; ++i) {
        // recover t from the first coordinate, then check colinearity
        const double t = (out.at(i, 0) - p[0]) / (q[0] - p[0]);
        CHECK(t >= -1e-9);
        CHECK(t <= 1.0 + 1e-9);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(out.at(i, j) == doctest::Approx(p[j] + t * (q[j] - p[j])).epsilon(1e-9));
    }
}

TEST_CASE("oversample rejects a minority too small for k") {
    ProcessDataset train = testutil::make_dataset(1, {{0}, {1}, {2}, {3}}, {1, 1, 1, 0});
    SmoteConfig cfg{.k = 1, .target_count = 3, .seed = 0};
    CHECK_THROWS_WITH_AS(oversample(train, cfg), doctest::Contains("minority"), Error);

    ProcessDataset two = testutil::make_dataset(1, {{0}, {1}, {2}, {3}, {4}}, {1, 1, 1, 0, 0});
    SmoteConfig big_k{.k = 2, .target_count = 3, .seed = 0};
    CHECK_THROWS_AS(oversample(two, big_k), Error);

    SmoteConfig shrink{.k = 1, .target_count = 1, .seed = 0};
    CHECK_THROWS_AS(oversample(two, shrink), Error);
}

TEST_CASE("standardized neighbor search rescales dominant columns") {
    // minority points pair up along f0 (scale ~1000) and f1 (scale ~1).
    // Raw distances are ruled by f0; z-scored distances weigh both equally,
    // so the nearest neighbor of point 0 flips.
    std::vector<std::vector<double>> rows{
        {0.0, 0.0},  {900.0, 0.1}, {1000.0, 5.0}, {100.0, 4.9},  // minority
        {0.0, 9.0},  {1.0, 9.0},   {2.0, 9.0},    {3.0, 9.0},
        {4.0, 9.0},  {5.0, 9.0}};
    std::vector<int> target{0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
    ProcessDataset train = testutil::make_dataset(2, rows, target);

    SmoteConfig raw{.k = 1, .target_count = 6, .seed = 5, .standardize = false};
    SmoteConfig scaled{.k = 1, .target_count = 6, .seed = 5, .standardize = true};
    ProcessDataset raw_out = oversample(train, raw);
    ProcessDataset scaled_out = oversample(train, scaled);

    // both are valid minority interpolations, but the pairings differ
    CHECK(raw_out.count_label(0) == 6);
    CHECK(scaled_out.count_label(0) == 6);
    CHECK(raw_out.values() != scaled_out.values());

    // determinism holds for the standardized variant too
    ProcessDataset again = oversample(train, scaled);
    CHECK(again.values() == scaled_out.values());
}

TEST_CASE("synthetic coordinates stay within the minority coordinate hull") {
    Rng rng(123);
    for (int trial = 0; trial < 5; ++trial) {
        ProcessDataset base = testutil::random_dataset(30, 4, rng, 0.7);
        if (base.count_label(0) < 6 || base.count_label(1) < 6) continue;
        SmoteConfig cfg{.k = 5, .target_count = std::nullopt, .seed = rng.next_u64()};
        ProcessDataset out = oversample(base, cfg);

        const int minority = base.count_label(0) <= base.count_label(1) ? 0 : 1;
        std::vector<double> lo(4, 1e300), hi(4, -1e300);
        for (std::size_t i = 0; i < base.rows(); ++i) {
            if (base.target()[i] != minority) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                lo[j] = std::min(lo[j], base.at(i, j));
                hi[j] = std::max(hi[j], base.at(i, j));
            }
        }
        for (std::size_t i = base.rows(); i < out.rows(); ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(out.at(i, j) >= lo[j] - 1e-9);
                CHECK(out.at(i, j) <= hi[j] + 1e-9);
            }
    }
}
