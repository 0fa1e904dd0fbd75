#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "yieldctl/error.hpp"
#include "yieldctl/ice.hpp"

using namespace yieldctl;

namespace {

// Deterministic toy probability model: mean of the row squashed to (0,1).
const ProbModel kToyModel = [](std::span<const double> row) {
    double sum = 0.0;
    for (double v : row) sum += v;
    return 1.0 / (1.0 + std::exp(-sum / static_cast<double>(row.size())));
};

}  // namespace

TEST_CASE("ice_surface enumerates the N x grid composites") {
    // 2 instances, feature 0 taking 2 distinct values -> 4 predictions
    ProcessDataset ds = testutil::make_dataset(2, {{1.0, 10.0}, {2.0, 20.0}}, {1, 0});
    IceSurface s = ice_surface(kToyModel, ds, 0, 100, 0);

    CHECK(s.grid == std::vector<double>{1.0, 2.0});
    REQUIRE(s.curves.size() == 2);
    REQUIRE(s.curves[0].size() == 2);
    CHECK_FALSE(s.constant_feature);

    // hand-enumerated composites
    CHECK(s.curves[0][0] == doctest::Approx(kToyModel(std::vector<double>{1.0, 10.0})));
    CHECK(s.curves[0][1] == doctest::Approx(kToyModel(std::vector<double>{2.0, 10.0})));
    CHECK(s.curves[1][0] == doctest::Approx(kToyModel(std::vector<double>{1.0, 20.0})));
    CHECK(s.curves[1][1] == doctest::Approx(kToyModel(std::vector<double>{2.0, 20.0})));

    // pdp = column means, exactly
    CHECK(s.pdp[0] == 0.5 * (s.curves[0][0] + s.curves[1][0]));
    CHECK(s.pdp[1] == 0.5 * (s.curves[0][1] + s.curves[1][1]));

    CHECK_THROWS_AS(ice_surface(kToyModel, ds, 5, 100, 0), Error);
}

TEST_CASE("ICE of an ignored feature is flat") {
    const ProbModel ignores_f1 = [](std::span<const double> row) {
        return 1.0 / (1.0 + std::exp(-row[0]));
    };
    Rng rng(3);
    ProcessDataset ds = testutil::random_dataset(20, 2, rng);
    IceSurface s = ice_surface(ignores_f1, ds, 1, 100, 0);
    for (const auto& curve : s.curves) {
        const auto [lo, hi] = std::minmax_element(curve.begin(), curve.end());
        CHECK(*hi - *lo == 0.0);  // exactly flat
    }
    const auto [plo, phi_] = std::minmax_element(s.pdp.begin(), s.pdp.end());
    CHECK(*phi_ - *plo == 0.0);
}

TEST_CASE("constant feature yields a width-1 flagged surface") {
    ProcessDataset ds = testutil::make_dataset(2, {{5.0, 1.0}, {5.0, 2.0}}, {1, 0});
    IceSurface s = ice_surface(kToyModel, ds, 0, 100, 0);
    CHECK(s.constant_feature);
    CHECK(s.grid.size() == 1);
}

TEST_CASE("instance subsampling is seeded and bounded") {
    Rng rng(17);
    ProcessDataset ds = testutil::random_dataset(50, 2, rng);
    IceSurface a = ice_surface(kToyModel, ds, 0, 10, 7);
    CHECK(a.instance_rows.size() == 10);
    IceSurface b = ice_surface(kToyModel, ds, 0, 10, 7);
    CHECK(a.instance_rows == b.instance_rows);
    // grid values come only from observed data
    auto column = ds.column(0);
    for (double g : a.grid) CHECK(std::count(column.begin(), column.end(), g) > 0);
}

TEST_CASE("pdp is the exact mean of the curves") {
    SUBCASE("hand case") {
        IceSurface s;
        s.grid = {0.0, 1.0};
        s.curves = {{0.2, 0.4}, {0.6, 0.8}};
        auto mean = pdp(s);
        CHECK(mean[0] == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(mean[1] == doctest::Approx(0.6).epsilon(1e-12));
    }

    SUBCASE("single instance: pdp equals the curve") {
        IceSurface s;
        s.grid = {0.0, 1.0, 2.0};
        s.curves = {{0.1, 0.5, 0.9}};
        CHECK(pdp(s) == s.curves[0]);
    }

    SUBCASE("permutation invariance and 1e-12 identity on random surfaces") {
        Rng rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            IceSurface s;
            const std::size_t grid_n = 2 + rng.index(20);
            const std::size_t inst_n = 1 + rng.index(20);
            s.grid.resize(grid_n);
            for (std::size_t g = 0; g < grid_n; ++g) s.grid[g] = static_cast<double>(g);
            for (std::size_t q = 0; q < inst_n; ++q) {
                std::vector<double> curve(grid_n);
                for (double& v : curve) v = rng.uniform01();
                s.curves.push_back(std::move(curve));
            }
            auto mean = pdp(s);
            std::reverse(s.curves.begin(), s.curves.end());
            auto mean_reversed = pdp(s);
            for (std::size_t g = 0; g < grid_n; ++g)
                CHECK(std::fabs(mean[g] - mean_reversed[g]) <= 1e-12);
        }
    }
}

TEST_CASE("control_range threshold rule, derived point by point") {
    const std::vector<double> grid{140, 141, 142, 143, 144};
    const std::vector<double> curve{0.50, 0.90, 0.95, 0.88, 0.60};

    // alpha=0.1: cutoff 0.85 qualifies 141, 142, 143
    ControlRange r1 = control_range(curve, grid, 0.1, 4);
    CHECK(r1.lower == 141.0);
    CHECK(r1.upper == 143.0);
    CHECK(r1.feature == 4);

    // alpha=0.05: cutoff 0.90 qualifies 141 (0.90 >= 0.90) and 142
    ControlRange r2 = control_range(curve, grid, 0.05, 4);
    CHECK(r2.lower == 141.0);
    CHECK(r2.upper == 142.0);

    // constant pdp spans the full grid at any alpha
    ControlRange flat = control_range({0.4, 0.4, 0.4}, {1.0, 2.0, 3.0}, 0.01, 0);
    CHECK(flat.lower == 1.0);
    CHECK(flat.upper == 3.0);

    CHECK_THROWS_AS(control_range(curve, grid, 0.0, 0), Error);
    CHECK_THROWS_AS(control_range(curve, {1.0}, 0.1, 0), Error);
}

TEST_CASE("alpha nesting and argmax membership on random curves") {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.index(30);
        std::vector<double> grid(n), curve(n);
        for (std::size_t g = 0; g < n; ++g) {
            grid[g] = static_cast<double>(g) + rng.uniform01() * 0.5;
            curve[g] = rng.uniform01();
        }
        ControlRange narrow = control_range(curve, grid, 0.05, 0);
        ControlRange mid = control_range(curve, grid, 0.1, 0);
        ControlRange wide = control_range(curve, grid, 0.2, 0);
        CHECK(narrow.lower >= mid.lower);
        CHECK(narrow.upper <= mid.upper);
        CHECK(mid.lower >= wide.lower);
        CHECK(mid.upper <= wide.upper);

        const std::size_t argmax =
            std::max_element(curve.begin(), curve.end()) - curve.begin();
        CHECK(grid[argmax] >= narrow.lower);
        CHECK(grid[argmax] <= narrow.upper);

        // bounds are grid values
        for (const ControlRange& r : {narrow, mid, wide}) {
            CHECK(std::count(grid.begin(), grid.end(), r.lower) > 0);
            CHECK(std::count(grid.begin(), grid.end(), r.upper) > 0);
        }
    }
}

TEST_CASE("ranges_table emits feature-major nested ranges") {
    Rng rng(41);
    ProcessDataset ds = testutil::random_dataset(30, 3, rng);
    auto table = ranges_table(kToyModel, ds, {2, 0}, {0.05, 0.1, 0.2}, 100, 0);
    REQUIRE(table.size() == 6);
    CHECK(table[0].feature == 2);
    CHECK(table[3].feature == 0);
    for (std::size_t f = 0; f < 2; ++f) {
        const ControlRange& narrow = table[f * 3 + 0];
        const ControlRange& wide = table[f * 3 + 2];
        CHECK(narrow.lower >= wide.lower);
        CHECK(narrow.upper <= wide.upper);
    }
}
