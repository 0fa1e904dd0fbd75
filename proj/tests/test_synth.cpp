#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "yieldctl/error.hpp"
#include "yieldctl/synth.hpp"

using namespace yieldctl;

namespace {

SynthConfig two_relevant(std::uint64_t seed, std::size_t rows = 2000) {
    SynthConfig cfg;
    cfg.n_rows = rows;
    cfg.n_features = 6;
    cfg.relevant = {{1, 0.2, 0.8}, {4, 0.3, 0.9}};
    cfg.base_defect_prob = 0.005;
    cfg.out_defect_prob = 0.6;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("generate shape, determinism and ground truth") {
    SynthConfig cfg = two_relevant(11);
    auto [ds, truth] = generate(cfg);
    CHECK(ds.rows() == cfg.n_rows);
    CHECK(ds.cols() == cfg.n_features);
    CHECK(truth.relevant.size() == 2);
    CHECK(truth.relevant[0].feature == 1);

    auto [again, truth2] = generate(cfg);
    CHECK(again.values() == ds.values());
    CHECK(again.target() == ds.target());

    cfg.seed = 12;
    auto [other, truth3] = generate(cfg);
    CHECK(other.values() != ds.values());
}

TEST_CASE("defect rate sits strictly inside the mixture bounds") {
    SynthConfig cfg = two_relevant(5, 8000);
    auto [ds, truth] = generate(cfg);
    const double rate = static_cast<double>(ds.count_label(0)) / static_cast<double>(ds.rows());
    CHECK(rate > 0.005);
    CHECK(rate < 0.6);
}

TEST_CASE("null mechanism makes labels independent of features") {
    SynthConfig cfg = two_relevant(9);
    cfg.base_defect_prob = 0.3;
    cfg.out_defect_prob = 0.3;
    auto [ds, truth] = generate(cfg);

    // inside-sweet and outside-sweet rows defect at the same rate (binomial check)
    std::size_t inside_n = 0, inside_defect = 0, outside_n = 0, outside_defect = 0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        bool inside = true;
        for (const PlantedFeature& pf : truth.relevant)
            if (ds.at(i, pf.feature) < pf.sweet_lower || ds.at(i, pf.feature) > pf.sweet_upper)
                inside = false;
        (inside ? inside_n : outside_n) += 1;
        if (ds.target()[i] == 0) (inside ? inside_defect : outside_defect) += 1;
    }
    const double inside_rate = static_cast<double>(inside_defect) / inside_n;
    const double outside_rate = static_cast<double>(outside_defect) / outside_n;
    // each rate is a mean of ~600+ Bernoulli(0.3) draws; 5 sigma ~ 0.09
    CHECK(std::fabs(inside_rate - outside_rate) < 0.09);
}

TEST_CASE("class balance matches the analytic mixture over 50 seeds") {
    SynthConfig base = two_relevant(0, 2000);
    const double expected = analytic_defect_probability(base);

    std::size_t defects = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SynthConfig cfg = base;
        cfg.seed = seed;
        auto [ds, truth] = generate(cfg);
        defects += ds.count_label(0);
        total += ds.rows();
    }
    const double observed = static_cast<double>(defects) / static_cast<double>(total);
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(total));
    CHECK(std::fabs(observed - expected) <= 3.0 * se);
}

TEST_CASE("irrelevant features pass a permutation independence test") {
    SynthConfig cfg = two_relevant(77, 4000);
    auto [ds, truth] = generate(cfg);

    // statistic: max over irrelevant features of |mean(x|defect) - mean(x|normal)|
    auto statistic = [&](const std::vector<int>& labels) {
        double worst = 0.0;
        for (std::size_t j : {0u, 2u, 3u, 5u}) {
            double sum0 = 0, sum1 = 0;
            std::size_t n0 = 0, n1 = 0;
            for (std::size_t i = 0; i < ds.rows(); ++i) {
                if (labels[i] == 0) {
                    sum0 += ds.at(i, j);
                    ++n0;
                } else {
                    sum1 += ds.at(i, j);
                    ++n1;
                }
            }
            worst = std::max(worst, std::fabs(sum0 / n0 - sum1 / n1));
        }
        return worst;
    };

    const double observed = statistic(ds.target());
    Rng rng(99);
    std::vector<int> shuffled = ds.target();
    std::size_t exceed = 0;
    const std::size_t trials = 200;
    for (std::size_t t = 0; t < trials; ++t) {
        shuffle(shuffled, rng);
        if (statistic(shuffled) >= observed) ++exceed;
    }
    const double p = static_cast<double>(exceed + 1) / static_cast<double>(trials + 1);
    CHECK(p > 0.01);
}

TEST_CASE("measurement noise leaves labels tied to pre-noise values") {
    SynthConfig cfg = two_relevant(13, 500);
    cfg.noise_scale = 0.05;
    auto [noisy, t1] = generate(cfg);
    cfg.noise_scale = 0.0;
    auto [clean, t2] = generate(cfg);
    CHECK(noisy.target() == clean.target());  // same label stream
    CHECK(noisy.values() != clean.values());
}

TEST_CASE("ground_truth_overlap") {
    CHECK(ground_truth_overlap(0, 2, 0, 2) == 1.0);
    CHECK(ground_truth_overlap(0, 1, 2, 3) == 0.0);
    CHECK(ground_truth_overlap(0, 2, 1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(ground_truth_overlap(1, 1, 1, 1) == 1.0);  // identical points
    CHECK(ground_truth_overlap(1, 1, 2, 2) == 0.0);  // distinct points
    CHECK_THROWS_AS(ground_truth_overlap(2, 1, 0, 1), Error);
}

TEST_CASE("config validation") {
    SynthConfig cfg = two_relevant(1);
    cfg.relevant[0].sweet_upper = 1.5;  // outside the sampling range
    CHECK_THROWS_AS(generate(cfg), Error);

    cfg = two_relevant(1);
    cfg.base_defect_prob = 0.7;  // above out_defect_prob
    CHECK_THROWS_AS(generate(cfg), Error);

    cfg = two_relevant(1);
    cfg.relevant.push_back(cfg.relevant[0]);  // duplicate index
    CHECK_THROWS_AS(generate(cfg), Error);

    cfg = two_relevant(1);
    cfg.n_rows = 0;
    CHECK_THROWS_AS(generate(cfg), Error);
}
