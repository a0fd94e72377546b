#include <gtest/gtest.h>

#include "shapelets/nn.hpp"
#include "shapelets/testkit.hpp"
#include "test_util.hpp"

using namespace shapelets;

TEST(PairwiseState, AddFeatureDirectSubstitution) {
    PairwiseState x(3);
    x.add_feature(std::vector<double>{1, 3, 2});
    EXPECT_EQ(x.at(0, 1), 4.0);
    EXPECT_EQ(x.at(0, 2), 1.0);
    EXPECT_EQ(x.at(1, 2), 1.0);
    EXPECT_EQ(x.at(1, 0), 4.0);
    EXPECT_EQ(x.at(2, 2), 0.0);
    EXPECT_EQ(x.feature_count(), 1u);
}

TEST(PairwiseState, ConstantFeatureLeavesStateUnchanged) {
    PairwiseState x(4);
    x.add_feature(std::vector<double>{1, 2, 3, 4});
    const auto before = x;
    x.add_feature(std::vector<double>{7, 7, 7, 7});
    EXPECT_EQ(testkit::max_abs_difference(x, testkit::batch_pairwise_matrix({{1, 2, 3, 4}}, 4)), 0.0);
    x.remove_feature(std::vector<double>{7, 7, 7, 7});
    EXPECT_EQ(x, before);
}

TEST(PairwiseState, LengthMismatchThrows) {
    PairwiseState x(3);
    EXPECT_THROW(x.add_feature(std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(PairwiseState, AddThenRemoveRestoresPriorState) {
    Rng rng(4);
    PairwiseState fresh(6);
    const auto d = test::random_vector(6, rng);
    fresh.add_feature(d);
    fresh.remove_feature(d);
    EXPECT_EQ(fresh, PairwiseState(6)); // x + y - y with x = 0 is exact

    PairwiseState x(6);
    x.add_feature(test::random_vector(6, rng));
    const auto before = x;
    x.add_feature(d);
    x.remove_feature(d);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t m = 0; m < 6; ++m) {
            EXPECT_NEAR(x.at(i, m), before.at(i, m), 1e-9);
        }
    }
}

TEST(PairwiseState, RemoveOnlyContributionGivesZero) {
    PairwiseState x(5);
    const std::vector<double> d{0.3, -1.2, 8.5, 2.0, 0.0};
    x.add_feature(d);
    x.remove_feature(d);
    EXPECT_LE(testkit::max_abs_difference(x, testkit::batch_pairwise_matrix({}, 5)), 1e-9);
    EXPECT_EQ(x.feature_count(), 0u);
}

TEST(PairwiseState, InterleavedMatchesBatchOfSurvivors) {
    Rng rng(8);
    const auto d1 = test::random_vector(7, rng, 5.0);
    const auto d2 = test::random_vector(7, rng, 5.0);
    PairwiseState x(7);
    x.add_feature(d1);
    x.add_feature(d2);
    x.remove_feature(d1);
    EXPECT_LE(testkit::max_abs_difference(x, testkit::batch_pairwise_matrix({d2}, 7)), 1e-9);
}

TEST(PairwiseState, RandomSequencesMatchBatchRecompute) {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform(20);
        PairwiseState x(n);
        std::vector<std::vector<double>> live;
        for (std::size_t step = 0, steps = 1 + rng.uniform(25); step < steps; ++step) {
            if (!live.empty() && rng.uniform(3) == 0) {
                const auto k = rng.uniform(live.size());
                x.remove_feature(live[k]);
                live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
            } else {
                live.push_back(test::random_vector(n, rng, 10.0));
                x.add_feature(live.back());
            }
            ASSERT_LE(testkit::max_abs_difference(x, testkit::batch_pairwise_matrix(live, n)), 1e-9);
            ASSERT_EQ(x.feature_count(), live.size());
        }
    }
}

TEST(Loocv, TieBreaksToSmallestIndex) {
    const auto x = PairwiseState::from_dense({{0, 1, 9}, {1, 0, 9}, {9, 9, 0}}, 1);
    const std::vector<Label> labels{0, 0, 1};
    EXPECT_DOUBLE_EQ(loocv_accuracy(x, labels), 2.0 / 3.0);
}

TEST(Loocv, AllZeroPicksNeighbour) {
    const PairwiseState x(2);
    const std::vector<Label> labels{0, 1};
    EXPECT_EQ(x.loocv_accuracy(labels), 0.0);
}

TEST(Loocv, PerfectWhenEachNearestSharesLabel) {
    const auto x = PairwiseState::from_dense({{0, 1, 5, 6}, {1, 0, 6, 5}, {5, 6, 0, 2}, {6, 5, 2, 0}}, 1);
    const std::vector<Label> labels{3, 3, 8, 8};
    EXPECT_EQ(x.loocv_accuracy(labels), 1.0);
}

TEST(Loocv, ScaleInvariantAndStateless) {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.uniform(15);
        std::vector<std::vector<double>> features;
        for (int k = 0; k < 3; ++k) {
            features.push_back(test::random_vector(n, rng));
        }
        std::vector<Label> labels(n);
        for (auto& l : labels) {
            l = static_cast<Label>(rng.uniform(3));
        }
        PairwiseState x(n);
        PairwiseState scaled(n);
        for (auto& f : features) {
            x.add_feature(f);
            for (auto& v : f) {
                v *= 4.0; // scales X by 16, exactly
            }
            scaled.add_feature(f);
        }
        const double a = x.loocv_accuracy(labels);
        EXPECT_EQ(a, x.loocv_accuracy(labels));
        EXPECT_EQ(a, scaled.loocv_accuracy(labels));
        for (auto& f : features) {
            for (auto& v : f) {
                v /= 4.0;
            }
        }
        EXPECT_EQ(a, testkit::naive_loocv_accuracy(features, labels));
    }
}

TEST(PairwiseState, LongRollbackChainDoesNotDrift) {
    Rng rng(31);
    const std::size_t n = 12;
    std::vector<std::vector<double>> kept;
    PairwiseState x(n);
    for (int k = 0; k < 5; ++k) {
        kept.push_back(test::random_vector(n, rng, 1000.0));
        x.add_feature(kept.back());
    }
    for (int cycle = 0; cycle < 5000; ++cycle) {
        const auto d = test::random_vector(n, rng, 1000.0);
        x.add_feature(d);
        x.remove_feature(d);
    }
    EXPECT_LE(testkit::max_abs_difference(x, testkit::batch_pairwise_matrix(kept, n)), 1e-9);
}
