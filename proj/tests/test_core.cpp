#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "shapelets/core.hpp"
#include "test_util.hpp"

using namespace shapelets;

namespace {

std::string error_of(const Dataset& d, bool classes = true) {
    try {
        validate_dataset(d, classes);
    } catch (const DataError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(ValidateDataset, MinimalValidInput) {
    const Dataset d(2, 4, {0, 1, 2, 3, 4, 5, 6, 7}, {0, 1});
    EXPECT_NO_THROW(validate_dataset(d));
}

TEST(ValidateDataset, RejectsNonFinite) {
    const Dataset d(2, 2, {0, std::numeric_limits<double>::quiet_NaN(), 1, 2}, {0, 1});
    EXPECT_NE(error_of(d).find("non-finite value"), std::string::npos);
    const Dataset inf(2, 2, {0, 1, std::numeric_limits<double>::infinity(), 2}, {0, 1});
    EXPECT_NE(error_of(inf).find("non-finite value"), std::string::npos);
}

TEST(ValidateDataset, RejectsSingleSeries) {
    const Dataset d(1, 3, {1, 2, 3}, {0});
    EXPECT_NE(error_of(d).find("N >= 2 required"), std::string::npos);
}

TEST(ValidateDataset, RejectsEmptyAndShort) {
    EXPECT_EQ(error_of(Dataset{}), "empty dataset");
    const Dataset short_series(2, 1, {1, 2}, {0, 1});
    EXPECT_NE(error_of(short_series).find("M >= 2"), std::string::npos);
}

TEST(ValidateDataset, SingleClassOnlyWhenSupervised) {
    const Dataset d(2, 2, {1, 2, 3, 4}, {7, 7});
    EXPECT_NE(error_of(d).find("2 distinct class labels"), std::string::npos);
    EXPECT_EQ(error_of(d, false), "");
}

TEST(Dataset, RaggedRowsReported) {
    EXPECT_THROW(Dataset::from_rows({{1, 2, 3}, {1, 2}}, {0, 1}), DataError);
    EXPECT_THROW(Dataset(2, 2, {1, 2, 3}, {0, 1}), std::invalid_argument);
}

TEST(Dataset, NegativeLabelsAreOpaque) {
    const Dataset d(3, 2, {1, 2, 3, 4, 5, 6}, {-3, 12, -3});
    EXPECT_EQ(d.class_count(), 2u);
    EXPECT_NO_THROW(validate_dataset(d));
}

TEST(Shapelet, CopiesExactWindowBitwise) {
    const auto d = test::random_dataset(5, 17, 3);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t m = 1; m <= d.length(); m += 4) {
            for (std::size_t j = 0; j + m <= d.length(); j += 3) {
                const auto s = Shapelet::from_dataset(d, i, j, m);
                ASSERT_EQ(s.length(), m);
                EXPECT_EQ(std::memcmp(s.values.data(), d.row(i).data() + j, m * sizeof(double)), 0);
                EXPECT_EQ(s.origin_series, i);
                EXPECT_EQ(s.origin_start, j);
            }
        }
    }
    EXPECT_THROW(Shapelet::from_dataset(d, 0, 10, 8), std::out_of_range);
    EXPECT_THROW(Shapelet::from_dataset(d, 5, 0, 1), std::out_of_range);
}

TEST(Ratio, ParsesDecimalsAndFractionsExactly) {
    EXPECT_EQ(parse_ratio("0.125"), Ratio(1, 8));
    EXPECT_EQ(parse_ratio("1/8"), Ratio(1, 8));
    EXPECT_EQ(parse_ratio("2/4"), Ratio(1, 2));
    EXPECT_EQ(parse_ratio("1"), Ratio(1, 1));
    EXPECT_EQ(parse_ratio("1.0"), Ratio(1, 1));
    EXPECT_EQ(parse_ratio(".25"), Ratio(1, 4));
    EXPECT_EQ(parse_ratio("0.333"), Ratio(333, 1000));
    for (const char* bad : {"0", "1.5", "3/2", "abc", "", "-0.5", "0/4", "1/0"}) {
        EXPECT_THROW(parse_ratio(bad), std::invalid_argument) << bad;
    }
}

TEST(Ratio, ScaleUpIsCeiling) {
    EXPECT_EQ(Ratio(1, 2).scale_up(5), 3u);
    EXPECT_EQ(Ratio(1, 8).scale_up(1024), 128u);
    EXPECT_EQ(Ratio(1, 3).scale_up(7), 3u);
    EXPECT_EQ(Ratio(1, 1).scale_up(24), 24u);
    EXPECT_TRUE(Ratio(1, 4) < Ratio(1, 2));
    EXPECT_EQ(Ratio(1, 8).str(), "1/8");
    EXPECT_EQ(Ratio(1, 1).str(), "1");
}

TEST(ShapeletLengths, RoundsFractionsOfCompressedLength) {
    const std::vector<double> fractions{0.2, 0.4, 0.6};
    EXPECT_EQ(shapelet_lengths(fractions, 24), (std::vector<std::size_t>{5, 10, 14}));
    EXPECT_EQ(shapelet_lengths(fractions, 2), (std::vector<std::size_t>{1, 1, 1}));
    const std::vector<double> full{1.0};
    EXPECT_EQ(shapelet_lengths(full, 7), (std::vector<std::size_t>{7}));
}

TEST(DiscoveryConfig, Validation) {
    DiscoveryConfig c;
    EXPECT_NO_THROW(validate_config(c));
    c.percentile = 101;
    EXPECT_THROW(validate_config(c), std::invalid_argument);
    c.percentile = 0;
    c.length_fractions.clear();
    EXPECT_THROW(validate_config(c), std::invalid_argument);
    c.length_fractions = {0.0};
    EXPECT_THROW(validate_config(c), std::invalid_argument);
    c.length_fractions = {0.5};
    c.candidate_budget = 0;
    EXPECT_THROW(validate_config(c), std::invalid_argument);
}
