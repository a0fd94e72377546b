#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "shapelets/discovery.hpp"
#include "shapelets/io.hpp"
#include "test_util.hpp"

using namespace shapelets;

namespace {

Dataset parse(const std::string& text) {
    std::istringstream in(text);
    return read_dataset(in);
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const DataError& e) {
        return e.what();
    }
    return "";
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("shapelets_test_" + name);
}

DiscoveryResult sample_result() {
    DiscoveryResult r;
    r.config.paa_ratio = Ratio(1, 4);
    r.config.percentile = 35;
    r.config.length_fractions = {0.2, 0.4};
    r.config.seed = 123456789012345ULL;
    r.config.candidate_budget = 99;
    r.config.lookup_mode = LookupMode::unnormalized;
    r.compressed_length = 16;
    r.lengths = {3, 5};
    r.threshold_epsilon = 0.1 + 0.2;
    r.sampled_count = 99;
    r.considered_count = 7;
    r.refused_count = 92;
    r.rejected_count = 5;
    r.feature_evaluations = 7;
    r.kernel = {1234, 5678};
    r.accepted = {{{1.0 / 3.0, -2.5, 1e-300}, 4, 2}, {{0.1, 0.2, 0.3, 0.4, 0.5}, 0, 11}};
    r.transform = {{0.0, 1.0 / 7.0, 3.0}, {2.0, 1e10, 5e-324}};
    r.accuracy_trace = {0.5, 2.0 / 3.0};
    return r;
}

} // namespace

TEST(LoadDataset, CommaSeparated) {
    const auto d = parse("1,0.0,1.0\n2,1.0,0.0\n");
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.length(), 2u);
    EXPECT_EQ(d.labels(), (std::vector<Label>{1, 2}));
    EXPECT_EQ(d.row(1)[0], 1.0);
}

TEST(LoadDataset, WhitespaceSeparatedAndBlankLines) {
    const auto d = parse("1 0.5 0.25\n\n1  0.5\t0.25\n   \n2 9 9\n");
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(d.length(), 2u);
    EXPECT_EQ(d.label(2), 2);
}

TEST(LoadDataset, LabelsRoundedFromFloatText) {
    const auto d = parse("1.0000000e+00,1,2\n-2.0000000e+00,3,4\n 3 , 5 , 6 \r\n");
    EXPECT_EQ(d.labels(), (std::vector<Label>{1, -2, 3}));
}

TEST(LoadDataset, RaggedLineReported) {
    EXPECT_NE(parse_error("1,1,2,3\n2,1,2,3,4\n").find("ragged line 2"), std::string::npos);
}

TEST(LoadDataset, BadTokenReportsLineAndColumn) {
    const auto msg = parse_error("1,1,2\n2,1,x\n");
    EXPECT_NE(msg.find("line 2"), std::string::npos);
    EXPECT_NE(msg.find("column 3"), std::string::npos);
    EXPECT_NE(parse_error("1,1,nan\n").find("column 3"), std::string::npos);
}

TEST(LoadDataset, MissingFile) {
    EXPECT_THROW(load_dataset("/nonexistent/dir/file.txt"), DataError);
}

TEST(LoadDataset, DeterministicFromFile) {
    const auto path = temp_path("load.txt");
    {
        std::ofstream out(path);
        out << "1,0.1,0.2,0.3\n2,0.4,0.5,0.6\n";
    }
    EXPECT_EQ(load_dataset(path), load_dataset(path));
    std::filesystem::remove(path);
}

TEST(WriteDataset, RoundTripsExactly) {
    const auto d = test::random_dataset(5, 9, 3, 3, 1e3);
    std::stringstream ss;
    write_dataset(ss, d);
    EXPECT_EQ(read_dataset(ss), d);
}

TEST(ResultDocument, RoundTripsAllFields) {
    const auto r = sample_result();
    std::stringstream ss;
    write_result(ss, r);
    const auto back = read_result(ss);
    EXPECT_EQ(back, r);
    EXPECT_EQ(back.accepted[0].length(), 3u);
    EXPECT_EQ(back.accepted[1].length(), 5u);
}

TEST(ResultDocument, EmptyAcceptedList) {
    DiscoveryResult r;
    r.lengths = {2};
    std::stringstream ss;
    write_result(ss, r);
    EXPECT_NE(ss.str().find("shapelets 0\n"), std::string::npos);
    EXPECT_NE(ss.str().find("transform 0 0\n"), std::string::npos);
    EXPECT_EQ(read_result(ss), r);
}

TEST(ResultDocument, DisabledThresholdRoundTrips) {
    auto r = sample_result();
    r.threshold_epsilon = -std::numeric_limits<double>::infinity();
    std::stringstream ss;
    write_result(ss, r);
    EXPECT_NE(ss.str().find("epsilon -inf\n"), std::string::npos);
    EXPECT_EQ(read_result(ss), r);
}

TEST(ResultDocument, RealDiscoveryRoundTripsThroughFile) {
    DiscoveryConfig c;
    c.paa_ratio = Ratio(1, 2);
    c.seed = 3;
    const auto r = discover(test::separable_dataset(), c);
    const auto path = temp_path("result.txt");
    write_result(r, path);
    EXPECT_EQ(read_result(path), r);
    std::filesystem::remove(path);
}

TEST(ResultDocument, MalformedInputRejected) {
    std::istringstream wrong_header("something-else 1\n");
    EXPECT_THROW(read_result(wrong_header), DataError);
    std::stringstream ss;
    write_result(ss, sample_result());
    const auto text = ss.str();
    std::istringstream truncated(text.substr(0, text.size() / 2));
    EXPECT_THROW(read_result(truncated), DataError);
}

TEST(ResultDocument, UnwritablePath) {
    EXPECT_THROW(write_result(sample_result(), "/nonexistent/dir/out.txt"), DataError);
}
