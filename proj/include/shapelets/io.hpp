#ifndef SHAPELETS_IO_HPP
#define SHAPELETS_IO_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "core.hpp"

namespace shapelets {

/// Shortest text of 17 significant digits; reads back to the same double.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Fixed-point text with `digits` decimals (used for report columns).
inline std::string format_fixed(double value, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

/// Parses a complete token as a double (accepts a leading '+', "inf", "nan").
inline bool parse_double(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    if (token.empty()) {
        return false;
    }
    const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    return res.ec == std::errc{} && res.ptr == token.data() + token.size();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

/// Comma-separated when the line has a comma, otherwise whitespace runs.
inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    if (line.find(',') != std::string_view::npos) {
        std::size_t pos = 0;
        for (;;) {
            const auto next = line.find(',', pos);
            out.push_back(trim(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
            if (next == std::string_view::npos) {
                break;
            }
            pos = next + 1;
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos < line.size()) {
        const auto b = line.find_first_not_of(" \t\r\v\f", pos);
        if (b == std::string_view::npos) {
            break;
        }
        const auto e = line.find_first_of(" \t\r\v\f", b);
        out.push_back(line.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
        pos = e == std::string_view::npos ? line.size() : e;
    }
    return out;
}

} // namespace detail

/// Reads UCR-style text: one series per line, class label first, then the
/// values. Blank lines are skipped. Labels are parsed as numbers and rounded.
inline Dataset read_dataset(std::istream& in) {
    std::vector<double> values;
    std::vector<Label> labels;
    std::size_t m = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto fields = detail::split_fields(line);
        if (fields.size() < 2) {
            throw DataError("line " + std::to_string(line_no) + ": expected a label and at least one value");
        }
        if (labels.empty()) {
            m = fields.size() - 1;
        } else if (fields.size() - 1 != m) {
            throw DataError("ragged line " + std::to_string(line_no) + ": expected " + std::to_string(m) +
                            " values, got " + std::to_string(fields.size() - 1));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v = 0.0;
            if (!parse_double(fields[c], v) || !std::isfinite(v)) {
                throw DataError("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                ": cannot parse '" + std::string(fields[c]) + "'");
            }
            if (c == 0) {
                labels.push_back(static_cast<Label>(std::llround(v)));
            } else {
                values.push_back(v);
            }
        }
    }
    const std::size_t n = labels.size();
    return Dataset(n, m, std::move(values), std::move(labels));
}

inline Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read dataset file '" + path.string() + "'");
    }
    return read_dataset(in);
}

/// Writes a dataset back in comma-separated UCR form.
inline void write_dataset(std::ostream& out, const Dataset& dataset) {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out << dataset.label(i);
        for (double v : dataset.row(i)) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Result document
//
//   shapelets-result 1
//   paa_ratio <num/den>
//   percentile <p>
//   length_fractions <L> <f1> ... <fL>
//   seed <u64>
//   candidate_budget <u64>
//   lookup_mode normalized|unnormalized
//   compressed_length <M'>
//   lengths <L> <l1> ... <lL>
//   epsilon <double>            (-inf when pruning is disabled)
//   sampled_count / considered_count / refused_count / rejected_count <u64>
//   feature_evaluations / window_evaluations / point_evaluations <u64>
//   accuracy_trace <K> <a1> ... <aK>
//   shapelets <K>
//   shapelet <series> <start> <length> <v1> ... <vlength>     (K lines)
//   transform <K> <N>
//   row <d1> ... <dN>                                          (K lines)
//
// Doubles carry 17 significant digits.
// ---------------------------------------------------------------------------

inline void write_result(std::ostream& out, const DiscoveryResult& r) {
    out << "shapelets-result 1\n";
    out << "paa_ratio " << r.config.paa_ratio.str() << '\n';
    out << "percentile " << r.config.percentile << '\n';
    out << "length_fractions " << r.config.length_fractions.size();
    for (double f : r.config.length_fractions) {
        out << ' ' << format_double(f);
    }
    out << '\n';
    out << "seed " << r.config.seed << '\n';
    out << "candidate_budget " << r.config.candidate_budget.value_or(0) << '\n';
    out << "lookup_mode " << to_string(r.config.lookup_mode) << '\n';
    out << "compressed_length " << r.compressed_length << '\n';
    out << "lengths " << r.lengths.size();
    for (auto l : r.lengths) {
        out << ' ' << l;
    }
    out << '\n';
    out << "epsilon " << format_double(r.threshold_epsilon) << '\n';
    out << "sampled_count " << r.sampled_count << '\n';
    out << "considered_count " << r.considered_count << '\n';
    out << "refused_count " << r.refused_count << '\n';
    out << "rejected_count " << r.rejected_count << '\n';
    out << "feature_evaluations " << r.feature_evaluations << '\n';
    out << "window_evaluations " << r.kernel.windows << '\n';
    out << "point_evaluations " << r.kernel.points << '\n';
    out << "accuracy_trace " << r.accuracy_trace.size();
    for (double a : r.accuracy_trace) {
        out << ' ' << format_double(a);
    }
    out << '\n';
    out << "shapelets " << r.accepted.size() << '\n';
    for (const auto& s : r.accepted) {
        out << "shapelet " << s.origin_series << ' ' << s.origin_start << ' ' << s.length();
        for (double v : s.values) {
            out << ' ' << format_double(v);
        }
        out << '\n';
    }
    const std::size_t cols = r.transform.empty() ? 0 : r.transform.front().size();
    out << "transform " << r.transform.size() << ' ' << cols << '\n';
    for (const auto& row : r.transform) {
        out << "row";
        for (double v : row) {
            out << ' ' << format_double(v);
        }
        out << '\n';
    }
}

inline void write_result(const DiscoveryResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write result file '" + path.string() + "'");
    }
    write_result(out, result);
    out.flush();
    if (!out) {
        throw DataError("error writing result file '" + path.string() + "'");
    }
}

namespace detail {

class ResultReader {
public:
    explicit ResultReader(std::istream& in) : in_(in) {}

    /// Loads the next non-empty line and checks its key.
    void expect(std::string_view key) {
        std::string line;
        do {
            if (!std::getline(in_, line)) {
                throw DataError("result document truncated before '" + std::string(key) + "'");
            }
            ++line_no_;
        } while (trim(line).empty());
        fields_.clear();
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            fields_.push_back(tok);
        }
        if (fields_.front() != key) {
            fail("expected '" + std::string(key) + "', found '" + fields_.front() + "'");
        }
        pos_ = 1;
    }

    std::string text() { return next(); }

    std::uint64_t u64() {
        const auto tok = next();
        std::uint64_t v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            fail("bad integer '" + tok + "'");
        }
        return v;
    }

    double real() {
        const auto tok = next();
        double v = 0.0;
        if (!parse_double(tok, v)) {
            fail("bad number '" + tok + "'");
        }
        return v;
    }

    void done() {
        if (pos_ != fields_.size()) {
            fail("trailing fields");
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw DataError("result document line " + std::to_string(line_no_) + ": " + what);
    }

private:
    std::string next() {
        if (pos_ >= fields_.size()) {
            fail("missing field");
        }
        return fields_[pos_++];
    }

    std::istream& in_;
    std::vector<std::string> fields_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

} // namespace detail

inline DiscoveryResult read_result(std::istream& in) {
    detail::ResultReader rd(in);
    DiscoveryResult r;
    rd.expect("shapelets-result");
    if (rd.u64() != 1) {
        rd.fail("unsupported format version");
    }
    rd.done();
    rd.expect("paa_ratio");
    try {
        r.config.paa_ratio = parse_ratio(rd.text());
    } catch (const std::invalid_argument& e) {
        rd.fail(e.what());
    }
    rd.done();
    rd.expect("percentile");
    r.config.percentile = static_cast<int>(rd.u64());
    rd.done();
    rd.expect("length_fractions");
    r.config.length_fractions.resize(rd.u64());
    for (auto& f : r.config.length_fractions) {
        f = rd.real();
    }
    rd.done();
    rd.expect("seed");
    r.config.seed = rd.u64();
    rd.done();
    rd.expect("candidate_budget");
    if (const auto budget = rd.u64(); budget != 0) {
        r.config.candidate_budget = budget;
    }
    rd.done();
    rd.expect("lookup_mode");
    const auto mode = rd.text();
    if (mode == "normalized") {
        r.config.lookup_mode = LookupMode::normalized;
    } else if (mode == "unnormalized") {
        r.config.lookup_mode = LookupMode::unnormalized;
    } else {
        rd.fail("unknown lookup mode '" + mode + "'");
    }
    rd.done();
    rd.expect("compressed_length");
    r.compressed_length = rd.u64();
    rd.done();
    rd.expect("lengths");
    r.lengths.resize(rd.u64());
    for (auto& l : r.lengths) {
        l = rd.u64();
    }
    rd.done();
    rd.expect("epsilon");
    r.threshold_epsilon = rd.real();
    rd.done();

    const auto counter = [&](std::string_view key, std::uint64_t& slot) {
        rd.expect(key);
        slot = rd.u64();
        rd.done();
    };
    counter("sampled_count", r.sampled_count);
    counter("considered_count", r.considered_count);
    counter("refused_count", r.refused_count);
    counter("rejected_count", r.rejected_count);
    counter("feature_evaluations", r.feature_evaluations);
    counter("window_evaluations", r.kernel.windows);
    counter("point_evaluations", r.kernel.points);

    rd.expect("accuracy_trace");
    r.accuracy_trace.resize(rd.u64());
    for (auto& a : r.accuracy_trace) {
        a = rd.real();
    }
    rd.done();

    rd.expect("shapelets");
    r.accepted.resize(rd.u64());
    rd.done();
    for (auto& s : r.accepted) {
        rd.expect("shapelet");
        s.origin_series = rd.u64();
        s.origin_start = rd.u64();
        s.values.resize(rd.u64());
        for (auto& v : s.values) {
            v = rd.real();
        }
        rd.done();
    }

    rd.expect("transform");
    const auto rows = rd.u64();
    const auto cols = rd.u64();
    rd.done();
    r.transform.assign(rows, std::vector<double>(cols));
    for (auto& row : r.transform) {
        rd.expect("row");
        for (auto& v : row) {
            v = rd.real();
        }
        rd.done();
    }
    return r;
}

inline DiscoveryResult read_result(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read result file '" + path.string() + "'");
    }
    return read_result(in);
}

} // namespace shapelets

#endif
