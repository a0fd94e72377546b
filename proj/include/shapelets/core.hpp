#ifndef SHAPELETS_CORE_HPP
#define SHAPELETS_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shapelets {

using Label = std::int64_t;

/// Raised for malformed input data (parse errors, invariant violations in
/// loaded files). Parameter errors use std::invalid_argument.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// N labeled series of uniform length M, stored row-major.
class Dataset {
public:
    Dataset() = default;

    Dataset(std::size_t n, std::size_t m, std::vector<double> values, std::vector<Label> labels)
        : n_(n), m_(m), values_(std::move(values)), labels_(std::move(labels)) {
        if (values_.size() != n_ * m_) {
            throw std::invalid_argument("dataset: value count " + std::to_string(values_.size()) +
                                        " != N*M = " + std::to_string(n_ * m_));
        }
        if (labels_.size() != n_) {
            throw std::invalid_argument("dataset: label count " + std::to_string(labels_.size()) +
                                        " != N = " + std::to_string(n_));
        }
    }

    static Dataset from_rows(const std::vector<std::vector<double>>& rows, std::vector<Label> labels) {
        const std::size_t m = rows.empty() ? 0 : rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * m);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m) {
                throw DataError("ragged row " + std::to_string(i) + ": expected " + std::to_string(m) +
                                " values, got " + std::to_string(rows[i].size()));
            }
            flat.insert(flat.end(), rows[i].begin(), rows[i].end());
        }
        return Dataset(rows.size(), m, std::move(flat), std::move(labels));
    }

    std::size_t size() const { return n_; }
    std::size_t length() const { return m_; }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * m_, m_}; }
    std::span<const double> values() const { return values_; }
    const std::vector<Label>& labels() const { return labels_; }
    Label label(std::size_t i) const { return labels_[i]; }

    std::size_t class_count() const { return std::set<Label>(labels_.begin(), labels_.end()).size(); }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<double> values_;
    std::vector<Label> labels_;
};

/// Checks every dataset invariant and throws DataError naming the first one
/// violated. `require_classes` additionally demands at least two labels.
inline void validate_dataset(const Dataset& dataset, bool require_classes = true) {
    if (dataset.size() == 0) {
        throw DataError("empty dataset");
    }
    if (dataset.size() < 2) {
        throw DataError("N >= 2 required (got " + std::to_string(dataset.size()) + ")");
    }
    if (dataset.length() < 2) {
        throw DataError("M >= 2 required (got " + std::to_string(dataset.length()) + ")");
    }
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto row = dataset.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!std::isfinite(row[j])) {
                throw DataError("non-finite value at series " + std::to_string(i) + ", point " +
                                std::to_string(j));
            }
        }
    }
    if (require_classes && dataset.class_count() < 2) {
        throw DataError("at least 2 distinct class labels required");
    }
}

/// Exact positive ratio num/den in (0, 1], used for PAA compression.
class Ratio {
public:
    constexpr Ratio() = default;

    constexpr Ratio(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
        if (num_ == 0 || den_ == 0 || num_ > den_) {
            throw std::invalid_argument("ratio must lie in (0, 1]");
        }
        const auto g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    constexpr std::uint64_t num() const { return num_; }
    constexpr std::uint64_t den() const { return den_; }
    constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// ceil(length * r), exact.
    constexpr std::size_t scale_up(std::size_t length) const {
        return static_cast<std::size_t>((length * num_ + den_ - 1) / den_);
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend constexpr bool operator==(const Ratio&, const Ratio&) = default;
    friend constexpr bool operator<(const Ratio& a, const Ratio& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

private:
    std::uint64_t num_ = 1;
    std::uint64_t den_ = 1;
};

/// Parses "a/b", an integer, or a plain decimal such as "0.125" into an exact
/// ratio. Decimals are read digit by digit so 0.125 becomes 1/8 exactly.
inline Ratio parse_ratio(const std::string& text) {
    const auto bad = [&] { return std::invalid_argument("r must be a ratio in (0, 1], got '" + text + "'"); };
    const auto digits = [&](std::string_view s) {
        if (s.empty() || s.size() > 18) {
            throw bad();
        }
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') {
                throw bad();
            }
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return v;
    };
    try {
        if (const auto slash = text.find('/'); slash != std::string::npos) {
            return Ratio(digits(std::string_view(text).substr(0, slash)),
                         digits(std::string_view(text).substr(slash + 1)));
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            return Ratio(digits(text), 1);
        }
        const std::string_view whole = std::string_view(text).substr(0, dot);
        const std::string_view frac = std::string_view(text).substr(dot + 1);
        if (frac.size() > 17) {
            throw bad();
        }
        std::uint64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            den *= 10;
        }
        const std::uint64_t w = whole.empty() ? 0 : digits(whole);
        const std::uint64_t f = frac.empty() ? 0 : digits(frac);
        return Ratio(w * den + f, den);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

/// A subsequence of a (possibly compressed) training series.
struct Shapelet {
    std::vector<double> values;
    std::size_t origin_series = 0;
    std::size_t origin_start = 0;

    std::size_t length() const { return values.size(); }

    static Shapelet from_dataset(const Dataset& dataset, std::size_t series, std::size_t start, std::size_t length) {
        if (series >= dataset.size()) {
            throw std::out_of_range("shapelet origin series out of range");
        }
        if (length == 0 || start + length > dataset.length()) {
            throw std::out_of_range("shapelet window [" + std::to_string(start) + ", " +
                                    std::to_string(start + length) + ") exceeds series length " +
                                    std::to_string(dataset.length()));
        }
        const auto row = dataset.row(series).subspan(start, length);
        return Shapelet{{row.begin(), row.end()}, series, start};
    }

    friend bool operator==(const Shapelet&, const Shapelet&) = default;
};

enum class LookupMode {
    normalized,   // (1/m) * ||s - q||^2 < eps, same scale as the threshold sample
    unnormalized, // ||s - q||^2 < eps
};

inline const char* to_string(LookupMode mode) {
    return mode == LookupMode::normalized ? "normalized" : "unnormalized";
}

struct DiscoveryConfig {
    Ratio paa_ratio{1, 1};
    int percentile = 25;
    std::vector<double> length_fractions{0.2, 0.4, 0.6};
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> candidate_budget;
    LookupMode lookup_mode = LookupMode::normalized;

    friend bool operator==(const DiscoveryConfig&, const DiscoveryConfig&) = default;
};

inline void validate_config(const DiscoveryConfig& config) {
    if (config.percentile < 0 || config.percentile > 100) {
        throw std::invalid_argument("p must be in [0,100]");
    }
    if (config.length_fractions.empty()) {
        throw std::invalid_argument("at least one shapelet length fraction required");
    }
    for (double f : config.length_fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw std::invalid_argument("length fractions must lie in (0, 1]");
        }
    }
    if (config.candidate_budget && *config.candidate_budget == 0) {
        throw std::invalid_argument("candidate budget must be positive");
    }
}

/// Concrete shapelet lengths max(1, round(fraction * length)) for a series of
/// the given (compressed) length.
inline std::vector<std::size_t> shapelet_lengths(std::span<const double> fractions, std::size_t length) {
    std::vector<std::size_t> out;
    out.reserve(fractions.size());
    for (double f : fractions) {
        const auto l = std::max<long long>(1, std::llround(f * static_cast<double>(length)));
        if (static_cast<std::size_t>(l) > length) {
            throw std::invalid_argument("shapelet length exceeds series length");
        }
        out.push_back(static_cast<std::size_t>(l));
    }
    return out;
}

/// Work counters for the distance kernels. A window is one alignment of a
/// shapelet against a series; points count squared differences actually
/// accumulated (early abandoning lowers this, never the window count).
struct KernelCounters {
    std::uint64_t windows = 0;
    std::uint64_t points = 0;

    friend bool operator==(const KernelCounters&, const KernelCounters&) = default;
};

struct DiscoveryResult {
    DiscoveryConfig config;
    std::size_t compressed_length = 0;
    std::vector<std::size_t> lengths;
    double threshold_epsilon = 0.0;

    std::uint64_t sampled_count = 0;
    std::uint64_t considered_count = 0;
    std::uint64_t refused_count = 0;
    std::uint64_t rejected_count = 0;

    std::uint64_t feature_evaluations = 0;
    KernelCounters kernel;

    std::vector<Shapelet> accepted;
    /// Row k holds the minimum distances of accepted[k] to every training series.
    std::vector<std::vector<double>> transform;
    std::vector<double> accuracy_trace;

    double train_accuracy() const { return accuracy_trace.empty() ? 0.0 : accuracy_trace.back(); }

    double refused_fraction() const {
        return sampled_count == 0 ? 0.0 : static_cast<double>(refused_count) / static_cast<double>(sampled_count);
    }

    double considered_fraction() const {
        return sampled_count == 0 ? 0.0 : static_cast<double>(considered_count) / static_cast<double>(sampled_count);
    }

    friend bool operator==(const DiscoveryResult&, const DiscoveryResult&) = default;
};

} // namespace shapelets

#endif
