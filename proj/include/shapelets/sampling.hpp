#ifndef SHAPELETS_SAMPLING_HPP
#define SHAPELETS_SAMPLING_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace shapelets {

/// Threshold meaning "refuse nothing": no distance is strictly below it.
inline constexpr double kPruningDisabled = -std::numeric_limits<double>::infinity();

inline bool pruning_enabled(double epsilon) { return epsilon != kPruningDisabled; }

/// 1-based rank ceil(p/100 * count) used to read a percentile from an
/// ascending sample.
inline std::size_t percentile_rank(int p, std::size_t count) {
    return (static_cast<std::size_t>(p) * count + 99) / 100;
}

inline void check_lengths(std::span<const std::size_t> lengths, std::size_t series_length) {
    if (lengths.empty()) {
        throw std::invalid_argument("shapelet length set is empty");
    }
    for (auto l : lengths) {
        if (l == 0 || l > series_length) {
            throw std::invalid_argument("shapelet length " + std::to_string(l) + " outside [1, " +
                                        std::to_string(series_length) + "]");
        }
    }
}

/// Length-normalized squared distance (1/m) ||a - b||^2.
inline double normalized_sq_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return sum / static_cast<double>(a.size());
}

/// Draws N*M random equal-length segment pairs and returns the p-th percentile
/// of their length-normalized squared distances. Per pair the draws are, in
/// order: length index, (series, start) of the first segment, (series, start)
/// of the second. p = 0 returns kPruningDisabled and consumes the same draws.
inline double estimate_threshold(const Dataset& dataset, int p, std::span<const std::size_t> lengths, Rng& rng) {
    if (p < 0 || p > 100) {
        throw std::invalid_argument("p must be in [0,100]");
    }
    const std::size_t n = dataset.size();
    const std::size_t m = dataset.length();
    check_lengths(lengths, m);

    const std::size_t samples = n * m;
    std::vector<double> distances;
    distances.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t l = lengths[rng.uniform(lengths.size())];
        const std::size_t starts = m - l + 1;
        const std::size_t i1 = rng.uniform(n);
        const std::size_t j1 = rng.uniform(starts);
        const std::size_t i2 = rng.uniform(n);
        const std::size_t j2 = rng.uniform(starts);
        distances.push_back(normalized_sq_distance(dataset.row(i1).subspan(j1, l), dataset.row(i2).subspan(j2, l)));
    }
    if (p == 0) {
        return kPruningDisabled;
    }
    const std::size_t rank = percentile_rank(p, samples);
    auto nth = distances.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(distances.begin(), nth, distances.end());
    return *nth;
}

} // namespace shapelets

#endif
