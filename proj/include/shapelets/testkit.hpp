#ifndef SHAPELETS_TESTKIT_HPP
#define SHAPELETS_TESTKIT_HPP

// Reference oracles and synthetic data. The oracles are written
// independently of the optimized kernels they check and favour clarity over
// speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"
#include "nn.hpp"
#include "rng.hpp"

namespace shapelets::testkit {

/// Full triple loop: every series, every alignment, every point. No early exit.
inline std::vector<double> naive_min_dist_all(const Shapelet& s, const Dataset& dataset) {
    const std::size_t m = s.length();
    if (m == 0 || m > dataset.length()) {
        throw std::invalid_argument("shapelet longer than series");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto row = dataset.row(i);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j + m <= row.size(); ++j) {
            double total = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                total += (row[j + k] - s.values[k]) * (row[j + k] - s.values[k]);
            }
            best = std::min(best, total);
        }
        out.push_back(best);
    }
    return out;
}

inline constexpr std::uint64_t kMaxEnumeratedPairs = 10'000'000;

/// Population version of the sampled threshold: every ordered pair of
/// equal-length segments (including a segment with itself), for every length.
/// Each length carries equal total mass, matching a sampler that first picks
/// the length uniformly. Returns the smallest distance whose cumulative mass
/// reaches p/100; p = 0 is not a percentile and is rejected.
inline double exact_threshold(const Dataset& dataset, int p, const std::vector<std::size_t>& lengths) {
    if (p < 1 || p > 100) {
        throw std::invalid_argument("exact_threshold needs p in [1, 100]");
    }
    if (lengths.empty()) {
        throw std::invalid_argument("empty length set");
    }
    const std::size_t n = dataset.size();
    const std::size_t big_m = dataset.length();
    std::uint64_t total_pairs = 0;
    for (auto l : lengths) {
        if (l == 0 || l > big_m) {
            throw std::invalid_argument("length out of range");
        }
        const std::uint64_t segments = n * (big_m - l + 1);
        total_pairs += segments * segments;
    }
    if (total_pairs > kMaxEnumeratedPairs) {
        throw std::length_error("exact_threshold: " + std::to_string(total_pairs) +
                                " segment pairs exceed the enumeration guard");
    }

    std::vector<std::pair<double, long double>> weighted;
    weighted.reserve(total_pairs);
    for (auto l : lengths) {
        const std::uint64_t segments = n * (big_m - l + 1);
        const long double weight = 1.0L / (static_cast<long double>(lengths.size()) * segments * segments);
        for (std::size_t a = 0; a < segments; ++a) {
            const auto sa = dataset.row(a / (big_m - l + 1)).subspan(a % (big_m - l + 1), l);
            for (std::size_t b = 0; b < segments; ++b) {
                const auto sb = dataset.row(b / (big_m - l + 1)).subspan(b % (big_m - l + 1), l);
                double total = 0.0;
                for (std::size_t k = 0; k < l; ++k) {
                    total += (sa[k] - sb[k]) * (sa[k] - sb[k]);
                }
                weighted.emplace_back(total / static_cast<double>(l), weight);
            }
        }
    }
    std::sort(weighted.begin(), weighted.end());
    const long double target = static_cast<long double>(p) / 100.0L;
    long double mass = 0.0L;
    for (const auto& [value, weight] : weighted) {
        mass += weight;
        if (mass >= target - 1e-15L) {
            return value;
        }
    }
    return weighted.back().first;
}

/// Dense N x N matrix of summed squared feature differences, built in one
/// pass over all features for every ordered pair.
inline std::vector<std::vector<double>> batch_pairwise_matrix(const std::vector<std::vector<double>>& features,
                                                              std::size_t n) {
    std::vector<std::vector<double>> x(n, std::vector<double>(n, 0.0));
    for (const auto& d : features) {
        if (d.size() != n) {
            throw std::invalid_argument("feature vector length mismatch");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t m = 0; m < n; ++m) {
            double total = 0.0;
            for (const auto& d : features) {
                total += (d[i] - d[m]) * (d[i] - d[m]);
            }
            x[i][m] = total;
        }
    }
    return x;
}

inline PairwiseState batch_pairwise(const std::vector<std::vector<double>>& features, std::size_t n) {
    return PairwiseState::from_dense(batch_pairwise_matrix(features, n), features.size());
}

/// Largest absolute entrywise gap between a pairwise state and a dense matrix.
inline double max_abs_difference(const PairwiseState& state, const std::vector<std::vector<double>>& dense) {
    double worst = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t m = 0; m < state.size(); ++m) {
            worst = std::max(worst, std::abs(state.at(i, m) - dense[i][m]));
        }
    }
    return worst;
}

/// Leave-one-out 1-NN accuracy straight from a feature list (rows = features).
inline double naive_loocv_accuracy(const std::vector<std::vector<double>>& features, const std::vector<Label>& labels) {
    const std::size_t n = labels.size();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t nearest = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < n; ++m) {
            if (m == i) {
                continue;
            }
            double total = 0.0;
            for (const auto& d : features) {
                total += (d[i] - d[m]) * (d[i] - d[m]);
            }
            if (total < best) {
                best = total;
                nearest = m;
            }
        }
        correct += nearest < n && labels[nearest] == labels[i];
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Standard normal via Box-Muller (one value per call, portable).
inline double standard_normal(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng); // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// The half-sine bump of length M/8 that class 1 carries (class 2 carries its
/// negation). Peak amplitude 10*sigma, or 10 when sigma is 0.
inline std::vector<double> synthetic_pattern(std::size_t length, double sigma) {
    const std::size_t l = length / 8;
    const double amplitude = sigma > 0.0 ? 10.0 * sigma : 10.0;
    std::vector<double> pattern(l);
    for (std::size_t k = 0; k < l; ++k) {
        pattern[k] = amplitude * std::sin(std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(l));
    }
    return pattern;
}

/// Two-class dataset: Gaussian noise (std sigma) with the class pattern added
/// at a uniformly random offset. Rows 0..n-1 are class 1, rows n..2n-1 class 2.
inline Dataset generate_synthetic(std::size_t n_per_class, std::size_t length, double sigma, std::uint64_t seed) {
    if (length < 16) {
        throw std::invalid_argument("synthetic series length must be >= 16");
    }
    if (n_per_class < 2) {
        throw std::invalid_argument("need at least 2 series per class");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be finite and non-negative");
    }
    Rng rng(seed);
    const auto pattern = synthetic_pattern(length, sigma);
    const std::size_t n = 2 * n_per_class;
    std::vector<double> values(n * length);
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool second = i >= n_per_class;
        labels[i] = second ? 2 : 1;
        double* row = values.data() + i * length;
        for (std::size_t t = 0; t < length; ++t) {
            row[t] = sigma * standard_normal(rng);
        }
        const std::size_t offset = rng.uniform(length - pattern.size() + 1);
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            row[offset + k] += second ? -pattern[k] : pattern[k];
        }
    }
    return Dataset(n, length, std::move(values), std::move(labels));
}

} // namespace shapelets::testkit

#endif
