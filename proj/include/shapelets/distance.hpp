#ifndef SHAPELETS_DISTANCE_HPP
#define SHAPELETS_DISTANCE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace shapelets {

struct MinDistResult {
    double distance = std::numeric_limits<double>::infinity();
    std::size_t position = 0;
};

/// Minimum squared Euclidean distance of `shapelet` over every alignment in
/// `series`; ties resolve to the smallest position.
///
/// A window is abandoned once its running sum reaches the best distance so
/// far. Partial sums only grow, so an abandoned window could never have won,
/// and non-abandoned windows accumulate in the same order as a full pass: the
/// result is bitwise identical to the exhaustive computation.
inline MinDistResult min_dist(std::span<const double> shapelet, std::span<const double> series,
                              KernelCounters* counters = nullptr) {
    const std::size_t m = shapelet.size();
    if (m == 0 || m > series.size()) {
        throw std::invalid_argument("shapelet length " + std::to_string(m) + " exceeds series length " +
                                    std::to_string(series.size()));
    }
    const std::size_t windows = series.size() - m + 1;
    MinDistResult best;
    std::uint64_t points = 0;
    for (std::size_t j = 0; j < windows; ++j) {
        const double* x = series.data() + j;
        double sum = 0.0;
        std::size_t k = 0;
        for (; k < m; ++k) {
            const double diff = x[k] - shapelet[k];
            sum += diff * diff;
            if (sum >= best.distance) {
                ++k;
                break;
            }
        }
        points += k;
        if (sum < best.distance) {
            best.distance = sum;
            best.position = j;
        }
    }
    if (counters) {
        counters->windows += windows;
        counters->points += points;
    }
    return best;
}

inline MinDistResult min_dist(const Shapelet& shapelet, std::span<const double> series,
                              KernelCounters* counters = nullptr) {
    return min_dist(std::span<const double>(shapelet.values), series, counters);
}

/// Minimum distances of a shapelet to every series of the dataset.
inline std::vector<double> min_dist_all(std::span<const double> shapelet, const Dataset& dataset,
                                        KernelCounters* counters = nullptr) {
    std::vector<double> out(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out[i] = min_dist(shapelet, dataset.row(i), counters).distance;
    }
    return out;
}

inline std::vector<double> min_dist_all(const Shapelet& shapelet, const Dataset& dataset,
                                        KernelCounters* counters = nullptr) {
    return min_dist_all(std::span<const double>(shapelet.values), dataset, counters);
}

/// True iff a and b (equal length) lie strictly closer than epsilon. The
/// running sum stops as soon as it can no longer end below the threshold.
inline bool within_threshold(std::span<const double> a, std::span<const double> b, double epsilon,
                             LookupMode mode = LookupMode::normalized) {
    const double scale = mode == LookupMode::normalized ? static_cast<double>(a.size()) : 1.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
        if (sum / scale >= epsilon) {
            return false;
        }
    }
    return sum / scale < epsilon;
}

/// Whether any equal-length shapelet in `pool` is within epsilon of `s`.
/// epsilon = -inf (the disabled-pruning threshold) never matches.
inline bool lookup(const Shapelet& s, std::span<const Shapelet> pool, double epsilon,
                   LookupMode mode = LookupMode::normalized) {
    for (const auto& q : pool) {
        if (q.length() == s.length() && within_threshold(s.values, q.values, epsilon, mode)) {
            return true;
        }
    }
    return false;
}

/// Considered-candidate store bucketed by length, so a lookup only scans
/// candidates it is allowed to match.
class CandidatePool {
public:
    void add(std::span<const double> values) {
        auto& bucket = bucket_for(values.size());
        bucket.insert(bucket.end(), values.begin(), values.end());
        ++count_;
    }

    bool lookup(std::span<const double> values, double epsilon, LookupMode mode = LookupMode::normalized) const {
        const std::size_t m = values.size();
        if (m >= buckets_.size()) {
            return false;
        }
        const auto& bucket = buckets_[m];
        for (std::size_t off = 0; off < bucket.size(); off += m) {
            if (within_threshold(values, std::span<const double>(bucket).subspan(off, m), epsilon, mode)) {
                return true;
            }
        }
        return false;
    }

    std::size_t size() const { return count_; }

private:
    std::vector<double>& bucket_for(std::size_t m) {
        if (m >= buckets_.size()) {
            buckets_.resize(m + 1);
        }
        return buckets_[m];
    }

    std::vector<std::vector<double>> buckets_;
    std::size_t count_ = 0;
};

} // namespace shapelets

#endif
