#ifndef SHAPELETS_PAA_HPP
#define SHAPELETS_PAA_HPP

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace shapelets {

/// Half-open input range [begin, end) averaged into compressed point j
/// (0-based). Window j+1 (1-based) covers ceil(j/r)+1 .. ceil((j+1)/r),
/// clamped to the input length. For non-integer 1/r the last window can start
/// past the end; it then degenerates to the final input point.
struct PaaWindow {
    std::size_t begin = 0;
    std::size_t end = 0;
};

inline PaaWindow paa_window(std::size_t j, std::size_t length, Ratio r) {
    // ceil(j * den / num) gives the 0-based start; ceil((j+1) * den / num) the end.
    const auto ceil_div = [](std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; };
    std::size_t begin = static_cast<std::size_t>(ceil_div(j * r.den(), r.num()));
    std::size_t end = static_cast<std::size_t>(ceil_div((j + 1) * r.den(), r.num()));
    end = std::min(end, length);
    begin = std::min(begin, length - 1);
    return {begin, end};
}

/// Compresses one series by ratio r into `out` (size ceil(M r)).
inline void paa_series(std::span<const double> series, Ratio r, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) {
        const auto w = paa_window(j, series.size(), r);
        double sum = 0.0;
        for (std::size_t k = w.begin; k < w.end; ++k) {
            sum += series[k];
        }
        out[j] = sum / static_cast<double>(w.end - w.begin);
    }
}

/// Piecewise Aggregate Approximation of every series. r = 1 returns a copy.
inline Dataset paa_compress(const Dataset& dataset, Ratio r) {
    const std::size_t compressed = r.scale_up(dataset.length());
    if (compressed < 2) {
        throw std::invalid_argument("compressed series length " + std::to_string(compressed) +
                                    " < 2 (M = " + std::to_string(dataset.length()) + ", r = " + r.str() + ")");
    }
    if (r == Ratio{1, 1}) {
        return dataset;
    }
    std::vector<double> values(dataset.size() * compressed);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        paa_series(dataset.row(i), r, std::span<double>(values).subspan(i * compressed, compressed));
    }
    return Dataset(dataset.size(), compressed, std::move(values), dataset.labels());
}

} // namespace shapelets

#endif
