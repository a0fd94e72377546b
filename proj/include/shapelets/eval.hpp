#ifndef SHAPELETS_EVAL_HPP
#define SHAPELETS_EVAL_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "core.hpp"
#include "discovery.hpp"
#include "distance.hpp"
#include "paa.hpp"

namespace shapelets {

/// Rows are features (one per shapelet), columns are series.
using FeatureMatrix = std::vector<std::vector<double>>;

/// Compresses `dataset` by r and stacks the minimum distances of each
/// shapelet to every compressed series.
inline FeatureMatrix transform(const Dataset& dataset, std::span<const Shapelet> shapelets, Ratio r) {
    const Dataset data = paa_compress(dataset, r);
    FeatureMatrix out;
    out.reserve(shapelets.size());
    for (const auto& s : shapelets) {
        if (s.length() > data.length()) {
            throw std::invalid_argument("shapelet length " + std::to_string(s.length()) +
                                        " exceeds compressed series length " + std::to_string(data.length()));
        }
        out.push_back(min_dist_all(s, data));
    }
    return out;
}

struct Classification {
    std::vector<Label> predictions;
    double accuracy = 0.0;
};

/// 1-NN in feature space with squared Euclidean distance over all features;
/// ties go to the smallest training index.
inline Classification classify_1nn(const FeatureMatrix& train, std::span<const Label> train_labels,
                                   const FeatureMatrix& test, std::span<const Label> test_labels) {
    if (train.empty() || train.size() != test.size()) {
        throw std::invalid_argument("classify_1nn: train and test need the same, non-zero feature count");
    }
    const std::size_t n_train = train_labels.size();
    const std::size_t n_test = test_labels.size();
    for (std::size_t k = 0; k < train.size(); ++k) {
        if (train[k].size() != n_train || test[k].size() != n_test) {
            throw std::invalid_argument("classify_1nn: feature row " + std::to_string(k) + " has the wrong width");
        }
    }
    if (n_train == 0) {
        throw std::invalid_argument("classify_1nn: empty training set");
    }
    Classification out;
    out.predictions.resize(n_test);
    std::size_t correct = 0;
    for (std::size_t t = 0; t < n_test; ++t) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t nearest = 0;
        for (std::size_t i = 0; i < n_train; ++i) {
            double d = 0.0;
            for (std::size_t k = 0; k < train.size(); ++k) {
                const double diff = train[k][i] - test[k][t];
                d += diff * diff;
            }
            if (d < best) {
                best = d;
                nearest = i;
            }
        }
        out.predictions[t] = train_labels[nearest];
        correct += out.predictions[t] == test_labels[t];
    }
    out.accuracy = n_test == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(n_test);
    return out;
}

struct EvaluationTimings {
    double threshold_seconds = 0.0;
    double discovery_seconds = 0.0;
    double transform_seconds = 0.0;
    double total_seconds = 0.0;
};

struct EvaluationReport {
    DiscoveryResult discovery;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    std::vector<Label> predictions;
    EvaluationTimings timings;
};

/// Discover on train, transform both sets with the accepted shapelets and
/// classify the test set by 1-NN.
inline EvaluationReport evaluate(const Dataset& train, const Dataset& test, const DiscoveryConfig& config) {
    validate_dataset(train, true);
    validate_dataset(test, false);
    if (train.length() != test.length()) {
        throw DataError("train and test series lengths differ (" + std::to_string(train.length()) + " vs " +
                        std::to_string(test.length()) + ")");
    }
    const auto start = std::chrono::steady_clock::now();
    EvaluationReport report;
    DiscoveryTimings dt;
    report.discovery = discover(train, config, DiscoveryHooks{{}, &dt});
    report.timings.threshold_seconds = dt.threshold_seconds;
    report.timings.discovery_seconds = dt.loop_seconds;
    report.train_accuracy = report.discovery.train_accuracy();

    const auto t0 = std::chrono::steady_clock::now();
    const FeatureMatrix test_features = transform(test, report.discovery.accepted, config.paa_ratio);
    report.timings.transform_seconds = detail::seconds_since(t0);

    auto result = classify_1nn(report.discovery.transform, train.labels(), test_features, test.labels());
    report.predictions = std::move(result.predictions);
    report.test_accuracy = result.accuracy;
    report.timings.total_seconds = detail::seconds_since(start);
    return report;
}

// ---------------------------------------------------------------------------
// Grid search
// ---------------------------------------------------------------------------

struct GridOptions {
    /// Train accuracy per cell is averaged over seeds seed, seed+1, ...
    std::size_t seeds_per_cell = 1;
    /// Worker threads across cells; results do not depend on it.
    std::size_t threads = 1;
    LookupMode lookup_mode = LookupMode::normalized;
    std::optional<std::uint64_t> candidate_budget;
};

struct GridCell {
    Ratio r;
    int p = 0;
    double train_accuracy = 0.0;
};

struct GridResult {
    Ratio best_r;
    int best_p = 0;
    std::vector<GridCell> cells; // r-major in grid order
};

/// Index of the best cell: highest train accuracy, ties to the larger r,
/// then the larger p.
inline std::size_t select_best(std::span<const GridCell> cells) {
    if (cells.empty()) {
        throw std::invalid_argument("empty grid");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const auto& a = cells[k];
        const auto& b = cells[best];
        if (a.train_accuracy != b.train_accuracy) {
            if (a.train_accuracy > b.train_accuracy) {
                best = k;
            }
        } else if (b.r < a.r || (a.r == b.r && a.p > b.p)) {
            best = k;
        }
    }
    return best;
}

/// Runs `task(cell_index)` for every index, on up to `threads` workers.
/// Each index is handled exactly once; the first exception is rethrown.
template <typename Task>
void for_each_cell(std::size_t count, std::size_t threads, Task&& task) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t k = 0; k < count; ++k) {
            task(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t k; (k = next.fetch_add(1)) < count;) {
                try {
                    task(k);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    workers.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

inline void check_grid(std::span<const Ratio> r_grid, std::span<const int> p_grid) {
    if (r_grid.empty() || p_grid.empty()) {
        throw std::invalid_argument("grid search needs non-empty r and p grids");
    }
}

inline DiscoveryConfig cell_config(Ratio r, int p, std::span<const double> fractions, std::uint64_t seed,
                                   const GridOptions& options) {
    DiscoveryConfig c;
    c.paa_ratio = r;
    c.percentile = p;
    c.length_fractions.assign(fractions.begin(), fractions.end());
    c.seed = seed;
    c.candidate_budget = options.candidate_budget;
    c.lookup_mode = options.lookup_mode;
    return c;
}

/// Discovers shapelets for every (r, p) and picks the cell with the best
/// final train accuracy (see select_best for ties).
inline GridResult grid_search(const Dataset& train, std::span<const Ratio> r_grid, std::span<const int> p_grid,
                              std::span<const double> fractions, std::uint64_t seed, const GridOptions& options = {}) {
    check_grid(r_grid, p_grid);
    const std::size_t seeds = std::max<std::size_t>(1, options.seeds_per_cell);
    GridResult out;
    for (auto r : r_grid) {
        for (int p : p_grid) {
            out.cells.push_back({r, p, 0.0});
        }
    }
    for_each_cell(out.cells.size(), options.threads, [&](std::size_t k) {
        auto& cell = out.cells[k];
        double sum = 0.0;
        for (std::size_t s = 0; s < seeds; ++s) {
            sum += discover(train, cell_config(cell.r, cell.p, fractions, seed + s, options)).train_accuracy();
        }
        cell.train_accuracy = sum / static_cast<double>(seeds);
    });
    const auto best = select_best(out.cells);
    out.best_r = out.cells[best].r;
    out.best_p = out.cells[best].p;
    return out;
}

struct GridEvaluation {
    std::vector<EvaluationReport> reports; // same order as cells
    std::vector<GridCell> cells;
    std::size_t selected = 0;
};

/// Full train/test evaluation of every grid cell at `seed`, selecting by
/// train accuracy exactly as grid_search does (averaged over extra seeds when
/// seeds_per_cell > 1).
inline GridEvaluation grid_evaluate(const Dataset& train, const Dataset& test, std::span<const Ratio> r_grid,
                                    std::span<const int> p_grid, std::span<const double> fractions,
                                    std::uint64_t seed, const GridOptions& options = {}) {
    check_grid(r_grid, p_grid);
    GridEvaluation out;
    for (auto r : r_grid) {
        for (int p : p_grid) {
            out.cells.push_back({r, p, 0.0});
        }
    }
    out.reports.resize(out.cells.size());
    const std::size_t seeds = std::max<std::size_t>(1, options.seeds_per_cell);
    for_each_cell(out.cells.size(), options.threads, [&](std::size_t k) {
        const auto& cell = out.cells[k];
        out.reports[k] = evaluate(train, test, cell_config(cell.r, cell.p, fractions, seed, options));
        double sum = out.reports[k].train_accuracy;
        for (std::size_t s = 1; s < seeds; ++s) {
            sum += discover(train, cell_config(cell.r, cell.p, fractions, seed + s, options)).train_accuracy();
        }
        out.cells[k].train_accuracy = sum / static_cast<double>(seeds);
    });
    out.selected = select_best(out.cells);
    return out;
}

} // namespace shapelets

#endif
