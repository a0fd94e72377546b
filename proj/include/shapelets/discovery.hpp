#ifndef SHAPELETS_DISCOVERY_HPP
#define SHAPELETS_DISCOVERY_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core.hpp"
#include "distance.hpp"
#include "nn.hpp"
#include "paa.hpp"
#include "rng.hpp"
#include "sampling.hpp"

namespace shapelets {

enum class CandidateOutcome { refused, accepted, rejected };

/// Snapshot handed to DiscoveryHooks::on_candidate after each sampled
/// candidate has been decided. `features` is empty for refused candidates.
struct CandidateEvent {
    std::uint64_t index = 0;
    CandidateOutcome outcome = CandidateOutcome::refused;
    std::size_t series = 0;
    std::size_t start = 0;
    std::size_t length = 0;
    std::span<const double> features;
    const PairwiseState* state = nullptr;
    /// Transform rows of the shapelets accepted so far, in acceptance order.
    const std::vector<std::vector<double>>* accepted_features = nullptr;
};

struct DiscoveryTimings {
    double threshold_seconds = 0.0;
    double loop_seconds = 0.0;
};

struct DiscoveryHooks {
    std::function<void(const CandidateEvent&)> on_candidate;
    DiscoveryTimings* timings = nullptr;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace detail

/// Samples candidate subsequences, refuses those within epsilon of an
/// already considered candidate of equal length, and keeps a considered
/// candidate only if it strictly raises leave-one-out 1-NN train accuracy.
///
/// Randomness, in order: the threshold sample (see estimate_threshold), then
/// per candidate the series index, the length index and the start offset.
/// Everything runs on the PAA-compressed training data.
inline DiscoveryResult discover(const Dataset& dataset, const DiscoveryConfig& config, const DiscoveryHooks& hooks = {}) {
    validate_dataset(dataset, true);
    validate_config(config);

    const Dataset data = paa_compress(dataset, config.paa_ratio);
    const std::size_t n = data.size();
    const std::size_t m = data.length();

    DiscoveryResult result;
    result.config = config;
    result.compressed_length = m;
    result.lengths = shapelet_lengths(config.length_fractions, m);

    Rng rng(config.seed);
    auto clock = std::chrono::steady_clock::now();
    result.threshold_epsilon = estimate_threshold(data, config.percentile, result.lengths, rng);
    if (hooks.timings) {
        hooks.timings->threshold_seconds = detail::seconds_since(clock);
    }
    clock = std::chrono::steady_clock::now();

    const std::uint64_t budget = config.candidate_budget.value_or(n * m * result.lengths.size());
    result.config.candidate_budget = budget;

    const double epsilon = result.threshold_epsilon;
    const auto& labels = data.labels();
    PairwiseState state(n);
    CandidatePool accepted_pool;
    CandidatePool rejected_pool;
    // -1 stands in for the initial accuracy of -infinity.
    long long best_correct = -1;

    for (std::uint64_t c = 0; c < budget; ++c) {
        const std::size_t i = rng.uniform(n);
        const std::size_t l = result.lengths[rng.uniform(result.lengths.size())];
        const std::size_t j = rng.uniform(m - l + 1);
        const auto candidate = data.row(i).subspan(j, l);
        ++result.sampled_count;

        CandidateEvent event{c, CandidateOutcome::refused, i, j, l, {}, &state, &result.transform};

        if (accepted_pool.lookup(candidate, epsilon, config.lookup_mode) ||
            rejected_pool.lookup(candidate, epsilon, config.lookup_mode)) {
            ++result.refused_count;
            if (hooks.on_candidate) {
                hooks.on_candidate(event);
            }
            continue;
        }

        ++result.considered_count;
        ++result.feature_evaluations;
        std::vector<double> features = min_dist_all(candidate, data, &result.kernel);
        state.add_feature(features);
        const auto correct = static_cast<long long>(state.loocv_correct(labels));

        if (correct > best_correct) {
            best_correct = correct;
            accepted_pool.add(candidate);
            result.accepted.push_back(Shapelet{{candidate.begin(), candidate.end()}, i, j});
            result.transform.push_back(std::move(features));
            result.accuracy_trace.push_back(static_cast<double>(correct) / static_cast<double>(n));
            event.outcome = CandidateOutcome::accepted;
            event.features = result.transform.back();
        } else {
            state.remove_feature(features);
            rejected_pool.add(candidate);
            ++result.rejected_count;
            event.outcome = CandidateOutcome::rejected;
            event.features = features;
        }
        if (hooks.on_candidate) {
            hooks.on_candidate(event);
        }
    }

    if (hooks.timings) {
        hooks.timings->loop_seconds = detail::seconds_since(clock);
    }
    return result;
}

} // namespace shapelets

#endif
