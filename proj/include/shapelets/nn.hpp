#ifndef SHAPELETS_NN_HPP
#define SHAPELETS_NN_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace shapelets {

/// Accumulated squared differences between series in shapelet-transformed
/// space. Only the strict upper triangle is stored; the diagonal is zero and
/// the lower triangle mirrors the upper one. Each entry carries a
/// compensation term, so removing a feature restores the prior value to well
/// below one ulp no matter how many add/remove cycles came before.
///
/// Adding or removing a feature costs Theta(N^2) and a leave-one-out query is
/// Theta(N^2) regardless of how many features have been added.
class PairwiseState {
public:
    explicit PairwiseState(std::size_t n)
        : n_(n), upper_(n < 2 ? 0 : n * (n - 1) / 2, 0.0), carry_(upper_.size(), 0.0) {}

    /// Wraps a dense symmetric matrix (only the upper triangle is read).
    static PairwiseState from_dense(const std::vector<std::vector<double>>& x, std::size_t feature_count) {
        PairwiseState state(x.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].size() != x.size()) {
                throw std::invalid_argument("pairwise matrix must be square");
            }
            for (std::size_t m = i + 1; m < x.size(); ++m, ++k) {
                state.upper_[k] = x[i][m];
            }
        }
        state.features_ = feature_count;
        return state;
    }

    std::size_t size() const { return n_; }
    std::size_t feature_count() const { return features_; }

    double at(std::size_t i, std::size_t m) const {
        if (i == m) {
            return 0.0;
        }
        return i < m ? upper_[index(i, m)] : upper_[index(m, i)];
    }

    void add_feature(std::span<const double> d) {
        apply(d, +1);
        ++features_;
    }

    /// Inverse of add_feature; `d` must have been added before.
    void remove_feature(std::span<const double> d) {
        apply(d, -1);
        --features_;
    }

    /// Number of series whose nearest other series (ties: smallest index)
    /// carries the same label.
    std::size_t loocv_correct(std::span<const Label> labels) const {
        if (labels.size() != n_) {
            throw std::invalid_argument("label count does not match pairwise state");
        }
        std::size_t correct = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t nearest = i;
            for (std::size_t m = 0; m < n_; ++m) {
                if (m == i) {
                    continue;
                }
                const double x = at(i, m);
                if (x < best) {
                    best = x;
                    nearest = m;
                }
            }
            if (nearest != i && labels[nearest] == labels[i]) {
                ++correct;
            }
        }
        return correct;
    }

    double loocv_accuracy(std::span<const Label> labels) const {
        if (n_ < 2) {
            throw std::invalid_argument("leave-one-out accuracy needs N >= 2");
        }
        return static_cast<double>(loocv_correct(labels)) / static_cast<double>(n_);
    }

    friend bool operator==(const PairwiseState&, const PairwiseState&) = default;

private:
    // Row-major offset of (i, m), i < m, in the packed strict upper triangle.
    std::size_t index(std::size_t i, std::size_t m) const { return i * (2 * n_ - i - 1) / 2 + (m - i - 1); }

    void apply(std::span<const double> d, int sign) {
        if (d.size() != n_) {
            throw std::invalid_argument("feature vector length " + std::to_string(d.size()) +
                                        " != N = " + std::to_string(n_));
        }
        std::size_t k = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t m = i + 1; m < n_; ++m, ++k) {
                const double diff = d[i] - d[m];
                const double v = sign > 0 ? diff * diff : -(diff * diff);
                // two-sum of the entry and v, then fold the error into carry_
                const double s = upper_[k] + v;
                const double b = s - upper_[k];
                carry_[k] += (upper_[k] - (s - b)) + (v - b);
                const double t = s + carry_[k];
                carry_[k] -= t - s;
                upper_[k] = t;
            }
        }
    }

    std::size_t n_;
    std::vector<double> upper_;
    std::vector<double> carry_;
    std::size_t features_ = 0;
};

inline double loocv_accuracy(const PairwiseState& state, std::span<const Label> labels) {
    return state.loocv_accuracy(labels);
}

} // namespace shapelets

#endif
