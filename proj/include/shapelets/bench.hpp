#ifndef SHAPELETS_BENCH_HPP
#define SHAPELETS_BENCH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "eval.hpp"

namespace shapelets {

/// The four ablation variants: PAA on/off crossed with pruning on/off.
/// "No PAA" runs at r = 1, "no pruning" at p = 0.
enum class Variant { paa_pruning, pruning, paa, none };

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::paa_pruning: return "paa+pruning";
    case Variant::pruning: return "pruning";
    case Variant::paa: return "paa";
    case Variant::none: return "none";
    }
    return "?";
}

/// Accepts "all", "pruning-only" (pruning vs none), "paa-only" (paa vs none)
/// or a comma list of variant names.
inline std::vector<Variant> parse_variants(std::string_view text) {
    if (text == "all") {
        return {Variant::paa_pruning, Variant::pruning, Variant::paa, Variant::none};
    }
    if (text == "pruning-only") {
        return {Variant::pruning, Variant::none};
    }
    if (text == "paa-only") {
        return {Variant::paa, Variant::none};
    }
    std::vector<Variant> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto name = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        bool found = false;
        for (auto v : {Variant::paa_pruning, Variant::pruning, Variant::paa, Variant::none}) {
            if (name == to_string(v)) {
                out.push_back(v);
                found = true;
            }
        }
        if (!found) {
            throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

struct BenchRow {
    Variant variant = Variant::none;
    DiscoveryConfig config;
    EvaluationReport report;

    /// Fraction of sampled candidates that were considered.
    double considered_fraction() const { return report.discovery.considered_fraction(); }

    /// f * r^4 for this run.
    double reduction_bound() const {
        const double r = config.paa_ratio.value();
        return considered_fraction() * r * r * r * r;
    }
};

/// Runs each variant on the same data and seed. `base` supplies r and p for
/// the variants that use them.
inline std::vector<BenchRow> run_ablation(const Dataset& train, const Dataset& test, const DiscoveryConfig& base,
                                          const std::vector<Variant>& variants) {
    std::vector<BenchRow> rows;
    for (auto v : variants) {
        DiscoveryConfig c = base;
        if (v == Variant::pruning || v == Variant::none) {
            c.paa_ratio = Ratio{1, 1};
        }
        if (v == Variant::paa || v == Variant::none) {
            c.percentile = 0;
        }
        rows.push_back({v, c, evaluate(train, test, c)});
    }
    return rows;
}

/// The row for `v`, if it was run.
inline const BenchRow* find_variant(const std::vector<BenchRow>& rows, Variant v) {
    for (const auto& row : rows) {
        if (row.variant == v) {
            return &row;
        }
    }
    return nullptr;
}

} // namespace shapelets

#endif
