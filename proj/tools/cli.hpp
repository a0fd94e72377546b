#ifndef SHAPELETS_TOOLS_CLI_HPP
#define SHAPELETS_TOOLS_CLI_HPP

// Command implementations for the `shapelets` executable. Kept in a header so
// the test suites can run commands in-process against string streams.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shapelets/shapelets.hpp"

namespace shapelets::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kEvaluateHeader =
    "kind,r,p,epsilon,sampled,refused,rejected,accepted,train_acc,test_acc,seconds_total";
inline constexpr const char* kBenchHeader =
    "variant,r,p,epsilon,sampled,considered,refused,rejected,accepted,feature_evals,window_evals,point_evals,"
    "f,f_r4,window_ratio,train_acc,test_acc,seconds_threshold,seconds_discovery,seconds_transform,seconds_total";

/// Invalid flag values; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(item);
    }
    return out;
}

inline std::vector<double> parse_fractions(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        double v = 0.0;
        if (!parse_double(item, v) || !(v > 0.0 && v <= 1.0)) {
            throw UsageError("--phi entries must be fractions in (0, 1], got '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("--phi needs at least one fraction");
    }
    return out;
}

inline Ratio parse_ratio_flag(const std::string& text, const char* flag) {
    try {
        return parse_ratio(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(flag) + " must be a ratio in (0, 1], got '" + text + "'");
    }
}

inline void check_percentile(int p) {
    if (p < 0 || p > 100) {
        throw UsageError("p must be in [0,100]");
    }
}

inline std::string seconds(double s, bool timings) { return format_fixed(timings ? s : 0.0, 3); }

/// Writes to --out when given, otherwise to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw DataError("cannot write '" + path + "'");
            }
        }
        out_ = path.empty() ? &fallback : &file_;
    }

    std::ostream& stream() { return *out_; }

    void close() {
        out_->flush();
        if (!*out_) {
            throw DataError("write failed");
        }
    }

private:
    std::ofstream file_;
    std::ostream* out_;
};

struct DiscoveryFlags {
    std::string r = "1";
    int p = 25;
    std::string phi = "0.2,0.4,0.6";
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    bool lookup_unnormalized = false;

    void add_to(CLI::App& app) {
        app.add_option("--r", r, "PAA ratio in (0,1], e.g. 0.5 or 1/8")->capture_default_str();
        app.add_option("--p", p, "Pruning percentile in [0,100]; 0 disables pruning")->capture_default_str();
        app.add_option("--phi", phi, "Comma list of shapelet length fractions")->capture_default_str();
        app.add_option("--seed", seed, "Random seed")->capture_default_str();
        app.add_option("--budget", budget, "Number of sampled candidates (default N*M'*L)");
        app.add_flag("--lookup-unnormalized", lookup_unnormalized,
                     "Compare raw squared distances against epsilon during lookup");
    }

    DiscoveryConfig config() const {
        check_percentile(p);
        DiscoveryConfig c;
        c.paa_ratio = parse_ratio_flag(r, "--r");
        c.percentile = p;
        c.length_fractions = parse_fractions(phi);
        c.seed = seed;
        if (budget > 0) {
            c.candidate_budget = budget;
        }
        c.lookup_mode = lookup_unnormalized ? LookupMode::unnormalized : LookupMode::normalized;
        return c;
    }
};

inline std::string summary_line(const DiscoveryResult& r) {
    return "epsilon=" + format_double(r.threshold_epsilon) + " accepted=" + std::to_string(r.accepted.size()) +
           " refused_pct=" + format_fixed(100.0 * r.refused_fraction(), 2) +
           " train_accuracy=" + format_fixed(r.train_accuracy(), 6);
}

inline std::string evaluate_row(const char* kind, const EvaluationReport& rep, bool timings) {
    const auto& d = rep.discovery;
    std::ostringstream row;
    row << kind << ',' << d.config.paa_ratio.str() << ',' << d.config.percentile << ','
        << format_double(d.threshold_epsilon) << ',' << d.sampled_count << ',' << d.refused_count << ','
        << d.rejected_count << ',' << d.accepted.size() << ',' << format_fixed(rep.train_accuracy, 6) << ','
        << format_fixed(rep.test_accuracy, 6) << ',' << seconds(rep.timings.total_seconds, timings);
    return row.str();
}

inline std::string bench_row(const BenchRow& row, const BenchRow* reference, bool timings) {
    const auto& d = row.report.discovery;
    const auto& t = row.report.timings;
    std::ostringstream out;
    out << to_string(row.variant) << ',' << row.config.paa_ratio.str() << ',' << row.config.percentile << ','
        << format_double(d.threshold_epsilon) << ',' << d.sampled_count << ',' << d.considered_count << ','
        << d.refused_count << ',' << d.rejected_count << ',' << d.accepted.size() << ',' << d.feature_evaluations
        << ',' << d.kernel.windows << ',' << d.kernel.points << ',' << format_double(row.considered_fraction())
        << ',' << format_double(row.reduction_bound()) << ',';
    if (reference && reference->report.discovery.kernel.windows > 0) {
        out << format_double(static_cast<double>(d.kernel.windows) /
                             static_cast<double>(reference->report.discovery.kernel.windows));
    }
    out << ',' << format_fixed(row.report.train_accuracy, 6) << ',' << format_fixed(row.report.test_accuracy, 6)
        << ',' << seconds(t.threshold_seconds, timings) << ',' << seconds(t.discovery_seconds, timings) << ','
        << seconds(t.transform_seconds, timings) << ',' << seconds(t.total_seconds, timings);
    return out.str();
}

inline std::string help_footer() {
    return std::string("CSV headers:\n  evaluate: ") + kEvaluateHeader + "\n  bench:    " + kBenchHeader +
           "\n\nExit codes: 0 success, 1 runtime or I/O failure, 2 usage error.\n"
           "Random streams: xoshiro256** seeded through SplitMix64 from --seed.\n";
}

/// Runs the CLI with argv-style `args` (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scalable time-series shapelet discovery with similarity pruning", "shapelets"};
    app.footer(help_footer());
    app.require_subcommand(1);

    std::string train_path;
    std::string test_path;
    std::string out_path;
    bool no_timings = false;

    auto* discover_cmd = app.add_subcommand("discover", "Discover shapelets on a training set");
    DiscoveryFlags discover_flags;
    discover_cmd->add_option("--train", train_path, "UCR-format training file")->required();
    discover_cmd->add_option("--out", out_path, "Result document path")->required();
    discover_flags.add_to(*discover_cmd);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Train/test evaluation, optionally over an (r,p) grid");
    DiscoveryFlags evaluate_flags;
    bool grid = false;
    std::string grid_r = "1,1/2,1/4,1/8";
    std::string grid_p = "15,25,35";
    std::size_t grid_seeds = 1;
    std::size_t threads = 1;
    evaluate_cmd->add_option("--train", train_path, "UCR-format training file")->required();
    evaluate_cmd->add_option("--test", test_path, "UCR-format test file")->required();
    evaluate_cmd->add_option("--out", out_path, "CSV output path (default: standard output)");
    std::string report_path;
    evaluate_cmd->add_option("--report", report_path, "Also write the result document of the single/selected run");
    evaluate_flags.add_to(*evaluate_cmd);
    evaluate_cmd->add_flag("--grid", grid, "Grid-search (r, p) on train accuracy");
    evaluate_cmd->add_option("--grid-r", grid_r, "Comma list of PAA ratios")->capture_default_str();
    evaluate_cmd->add_option("--grid-p", grid_p, "Comma list of percentiles")->capture_default_str();
    evaluate_cmd->add_option("--grid-seeds", grid_seeds, "Seeds averaged per grid cell for selection")
        ->capture_default_str();
    evaluate_cmd->add_option("--threads", threads, "Worker threads across grid cells")->capture_default_str();
    evaluate_cmd->add_flag("--no-timings", no_timings, "Print 0.000 in timing columns");

    auto* bench_cmd = app.add_subcommand("bench", "PAA / pruning ablation benchmark");
    DiscoveryFlags bench_flags;
    bench_flags.r = "1/2";
    std::string variants = "all";
    bench_cmd->add_option("--train", train_path, "UCR-format training file")->required();
    bench_cmd->add_option("--test", test_path, "UCR-format test file")->required();
    bench_cmd->add_option("--out", out_path, "CSV output path (default: standard output)");
    bench_flags.add_to(*bench_cmd);
    bench_cmd->add_option("--variants", variants,
                          "all | pruning-only | paa-only | comma list of paa+pruning,pruning,paa,none")
        ->capture_default_str();
    bench_cmd->add_flag("--no-timings", no_timings, "Print 0.000 in timing columns");

    auto* gen_cmd = app.add_subcommand("gen", "Write a two-class synthetic dataset");
    std::size_t n_per_class = 20;
    std::size_t length = 64;
    double sigma = 1.0;
    std::uint64_t gen_seed = 0;
    gen_cmd->add_option("--n", n_per_class, "Series per class (>= 2)")->capture_default_str();
    gen_cmd->add_option("--m", length, "Series length (>= 16)")->capture_default_str();
    gen_cmd->add_option("--sigma", sigma, "Noise standard deviation")->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--out", out_path, "Output path")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*discover_cmd) {
            const auto config = discover_flags.config();
            const auto train = load_dataset(train_path);
            const auto result = discover(train, config);
            write_result(result, out_path);
            out << summary_line(result) << '\n';
        } else if (*evaluate_cmd) {
            const auto config = evaluate_flags.config();
            std::vector<Ratio> r_grid;
            std::vector<int> p_grid;
            if (grid) {
                for (const auto& item : split_list(grid_r)) {
                    r_grid.push_back(parse_ratio_flag(item, "--grid-r"));
                }
                for (const auto& item : split_list(grid_p)) {
                    double v = 0.0;
                    if (!parse_double(item, v) || v != static_cast<int>(v)) {
                        throw UsageError("--grid-p entries must be integers, got '" + item + "'");
                    }
                    check_percentile(static_cast<int>(v));
                    p_grid.push_back(static_cast<int>(v));
                }
                if (r_grid.empty() || p_grid.empty()) {
                    throw UsageError("--grid-r and --grid-p must be non-empty");
                }
            }
            const auto train = load_dataset(train_path);
            const auto test = load_dataset(test_path);
            Sink sink(out_path, out);
            sink.stream() << kEvaluateHeader << '\n';
            if (grid) {
                GridOptions options;
                options.seeds_per_cell = grid_seeds;
                options.threads = threads;
                options.lookup_mode = config.lookup_mode;
                options.candidate_budget = config.candidate_budget;
                err << "grid: " << r_grid.size() * p_grid.size() << " cells\n";
                const auto ge = grid_evaluate(train, test, r_grid, p_grid, config.length_fractions, config.seed, options);
                for (const auto& rep : ge.reports) {
                    sink.stream() << evaluate_row("cell", rep, !no_timings) << '\n';
                }
                sink.stream() << evaluate_row("selected", ge.reports[ge.selected], !no_timings) << '\n';
                if (!report_path.empty()) {
                    write_result(ge.reports[ge.selected].discovery, report_path);
                }
            } else {
                const auto rep = evaluate(train, test, config);
                sink.stream() << evaluate_row("single", rep, !no_timings) << '\n';
                if (!report_path.empty()) {
                    write_result(rep.discovery, report_path);
                }
            }
            sink.close();
        } else if (*bench_cmd) {
            const auto config = bench_flags.config();
            std::vector<Variant> selected;
            try {
                selected = parse_variants(variants);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto train = load_dataset(train_path);
            const auto test = load_dataset(test_path);
            const auto rows = run_ablation(train, test, config, selected);
            const BenchRow* reference = find_variant(rows, Variant::none);
            Sink sink(out_path, out);
            sink.stream() << kBenchHeader << '\n';
            for (const auto& row : rows) {
                sink.stream() << bench_row(row, reference, !no_timings) << '\n';
            }
            sink.close();
        } else if (*gen_cmd) {
            if (length < 16) {
                throw UsageError("--m must be >= 16");
            }
            if (n_per_class < 2) {
                throw UsageError("--n must be >= 2");
            }
            if (!(sigma >= 0.0)) {
                throw UsageError("--sigma must be >= 0");
            }
            const auto data = testkit::generate_synthetic(n_per_class, length, sigma, gen_seed);
            Sink sink(out_path, out);
            write_dataset(sink.stream(), data);
            sink.close();
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace shapelets::cli

#endif
