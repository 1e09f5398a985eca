// Command-line front end: simulate peak distances of moving-window sums,
// print the closed-form tables, compare the two, and run the independent
// oracles. Exit codes: 0 success, 1 runtime/I-O failure, 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mapeaks/analytic.hpp"
#include "mapeaks/report_io.hpp"
#include "mapeaks/simulate.hpp"

namespace {

using mapeaks::InnovationDistribution;

struct SimulateFlags {
    mapeaks::SimulationConfig config;
    std::string format = "csv";
    std::string out_path;  // empty = stdout
};

struct PmfFlags {
    int d_max = 64;
    std::string format = "csv";
    std::string out_path;
};

struct OracleFlags {
    int d_max = 20;
    long long mc_samples = 0;  // 0 = enumeration only
    int ma_order = 8;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string out_path;
};

const std::map<std::string, InnovationDistribution> kDistNames{
    {"uniform", InnovationDistribution::uniform01},
    {"normal", InnovationDistribution::standard_normal},
    {"exponential", InnovationDistribution::exponential_unit_rate},
};

void write_output(const std::string& out_path, const std::function<void(std::ostream&)>& writer) {
    if (out_path.empty()) {
        writer(std::cout);
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("write to stdout failed");
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    writer(file);
    file.flush();
    if (!file) throw std::runtime_error("write failed: " + out_path);
}

void add_simulate_flags(CLI::App* cmd, SimulateFlags& flags, bool with_format_default_json) {
    cmd->add_option("--q", flags.config.ma_order, "Window order q (value sums q+1 innovations)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--n", flags.config.n_terms, "Number of series values to generate")
        ->required()
        ->check(CLI::Range(3ll, 1000000000000ll));
    cmd->add_option("--dist", flags.config.distribution, "Innovation law")
        ->transform(CLI::CheckedTransformer(kDistNames, CLI::ignore_case))
        ->default_val("normal");
    cmd->add_option("--seed", flags.config.seed, "RNG seed (env MASIM_SEED is the fallback default)")
        ->envname("MASIM_SEED")
        ->default_val(0);
    cmd->add_option("--streams", flags.config.streams, "Independent parallel streams")
        ->check(CLI::PositiveNumber)
        ->default_val(1);
    cmd->add_option("--d-max", flags.config.d_max, "Histogram cutoff; larger distances go to the tail bin")
        ->check(CLI::Range(2, 100000))
        ->default_val(64);
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val(with_format_default_json ? "json" : "csv");
    cmd->add_option("--out", flags.out_path, "Output path (default: stdout)");
}

int run_simulate(const SimulateFlags& flags) {
    flags.config.validate();
    const mapeaks::SimulationResult result = mapeaks::run_simulation(flags.config);
    const mapeaks::ReportMeta meta = mapeaks::make_report_meta(flags.config, result);
    write_output(flags.out_path, [&](std::ostream& os) {
        if (flags.format == "csv")
            mapeaks::write_histogram_csv(os, result.histogram);
        else
            mapeaks::write_json(os, mapeaks::histogram_json(result.histogram, meta));
    });
    return 0;
}

int run_compare(const SimulateFlags& flags) {
    flags.config.validate();
    const mapeaks::SimulationResult result = mapeaks::run_simulation(flags.config);
    const mapeaks::AnalyticModel model{flags.config.d_max};
    const mapeaks::ComparisonReport report =
        mapeaks::compare(result.histogram, model, mapeaks::make_report_meta(flags.config, result));
    write_output(flags.out_path, [&](std::ostream& os) {
        if (flags.format == "csv")
            mapeaks::write_report_csv(os, report);
        else
            mapeaks::write_json(os, mapeaks::report_json(report));
    });
    return 0;
}

int run_pmf(const PmfFlags& flags) {
    const mapeaks::AnalyticModel model{flags.d_max};
    write_output(flags.out_path, [&](std::ostream& os) {
        if (flags.format == "csv")
            mapeaks::write_pmf_table_csv(os, model);
        else
            mapeaks::write_json(os, mapeaks::pmf_table_json(model));
    });
    return 0;
}

int run_oracle(const OracleFlags& flags) {
    mapeaks::OracleOutput oracle;
    oracle.d_max = flags.d_max;
    for (int d = 2; d <= flags.d_max; ++d)
        oracle.pattern_counts.push_back(mapeaks::peak_free_pattern_count(d));
    if (flags.mc_samples > 0) {
        oracle.mc_enabled = true;
        oracle.mc_ma_order = flags.ma_order;
        oracle.mc_samples = flags.mc_samples;
        oracle.mc_seed = flags.seed;
        for (int d = 2; d <= flags.d_max; ++d) {
            mapeaks::OracleMcRow row;
            row.d = d;
            row.estimate = mapeaks::monte_carlo_distance_probability(d, flags.ma_order,
                                                                     flags.mc_samples, flags.seed);
            row.analytic_pmf = mapeaks::distance_pmf(d).to_double();
            row.abs_error = std::fabs(row.estimate - row.analytic_pmf);
            oracle.mc_rows.push_back(row);
        }
    }
    write_output(flags.out_path, [&](std::ostream& os) {
        if (flags.format == "csv")
            mapeaks::write_oracle_csv(os, oracle);
        else
            mapeaks::write_json(os, mapeaks::oracle_json(oracle));
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "mapeaks: distances between strict local maxima of moving-window sums.\n"
        "Simulates seeded runs, prints the closed-form distribution, and checks\n"
        "one against the other."};
    app.require_subcommand(1);

    SimulateFlags simulate_flags;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Generate a series and write the histogram of peak distances");
    add_simulate_flags(simulate, simulate_flags, /*with_format_default_json=*/false);
    simulate->footer(
        "CSV columns: d,count. One row per bin d=2..d_max; the final row, labeled\n"
        "d_max+1, aggregates all distances above d_max (the tail bin).");

    SimulateFlags compare_flags;
    CLI::App* compare = app.add_subcommand(
        "compare", "Simulate, then compare the empirical distribution against the closed form");
    add_simulate_flags(compare, compare_flags, /*with_format_default_json=*/true);
    compare->footer(
        "JSON: {metadata, bins, tail, moments, chi_square}. chi_square is null when no\n"
        "bins lie inside the asymptotic regime d < q.\n"
        "CSV columns: d,count,empirical_pmf,analytic_pmf,abs_error,in_asymptotic_regime;\n"
        "final row labeled d_max+1 is the tail bin (moments/chi-square are JSON only).");

    PmfFlags pmf_flags;
    CLI::App* pmf = app.add_subcommand("pmf", "Print the closed-form distance distribution");
    pmf->add_option("--d-max", pmf_flags.d_max,
                    "Last tabulated distance (cdf is exact through 120)")
        ->check(CLI::Range(2, 120))
        ->default_val(64);
    pmf->add_option("--format", pmf_flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    pmf->add_option("--out", pmf_flags.out_path, "Output path (default: stdout)");
    pmf->footer(
        "CSV columns: d,pmf,cdf,pi. pmf = (d-1)/2^d, cdf its partial sum, pi the\n"
        "probability (d-1)/2^(d-2) of no interior peak between peaks at distance d.");

    OracleFlags oracle_flags;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "Re-derive the closed form by enumeration and (optionally) Monte Carlo");
    oracle->add_option("--d-max", oracle_flags.d_max, "Last distance to enumerate (2^(d-2) patterns each)")
        ->check(CLI::Range(2, 30))
        ->default_val(20);
    oracle->add_option("--mc-samples", oracle_flags.mc_samples,
                       "Monte Carlo samples per distance (0 = enumeration only, else >= 1e4)")
        ->check(CLI::Range(0ll, 1000000000ll))
        ->default_val(0);
    oracle->add_option("--q", oracle_flags.ma_order, "Window order for the Monte Carlo oracle")
        ->check(CLI::PositiveNumber)
        ->default_val(8);
    oracle->add_option("--seed", oracle_flags.seed, "Monte Carlo seed")
        ->envname("MASIM_SEED")
        ->default_val(0);
    oracle->add_option("--format", oracle_flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    oracle->add_option("--out", oracle_flags.out_path, "Output path (default: stdout)");
    oracle->footer(
        "CSV columns: d,pattern_count,expected,match,mc_estimate,mc_analytic_pmf,\n"
        "mc_abs_error. The mc_* cells are empty unless --mc-samples is given. The\n"
        "estimate approaches the pmf only in the regime q > d; other rows are\n"
        "reported without any expectation of matching.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints help or the error message
        return rc == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(simulate_flags);
        if (compare->parsed()) return run_compare(compare_flags);
        if (pmf->parsed()) return run_pmf(pmf_flags);
        if (oracle->parsed()) return run_oracle(oracle_flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
