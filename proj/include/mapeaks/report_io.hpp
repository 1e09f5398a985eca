#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mapeaks/analytic.hpp"
#include "mapeaks/simulate.hpp"
#include "mapeaks/stats.hpp"

namespace mapeaks {

// Shortest round-trip decimal form, locale-independent ('.' separator).
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

// Rows of the Monte Carlo side of the oracle output.
struct OracleMcRow {
    int d = 0;
    double estimate = 0.0;
    double analytic_pmf = 0.0;
    double abs_error = 0.0;
};

struct OracleOutput {
    int d_max = 20;
    std::vector<long long> pattern_counts;  // index 0 is d = 2
    // Monte Carlo section, empty unless requested.
    bool mc_enabled = false;
    int mc_ma_order = 0;
    long long mc_samples = 0;
    std::uint64_t mc_seed = 0;
    std::vector<OracleMcRow> mc_rows;
};

// ---------------------------------------------------------------------------
// CSV writers. One header line, '.' decimals, newline-terminated rows.
// Histogram and comparison tables carry one row per bin d = 2..d_max plus a
// final row labeled d_max+1 that aggregates the overflow tail, so the files
// stay purely numeric.
// ---------------------------------------------------------------------------

inline void write_histogram_csv(std::ostream& os, const DistanceHistogram& hist) {
    os << "d,count\n";
    for (int d = 2; d <= hist.d_max(); ++d) os << d << ',' << hist.count(d) << '\n';
    os << hist.d_max() + 1 << ',' << hist.tail_count() << '\n';
}

inline void write_pmf_table_csv(std::ostream& os, const AnalyticModel& model) {
    os << "d,pmf,cdf,pi\n";
    for (int d = 2; d <= model.d_max; ++d) {
        os << d << ',' << format_double(model.pmf(d).to_double()) << ','
           << format_double(model.cdf(d).to_double()) << ','
           << format_double(model.no_interior_peak(d).to_double()) << '\n';
    }
}

inline void write_report_csv(std::ostream& os, const ComparisonReport& report) {
    os << "d,count,empirical_pmf,analytic_pmf,abs_error,in_asymptotic_regime\n";
    for (const ReportRow& row : report.rows) {
        os << row.d << ',' << row.count << ',' << format_double(row.empirical_pmf) << ','
           << format_double(row.analytic_pmf) << ',' << format_double(row.abs_error) << ','
           << (row.in_asymptotic_regime ? "true" : "false") << '\n';
    }
    const int tail_d = report.meta.d_max + 1;
    os << tail_d << ',' << report.tail_count << ',' << format_double(report.tail_share) << ','
       << format_double(report.tail_analytic_mass) << ','
       << format_double(std::fabs(report.tail_share - report.tail_analytic_mass)) << ','
       << (tail_d < report.meta.ma_order ? "true" : "false") << '\n';
}

inline void write_oracle_csv(std::ostream& os, const OracleOutput& oracle) {
    os << "d,pattern_count,expected,match,mc_estimate,mc_analytic_pmf,mc_abs_error\n";
    for (int d = 2; d <= oracle.d_max; ++d) {
        const long long count = oracle.pattern_counts[static_cast<std::size_t>(d - 2)];
        const long long expected = d - 1;
        os << d << ',' << count << ',' << expected << ','
           << (count == expected ? "true" : "false") << ',';
        if (oracle.mc_enabled) {
            const OracleMcRow& row = oracle.mc_rows[static_cast<std::size_t>(d - 2)];
            os << format_double(row.estimate) << ',' << format_double(row.analytic_pmf) << ','
               << format_double(row.abs_error);
        } else {
            os << ",,";
        }
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// JSON writers. Single object, lower_snake_case fields, mandatory metadata
// block; nlohmann::ordered_json keeps field order stable between runs.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json metadata_json(const ReportMeta& meta) {
    return nlohmann::ordered_json{
        {"q", meta.ma_order},
        {"n", meta.requested_n},
        {"realized_n", meta.realized_n},
        {"distribution", to_string(meta.distribution)},
        {"seed", meta.seed},
        {"streams", meta.streams},
        {"d_max", meta.d_max},
    };
}

inline nlohmann::ordered_json histogram_json(const DistanceHistogram& hist,
                                             const ReportMeta& meta) {
    nlohmann::ordered_json bins = nlohmann::ordered_json::array();
    for (int d = 2; d <= hist.d_max(); ++d)
        bins.push_back(nlohmann::ordered_json{{"d", d}, {"count", hist.count(d)}});
    return nlohmann::ordered_json{
        {"metadata", metadata_json(meta)},
        {"total", hist.total()},
        {"tail_count", hist.tail_count()},
        {"tie_events", hist.tie_events()},
        {"peaks", meta.peaks},
        {"terms", meta.realized_n},
        {"bins", bins},
    };
}

inline nlohmann::ordered_json pmf_table_json(const AnalyticModel& model) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int d = 2; d <= model.d_max; ++d) {
        rows.push_back(nlohmann::ordered_json{
            {"d", d},
            {"pmf", model.pmf(d).to_double()},
            {"cdf", model.cdf(d).to_double()},
            {"pi", model.no_interior_peak(d).to_double()},
        });
    }
    return nlohmann::ordered_json{{"d_max", model.d_max}, {"rows", rows}};
}

inline nlohmann::ordered_json report_json(const ComparisonReport& report) {
    nlohmann::ordered_json bins = nlohmann::ordered_json::array();
    for (const ReportRow& row : report.rows) {
        bins.push_back(nlohmann::ordered_json{
            {"d", row.d},
            {"count", row.count},
            {"empirical_pmf", row.empirical_pmf},
            {"analytic_pmf", row.analytic_pmf},
            {"abs_error", row.abs_error},
            {"in_asymptotic_regime", row.in_asymptotic_regime},
        });
    }
    nlohmann::ordered_json meta = metadata_json(report.meta);
    meta["peaks"] = report.meta.peaks;
    meta["tie_events"] = report.tie_events;

    nlohmann::ordered_json chi = nullptr;
    if (report.chi_square) {
        chi = nlohmann::ordered_json{
            {"statistic", report.chi_square->statistic},
            {"dof", report.chi_square->dof},
            {"p_value", report.chi_square->p_value},
            {"bins_used", report.chi_square->bins_used},
        };
    }

    return nlohmann::ordered_json{
        {"metadata", meta},
        {"bins", bins},
        {"tail",
         nlohmann::ordered_json{{"count", report.tail_count},
                                {"share", report.tail_share},
                                {"analytic_mass", report.tail_analytic_mass}}},
        {"moments",
         nlohmann::ordered_json{{"mean", report.moments.mean},
                                {"mean_se", report.moments.mean_se},
                                {"variance", report.moments.variance},
                                {"variance_se", report.moments.variance_se},
                                {"in_range_count", report.moments.in_range_count},
                                {"excluded_fraction", report.moments.excluded_fraction},
                                {"reliable", report.moments.reliable}}},
        {"chi_square", chi},
    };
}

inline nlohmann::ordered_json oracle_json(const OracleOutput& oracle) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int d = 2; d <= oracle.d_max; ++d) {
        const long long count = oracle.pattern_counts[static_cast<std::size_t>(d - 2)];
        rows.push_back(nlohmann::ordered_json{
            {"d", d},
            {"pattern_count", count},
            {"expected", d - 1},
            {"match", count == d - 1},
        });
    }
    nlohmann::ordered_json mc = nullptr;
    if (oracle.mc_enabled) {
        nlohmann::ordered_json mc_rows = nlohmann::ordered_json::array();
        for (const OracleMcRow& row : oracle.mc_rows) {
            mc_rows.push_back(nlohmann::ordered_json{
                {"d", row.d},
                {"estimate", row.estimate},
                {"analytic_pmf", row.analytic_pmf},
                {"abs_error", row.abs_error},
            });
        }
        mc = nlohmann::ordered_json{
            {"q", oracle.mc_ma_order},
            {"samples", oracle.mc_samples},
            {"seed", oracle.mc_seed},
            {"rows", mc_rows},
        };
    }
    return nlohmann::ordered_json{
        {"d_max", oracle.d_max},
        {"enumeration", rows},
        {"monte_carlo", mc},
    };
}

inline void write_json(std::ostream& os, const nlohmann::ordered_json& doc) {
    os << doc.dump(2) << '\n';
}

}  // namespace mapeaks
