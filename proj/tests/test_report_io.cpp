#include <catch2/catch.hpp>

#include <sstream>

#include "mapeaks/report_io.hpp"

using namespace mapeaks;

namespace {

std::string csv_of(const DistanceHistogram& hist) {
    std::ostringstream os;
    write_histogram_csv(os, hist);
    return os.str();
}

}  // namespace

TEST_CASE("doubles are formatted shortest-round-trip with a dot separator") {
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(0.1875) == "0.1875");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("histogram csv lists every bin plus a tail row") {
    DistanceHistogram hist(4);
    hist.accumulate(2);
    hist.accumulate(2);
    hist.accumulate(2);
    hist.accumulate(4);
    hist.accumulate(9);  // tail
    CHECK(csv_of(hist) == "d,count\n2,3\n3,0\n4,1\n5,1\n");
}

TEST_CASE("pmf table csv carries the exact closed-form values") {
    std::ostringstream os;
    write_pmf_table_csv(os, AnalyticModel{4});
    CHECK(os.str() ==
          "d,pmf,cdf,pi\n"
          "2,0.25,0.25,1\n"
          "3,0.25,0.5,1\n"
          "4,0.1875,0.6875,0.75\n");
}

TEST_CASE("report json round-trips with stable field names") {
    DistanceHistogram hist(8);
    for (int i = 0; i < 8000; ++i) hist.accumulate(2);
    for (int i = 0; i < 8000; ++i) hist.accumulate(3);
    for (int i = 0; i < 6000; ++i) hist.accumulate(4);
    for (int i = 0; i < 4000; ++i) hist.accumulate(5);
    hist.accumulate(20);

    ReportMeta meta;
    meta.ma_order = 6;
    meta.requested_n = 100000;
    meta.realized_n = 100002;
    meta.distribution = InnovationDistribution::uniform01;
    meta.seed = 77;
    meta.streams = 3;
    meta.d_max = 8;
    meta.peaks = 26002;

    const ComparisonReport report = compare(hist, AnalyticModel{8}, meta);
    const auto doc = nlohmann::ordered_json::parse(report_json(report).dump());

    CHECK(doc["metadata"]["q"] == 6);
    CHECK(doc["metadata"]["n"] == 100000);
    CHECK(doc["metadata"]["realized_n"] == 100002);
    CHECK(doc["metadata"]["distribution"] == "uniform");
    CHECK(doc["metadata"]["seed"] == 77);
    CHECK(doc["metadata"]["streams"] == 3);
    CHECK(doc["metadata"]["d_max"] == 8);
    CHECK(doc["bins"].size() == 7);
    CHECK(doc["bins"][0]["d"] == 2);
    CHECK(doc["bins"][0]["analytic_pmf"] == 0.25);
    CHECK(doc["bins"][0]["in_asymptotic_regime"] == true);
    CHECK(doc["bins"][5]["in_asymptotic_regime"] == false);  // d = 7 >= q
    CHECK(doc["tail"]["count"] == 1);
    CHECK(doc["moments"].contains("mean"));
    CHECK(doc["moments"].contains("variance_se"));
    CHECK(doc["chi_square"].is_object());
    CHECK(doc["chi_square"]["dof"].is_number());
}

TEST_CASE("chi-square is null when the regime is empty") {
    DistanceHistogram hist(8);
    for (int i = 0; i < 15000; ++i) hist.accumulate(2);
    for (int i = 0; i < 5000; ++i) hist.accumulate(3);
    ReportMeta meta;
    meta.ma_order = 1;
    meta.d_max = 8;
    const ComparisonReport report = compare(hist, AnalyticModel{8}, meta);
    const auto doc = nlohmann::ordered_json::parse(report_json(report).dump());
    CHECK(doc["chi_square"].is_null());
}

TEST_CASE("histogram json carries metadata and totals") {
    DistanceHistogram hist(4);
    hist.accumulate(2);
    hist.accumulate(7);
    ReportMeta meta;
    meta.ma_order = 3;
    meta.requested_n = 1000;
    meta.realized_n = 1000;
    meta.seed = 5;
    meta.d_max = 4;
    meta.peaks = 3;
    const auto doc = nlohmann::ordered_json::parse(histogram_json(hist, meta).dump());
    CHECK(doc["metadata"]["q"] == 3);
    CHECK(doc["total"] == 2);
    CHECK(doc["tail_count"] == 1);
    CHECK(doc["peaks"] == 3);
    CHECK(doc["bins"].size() == 3);
}

TEST_CASE("report csv has fixed columns and a tail row") {
    DistanceHistogram hist(4);
    for (int i = 0; i < 3; ++i) hist.accumulate(2);
    hist.accumulate(3);
    ReportMeta meta;
    meta.ma_order = 3;
    meta.d_max = 4;
    const ComparisonReport report = compare(hist, AnalyticModel{4}, meta);
    std::ostringstream os;
    write_report_csv(os, report);
    const std::string text = os.str();
    CHECK(text.rfind("d,count,empirical_pmf,analytic_pmf,abs_error,in_asymptotic_regime\n", 0) == 0);
    CHECK(text.find("\n2,3,0.75,0.25,0.5,true\n") != std::string::npos);
    // Tail row is labeled d_max+1 = 5.
    CHECK(text.find("\n5,0,0,") != std::string::npos);
}

TEST_CASE("oracle csv leaves Monte Carlo cells empty unless enabled") {
    OracleOutput oracle;
    oracle.d_max = 3;
    oracle.pattern_counts = {1, 2};
    std::ostringstream os;
    write_oracle_csv(os, oracle);
    CHECK(os.str() ==
          "d,pattern_count,expected,match,mc_estimate,mc_analytic_pmf,mc_abs_error\n"
          "2,1,1,true,,,\n"
          "3,2,2,true,,,\n");

    oracle.mc_enabled = true;
    oracle.mc_rows = {{2, 0.251, 0.25, 0.001}, {3, 0.249, 0.25, 0.001}};
    std::ostringstream os2;
    write_oracle_csv(os2, oracle);
    CHECK(os2.str().find("2,1,1,true,0.251,0.25,0.001\n") != std::string::npos);
}
