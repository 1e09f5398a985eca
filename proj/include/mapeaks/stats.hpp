#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mapeaks/analytic.hpp"
#include "mapeaks/gamma.hpp"
#include "mapeaks/process.hpp"

namespace mapeaks {

// Counts of observed peak-to-peak distances, one bin per d in [2, d_max]
// plus a tail bin for everything larger. Value-like and mergeable: parallel
// streams fill private histograms and merge at the end, and merging is
// associative and commutative because every field is a plain sum.
class DistanceHistogram {
public:
    explicit DistanceHistogram(int d_max = 64) : d_max_(d_max) {
        if (d_max < 2) throw std::invalid_argument("DistanceHistogram: d_max must be >= 2");
        counts_.assign(static_cast<std::size_t>(d_max) - 1, 0);
    }

    void accumulate(long long d) {
        if (d < 2)
            throw std::invalid_argument("DistanceHistogram: distance < 2 cannot come from strict peaks");
        if (d <= d_max_)
            ++counts_[static_cast<std::size_t>(d - 2)];
        else
            ++tail_count_;
        ++total_;
    }

    void merge(const DistanceHistogram& other) {
        if (other.d_max_ != d_max_)
            throw std::invalid_argument("DistanceHistogram::merge: histograms have different d_max");
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
        tail_count_ += other.tail_count_;
        total_ += other.total_;
        tie_events_ += other.tie_events_;
    }

    std::uint64_t count(int d) const {
        if (d < 2 || d > d_max_) throw std::out_of_range("DistanceHistogram::count: d outside bins");
        return counts_[static_cast<std::size_t>(d - 2)];
    }

    std::uint64_t tail_count() const { return tail_count_; }
    std::uint64_t total() const { return total_; }
    int d_max() const { return d_max_; }

    std::uint64_t tie_events() const { return tie_events_; }
    void add_tie_events(std::uint64_t n) { tie_events_ += n; }

    bool operator==(const DistanceHistogram&) const = default;

private:
    int d_max_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t tail_count_ = 0;
    std::uint64_t total_ = 0;
    std::uint64_t tie_events_ = 0;
};

inline DistanceHistogram merge(DistanceHistogram a, const DistanceHistogram& b) {
    a.merge(b);
    return a;
}

// Observed relative frequency per bin plus the tail share; sums to 1.
struct EmpiricalPmf {
    int d_max = 2;
    std::vector<double> probs;  // index 0 is d = 2
    double tail_share = 0.0;

    double at(int d) const {
        if (d < 2 || d > d_max) throw std::out_of_range("EmpiricalPmf::at: d outside bins");
        return probs[static_cast<std::size_t>(d - 2)];
    }
};

inline EmpiricalPmf empirical_pmf(const DistanceHistogram& hist) {
    if (hist.total() == 0) throw std::domain_error("empirical_pmf: empty histogram");
    EmpiricalPmf pmf;
    pmf.d_max = hist.d_max();
    pmf.probs.reserve(static_cast<std::size_t>(hist.d_max()) - 1);
    const double total = static_cast<double>(hist.total());
    for (int d = 2; d <= hist.d_max(); ++d)
        pmf.probs.push_back(static_cast<double>(hist.count(d)) / total);
    pmf.tail_share = static_cast<double>(hist.tail_count()) / total;
    return pmf;
}

// Sample mean and unbiased sample variance of the recorded distances, with
// normal-approximation standard errors (s/sqrt(M) for the mean,
// s^2*sqrt(2/(M-1)) for the variance). Tail observations are excluded and
// their fraction reported; a tail share of 0.1% or more flags the estimate
// unreliable instead of raising.
struct MomentEstimate {
    double mean = 0.0;
    double mean_se = 0.0;
    double variance = 0.0;
    double variance_se = 0.0;
    std::uint64_t in_range_count = 0;
    double excluded_fraction = 0.0;
    bool reliable = true;
};

inline MomentEstimate empirical_moments(const DistanceHistogram& hist) {
    if (hist.total() < 2) throw std::domain_error("empirical_moments: needs at least 2 observations");
    std::uint64_t m = 0;
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;  // c * d^2 can pass 2^64 for wide histograms
    for (int d = 2; d <= hist.d_max(); ++d) {
        const std::uint64_t c = hist.count(d);
        const unsigned __int128 ud = static_cast<unsigned __int128>(d);
        m += c;
        sum += c * ud;
        sum_sq += c * ud * ud;
    }
    if (m < 2) throw std::domain_error("empirical_moments: fewer than 2 in-range observations");

    MomentEstimate est;
    est.in_range_count = m;
    est.excluded_fraction = static_cast<double>(hist.tail_count()) / static_cast<double>(hist.total());
    est.reliable = est.excluded_fraction < 0.001;

    const double dm = static_cast<double>(m);
    est.mean = static_cast<double>(sum) / dm;
    est.variance = (static_cast<double>(sum_sq) - dm * est.mean * est.mean) / (dm - 1.0);
    if (est.variance < 0.0) est.variance = 0.0;  // rounding guard near zero
    const double s = std::sqrt(est.variance);
    est.mean_se = s / std::sqrt(dm);
    est.variance_se = est.variance * std::sqrt(2.0 / (dm - 1.0));
    return est;
}

// Pearson goodness of fit of the observed distances against the closed-form
// pmf, restricted to the asymptotic regime d < ma_order. Expected counts are
// renormalized over the included bins; bins are pooled from the right until
// every expected count is at least 5. Consecutive distances share
// innovations, so the test is approximate; treat small p-values as a hint,
// not a verdict.
struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int bins_used = 0;
};

inline ChiSquareResult chi_square_gof(const DistanceHistogram& hist, const AnalyticModel& model,
                                      int ma_order) {
    if (hist.total() < 10000)
        throw std::domain_error("chi_square_gof: needs at least 1e4 observations");
    const int highest = std::min(hist.d_max(), ma_order - 1);
    if (highest < 4)
        throw std::domain_error("chi_square_gof: fewer than 3 bins inside the asymptotic regime");

    std::vector<double> observed;
    std::vector<double> probability;
    double in_regime_total = 0.0;
    double probability_mass = 0.0;
    for (int d = 2; d <= highest; ++d) {
        observed.push_back(static_cast<double>(hist.count(d)));
        probability.push_back(model.pmf(d).to_double());
        in_regime_total += observed.back();
        probability_mass += probability.back();
    }

    std::vector<double> expected(probability.size());
    for (std::size_t i = 0; i < probability.size(); ++i)
        expected[i] = in_regime_total * probability[i] / probability_mass;

    // Pool from the right until every expectation reaches 5. Deficits sit at
    // the right end while the table is untouched (the pmf is non-increasing
    // in d); once a pooled tail passes 5 a bin left of it can still be
    // short, so the full scan runs before accepting the table.
    const auto pool_last_two = [&] {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    };
    const auto any_below_five = [&] {
        for (double e : expected)
            if (e < 5.0) return true;
        return false;
    };
    while (expected.size() > 1) {
        if (expected.back() < 5.0) {
            pool_last_two();
            continue;
        }
        if (!any_below_five()) break;
        pool_last_two();
    }
    if (expected.size() < 3)
        throw std::domain_error("chi_square_gof: fewer than 3 bins remain after pooling");

    ChiSquareResult result;
    result.bins_used = static_cast<int>(expected.size());
    result.dof = result.bins_used - 1;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double diff = observed[i] - expected[i];
        result.statistic += diff * diff / expected[i];
    }
    result.p_value = chi_square_sf(result.statistic, result.dof);
    return result;
}

// Everything a run comparison reports: per-bin empirical vs analytic pmf,
// tail bin, moment estimates, the (optional) chi-square result, and the run
// metadata. Immutable once built.
struct ReportRow {
    int d = 0;
    std::uint64_t count = 0;
    double empirical_pmf = 0.0;
    double analytic_pmf = 0.0;
    double abs_error = 0.0;
    bool in_asymptotic_regime = false;
};

struct ReportMeta {
    int ma_order = 0;
    long long requested_n = 0;
    long long realized_n = 0;
    InnovationDistribution distribution = InnovationDistribution::standard_normal;
    std::uint64_t seed = 0;
    int streams = 1;
    int d_max = 64;
    long long peaks = 0;
};

struct ComparisonReport {
    ReportMeta meta;
    std::vector<ReportRow> rows;
    std::uint64_t tail_count = 0;
    double tail_share = 0.0;
    double tail_analytic_mass = 0.0;
    MomentEstimate moments;
    std::optional<ChiSquareResult> chi_square;
    std::uint64_t tie_events = 0;
};

inline ComparisonReport compare(const DistanceHistogram& hist, const AnalyticModel& model,
                                const ReportMeta& meta) {
    ComparisonReport report;
    report.meta = meta;
    const EmpiricalPmf pmf = empirical_pmf(hist);
    report.rows.reserve(static_cast<std::size_t>(hist.d_max()) - 1);
    for (int d = 2; d <= hist.d_max(); ++d) {
        ReportRow row;
        row.d = d;
        row.count = hist.count(d);
        row.empirical_pmf = pmf.at(d);
        row.analytic_pmf = model.pmf(d).to_double();
        row.abs_error = std::fabs(row.empirical_pmf - row.analytic_pmf);
        row.in_asymptotic_regime = d < meta.ma_order;
        report.rows.push_back(row);
    }
    report.tail_count = hist.tail_count();
    report.tail_share = pmf.tail_share;
    report.tail_analytic_mass = distance_tail_mass(hist.d_max()).to_double();
    report.moments = empirical_moments(hist);
    try {
        report.chi_square = chi_square_gof(hist, model, meta.ma_order);
    } catch (const std::domain_error&) {
        report.chi_square = std::nullopt;  // e.g. no bins inside the regime for small q
    }
    report.tie_events = hist.tie_events();
    return report;
}

}  // namespace mapeaks
