#pragma once

#include <future>
#include <vector>

#include "mapeaks/extrema.hpp"
#include "mapeaks/process.hpp"
#include "mapeaks/stats.hpp"

namespace mapeaks {

// Tallies of one stream (or of a whole run after merging).
struct StreamResult {
    DistanceHistogram histogram{64};
    long long terms = 0;
    long long peaks = 0;
};

struct SimulationResult {
    DistanceHistogram histogram{64};
    long long terms = 0;               // values actually generated (realized n)
    long long peaks = 0;
    long long interior_positions = 0;  // sum over streams of (terms - 2)
    int streams = 1;
    long long requested_n = 0;

    double peak_fraction() const {
        return interior_positions > 0
                   ? static_cast<double>(peaks) / static_cast<double>(interior_positions)
                   : 0.0;
    }
};

// Generates one stream's share of the run and histograms its peak distances.
inline StreamResult run_stream(const SimulationConfig& config, int stream_id) {
    config.validate();
    const long long n = config.terms_per_stream();
    InnovationSampler sampler = spawn_stream(config, stream_id);
    MaProcessState state = warm_up(config, sampler);

    StreamResult result{DistanceHistogram(config.d_max), 0, 0};
    PeakDetector detector;
    detector.feed(state.current(), 1);
    for (long long i = 2; i <= n; ++i) {
        if (auto d = detector.feed(state.next(sampler), i)) result.histogram.accumulate(*d);
    }
    result.histogram.add_tie_events(detector.tie_events());
    result.terms = n;
    result.peaks = detector.peak_count();
    return result;
}

// Runs all streams (in parallel when streams > 1) and merges their tallies.
// The merge is the only cross-stream interaction, and it is an exact
// integer sum, so the result is identical to merging single-stream runs.
inline SimulationResult run_simulation(const SimulationConfig& config) {
    config.validate();

    std::vector<StreamResult> partials;
    partials.reserve(static_cast<std::size_t>(config.streams));
    if (config.streams == 1) {
        partials.push_back(run_stream(config, 0));
    } else {
        std::vector<std::future<StreamResult>> futures;
        futures.reserve(static_cast<std::size_t>(config.streams));
        for (int s = 0; s < config.streams; ++s)
            futures.push_back(std::async(std::launch::async, run_stream, config, s));
        for (auto& f : futures) partials.push_back(f.get());
    }

    SimulationResult result;
    result.histogram = DistanceHistogram(config.d_max);
    result.streams = config.streams;
    result.requested_n = config.n_terms;
    for (const StreamResult& part : partials) {
        result.histogram.merge(part.histogram);
        result.terms += part.terms;
        result.peaks += part.peaks;
        result.interior_positions += part.terms - 2;
    }
    return result;
}

inline ReportMeta make_report_meta(const SimulationConfig& config, const SimulationResult& result) {
    ReportMeta meta;
    meta.ma_order = config.ma_order;
    meta.requested_n = config.n_terms;
    meta.realized_n = result.terms;
    meta.distribution = config.distribution;
    meta.seed = config.seed;
    meta.streams = config.streams;
    meta.d_max = config.d_max;
    meta.peaks = result.peaks;
    return meta;
}

}  // namespace mapeaks
