#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapeaks/rng.hpp"

namespace mapeaks {

// The innovation laws the simulator can draw from. All three are continuous,
// so exact ties between values have probability zero; every distributional
// claim in analytic.hpp is law-independent and is tested under each of them.
enum class InnovationDistribution {
    uniform01,
    standard_normal,
    exponential_unit_rate,
};

inline const char* to_string(InnovationDistribution dist) {
    switch (dist) {
        case InnovationDistribution::uniform01: return "uniform";
        case InnovationDistribution::standard_normal: return "normal";
        case InnovationDistribution::exponential_unit_rate: return "exponential";
    }
    return "unknown";
}

// Draws i.i.d. innovations from one law. Owns its engine; moving one between
// threads is fine, sharing one is not.
class InnovationSampler {
public:
    InnovationSampler(InnovationDistribution dist, Xoshiro256pp engine)
        : dist_(dist), engine_(engine) {}

    double operator()() {
        switch (dist_) {
            case InnovationDistribution::uniform01: return engine_.uniform01();
            case InnovationDistribution::standard_normal: return normal();
            case InnovationDistribution::exponential_unit_rate: return exponential();
        }
        return 0.0;
    }

    double uniform01() { return engine_.uniform01(); }

    // Marsaglia polar method; the second variate of each accepted pair is
    // kept for the next call.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * engine_.uniform01() - 1.0;
            v = 2.0 * engine_.uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

    double exponential() { return -std::log1p(-engine_.uniform01()); }

    InnovationDistribution distribution() const { return dist_; }

private:
    InnovationDistribution dist_;
    Xoshiro256pp engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Parameters of one simulation run.
//
//   ma_order   window order q; each output value sums q+1 innovations
//   n_terms    values to generate over the whole run (>= 3; shorter series
//              cannot contain an interior maximum)
//   streams    independent parallel streams; the run is split as
//              ceil(n_terms / streams) values per stream
//   d_max      histogram cutoff; larger distances land in the tail bin
struct SimulationConfig {
    int ma_order = 0;
    long long n_terms = 0;
    InnovationDistribution distribution = InnovationDistribution::standard_normal;
    std::uint64_t seed = 0;
    int streams = 1;
    int d_max = 64;

    long long terms_per_stream() const {
        return (n_terms + streams - 1) / streams;
    }

    void validate() const {
        if (ma_order < 0)
            throw std::invalid_argument("SimulationConfig: ma_order must be >= 0");
        if (n_terms < 3)
            throw std::invalid_argument("SimulationConfig: n_terms must be >= 3");
        if (streams < 1)
            throw std::invalid_argument("SimulationConfig: streams must be >= 1");
        if (d_max < 2)
            throw std::invalid_argument("SimulationConfig: d_max must be >= 2");
        if (terms_per_stream() < 3)
            throw std::invalid_argument(
                "SimulationConfig: fewer than 3 terms per stream; lower streams or raise n_terms");
    }
};

// Moving-window sum over the last ma_order+1 innovations, maintained
// incrementally. The running sum is recomputed exactly from the ring every
// refresh_interval steps, which bounds the accumulated rounding of the
// add-new/subtract-old updates.
class MaProcessState {
public:
    static constexpr int refresh_interval = 65536;

    template <class Sampler>
    MaProcessState(int ma_order, Sampler& rng) : ring_(static_cast<std::size_t>(ma_order) + 1) {
        double sum = 0.0;
        for (double& e : ring_) {
            e = rng();
            sum += e;
        }
        window_sum_ = sum;
        index_ = 1;
    }

    // Value at the current index. Immediately after construction this is the
    // first term of the series.
    double current() const { return window_sum_; }

    // 1-based count of values defined so far.
    long long index() const { return index_; }

    // Slides the window by one innovation and returns the new value.
    template <class Sampler>
    double next(Sampler& rng) {
        const double fresh = rng();
        if (ring_.size() == 1) {
            // Identity window: the value is the innovation itself, bit-exact.
            ring_[0] = fresh;
            window_sum_ = fresh;
            ++index_;
            return window_sum_;
        }
        window_sum_ += fresh - ring_[oldest_];
        ring_[oldest_] = fresh;
        oldest_ = (oldest_ + 1 == ring_.size()) ? 0 : oldest_ + 1;
        ++index_;
        if (++refresh_counter_ >= refresh_interval) {
            refresh_counter_ = 0;
            double exact = 0.0;
            for (double e : ring_) exact += e;
            window_sum_ = exact;
        }
        return window_sum_;
    }

    int ma_order() const { return static_cast<int>(ring_.size()) - 1; }

private:
    std::vector<double> ring_;
    std::size_t oldest_ = 0;
    double window_sum_ = 0.0;
    long long index_ = 0;
    int refresh_counter_ = 0;
};

template <class Sampler>
MaProcessState warm_up(const SimulationConfig& config, Sampler& rng) {
    config.validate();
    return MaProcessState(config.ma_order, rng);
}

// Sampler for one of the run's independent streams. Same (seed, stream_id)
// always yields the same stream; see Xoshiro256pp for the derivation.
inline InnovationSampler spawn_stream(const SimulationConfig& config, int stream_id) {
    config.validate();
    if (stream_id < 0 || stream_id >= config.streams)
        throw std::out_of_range("spawn_stream: stream_id outside [0, streams)");
    return InnovationSampler(config.distribution,
                             Xoshiro256pp(config.seed, static_cast<std::uint64_t>(stream_id)));
}

}  // namespace mapeaks
