#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mapeaks {

// Strict interior maximum test: any equality fails it.
inline bool is_peak(double left, double mid, double right) {
    return left < mid && mid > right;
}

// Streaming detector for strict local maxima. Values are fed one at a time
// with consecutive 1-based indices; a peak at index i is recognized when the
// value at i+1 arrives, and the distance to the previous peak (if any) is
// emitted. The first and last values of a series can never be peaks.
//
// Exact ties between adjacent values cannot happen for continuous inputs;
// when they do happen in floats they fail the strict comparisons and are
// counted once per equal pair in tie_events().
class PeakDetector {
public:
    std::optional<long long> feed(double value, long long index) {
        if (index != fed_ + 1)
            throw std::invalid_argument("PeakDetector::feed: indices must be consecutive from 1");
        fed_ = index;
        std::optional<long long> emitted;
        if (fed_ >= 2 && prev1_ == value) ++tie_events_;
        if (fed_ >= 3 && is_peak(prev2_, prev1_, value)) {
            const long long peak_index = index - 1;
            ++peak_count_;
            if (last_peak_index_ != 0) emitted = peak_index - last_peak_index_;
            last_peak_index_ = peak_index;
        }
        prev2_ = prev1_;
        prev1_ = value;
        return emitted;
    }

    long long peak_count() const { return peak_count_; }

    std::optional<long long> last_peak_index() const {
        if (last_peak_index_ == 0) return std::nullopt;
        return last_peak_index_;
    }

    std::uint64_t tie_events() const { return tie_events_; }

private:
    double prev2_ = 0.0;
    double prev1_ = 0.0;
    long long fed_ = 0;
    long long last_peak_index_ = 0;  // 0 = none yet
    long long peak_count_ = 0;
    std::uint64_t tie_events_ = 0;
};

// Distances between consecutive strict local maxima of a whole series.
// Equals the fold of PeakDetector::feed; series shorter than 3 have no
// interior and yield an empty result.
inline std::vector<long long> distances_of(std::span<const double> series) {
    std::vector<long long> distances;
    if (series.size() < 3) return distances;
    PeakDetector detector;
    long long index = 0;
    for (double value : series) {
        if (auto d = detector.feed(value, ++index)) distances.push_back(*d);
    }
    return distances;
}

}  // namespace mapeaks
