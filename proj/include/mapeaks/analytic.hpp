#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapeaks/process.hpp"

namespace mapeaks {

// Exact rational with a power-of-two denominator: num / 2^log2_den, kept
// normalized (num odd, or zero with log2_den 0). Every closed-form quantity
// of the distance model lives in this set, so identities between them are
// checked with operator== instead of tolerances. Sums and products that
// would leave the 128-bit range throw std::overflow_error; in practice that
// allows exact cdf partial sums through d = 120.
class DyadicRational {
public:
    constexpr DyadicRational() = default;
    constexpr DyadicRational(long long integer) : num_(integer) {}

    static constexpr DyadicRational over_pow2(long long num, int log2_den) {
        if (log2_den < 0) throw std::invalid_argument("DyadicRational: negative exponent");
        DyadicRational r;
        r.num_ = num;
        r.log2_den_ = log2_den;
        r.normalize();
        return r;
    }

    friend constexpr DyadicRational operator+(DyadicRational a, DyadicRational b) {
        const int e = a.log2_den_ > b.log2_den_ ? a.log2_den_ : b.log2_den_;
        DyadicRational r;
        r.num_ = shifted(a, e) + shifted(b, e);
        r.log2_den_ = e;
        r.normalize();
        return r;
    }

    friend constexpr DyadicRational operator-(DyadicRational a, DyadicRational b) {
        b.num_ = -b.num_;
        return a + b;
    }

    friend constexpr DyadicRational operator*(DyadicRational a, DyadicRational b) {
        if (a.num_ != 0 && abs128(b.num_) > magnitude_limit() / abs128(a.num_))
            throw std::overflow_error("DyadicRational: product exceeds the 128-bit range");
        DyadicRational r;
        r.num_ = a.num_ * b.num_;
        r.log2_den_ = a.log2_den_ + b.log2_den_;
        r.normalize();
        return r;
    }

    friend constexpr bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.num_ == b.num_ && a.log2_den_ == b.log2_den_;
    }

    double to_double() const { return std::ldexp(static_cast<double>(num_), -log2_den_); }

    bool is_negative() const { return num_ < 0; }
    int log2_denominator() const { return log2_den_; }

    // Decimal rendering of the numerator, for diagnostics.
    std::string str() const {
        __int128 n = num_;
        const bool neg = n < 0;
        if (neg) n = -n;
        std::string digits;
        do {
            digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(n % 10)));
            n /= 10;
        } while (n != 0);
        if (neg) digits.insert(digits.begin(), '-');
        if (log2_den_ == 0) return digits;
        return digits + "/2^" + std::to_string(log2_den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const DyadicRational& r) {
        return os << r.str();
    }

private:
    static constexpr __int128 abs128(__int128 v) { return v < 0 ? -v : v; }
    static constexpr __int128 magnitude_limit() { return static_cast<__int128>(1) << 122; }

    static constexpr __int128 shifted(const DyadicRational& r, int target_exp) {
        const int shift = target_exp - r.log2_den_;
        if (shift > 122 || abs128(r.num_) > (magnitude_limit() >> shift))
            throw std::overflow_error("DyadicRational: sum exceeds the 128-bit range");
        return r.num_ << shift;
    }

    constexpr void normalize() {
        if (num_ == 0) {
            log2_den_ = 0;
            return;
        }
        while (log2_den_ > 0 && num_ % 2 == 0) {
            num_ /= 2;
            --log2_den_;
        }
    }

    __int128 num_ = 0;
    int log2_den_ = 0;
};

// ---------------------------------------------------------------------------
// Closed-form distance model.
//
// For a series of moving-window sums of q+1 i.i.d. continuous innovations,
// each comparison of neighbouring values reduces to a comparison of two
// distinct innovations, so a value is a strict local maximum with
// probability 1/2 * 1/2 = 1/4, independent of the law. When the window is
// wider than the distance (q > d) the comparisons inside a peak-to-peak
// pattern involve pairwise distinct innovations, the pattern probability
// factorizes, and the distance between consecutive peaks has
//     Pr[d] = (d - 1) / 2^d,  d >= 2,
// with mean 4 and variance 4. The functions below return those quantities
// exactly; the two oracles at the bottom re-derive them without the closed
// form (pattern enumeration, and Monte Carlo on raw innovation draws).
// ---------------------------------------------------------------------------

// Probability that a given interior value is a strict local maximum.
constexpr DyadicRational peak_probability() { return DyadicRational::over_pow2(1, 2); }

// Expected distance implied by a finite run of n values: the n values
// contain about n/4 peaks, hence n / (n/4 - 1) as a finite-n estimate;
// tends to 4.
inline double mean_distance_estimate(long long n) {
    if (n <= 4)
        throw std::domain_error("mean_distance_estimate: needs n >= 5 (at least 2 expected peaks)");
    return static_cast<double>(n) / (static_cast<double>(n) / 4.0 - 1.0);
}

// Probability that none of the d-1 values strictly between two peaks at
// distance d is itself a peak: (d - 1) / 2^(d-2).
inline DyadicRational no_interior_peak_probability(int d) {
    if (d < 2) throw std::domain_error("no_interior_peak_probability: d must be >= 2");
    return DyadicRational::over_pow2(d - 1, d - 2);
}

// Probability mass of the distance between consecutive peaks:
// (d - 1) / 2^d. Asymptotic: exact only in the wide-window regime q > d;
// reports flag bins with d >= q as outside that regime.
inline DyadicRational distance_pmf(int d) {
    if (d < 2) throw std::domain_error("distance_pmf: d must be >= 2 (adjacent peaks are impossible)");
    return DyadicRational::over_pow2(d - 1, d);
}

// Partial sum of the pmf from 2 through d; zero below the support.
inline DyadicRational distance_cdf(int d) {
    DyadicRational sum;
    for (int k = 2; k <= d; ++k) sum = sum + distance_pmf(k);
    return sum;
}

// Mass above d: (d + 1) / 2^d. Complements distance_cdf exactly.
inline DyadicRational distance_tail_mass(int d) {
    if (d < 2) throw std::domain_error("distance_tail_mass: d must be >= 2");
    return DyadicRational::over_pow2(d + 1, d);
}

namespace detail {

// Series sums for the first two moments. Terms (d-1)/2^d weighted by d or
// d^2 are exact doubles (small integer over a power of two), so the only
// rounding is in the additions. The cut at pmf < 1e-18 keeps the truncation
// of the d^2 series below 1e-14; a cut at 1e-15 would leave ~5e-12 there,
// above the 1e-12 the moment identities are checked at.
inline void distance_moment_series(double& first, double& second) {
    first = 0.0;
    second = 0.0;
    for (int d = 2;; ++d) {
        const double p = distance_pmf(d).to_double();
        if (p < 1e-18) break;
        first += static_cast<double>(d) * p;
        second += static_cast<double>(d) * static_cast<double>(d) * p;
    }
}

}  // namespace detail

// Sum of d * pmf(d) to convergence; approaches 4.
inline double series_mean_distance() {
    double first, second;
    detail::distance_moment_series(first, second);
    return first;
}

// Sum of d^2 * pmf(d) minus the squared series mean; approaches 4.
inline double series_distance_variance() {
    double first, second;
    detail::distance_moment_series(first, second);
    return second - first * first;
}

// Mean distance, exactly 4; throws std::logic_error if the summed series
// disagrees with the constant beyond 1e-12.
inline DyadicRational mean_distance() {
    if (std::fabs(series_mean_distance() - 4.0) > 1e-12)
        throw std::logic_error("mean_distance: series sum drifted from the closed form");
    return DyadicRational(4);
}

// Distance variance, exactly 4, cross-checked the same way.
inline DyadicRational distance_variance() {
    if (std::fabs(series_distance_variance() - 4.0) > 1e-12)
        throw std::logic_error("distance_variance: series sum drifted from the closed form");
    return DyadicRational(4);
}

// ---------------------------------------------------------------------------
// Oracles.
// ---------------------------------------------------------------------------

// Brute-force count of the up/down patterns between two peaks at distance d
// that contain no interior peak. The d-1 values strictly between the peaks
// give d-2 adjacent comparisons; each of the 2^(d-2) up/down assignments is
// equally likely in the wide-window regime, and an interior peak is exactly
// an ascent immediately followed by a descent. The count re-derives
// no_interior_peak_probability(d) = count / 2^(d-2) without the closed form
// (which predicts d - 1), so it is kept as a transparent enumeration.
inline long long peak_free_pattern_count(int d) {
    if (d < 2 || d > 30)
        throw std::domain_error("peak_free_pattern_count: d must be in [2, 30]");
    const int bits = d - 2;
    long long count = 0;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        bool has_interior_peak = false;
        for (int j = 0; j + 1 < bits && !has_interior_peak; ++j) {
            const bool ascent = (mask >> j) & 1u;
            const bool next_descent = !((mask >> (j + 1)) & 1u);
            has_interior_peak = ascent && next_descent;
        }
        if (!has_interior_peak) ++count;
    }
    return count;
}

// Monte Carlo estimate of the conditional distance probability, computed
// directly on raw innovation draws with no use of the closed form: sample
// the d+q+3 innovations spanning the pattern, build the d+3 window sums,
// and count realizations where the pattern "peak, d-1 non-peaks, peak"
// holds. The raw frequency estimates the joint probability; dividing by the
// peak probability 1/4 (i.e. multiplying by 4) conditions on the leading
// peak. Approaches distance_pmf(d) when q > d. Ordering probabilities are
// identical for every continuous innovation law, so uniform draws are used.
inline double monte_carlo_distance_probability(int d, int ma_order, long long samples,
                                               std::uint64_t seed) {
    if (d < 2) throw std::domain_error("monte_carlo_distance_probability: d must be >= 2");
    if (ma_order < 1) throw std::domain_error("monte_carlo_distance_probability: q must be >= 1");
    if (samples < 10000)
        throw std::domain_error("monte_carlo_distance_probability: needs at least 1e4 samples");

    Xoshiro256pp rng(seed, 0);
    const int innovation_count = d + ma_order + 3;
    const int value_count = d + 3;  // indices 0..d+2 around the leading peak at 1
    std::vector<double> eps(static_cast<std::size_t>(innovation_count));
    std::vector<double> values(static_cast<std::size_t>(value_count));

    long long hits = 0;
    for (long long s = 0; s < samples; ++s) {
        for (double& e : eps) e = rng.uniform01();
        double window = 0.0;
        for (int j = 0; j <= ma_order; ++j) window += eps[static_cast<std::size_t>(j)];
        values[0] = window;
        for (int t = 1; t < value_count; ++t) {
            window += eps[static_cast<std::size_t>(t + ma_order)] - eps[static_cast<std::size_t>(t - 1)];
            values[static_cast<std::size_t>(t)] = window;
        }
        if (!(values[0] < values[1] && values[1] > values[2])) continue;
        if (!(values[static_cast<std::size_t>(d)] < values[static_cast<std::size_t>(d + 1)] &&
              values[static_cast<std::size_t>(d + 1)] > values[static_cast<std::size_t>(d + 2)]))
            continue;
        bool interior_peak = false;
        for (int m = 2; m <= d && !interior_peak; ++m)
            interior_peak = values[static_cast<std::size_t>(m - 1)] < values[static_cast<std::size_t>(m)] &&
                            values[static_cast<std::size_t>(m)] > values[static_cast<std::size_t>(m + 1)];
        if (!interior_peak) ++hits;
    }
    return 4.0 * static_cast<double>(hits) / static_cast<double>(samples);
}

// Bundles the closed-form quantities behind a tabulation cutoff, for report
// building and the pmf table output.
struct AnalyticModel {
    int d_max = 64;

    DyadicRational pmf(int d) const { return distance_pmf(d); }
    DyadicRational cdf(int d) const { return distance_cdf(d); }
    DyadicRational no_interior_peak(int d) const { return no_interior_peak_probability(d); }
    DyadicRational tail_mass() const { return distance_tail_mass(d_max); }
};

}  // namespace mapeaks
