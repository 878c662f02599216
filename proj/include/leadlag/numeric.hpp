#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "leadlag/errors.hpp"

namespace leadlag {

/// Linear-interpolated quantile on a sorted sample.
///
/// q(p) with h = p*(m-1), lo = floor(h): q = v[lo] + (h-lo)*(v[lo+1]-v[lo]).
/// This is the "R type 7" rule; reimplementations in other languages must
/// match it bit-for-bit on the same samples.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw ConfigError("quantile of empty sample");
    if (sorted.size() == 1) return sorted.front();
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> sample, double p) {
    std::sort(sample.begin(), sample.end());
    return quantile_sorted(sample, p);
}

inline double mean(const std::vector<double>& v) {
    if (v.empty()) throw ConfigError("mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// Sample standard deviation (n-1 denominator). Absent for n < 2.
inline std::optional<double> sample_stdev(const std::vector<double>& v) {
    if (v.size() < 2) return std::nullopt;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace leadlag
