#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/tick_sync.hpp"

namespace leadlag {

inline constexpr int kDefaultMaxLag = 10;  // tick grid -10..10

/// One irregularly observed price path. Times are integer (tick indices for
/// synchronized data, nanoseconds for raw streams).
struct ObservedPath {
    std::vector<std::int64_t> times;
    std::vector<double> values;

    void validate() const {
        if (times.size() != values.size())
            throw ValidationError("ObservedPath: times/values length mismatch");
        if (times.size() < 2)
            throw ValidationError("ObservedPath: need at least 2 observations");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (times[i] <= times[i - 1])
                throw ValidationError("ObservedPath: times not strictly increasing");
    }
};

/// Hayashi-Yoshida cross-correlation of X against Y at time shift `lag`.
///
/// Increment i of X lives on the interval (t_{i-1}, t_i]. A positive lag
/// compares X now with Y later: the j-th Y interval is shifted to
/// (s_{j-1} - lag, s_j - lag], and increment pairs with overlapping
/// intervals enter the numerator. On a synchronized unit grid this pairs
/// dX_i with dY_{i+lag}, so a peak at lag = +1 means X leads Y by one tick.
/// Normalization uses the full sums of squared increments of both paths.
inline double hy_cross_corr(const ObservedPath& x, const ObservedPath& y,
                            std::int64_t lag) {
    x.validate();
    y.validate();
    const std::size_t n = x.times.size();
    const std::size_t m = y.times.size();

    std::vector<double> dx(n - 1), dy(m - 1);
    double sxx = 0.0, syy = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        dx[i - 1] = x.values[i] - x.values[i - 1];
        sxx += dx[i - 1] * dx[i - 1];
    }
    for (std::size_t j = 1; j < m; ++j) {
        dy[j - 1] = y.values[j] - y.values[j - 1];
        syy += dy[j - 1] * dy[j - 1];
    }
    if (sxx == 0.0 || syy == 0.0)
        throw EstimatorError("hy_cross_corr: zero variance path");

    // Interval overlap: (a0,a1] and (b0,b1] intersect iff a0 < b1 && b0 < a1.
    // Two-pointer sweep over the shifted Y intervals; j_lo only advances.
    double num = 0.0;
    std::size_t j_lo = 1;
    for (std::size_t i = 1; i < n; ++i) {
        const std::int64_t a0 = x.times[i - 1];
        const std::int64_t a1 = x.times[i];
        while (j_lo < m && y.times[j_lo] - lag <= a0) ++j_lo;
        for (std::size_t j = j_lo; j < m && y.times[j - 1] - lag < a1; ++j)
            num += dx[i - 1] * dy[j - 1];
    }
    return num / std::sqrt(sxx * syy);
}

/// Lagged uncentered correlation of two increment series on a unit grid:
/// sum_i dx[i]*dy[i+lag] over valid i, normalized by the full sums of
/// squares. This is what the HY estimator reduces to on synchronized,
/// regularly sampled data.
inline double lagged_uncentered_corr(const std::vector<double>& dx,
                                     const std::vector<double>& dy, int lag) {
    double sxx = 0.0, syy = 0.0;
    for (double v : dx) sxx += v * v;
    for (double v : dy) syy += v * v;
    if (sxx == 0.0 || syy == 0.0)
        throw EstimatorError("lagged_uncentered_corr: zero variance path");

    const auto nx = static_cast<std::int64_t>(dx.size());
    const auto ny = static_cast<std::int64_t>(dy.size());
    const std::int64_t lo = std::max<std::int64_t>(0, -lag);
    const std::int64_t hi = std::min(nx, ny - lag);
    double num = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) num += dx[i] * dy[i + lag];
    return num / std::sqrt(sxx * syy);
}

/// Cross-correlation curve over a symmetric integer lag grid plus the three
/// derived lead-lag measures.
struct CrossCorrCurve {
    std::vector<int> lags;      // -L..L
    std::vector<double> rho;    // aligned with lags
    int llt = 0;                // lag of max |rho|
    double llc = 0.0;           // rho at llt
    double llr = 0.0;           // Eq-style positive/negative energy ratio
    bool llr_infinite = false;  // zero denominator sentinel

    double rho_at(int lag) const {
        for (std::size_t k = 0; k < lags.size(); ++k)
            if (lags[k] == lag) return rho[k];
        throw ConfigError("lag not on curve grid: " + std::to_string(lag));
    }
};

/// Lead-Lag Time: argmax over lags of |rho|. Ties break toward the smallest
/// |lag|, then toward the positive lag.
inline int pick_llt(const std::vector<int>& lags, const std::vector<double>& rho) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lags.size(); ++k) {
        const double a = std::fabs(rho[k]), b = std::fabs(rho[best]);
        if (a > b) {
            best = k;
        } else if (a == b) {
            const int la = std::abs(lags[k]), lb = std::abs(lags[best]);
            if (la < lb || (la == lb && lags[k] > lags[best])) best = k;
        }
    }
    return lags[best];
}

/// Lead-Lag Ratio: sum of squared rho over positive lags divided by the same
/// over negative lags. LLR > 1 means X leads Y. A zero denominator is
/// reported as +infinity with the flag set, never as a silent large number.
inline double compute_llr(const std::vector<int>& lags,
                          const std::vector<double>& rho, bool& infinite) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t k = 0; k < lags.size(); ++k) {
        if (lags[k] > 0) pos += rho[k] * rho[k];
        if (lags[k] < 0) neg += rho[k] * rho[k];
    }
    infinite = (neg == 0.0);
    return infinite ? std::numeric_limits<double>::infinity() : pos / neg;
}

namespace detail {

inline CrossCorrCurve finish_curve(CrossCorrCurve c) {
    c.llt = pick_llt(c.lags, c.rho);
    c.llc = c.rho_at(c.llt);
    c.llr = compute_llr(c.lags, c.rho, c.llr_infinite);
    return c;
}

}  // namespace detail

/// Curve from two synchronized increment series (tick-grid fast path).
/// Each lag is evaluated independently, so results do not depend on
/// evaluation order.
inline CrossCorrCurve curve_from_increments(const std::vector<double>& dx,
                                            const std::vector<double>& dy,
                                            int max_lag = kDefaultMaxLag) {
    if (max_lag < 1) throw ConfigError("max_lag must be >= 1");
    CrossCorrCurve c;
    for (int l = -max_lag; l <= max_lag; ++l) {
        c.lags.push_back(l);
        c.rho.push_back(lagged_uncentered_corr(dx, dy, l));
    }
    return detail::finish_curve(c);
}

/// Curve from two observed paths via the general HY estimator. `lag_unit`
/// converts one grid lag into path time units (1 for tick grids, the nominal
/// event interval in ns for raw streams).
inline CrossCorrCurve cross_corr_curve(const ObservedPath& x, const ObservedPath& y,
                                       int max_lag = kDefaultMaxLag,
                                       std::int64_t lag_unit = 1) {
    if (max_lag < 1) throw ConfigError("max_lag must be >= 1");
    if (lag_unit <= 0) throw ConfigError("lag_unit must be positive");
    CrossCorrCurve c;
    for (int l = -max_lag; l <= max_lag; ++l) {
        c.lags.push_back(l);
        c.rho.push_back(hy_cross_corr(x, y, static_cast<std::int64_t>(l) * lag_unit));
    }
    return detail::finish_curve(c);
}

/// Curve for a synchronized panel pair (columns i, j). Uses mid increments
/// in internal units; the estimator is scale invariant.
inline CrossCorrCurve curve_for_pair(const SyncedPanel& panel, std::size_t i,
                                     std::size_t j, int max_lag = kDefaultMaxLag) {
    auto c = curve_from_increments(panel.mid_increments(i), panel.mid_increments(j),
                                   max_lag);
    for (double r : c.rho)
        if (std::fabs(r) > 1.0 + 1e-9)
            throw ValidationError("cross-correlation outside [-1,1] on synchronized data");
    return c;
}

/// Per-instrument raw observation path (before binning/filling): one point
/// per update, mid-quote in internal units. Duplicate timestamps keep the
/// last update, so times stay strictly increasing.
inline ObservedPath raw_path(const std::vector<LobUpdate>& sorted_updates,
                             const std::string& instrument) {
    ObservedPath p;
    for (const auto& u : sorted_updates) {
        if (u.instrument != instrument) continue;
        const double mid = static_cast<double>(u.bid + u.ask) * 0.5;
        if (!p.times.empty() && p.times.back() == u.recv_time_ns) {
            p.values.back() = mid;
        } else {
            p.times.push_back(u.recv_time_ns);
            p.values.push_back(mid);
        }
    }
    return p;
}

}  // namespace leadlag
