#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace leadlag {

/// Prices are held internally as int64 multiples of HALF the minimum price
/// tick. Bid/ask quotes land on even values (full ticks), and the mid-quote
/// (bid+ask)/2 stays an exact integer, so equality comparisons and
/// round-trips are bit-exact. Conversion to Yuan happens at I/O boundaries.
using PriceUnits = std::int64_t;

struct PriceGrid {
    double tick_size = 0.2;  // Yuan, CFFEX index futures

    double unit() const { return tick_size * 0.5; }

    PriceUnits to_units(double yuan) const {
        return static_cast<PriceUnits>(std::llround(yuan / unit()));
    }

    double to_yuan(PriceUnits u) const {
        return static_cast<double>(u) * unit();
    }

    /// Price ticks expressed in internal units (1 tick = 2 units).
    PriceUnits ticks_to_units(double ticks) const {
        return static_cast<PriceUnits>(std::llround(ticks * 2.0));
    }
};

/// One raw level-1 limit-order-book snapshot for one instrument.
struct LobUpdate {
    std::string instrument;
    std::int64_t recv_time_ns = 0;
    PriceUnits bid = 0;
    PriceUnits ask = 0;
    std::int64_t bid_size = 0;
    std::int64_t ask_size = 0;
    std::int64_t cum_volume = 0;  // lots traded since day open, non-decreasing
};

}  // namespace leadlag
