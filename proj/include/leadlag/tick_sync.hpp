#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/prices.hpp"

namespace leadlag {

inline constexpr std::int64_t kDefaultIntraEventGapNs = 100'000'000;  // 100 ms

// ============================================================================
// Domain types
// ============================================================================

/// All LOB updates belonging to one market update event. At most one update
/// per instrument; event_time is the arrival of the first update.
struct EventGroup {
    std::int64_t event_time_ns = 0;
    std::vector<LobUpdate> updates;  // arrival order, unique instruments

    const LobUpdate* find(const std::string& instrument) const {
        for (const auto& u : updates)
            if (u.instrument == instrument) return &u;
        return nullptr;
    }
};

/// Rectangular tick-grid of level-1 quotes after binning + filling.
/// Column order follows the liquidity ranking (index 0 = F1).
struct SyncedPanel {
    std::string date;  // day label, used to key per-day RNG streams
    PriceGrid grid;
    std::vector<std::string> instruments;
    std::vector<std::int64_t> tick_times;            // ns, strictly increasing
    std::vector<std::vector<PriceUnits>> bid, ask;   // [instrument][tick]
    std::vector<std::vector<std::uint8_t>> filled;   // carried from prev tick

    std::size_t n_ticks() const { return tick_times.size(); }
    std::size_t n_instruments() const { return instruments.size(); }

    // bid+ask is even (both on the full-tick grid), so the division is exact.
    PriceUnits mid_units(std::size_t inst, std::size_t t) const {
        return (bid[inst][t] + ask[inst][t]) / 2;
    }
    double mid(std::size_t inst, std::size_t t) const {
        return grid.to_yuan(mid_units(inst, t));
    }
    PriceUnits spread_units(std::size_t inst, std::size_t t) const {
        return ask[inst][t] - bid[inst][t];
    }
    double spread(std::size_t inst, std::size_t t) const {
        return grid.to_yuan(spread_units(inst, t));
    }

    std::size_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < instruments.size(); ++i)
            if (instruments[i] == id) return i;
        throw ConfigError("instrument not in panel: " + id);
    }

    std::vector<double> mid_series(std::size_t inst) const {
        std::vector<double> out(n_ticks());
        for (std::size_t t = 0; t < n_ticks(); ++t) out[t] = mid(inst, t);
        return out;
    }

    /// Tick-to-tick mid changes in internal units, as doubles (exact:
    /// increments are small integers).
    std::vector<double> mid_increments(std::size_t inst) const {
        std::vector<double> out;
        if (n_ticks() < 2) return out;
        out.resize(n_ticks() - 1);
        for (std::size_t t = 1; t < n_ticks(); ++t)
            out[t - 1] = static_cast<double>(mid_units(inst, t) -
                                             mid_units(inst, t - 1));
        return out;
    }
};

/// Daily liquidity ranking: instrument ids by descending end-of-day volume.
/// Position k is the name "F{k+1}".
struct LiquidityRanking {
    std::string date;
    std::vector<std::string> ranking;
    std::vector<std::int64_t> volumes;  // aligned with ranking
};

// ============================================================================
// Operations
// ============================================================================

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

/// Parse a raw per-day LOB update stream in the input CSV format
/// (header: instrument,recv_time_ns,bid,ask,bid_size,ask_size,cum_volume).
/// Lines starting with '#' are skipped. Returns updates sorted by recv_time,
/// stable within equal timestamps.
inline std::vector<LobUpdate> parse_lob_stream(std::istream& in,
                                               const PriceGrid& grid = {}) {
    static const std::string kHeader =
        "instrument,recv_time_ns,bid,ask,bid_size,ask_size,cum_volume";

    std::vector<LobUpdate> updates;
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!seen_header) {
            if (line != kHeader)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header '" + kHeader + "'");
            seen_header = true;
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 7)
            throw ParseError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                             std::to_string(fields.size()));
        LobUpdate u;
        try {
            u.instrument = fields[0];
            u.recv_time_ns = std::stoll(fields[1]);
            u.bid = grid.to_units(std::stod(fields[2]));
            u.ask = grid.to_units(std::stod(fields[3]));
            u.bid_size = std::stoll(fields[4]);
            u.ask_size = std::stoll(fields[5]);
            u.cum_volume = std::stoll(fields[6]);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed record: " + line);
        }
        if (u.instrument.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty instrument id");
        if (u.ask < u.bid)
            throw ValidationError("line " + std::to_string(line_no) + ": crossed book for " +
                                  u.instrument + " (ask < bid)");
        if (u.bid_size < 0 || u.ask_size < 0)
            throw ValidationError("line " + std::to_string(line_no) + ": negative size for " +
                                  u.instrument);
        updates.push_back(std::move(u));
    }

    std::stable_sort(updates.begin(), updates.end(),
                     [](const LobUpdate& a, const LobUpdate& b) {
                         return a.recv_time_ns < b.recv_time_ns;
                     });

    std::unordered_map<std::string, std::int64_t> last_vol;
    for (std::size_t i = 0; i < updates.size(); ++i) {
        const auto& u = updates[i];
        auto it = last_vol.find(u.instrument);
        if (it != last_vol.end() && u.cum_volume < it->second)
            throw ValidationError("cum_volume decreases for " + u.instrument +
                                  " at sorted record " + std::to_string(i));
        last_vol[u.instrument] = u.cum_volume;
    }
    return updates;
}

/// Group time-sorted updates into market events. A group is closed when the
/// next update is more than intra_event_gap after the group's first update,
/// or when an instrument would appear twice (a new event has begun).
inline std::vector<EventGroup> bin_events(
    const std::vector<LobUpdate>& updates,
    std::int64_t intra_event_gap_ns = kDefaultIntraEventGapNs) {
    if (intra_event_gap_ns <= 0)
        throw ConfigError("intra_event_gap must be positive");
    for (std::size_t i = 1; i < updates.size(); ++i)
        if (updates[i].recv_time_ns < updates[i - 1].recv_time_ns)
            throw ValidationError("bin_events: updates not time-sorted");

    std::vector<EventGroup> groups;
    for (const auto& u : updates) {
        bool start_new = groups.empty();
        if (!start_new) {
            const EventGroup& g = groups.back();
            start_new = (u.recv_time_ns - g.event_time_ns > intra_event_gap_ns) ||
                        g.find(u.instrument) != nullptr;
        }
        if (start_new) {
            groups.push_back(EventGroup{u.recv_time_ns, {}});
        }
        groups.back().updates.push_back(u);
    }
    return groups;
}

/// Build the synchronized panel: one row per event, missing instruments
/// carried from the previous tick. Rows before every instrument has appeared
/// at least once are dropped (back-filling would inject look-ahead).
inline SyncedPanel fill_missing(const std::vector<EventGroup>& groups,
                                const std::vector<std::string>& instruments,
                                const PriceGrid& grid = {},
                                std::string date = {}) {
    const std::size_t n = instruments.size();

    // First group at which all instruments have been seen.
    std::vector<bool> seen(n, false);
    std::size_t n_seen = 0;
    std::size_t start = groups.size();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (const auto& u : groups[g].updates) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!seen[i] && u.instrument == instruments[i]) {
                    seen[i] = true;
                    ++n_seen;
                }
            }
        }
        if (n_seen == n) {
            start = g;
            break;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            throw ConfigError("instrument never observed: " + instruments[i]);

    SyncedPanel panel;
    panel.date = std::move(date);
    panel.grid = grid;
    panel.instruments = instruments;
    const std::size_t n_ticks = groups.size() - start;
    panel.tick_times.reserve(n_ticks);
    panel.bid.assign(n, {});
    panel.ask.assign(n, {});
    panel.filled.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        panel.bid[i].reserve(n_ticks);
        panel.ask[i].reserve(n_ticks);
        panel.filled[i].reserve(n_ticks);
    }

    // Latest quote per instrument, warmed up on the dropped prefix so the
    // first panel row is complete even if its own group misses an instrument.
    std::vector<PriceUnits> last_bid(n, 0), last_ask(n, 0);
    std::vector<bool> have(n, false);
    auto absorb = [&](const EventGroup& g, bool emit) {
        std::vector<bool> updated(n, false);
        for (const auto& u : g.updates) {
            for (std::size_t i = 0; i < n; ++i) {
                if (u.instrument == instruments[i]) {
                    last_bid[i] = u.bid;
                    last_ask[i] = u.ask;
                    have[i] = true;
                    updated[i] = true;
                }
            }
        }
        if (!emit) return;
        panel.tick_times.push_back(g.event_time_ns);
        for (std::size_t i = 0; i < n; ++i) {
            panel.bid[i].push_back(last_bid[i]);
            panel.ask[i].push_back(last_ask[i]);
            panel.filled[i].push_back(updated[i] ? 0 : 1);
        }
    };
    for (std::size_t g = 0; g < start; ++g) absorb(groups[g], false);
    for (std::size_t g = start; g < groups.size(); ++g) absorb(groups[g], true);

    for (std::size_t t = 1; t < panel.tick_times.size(); ++t)
        if (panel.tick_times[t] <= panel.tick_times[t - 1])
            throw ValidationError("tick_times not strictly increasing");
    return panel;
}

/// Rank a day's instruments by descending end-of-day cumulative volume,
/// ties broken by lexicographic instrument id.
inline LiquidityRanking rank_liquidity(const std::vector<LobUpdate>& day_updates,
                                       std::string date = {}) {
    std::map<std::string, std::int64_t> vol;  // ordered: deterministic ties
    for (const auto& u : day_updates) {
        auto& v = vol[u.instrument];
        v = std::max(v, u.cum_volume);
    }
    std::vector<std::pair<std::string, std::int64_t>> items(vol.begin(), vol.end());
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    LiquidityRanking r;
    r.date = std::move(date);
    for (auto& [id, v] : items) {
        r.ranking.push_back(id);
        r.volumes.push_back(v);
    }
    return r;
}

/// Convenience: parse -> rank -> bin -> fill for one day of raw updates.
inline SyncedPanel sync_day(const std::vector<LobUpdate>& updates,
                            const PriceGrid& grid = {}, std::string date = {},
                            std::int64_t intra_event_gap_ns = kDefaultIntraEventGapNs) {
    const auto ranking = rank_liquidity(updates, date);
    const auto groups = bin_events(updates, intra_event_gap_ns);
    return fill_missing(groups, ranking.ranking, grid, std::move(date));
}

}  // namespace leadlag
