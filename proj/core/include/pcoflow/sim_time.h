// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_SIM_TIME_H
#define PCOFLOW_SIM_TIME_H

#include <cstdint>

namespace pcoflow {

// Virtual time in integer picoseconds. Integer so that equal-time ties,
// serialization delays and repeated runs are exact (64 B at 40 Gbps is
// 12.8 ns = 12800 ps, not representable in whole nanoseconds).
using SimTime = std::int64_t;

constexpr SimTime kPicosecond = 1;
constexpr SimTime kNanosecond = 1'000;
constexpr SimTime kMicrosecond = 1'000'000;
constexpr SimTime kMillisecond = 1'000'000'000;
constexpr SimTime kSecond = 1'000'000'000'000;

constexpr SimTime picos(std::int64_t n) { return n; }
constexpr SimTime nanos(std::int64_t n) { return n * kNanosecond; }
constexpr SimTime micros(std::int64_t n) { return n * kMicrosecond; }
constexpr SimTime millis(std::int64_t n) { return n * kMillisecond; }

constexpr double to_micros(SimTime t) { return static_cast<double>(t) / kMicrosecond; }
constexpr double to_seconds(SimTime t) { return static_cast<double>(t) / kSecond; }

// Wire time of `bytes` at `rate_bps`. Exact for the usual datacenter rates.
constexpr SimTime serialization_time(std::int64_t bytes, std::int64_t rate_bps) {
    return bytes * 8 * kSecond / rate_bps;
}

} // namespace pcoflow

#endif
