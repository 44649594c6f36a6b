// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_EVENT_LOOP_H
#define PCOFLOW_EVENT_LOOP_H

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "pcoflow/sim_time.h"

namespace pcoflow {

enum class EventKind {
    PacketArrival,
    LinkFree,
    TimerExpiry,
    CoflowArrival,
    ProbeEmission,
    RecomputeTrigger,
};

// Sequential discrete-event engine. Events fire in (fire_at, insertion seq)
// order, so equal-time ties resolve FIFO and identical schedules replay
// identically.
class EventLoop {
public:
    struct Stats {
        std::uint64_t scheduled = 0;
        std::uint64_t processed = 0;
        std::uint64_t unprocessed = 0; // left in the queue at termination
    };

    SimTime now() const { return now_; }

    // Returns the event ticket (its insertion seq). Scheduling in the past
    // is a programming error.
    std::uint64_t schedule(SimTime at, EventKind kind, std::function<void()> fn);

    // Processes every event with fire_at <= until. The clock ends at the
    // last processed event time (or stays put if nothing fired).
    Stats run(SimTime until = std::numeric_limits<SimTime>::max());

    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }

private:
    struct Entry {
        SimTime at;
        std::uint64_t seq;
        EventKind kind;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.at != b.at)
                return a.at > b.at;
            return a.seq > b.seq;
        }
    };

    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t processed_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
};

} // namespace pcoflow

#endif
