// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_EGRESS_QUEUE_H
#define PCOFLOW_EGRESS_QUEUE_H

#include <cstdint>
#include <optional>

#include "pcoflow/packet.h"

namespace pcoflow {

enum class DropReason { BandFull, QueueFull };

struct EnqueueOutcome {
    bool accepted = false;
    int rank = 0;  // 1-indexed buffer position immediately after insertion
    int band = 0;  // band the packet was assigned to
    bool ce_marked = false;
    DropReason drop_reason = DropReason::BandFull;

    static EnqueueOutcome ok(int rank, int band, bool ce_marked) {
        EnqueueOutcome o;
        o.accepted = true;
        o.rank = rank;
        o.band = band;
        o.ce_marked = ce_marked;
        return o;
    }
    static EnqueueOutcome drop(DropReason reason) {
        EnqueueOutcome o;
        o.accepted = false;
        o.drop_reason = reason;
        return o;
    }
};

struct QueueCounters {
    std::int64_t accepted = 0;
    std::int64_t dequeued = 0;
    std::int64_t dropped = 0;
    std::int64_t ce_marks = 0;
};

// One egress port's packet buffer. Implementations decide ordering,
// admission and marking; the fabric only sees this interface.
class EgressQueue {
  public:
    virtual ~EgressQueue() = default;

    virtual EnqueueOutcome enqueue(const Packet& pkt) = 0;
    virtual std::optional<Packet> dequeue() = 0;
    virtual std::size_t size() const = 0;
    bool empty() const { return size() == 0; }

    const QueueCounters& counters() const { return counters_; }

  protected:
    QueueCounters counters_;
};

} // namespace pcoflow

#endif
