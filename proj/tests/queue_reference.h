// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_TESTS_QUEUE_REFERENCE_H
#define PCOFLOW_TESTS_QUEUE_REFERENCE_H

// Reference model for the banded egress queue, used as a test oracle.
// Keeps one flat buffer and recomputes every decision by scanning it:
// no incremental registers, no per-band containers. Deliberately O(n)
// per operation so that any bookkeeping shortcut in the real queue is
// checked against first principles.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pcoflow/egress_queue.h"
#include "pcoflow/packet.h"

namespace pcoflow::testing {

class ScanQueue {
  public:
    struct Slot {
        Packet pkt;
        int band;
    };

    ScanQueue(int num_bands, int band_capacity, int ecn_threshold, bool drop_policy)
        : p_(num_bands), cap_(band_capacity), thr_(ecn_threshold), drop_policy_(drop_policy) {}

    EnqueueOutcome enqueue(Packet pkt) {
        int h = pkt.is_probe() ? 1 : pkt.priority;
        int band = h;
        if (!pkt.is_probe() && pkt.coflow_id != kNoCoflow) {
            int low = 0;
            for (const Slot& s : buf_)
                if (!s.pkt.is_probe() && s.pkt.coflow_id == pkt.coflow_id)
                    low = std::max(low, s.band);
            if (low > 0)
                band = std::max(h, low);
        }

        if (drop_policy_) {
            if (occupancy(band) >= cap_)
                return EnqueueOutcome::drop(DropReason::BandFull);
        } else {
            if (static_cast<int>(buf_.size()) >= p_ * cap_)
                return EnqueueOutcome::drop(DropReason::QueueFull);
        }

        // End position of the target band = packets in bands 1..band.
        int pos = 0;
        for (const Slot& s : buf_)
            if (s.band <= band)
                ++pos;
        int rank = pos + 1;

        bool ce = false;
        if (pkt.ecn_capable && occupancy(band) + 1 > thr_) {
            ce = true;
            pkt.ce_marked = true;
        }
        buf_.insert(buf_.begin() + pos, Slot{std::move(pkt), band});
        return EnqueueOutcome::ok(rank, band, ce);
    }

    std::optional<Packet> dequeue() {
        if (buf_.empty())
            return std::nullopt;
        Packet pkt = std::move(buf_.front().pkt);
        buf_.erase(buf_.begin());
        return pkt;
    }

    std::size_t size() const { return buf_.size(); }

    int occupancy(int band) const {
        int n = 0;
        for (const Slot& s : buf_)
            if (s.band == band)
                ++n;
        return n;
    }

    int end_of_band(int band) const {
        int n = 0;
        for (const Slot& s : buf_)
            if (s.band <= band)
                ++n;
        return n;
    }

    int coflow_low(int coflow_id) const {
        int low = 0;
        for (const Slot& s : buf_)
            if (!s.pkt.is_probe() && s.pkt.coflow_id == coflow_id)
                low = std::max(low, s.band);
        return low;
    }

    const std::vector<Slot>& buffer() const { return buf_; }

  private:
    int p_;
    int cap_;
    int thr_;
    bool drop_policy_;
    std::vector<Slot> buf_;
};

} // namespace pcoflow::testing

#endif
