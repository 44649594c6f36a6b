// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_BAND_QUEUE_H
#define PCOFLOW_BAND_QUEUE_H

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "pcoflow/egress_queue.h"

namespace pcoflow {

enum class BandPolicy {
    Drop,        // hard per-band packet cap, tail drop
    AdaptiveEcn, // bands borrow from each other, only the aggregate cap drops
};

struct BandQueueConfig {
    int num_bands = 8;
    int band_capacity = 500; // packets per band
    int ecn_threshold = 200; // packets per band
    BandPolicy policy = BandPolicy::AdaptiveEcn;
};

// Single egress queue split into num_bands virtual priority bands
// (band 1 dequeues first). A packet lands at the end of the band given
// by max(header priority, lowest band still holding its coflow), so a
// coflow's packets never overtake each other when its priority rises
// mid-flight. Register state (band bounds, per-coflow low band,
// per-band/per-coflow counts) is maintained incrementally and can be
// audited against the raw buffer with check_registers().
class BandQueue : public EgressQueue {
  public:
    explicit BandQueue(BandQueueConfig cfg);

    EnqueueOutcome enqueue(const Packet& pkt) override;
    std::optional<Packet> dequeue() override;
    std::size_t size() const override;

    // Band the packet would be assigned given its header priority.
    int effective_band(int header_priority, int coflow_id) const;

    // Register views (bands are 1-indexed).
    int priority_bound(int band) const; // packets buffered in bands 1..band
    int band_count(int band) const;     // packets buffered in exactly this band
    int coflow_low(int coflow_id) const;
    int enq_packets(int band, int coflow_id) const;

    const std::vector<std::int64_t>& ce_marks_by_band() const { return ce_by_band_; }
    const std::vector<std::int64_t>& drops_by_band() const { return drops_by_band_; }

    // Recomputes all registers from the raw buffer and compares.
    bool check_registers() const;

    const BandQueueConfig& config() const { return cfg_; }

  private:
    BandQueueConfig cfg_;
    std::vector<std::deque<Packet>> bands_;     // [0] unused; [1..p]
    std::vector<int> bound_;                    // priority_bound, [0]=0 sentinel
    std::vector<std::map<int, int>> enq_;       // per band: coflow -> packet count
    std::map<int, int> coflow_low_;             // coflow -> largest band holding it
    std::vector<std::int64_t> ce_by_band_;
    std::vector<std::int64_t> drops_by_band_;
};

} // namespace pcoflow

#endif
