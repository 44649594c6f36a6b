// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_SP_QUEUE_BANK_H
#define PCOFLOW_SP_QUEUE_BANK_H

#include <cstdint>
#include <deque>
#include <vector>

#include "pcoflow/egress_queue.h"
#include "pcoflow/rng.h"

namespace pcoflow {

struct RedParams {
    int min_th = 200;          // packets; marking starts above this length
    int max_th = 400;          // packets; marking probability saturates here
    double max_mark_prob = 1.0;
    int capacity = 500;        // packets; tail drop beyond
};

// 0 at or below min_th, max_mark_prob at or above max_th, linear between.
double red_mark_probability(int qlen, const RedParams& params);

// Bank of strict-priority FIFO queues, one per header priority, each with
// its own RED/ECN virtual queue over the instantaneous length. Packets are
// placed purely by header priority, so a flow whose priority rises
// mid-flight jumps ahead of its own earlier packets.
class SpQueueBank : public EgressQueue {
  public:
    SpQueueBank(int num_queues, RedParams params, RngStream* mark_rng);

    EnqueueOutcome enqueue(const Packet& pkt) override;
    std::optional<Packet> dequeue() override;
    std::size_t size() const override;

    int num_queues() const { return static_cast<int>(queues_.size()) - 1; }
    int queue_len(int priority) const;
    const std::vector<std::int64_t>& drops_by_queue() const { return drops_by_queue_; }
    const std::vector<std::int64_t>& ce_marks_by_queue() const { return marks_by_queue_; }

  private:
    RedParams params_;
    std::vector<std::deque<Packet>> queues_; // [0] unused; [1..n]
    RngStream* rng_;
    std::size_t total_ = 0;
    std::vector<std::int64_t> drops_by_queue_;
    std::vector<std::int64_t> marks_by_queue_;
};

} // namespace pcoflow

#endif
