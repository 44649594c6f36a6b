// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/sp_queue_bank.h"

#include <cassert>
#include <stdexcept>

namespace pcoflow {

double red_mark_probability(int qlen, const RedParams& params) {
    assert(qlen >= 0);
    if (qlen <= params.min_th)
        return 0.0;
    if (qlen >= params.max_th)
        return params.max_mark_prob;
    return params.max_mark_prob * (qlen - params.min_th) /
           static_cast<double>(params.max_th - params.min_th);
}

SpQueueBank::SpQueueBank(int num_queues, RedParams params, RngStream* mark_rng)
    : params_(params), rng_(mark_rng) {
    if (num_queues < 1)
        throw std::invalid_argument("SpQueueBank: need at least one queue");
    if (params_.min_th <= 0 || params_.min_th >= params_.max_th ||
        params_.max_th > params_.capacity)
        throw std::invalid_argument("SpQueueBank: need 0 < min_th < max_th <= capacity");
    if (params_.max_mark_prob <= 0.0 || params_.max_mark_prob > 1.0)
        throw std::invalid_argument("SpQueueBank: max_mark_prob must be in (0, 1]");
    queues_.resize(num_queues + 1);
    drops_by_queue_.assign(num_queues + 1, 0);
    marks_by_queue_.assign(num_queues + 1, 0);
}

EnqueueOutcome SpQueueBank::enqueue(const Packet& pkt) {
    int q = pkt.is_probe() ? 1 : pkt.priority;
    if (q < 1 || q > num_queues())
        throw std::invalid_argument("SpQueueBank: packet priority out of range");

    int qlen = static_cast<int>(queues_[q].size());
    if (qlen >= params_.capacity) {
        ++counters_.dropped;
        ++drops_by_queue_[q];
        return EnqueueOutcome::drop(DropReason::BandFull);
    }

    Packet stored = pkt;
    bool ce = false;
    if (stored.ecn_capable) {
        double prob = red_mark_probability(qlen, params_);
        if (prob > 0.0 && rng_->bernoulli(prob)) {
            ce = true;
            stored.ce_marked = true;
            ++marks_by_queue_[q];
            ++counters_.ce_marks;
        }
    }
    queues_[q].push_back(std::move(stored));
    ++total_;
    ++counters_.accepted;

    int rank = 0;
    for (int i = 1; i <= q; ++i)
        rank += static_cast<int>(queues_[i].size());
    return EnqueueOutcome::ok(rank, q, ce);
}

std::optional<Packet> SpQueueBank::dequeue() {
    for (auto& q : queues_) {
        if (q.empty())
            continue;
        Packet pkt = std::move(q.front());
        q.pop_front();
        --total_;
        ++counters_.dequeued;
        return pkt;
    }
    return std::nullopt;
}

std::size_t SpQueueBank::size() const { return total_; }

int SpQueueBank::queue_len(int priority) const {
    assert(priority >= 1 && priority <= num_queues());
    return static_cast<int>(queues_[priority].size());
}

} // namespace pcoflow
