// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/band_queue.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pcoflow {

BandQueue::BandQueue(BandQueueConfig cfg) : cfg_(cfg) {
    if (cfg_.num_bands < 2)
        throw std::invalid_argument("BandQueue: need at least 2 bands");
    if (cfg_.band_capacity < 1)
        throw std::invalid_argument("BandQueue: band_capacity must be >= 1");
    if (cfg_.ecn_threshold > cfg_.band_capacity)
        throw std::invalid_argument("BandQueue: ecn_threshold exceeds band_capacity");
    bands_.resize(cfg_.num_bands + 1);
    bound_.assign(cfg_.num_bands + 1, 0);
    enq_.resize(cfg_.num_bands + 1);
    ce_by_band_.assign(cfg_.num_bands + 1, 0);
    drops_by_band_.assign(cfg_.num_bands + 1, 0);
}

int BandQueue::effective_band(int header_priority, int coflow_id) const {
    assert(header_priority >= 1 && header_priority <= cfg_.num_bands);
    if (coflow_id == kNoCoflow)
        return header_priority;
    auto it = coflow_low_.find(coflow_id);
    if (it == coflow_low_.end())
        return header_priority;
    return std::max(header_priority, it->second);
}

EnqueueOutcome BandQueue::enqueue(const Packet& pkt) {
    int h = pkt.is_probe() ? 1 : pkt.priority;
    if (h < 1 || h > cfg_.num_bands)
        throw std::invalid_argument("BandQueue: packet priority out of band range");
    int b = pkt.is_probe() ? 1 : effective_band(h, pkt.coflow_id);

    if (cfg_.policy == BandPolicy::Drop) {
        if (band_count(b) >= cfg_.band_capacity) {
            ++counters_.dropped;
            ++drops_by_band_[b];
            return EnqueueOutcome::drop(DropReason::BandFull);
        }
    } else {
        if (bound_[cfg_.num_bands] >= cfg_.num_bands * cfg_.band_capacity) {
            ++counters_.dropped;
            ++drops_by_band_[b];
            return EnqueueOutcome::drop(DropReason::QueueFull);
        }
    }

    int rank = bound_[b] + 1;
    Packet stored = pkt;
    bool ce = false;
    if (stored.ecn_capable && band_count(b) + 1 > cfg_.ecn_threshold) {
        ce = true;
        stored.ce_marked = true;
        ++ce_by_band_[b];
        ++counters_.ce_marks;
    }
    bands_[b].push_back(std::move(stored));
    for (int j = b; j <= cfg_.num_bands; ++j)
        ++bound_[j];
    if (!pkt.is_probe() && pkt.coflow_id != kNoCoflow) {
        ++enq_[b][pkt.coflow_id];
        auto [it, fresh] = coflow_low_.try_emplace(pkt.coflow_id, b);
        if (!fresh)
            it->second = std::max(it->second, b);
    }
    ++counters_.accepted;
    return EnqueueOutcome::ok(rank, b, ce);
}

std::optional<Packet> BandQueue::dequeue() {
    for (int b = 1; b <= cfg_.num_bands; ++b) {
        if (bands_[b].empty())
            continue;
        Packet pkt = std::move(bands_[b].front());
        bands_[b].pop_front();
        for (int j = b; j <= cfg_.num_bands; ++j)
            --bound_[j];
        if (!pkt.is_probe() && pkt.coflow_id != kNoCoflow) {
            auto it = enq_[b].find(pkt.coflow_id);
            assert(it != enq_[b].end());
            if (--it->second == 0) {
                enq_[b].erase(it);
                auto low = coflow_low_.find(pkt.coflow_id);
                if (low != coflow_low_.end() && low->second == b) {
                    int fresh = 0;
                    for (int i = cfg_.num_bands; i >= 1; --i) {
                        if (enq_[i].count(pkt.coflow_id)) {
                            fresh = i;
                            break;
                        }
                    }
                    if (fresh == 0)
                        coflow_low_.erase(low);
                    else
                        low->second = fresh;
                }
            }
        }
        ++counters_.dequeued;
        return pkt;
    }
    return std::nullopt;
}

std::size_t BandQueue::size() const {
    return static_cast<std::size_t>(bound_[cfg_.num_bands]);
}

int BandQueue::priority_bound(int band) const {
    assert(band >= 1 && band <= cfg_.num_bands);
    return bound_[band];
}

int BandQueue::band_count(int band) const {
    assert(band >= 1 && band <= cfg_.num_bands);
    return bound_[band] - bound_[band - 1];
}

int BandQueue::coflow_low(int coflow_id) const {
    auto it = coflow_low_.find(coflow_id);
    return it == coflow_low_.end() ? 0 : it->second;
}

int BandQueue::enq_packets(int band, int coflow_id) const {
    assert(band >= 1 && band <= cfg_.num_bands);
    auto it = enq_[band].find(coflow_id);
    return it == enq_[band].end() ? 0 : it->second;
}

bool BandQueue::check_registers() const {
    int running = 0;
    std::map<int, int> low;
    for (int b = 1; b <= cfg_.num_bands; ++b) {
        std::map<int, int> per_coflow;
        for (const Packet& pkt : bands_[b]) {
            if (!pkt.is_probe() && pkt.coflow_id != kNoCoflow) {
                ++per_coflow[pkt.coflow_id];
                low[pkt.coflow_id] = b; // ascending scan leaves the largest band
            }
        }
        if (per_coflow != enq_[b])
            return false;
        int in_band = static_cast<int>(bands_[b].size());
        if (bound_[b] - bound_[b - 1] != in_band)
            return false;
        running += in_band;
        if (bound_[b] != running)
            return false;
    }
    return low == coflow_low_;
}

} // namespace pcoflow
