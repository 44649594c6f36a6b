// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/dctcp.h"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace pcoflow {

double alpha_update(double alpha, double marked_fraction, double gain) {
    assert(marked_fraction >= 0.0 && marked_fraction <= 1.0);
    return (1.0 - gain) * alpha + gain * marked_fraction;
}

std::int64_t segment_count(std::int64_t size_bytes) {
    return (size_bytes + kMtuBytes - 1) / kMtuBytes;
}

DctcpSender::DctcpSender(const Flow& flow, TransportHooks hooks, DctcpParams params)
    : flow_(flow), hooks_(std::move(hooks)), params_(params),
      total_pkts_(segment_count(flow.size_bytes)), cwnd_(params.init_cwnd),
      ssthresh_(params.init_ssthresh) {
    if (cwnd_ >= ssthresh_)
        state_ = SenderState::CongestionAvoidance;
}

SimTime DctcpSender::current_rto() const {
    SimTime base = srtt_ > 0 ? std::max(3 * srtt_, params_.rto_floor) : params_.rto_floor;
    for (int i = 0; i < backoff_ && base < params_.rto_cap; ++i)
        base *= 2;
    return std::min(base, params_.rto_cap);
}

void DctcpSender::arm() {
    ++rto_epoch_;
    hooks_.arm_timer(current_rto(), rto_epoch_);
}

void DctcpSender::send_segment(std::int64_t seq, bool retransmit) {
    Packet pkt;
    pkt.pkt_id = (static_cast<std::uint64_t>(flow_.flow_id) << 32) |
                 static_cast<std::uint32_t>(++packets_sent_);
    pkt.kind = PacketKind::Data;
    pkt.flow_id = flow_.flow_id;
    pkt.coflow_id = flow_.coflow_id;
    pkt.seq = seq;
    pkt.size_bytes = seq == total_pkts_ - 1
                         ? static_cast<int>(flow_.size_bytes - (total_pkts_ - 1) * kMtuBytes)
                         : kMtuBytes;
    pkt.priority = priority_;
    pkt.ecn_capable = true;
    pkt.src = flow_.src_host;
    pkt.dst = flow_.dst_host;
    pkt.sent_at = hooks_.now();

    if (retransmit) {
        if (probe_active_ && probe_seq_ == seq)
            probe_active_ = false;
    } else if (!probe_active_) {
        probe_active_ = true;
        probe_seq_ = seq;
        probe_time_ = pkt.sent_at;
    }
    hooks_.emit(std::move(pkt));
}

void DctcpSender::try_send() {
    std::int64_t window = static_cast<std::int64_t>(cwnd_);
    while (next_seq_ < total_pkts_ && next_seq_ - snd_una_ < window)
        send_segment(next_seq_++, false);
}

void DctcpSender::start() {
    if (started_)
        return;
    started_ = true;
    try_send();
    window_end_ = next_seq_;
    if (next_seq_ > snd_una_)
        arm();
}

void DctcpSender::advance(std::int64_t ack_seq) {
    snd_una_ = ack_seq;
    dup_acks_ = 0;
    backoff_ = 0;

    if (probe_active_ && snd_una_ > probe_seq_) {
        SimTime rtt = hooks_.now() - probe_time_;
        srtt_ = srtt_ > 0 ? (7 * srtt_ + rtt) / 8 : rtt;
        probe_active_ = false;
    }

    if (state_ == SenderState::Recovery) {
        // Growth stays frozen until the loss window is fully acknowledged;
        // any further hole waits for its own dupACKs or the timer.
        if (snd_una_ >= recover_)
            state_ = cwnd_ < ssthresh_ ? SenderState::SlowStart
                                       : SenderState::CongestionAvoidance;
    } else if (state_ == SenderState::SlowStart) {
        cwnd_ += 1.0;
        if (cwnd_ >= ssthresh_)
            state_ = SenderState::CongestionAvoidance;
    } else {
        cwnd_ += 1.0 / cwnd_;
    }

    if (snd_una_ > window_end_) {
        double f = acks_this_window_ > 0
                       ? static_cast<double>(marks_this_window_) / acks_this_window_
                       : 0.0;
        alpha_ = alpha_update(alpha_, f, params_.gain);
        if (marks_this_window_ > 0 && state_ != SenderState::Recovery) {
            cwnd_ = std::max(1.0, cwnd_ * (1.0 - alpha_ / 2.0));
            ssthresh_ = std::max(cwnd_, 2.0);
        }
        acks_this_window_ = 0;
        marks_this_window_ = 0;
        window_end_ = next_seq_;
    }

    if (done())
        ++rto_epoch_; // cancels any pending timer
    else
        arm();
}

void DctcpSender::on_ack(const Packet& ack) {
    assert(ack.kind == PacketKind::Ack);
    if (done())
        return;
    ++acks_this_window_;
    if (ack.ece)
        ++marks_this_window_;

    if (ack.ack_seq > snd_una_) {
        advance(ack.ack_seq);
        try_send();
    } else if (ack.ack_seq == snd_una_ && next_seq_ > snd_una_) {
        ++dup_acks_;
        if (dup_acks_ == 3 && state_ != SenderState::Recovery) {
            state_ = SenderState::Recovery;
            recover_ = next_seq_;
            cwnd_ = std::max(1.0, cwnd_ * (1.0 - alpha_ / 2.0));
            ssthresh_ = std::max(cwnd_, 2.0);
            ++retransmissions_;
            send_segment(snd_una_, true);
            arm();
        }
    }
}

void DctcpSender::on_timer(std::uint64_t epoch) {
    if (epoch != rto_epoch_ || done() || next_seq_ == snd_una_)
        return;
    ssthresh_ = std::max(cwnd_ / 2.0, 2.0);
    cwnd_ = 1.0;
    state_ = SenderState::SlowStart;
    dup_acks_ = 0;
    if (current_rto() < params_.rto_cap)
        ++backoff_;
    ++timeouts_;
    ++retransmissions_;
    send_segment(snd_una_, true);
    arm();
}

DctcpReceiver::DctcpReceiver(const Flow& flow, std::function<void(Packet)> emit_ack,
                             std::function<void()> on_complete)
    : flow_(flow), emit_ack_(std::move(emit_ack)), on_complete_(std::move(on_complete)),
      total_pkts_(segment_count(flow.size_bytes)) {}

void DctcpReceiver::on_data(const Packet& pkt) {
    assert(pkt.kind == PacketKind::Data && pkt.flow_id == flow_.flow_id);
    if (pkt.seq < expected_ || buffered_.count(pkt.seq)) {
        ++duplicates_;
    } else {
        if (pkt.seq < max_seen_)
            ++reorder_events_; // a later segment already arrived
        max_seen_ = std::max(max_seen_, pkt.seq);
        if (pkt.seq == expected_) {
            ++expected_;
            while (!buffered_.empty() && *buffered_.begin() == expected_) {
                buffered_.erase(buffered_.begin());
                ++expected_;
            }
        } else {
            buffered_.insert(pkt.seq);
        }
    }

    Packet ack;
    ack.pkt_id = (static_cast<std::uint64_t>(flow_.flow_id) << 32) |
                 (0x80000000ull | static_cast<std::uint32_t>(++acks_sent_));
    ack.kind = PacketKind::Ack;
    ack.flow_id = flow_.flow_id;
    ack.coflow_id = flow_.coflow_id;
    ack.ack_seq = expected_;
    ack.ece = pkt.ce_marked;
    ack.size_bytes = kControlBytes;
    ack.priority = pkt.priority; // ride the band the data currently uses
    ack.ecn_capable = false;
    ack.src = flow_.dst_host;
    ack.dst = flow_.src_host;
    emit_ack_(std::move(ack));

    if (!completed_ && expected_ >= total_pkts_) {
        completed_ = true;
        if (on_complete_)
            on_complete_();
    }
}

} // namespace pcoflow
