// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_DCTCP_H
#define PCOFLOW_DCTCP_H

#include <cstdint>
#include <functional>
#include <set>

#include "pcoflow/packet.h"
#include "pcoflow/sim_time.h"
#include "pcoflow/workload.h"

namespace pcoflow {

constexpr SimTime kRtoFloor = 200 * kMicrosecond;
constexpr SimTime kRtoCap = 200 * kMillisecond; // backoff ceiling
constexpr double kDctcpGain = 1.0 / 16.0;

// Moving estimate of the marked fraction: alpha' = (1-g)*alpha + g*F.
double alpha_update(double alpha, double marked_fraction, double gain = kDctcpGain);

enum class SenderState { SlowStart, CongestionAvoidance, Recovery };

struct DctcpParams {
    double init_cwnd = 10.0;     // packets
    double init_ssthresh = 1e9;  // effectively "slow start until marked"
    double gain = kDctcpGain;
    SimTime rto_floor = kRtoFloor;
    SimTime rto_cap = kRtoCap;
};

// Plumbing injected by the owning host: hand packets to the network and
// (re)arm the retransmission timer. Timers carry an epoch; stale epochs
// (superseded by a later re-arm) must still be delivered and are ignored.
struct TransportHooks {
    std::function<void(Packet)> emit;
    std::function<void(SimTime delay, std::uint64_t epoch)> arm_timer;
    std::function<SimTime()> now;
};

// ECN-reactive sender over MTU-sized segments with cumulative ACKs.
// Window-level marking feedback shrinks cwnd multiplicatively by alpha/2;
// the third duplicate ACK triggers a fast retransmit and Recovery; the
// retransmission timer collapses the window to one segment.
class DctcpSender {
  public:
    DctcpSender(const Flow& flow, TransportHooks hooks, DctcpParams params = {});

    void start();                       // opens the initial window
    void on_ack(const Packet& ack);
    void on_timer(std::uint64_t epoch); // RTO timer callback

    void set_priority(int priority) { priority_ = priority; }
    int priority() const { return priority_; }

    bool started() const { return started_; }
    bool done() const { return snd_una_ >= total_pkts_; }
    std::int64_t total_packets() const { return total_pkts_; }
    std::int64_t snd_una() const { return snd_una_; }
    std::int64_t next_seq() const { return next_seq_; }
    double cwnd() const { return cwnd_; }
    double ssthresh() const { return ssthresh_; }
    double alpha() const { return alpha_; }
    SenderState state() const { return state_; }
    SimTime srtt() const { return srtt_; }
    SimTime current_rto() const;
    std::int64_t packets_sent() const { return packets_sent_; }
    std::int64_t retransmissions() const { return retransmissions_; }
    std::int64_t timeouts() const { return timeouts_; }
    const Flow& flow() const { return flow_; }

  private:
    void try_send();
    void send_segment(std::int64_t seq, bool retransmit);
    void arm();
    void advance(std::int64_t ack_seq);

    Flow flow_;
    TransportHooks hooks_;
    DctcpParams params_;
    std::int64_t total_pkts_;
    int priority_ = 1;
    bool started_ = false;

    double cwnd_;
    double ssthresh_;
    double alpha_ = 0.0;
    SenderState state_ = SenderState::SlowStart;

    std::int64_t snd_una_ = 0;   // lowest unacknowledged segment
    std::int64_t next_seq_ = 0;  // next fresh segment
    std::int64_t recover_ = 0;   // Recovery exit point
    int dup_acks_ = 0;

    // One outstanding RTT sample at a time; invalidated when its segment
    // is retransmitted so retransmission ambiguity never pollutes srtt.
    bool probe_active_ = false;
    std::int64_t probe_seq_ = 0;
    SimTime probe_time_ = 0;
    SimTime srtt_ = 0;

    std::uint64_t rto_epoch_ = 0;
    int backoff_ = 0;

    std::int64_t window_end_ = 0; // alpha refresh once the window passes this
    std::int64_t acks_this_window_ = 0;
    std::int64_t marks_this_window_ = 0;

    std::int64_t packets_sent_ = 0;
    std::int64_t retransmissions_ = 0;
    std::int64_t timeouts_ = 0;
};

// Cumulative-ACK receiver. Every data arrival is answered immediately;
// the ACK echoes the arriving segment's CE mark as ECE.
class DctcpReceiver {
  public:
    DctcpReceiver(const Flow& flow, std::function<void(Packet)> emit_ack,
                  std::function<void()> on_complete);

    void on_data(const Packet& pkt);

    bool complete() const { return expected_ >= total_pkts_; }
    std::int64_t expected_seq() const { return expected_; }
    std::int64_t reorder_events() const { return reorder_events_; }
    std::int64_t duplicate_arrivals() const { return duplicates_; }
    std::int64_t acks_sent() const { return acks_sent_; }

  private:
    Flow flow_;
    std::function<void(Packet)> emit_ack_;
    std::function<void()> on_complete_;
    std::int64_t total_pkts_;
    std::int64_t expected_ = 0;
    std::int64_t max_seen_ = -1;
    std::set<std::int64_t> buffered_;
    std::int64_t reorder_events_ = 0;
    std::int64_t duplicates_ = 0;
    std::int64_t acks_sent_ = 0;
    bool completed_ = false;
};

// Segments per flow: full MTUs plus one partial tail if needed.
std::int64_t segment_count(std::int64_t size_bytes);

} // namespace pcoflow

#endif
