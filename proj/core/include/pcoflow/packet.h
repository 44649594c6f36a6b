// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_PACKET_H
#define PCOFLOW_PACKET_H

#include <cstdint>

#include "pcoflow/sim_time.h"

namespace pcoflow {

constexpr int kMtuBytes = 1500;     // full-sized data packets
constexpr int kControlBytes = 64;   // ACKs and HULA probes

// coflow_id 0 is reserved: packets carrying it (probes) bypass per-coflow
// queue bookkeeping.
constexpr int kNoCoflow = 0;

enum class PacketKind { Data, Ack, Probe };

struct Packet {
    std::uint64_t pkt_id = 0;
    PacketKind kind = PacketKind::Data;

    int flow_id = 0;              // 0 = none (probes)
    int coflow_id = kNoCoflow;
    std::int64_t seq = 0;         // per-flow packet sequence (Data)
    std::int64_t ack_seq = 0;     // cumulative next-expected (Ack)
    bool ece = false;             // receiver's CE echo (Ack)

    int size_bytes = kMtuBytes;
    int priority = 1;             // band index, 1 = highest priority
    bool ecn_capable = false;
    bool ce_marked = false;

    int src = -1;                 // host id (Data/Ack); origin ToR node (Probe)
    int dst = -1;

    // HULA probe payload: max link utilization seen along the path so far.
    double probe_util = 0.0;

    SimTime sent_at = 0;
    SimTime arrived_at = 0;

    bool is_probe() const { return kind == PacketKind::Probe; }
};

} // namespace pcoflow

#endif
