// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_ORDERING_H
#define PCOFLOW_ORDERING_H

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "pcoflow/packet.h"
#include "pcoflow/workload.h"

namespace pcoflow {

// Unfinished bytes per (coflow, host-NIC direction). Ports 0..N-1 are host
// egress NICs, N..2N-1 the matching ingress NICs; fabric-internal links are
// not modelled here (big-switch abstraction over host ports).
class DemandMatrix {
  public:
    explicit DemandMatrix(int host_count);

    void add_flow(const Flow& f);
    // Progress is counted in acknowledged bytes, clamped at zero.
    void on_bytes_acked(int coflow_id, int src_host, int dst_host, std::int64_t bytes);
    void remove_coflow(int coflow_id);

    int host_count() const { return hosts_; }
    int port_count() const { return 2 * hosts_; }
    int egress_port(int host) const { return host; }
    int ingress_port(int host) const { return hosts_ + host; }

    std::int64_t remaining(int coflow_id, int port) const;
    std::int64_t coflow_total(int coflow_id) const;
    bool active(int coflow_id) const { return coflow_total(coflow_id) > 0; }
    std::vector<int> active_coflows() const; // ascending ids, positive demand only

    const std::map<int, std::vector<std::int64_t>>& rows() const { return rows_; }

  private:
    int hosts_;
    std::map<int, std::vector<std::int64_t>> rows_; // coflow -> per-port bytes
};

struct CoflowOrder {
    std::vector<int> ids; // position 1 = front = most urgent
    std::uint64_t epoch = 0;

    int position_of(int coflow_id) const; // 1-indexed, 0 if absent
};

// Port with the largest total unfinished demand over the given coflows
// (all active ones if empty); ties break toward the lowest port index.
// Returns -1 when there is no positive demand at all.
int bottleneck_port(const DemandMatrix& d, const std::set<int>& among = {});

// Bottleneck-select-scale-iterate ordering. Repeatedly finds the most
// loaded port among still-unordered coflows, places the coflow with the
// most demand per unit working weight there *last*, and discounts the
// weights of the coflows it delayed. Coflows with no demand left fill the
// leading positions by ascending id.
CoflowOrder bssi_order(const DemandMatrix& d, const std::map<int, double>& weights = {});

// Order position -> priority band: the first p-1 positions get their own
// band, everything later shares the lowest-priority band p.
int map_order_to_priority(int position, int num_bands);

// Recomputes and broadcasts the order on coflow arrival, flow completion
// and coflow departure. Byte progress updates the matrix silently.
class Coordinator {
  public:
    Coordinator(int host_count, std::function<void(const CoflowOrder&)> broadcast);

    void on_coflow_arrival(const Coflow& coflow);
    void on_bytes_acked(int coflow_id, int src_host, int dst_host, std::int64_t bytes);
    void on_flow_completion(int coflow_id);
    void on_coflow_departure(int coflow_id);

    const DemandMatrix& demand() const { return demand_; }
    std::uint64_t epoch() const { return epoch_; }
    const std::map<int, double>& weights() const { return weights_; }

  private:
    void recompute();

    DemandMatrix demand_;
    std::map<int, double> weights_;
    std::function<void(const CoflowOrder&)> broadcast_;
    std::uint64_t epoch_ = 0;
};

// Per-host endpoint state: knows each local flow's coflow and the band its
// coflow currently maps to. Packets transmitted after an order update carry
// the new band; in-flight packets are untouched.
class HostShim {
  public:
    explicit HostShim(int num_bands) : num_bands_(num_bands) {}

    void register_flow(const Flow& f);
    void unregister_flow(int flow_id);
    void apply_order(const CoflowOrder& order);

    int band_for_coflow(int coflow_id) const; // unlisted coflows ride band p
    int band_for_flow(int flow_id) const;     // throws on unknown flow
    void tag(Packet& pkt) const;              // stamps coflow_id and priority

    std::uint64_t epoch() const { return order_.epoch; }

  private:
    int num_bands_;
    std::map<int, int> flow_to_coflow_;
    CoflowOrder order_;
};

} // namespace pcoflow

#endif
