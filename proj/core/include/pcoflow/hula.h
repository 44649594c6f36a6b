// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_HULA_H
#define PCOFLOW_HULA_H

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "pcoflow/sim_time.h"
#include "pcoflow/topology.h"

namespace pcoflow {

struct HulaConfig {
    SimTime probe_interval = 200 * kMicrosecond;
    SimTime flowlet_gap = 500 * kMicrosecond;
    double util_gain = 0.25; // EWMA gain per probe-interval window
};

// Per-egress-link utilization: fraction of the link's capacity used within
// each probe-interval window, smoothed by an EWMA. Folded lazily so idle
// windows decay the estimate without timers.
class LinkUtilEstimator {
  public:
    LinkUtilEstimator(std::int64_t rate_bps, SimTime window, double gain)
        : rate_bps_(rate_bps), window_(window), gain_(gain) {}

    void on_transmit(std::int64_t bytes, SimTime now) {
        fold(now);
        window_bytes_ += bytes;
    }

    double value(SimTime now) {
        fold(now);
        return util_;
    }

  private:
    void fold(SimTime now);

    std::int64_t rate_bps_;
    SimTime window_;
    double gain_;
    std::int64_t window_index_ = 0;
    std::int64_t window_bytes_ = 0;
    double util_ = 0.0;
};

// Distance-vector style best-path table learned from probes, plus the
// flowlet table that pins flows to a hop while packets keep arriving
// within the flowlet gap.
class HulaSwitchState {
  public:
    explicit HulaSwitchState(HulaConfig cfg = {}) : cfg_(cfg) {}

    // path_util must already combine the probe's carried value with the
    // local egress utilization toward from_hop (the data direction).
    // A strictly better path wins; a probe from the current best hop
    // refreshes the entry even when the path got worse.
    bool on_probe(int origin_tor, double path_util, int from_hop);

    int best_next_hop(int dst_tor) const;      // -1 when no probe seen yet
    double best_path_util(int dst_tor) const;  // +inf sentinel when unknown

    // Reuses (and refreshes) the flow's pinned hop inside the flowlet gap,
    // otherwise repins to the current best hop. -1 when no route is known.
    int flowlet_next_hop(std::uint64_t flow_key, int dst_tor, SimTime now);

    const HulaConfig& config() const { return cfg_; }

  private:
    struct Route {
        int next_hop;
        double util;
    };
    struct Flowlet {
        int hop;
        SimTime last_seen;
    };

    HulaConfig cfg_;
    std::map<int, Route> best_;
    std::unordered_map<std::uint64_t, Flowlet> flowlets_;
};

// Where a switch forwards a probe that originated at origin_tor and
// arrived from from_hop: ToR probes fan out over its aggs; an agg relays
// up to its cores and down to its pod's other ToRs; a core crosses to the
// other pods' aggs; an agg hearing a probe from a core delivers it to its
// pod's ToRs; ToRs terminate probes.
std::vector<int> probe_forward_targets(const Topology& topo, int node, int origin_tor,
                                       int from_hop);

} // namespace pcoflow

#endif
