// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/hula.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcoflow {

void LinkUtilEstimator::fold(SimTime now) {
    std::int64_t idx = now / window_;
    if (idx <= window_index_)
        return;
    double window_capacity =
        static_cast<double>(rate_bps_) * (static_cast<double>(window_) / kSecond) / 8.0;
    double sample = std::min(1.0, static_cast<double>(window_bytes_) / window_capacity);
    util_ = (1.0 - gain_) * util_ + gain_ * sample;
    // Idle windows between the last sample and now decay toward zero.
    std::int64_t idle = idx - window_index_ - 1;
    if (idle > 0)
        util_ *= std::pow(1.0 - gain_, static_cast<double>(idle));
    window_index_ = idx;
    window_bytes_ = 0;
}

bool HulaSwitchState::on_probe(int origin_tor, double path_util, int from_hop) {
    auto it = best_.find(origin_tor);
    if (it == best_.end() || path_util < it->second.util || it->second.next_hop == from_hop) {
        best_[origin_tor] = {from_hop, path_util};
        return true;
    }
    return false;
}

int HulaSwitchState::best_next_hop(int dst_tor) const {
    auto it = best_.find(dst_tor);
    return it == best_.end() ? -1 : it->second.next_hop;
}

double HulaSwitchState::best_path_util(int dst_tor) const {
    auto it = best_.find(dst_tor);
    return it == best_.end() ? std::numeric_limits<double>::infinity() : it->second.util;
}

int HulaSwitchState::flowlet_next_hop(std::uint64_t flow_key, int dst_tor, SimTime now) {
    auto it = flowlets_.find(flow_key);
    if (it != flowlets_.end() && now - it->second.last_seen < cfg_.flowlet_gap) {
        it->second.last_seen = now;
        return it->second.hop;
    }
    int hop = best_next_hop(dst_tor);
    if (hop < 0)
        return -1;
    flowlets_[flow_key] = {hop, now};
    return hop;
}

std::vector<int> probe_forward_targets(const Topology& topo, int node, int origin_tor,
                                       int from_hop) {
    std::vector<int> out;
    switch (topo.kind(node)) {
    case NodeKind::Tor:
    case NodeKind::Host:
        break; // probes terminate at ToRs and never reach hosts
    case NodeKind::Agg:
        if (topo.kind(from_hop) == NodeKind::Tor) {
            for (int c : topo.neighbors_of_kind(node, NodeKind::Core))
                out.push_back(c);
            for (int t : topo.neighbors_of_kind(node, NodeKind::Tor))
                if (t != from_hop)
                    out.push_back(t);
        } else {
            for (int t : topo.neighbors_of_kind(node, NodeKind::Tor))
                out.push_back(t);
        }
        break;
    case NodeKind::Core:
        for (int a : topo.neighbors_of_kind(node, NodeKind::Agg))
            if (topo.pod_of(a) != topo.pod_of(origin_tor))
                out.push_back(a);
        break;
    }
    return out;
}

} // namespace pcoflow
