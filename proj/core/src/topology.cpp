// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/topology.h"

#include <stdexcept>

#include "pcoflow/rng.h"

namespace pcoflow {

namespace {
constexpr int kPods = 4;
constexpr int kTorsPerPod = 2;
constexpr int kAggsPerPod = 2;
constexpr int kCores = 4;
} // namespace

int Topology::add_node(NodeKind kind, int pod) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({id, kind, pod});
    out_links_.emplace_back();
    return id;
}

void Topology::add_cable(int a, int b, std::int64_t rate_bps, SimTime propagation) {
    for (auto [s, d] : {std::pair{a, b}, std::pair{b, a}}) {
        int id = static_cast<int>(links_.size());
        links_.push_back({id, s, d, rate_bps, propagation});
        out_links_[s].push_back(id);
    }
}

Topology Topology::fat_tree_k4(int hosts_per_tor, std::int64_t host_rate_bps,
                               std::int64_t fabric_rate_bps, SimTime propagation) {
    if (hosts_per_tor < 1)
        throw std::invalid_argument("fat_tree_k4: hosts_per_tor must be >= 1");
    Topology t;
    t.name_ = "fattree";
    t.host_count_ = kPods * kTorsPerPod * hosts_per_tor;

    for (int h = 0; h < t.host_count_; ++h)
        t.add_node(NodeKind::Host, (h / hosts_per_tor) / kTorsPerPod);
    std::vector<int> tors, aggs, cores;
    for (int i = 0; i < kPods * kTorsPerPod; ++i)
        tors.push_back(t.add_node(NodeKind::Tor, i / kTorsPerPod));
    for (int i = 0; i < kPods * kAggsPerPod; ++i)
        aggs.push_back(t.add_node(NodeKind::Agg, i / kAggsPerPod));
    for (int i = 0; i < kCores; ++i)
        cores.push_back(t.add_node(NodeKind::Core, -1));

    t.tor_of_host_.resize(t.host_count_);
    for (int h = 0; h < t.host_count_; ++h) {
        t.tor_of_host_[h] = tors[h / hosts_per_tor];
        t.add_cable(h, t.tor_of_host_[h], host_rate_bps, propagation);
    }
    for (int p = 0; p < kPods; ++p)
        for (int i = 0; i < kTorsPerPod; ++i)
            for (int j = 0; j < kAggsPerPod; ++j)
                t.add_cable(tors[p * kTorsPerPod + i], aggs[p * kAggsPerPod + j],
                            fabric_rate_bps, propagation);
    // Agg j of each pod reaches cores 2j and 2j+1: inter-pod host pairs see
    // exactly four core-disjoint paths.
    for (int p = 0; p < kPods; ++p)
        for (int j = 0; j < kAggsPerPod; ++j)
            for (int c = 2 * j; c < 2 * j + 2; ++c)
                t.add_cable(aggs[p * kAggsPerPod + j], cores[c], fabric_rate_bps, propagation);
    return t;
}

Topology Topology::big_switch(int host_count, std::int64_t host_rate_bps, SimTime propagation) {
    if (host_count < 2)
        throw std::invalid_argument("big_switch: host_count must be >= 2");
    Topology t;
    t.name_ = "bigswitch";
    t.host_count_ = host_count;
    for (int h = 0; h < host_count; ++h)
        t.add_node(NodeKind::Host, 0);
    int sw = t.add_node(NodeKind::Tor, 0);
    t.tor_of_host_.assign(host_count, sw);
    for (int h = 0; h < host_count; ++h)
        t.add_cable(h, sw, host_rate_bps, propagation);
    return t;
}

int Topology::link_between(int src, int dst) const {
    for (int l : out_links_[src])
        if (links_[l].dst == dst)
            return l;
    return -1;
}

std::vector<int> Topology::neighbors(int node) const {
    std::vector<int> out;
    for (int l : out_links_[node])
        out.push_back(links_[l].dst);
    return out;
}

std::vector<int> Topology::neighbors_of_kind(int node, NodeKind kind) const {
    std::vector<int> out;
    for (int l : out_links_[node])
        if (nodes_[links_[l].dst].kind == kind)
            out.push_back(links_[l].dst);
    return out;
}

std::vector<int> Topology::next_hop_candidates(int node, int dst_host) const {
    if (dst_host < 0 || dst_host >= host_count_)
        throw std::out_of_range("next_hop_candidates: bad destination host");
    if (node == dst_host)
        return {};
    int dst_tor = tor_of_host_[dst_host];
    switch (nodes_[node].kind) {
    case NodeKind::Host:
        return {tor_of_host_[node]};
    case NodeKind::Tor:
        if (node == dst_tor)
            return {dst_host};
        return neighbors_of_kind(node, NodeKind::Agg);
    case NodeKind::Agg:
        if (nodes_[node].pod == nodes_[dst_tor].pod)
            return {dst_tor};
        return neighbors_of_kind(node, NodeKind::Core);
    case NodeKind::Core: {
        std::vector<int> out;
        for (int agg : neighbors_of_kind(node, NodeKind::Agg))
            if (nodes_[agg].pod == nodes_[dst_tor].pod)
                out.push_back(agg);
        return out;
    }
    }
    return {};
}

std::uint64_t flow_hash(std::uint64_t salt, int src_host, int dst_host, int flow_id) {
    std::uint64_t h = RngStream::mix(salt, static_cast<std::uint64_t>(flow_id));
    h = RngStream::mix(h, (static_cast<std::uint64_t>(src_host) << 32) |
                              static_cast<std::uint32_t>(dst_host));
    return h;
}

int ecmp_pick(std::uint64_t hash, const std::vector<int>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("ecmp_pick: no candidates");
    return candidates[hash % candidates.size()];
}

} // namespace pcoflow
