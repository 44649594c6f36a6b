// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_TOPOLOGY_H
#define PCOFLOW_TOPOLOGY_H

#include <cstdint>
#include <string>
#include <vector>

#include "pcoflow/sim_time.h"

namespace pcoflow {

enum class NodeKind { Host, Tor, Agg, Core };

struct NodeRec {
    int id = -1;
    NodeKind kind = NodeKind::Host;
    int pod = -1; // -1 for cores
};

struct LinkRec {
    int id = -1;
    int src = -1; // node ids; links are directed, cables appear twice
    int dst = -1;
    std::int64_t rate_bps = 0;
    SimTime propagation = 0;
};

// Static description of the fabric: nodes, directed links, and the
// candidate next hops toward any destination host. Queues and link state
// live with the simulation, not here.
class Topology {
  public:
    // Three-tier leaf/spine with 4 pods of 2 ToRs + 2 aggs and 4 cores.
    // hosts_per_tor scales the host count (8 at full scale = 64 hosts).
    static Topology fat_tree_k4(int hosts_per_tor = 8,
                                std::int64_t host_rate_bps = 10'000'000'000,
                                std::int64_t fabric_rate_bps = 40'000'000'000,
                                SimTime propagation = kMicrosecond);

    // One output-queued switch with a bidirectional link per host.
    static Topology big_switch(int host_count = 64,
                               std::int64_t host_rate_bps = 10'000'000'000,
                               SimTime propagation = kMicrosecond);

    const std::vector<NodeRec>& nodes() const { return nodes_; }
    const std::vector<LinkRec>& links() const { return links_; }
    NodeKind kind(int node) const { return nodes_[node].kind; }
    int pod_of(int node) const { return nodes_[node].pod; }

    int host_count() const { return host_count_; }
    int tor_of_host(int host) const { return tor_of_host_[host]; }

    int link_between(int src, int dst) const; // -1 when not adjacent
    const std::vector<int>& out_links(int node) const { return out_links_[node]; }
    std::vector<int> neighbors(int node) const;
    std::vector<int> neighbors_of_kind(int node, NodeKind kind) const;

    // Loop-free candidate next hops from `node` toward `dst_host`
    // (up over the multi-path tiers, down a unique path).
    std::vector<int> next_hop_candidates(int node, int dst_host) const;

    const std::string& name() const { return name_; }

  private:
    int add_node(NodeKind kind, int pod);
    void add_cable(int a, int b, std::int64_t rate_bps, SimTime propagation);

    std::string name_;
    int host_count_ = 0;
    std::vector<NodeRec> nodes_;
    std::vector<LinkRec> links_;
    std::vector<std::vector<int>> out_links_;
    std::vector<int> tor_of_host_;
};

// Deterministic 5-tuple-style flow key hash; the salt pins the hash
// function choice to the run's seed.
std::uint64_t flow_hash(std::uint64_t salt, int src_host, int dst_host, int flow_id);

// candidates[hash mod n]: stable for a flow's lifetime.
int ecmp_pick(std::uint64_t hash, const std::vector<int>& candidates);

} // namespace pcoflow

#endif
