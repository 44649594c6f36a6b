// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_SIMULATION_H
#define PCOFLOW_SIMULATION_H

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "pcoflow/dctcp.h"
#include "pcoflow/egress_queue.h"
#include "pcoflow/event_loop.h"
#include "pcoflow/hula.h"
#include "pcoflow/metrics.h"
#include "pcoflow/ordering.h"
#include "pcoflow/rng.h"
#include "pcoflow/run_config.h"
#include "pcoflow/topology.h"
#include "pcoflow/workload.h"

namespace pcoflow {

// One end-to-end run: the topology with an egress queue per directed link,
// transport endpoints per flow, the coflow-order coordinator, and either
// hashed or probe-driven multipath selection. Deterministic for a given
// (config, trace) pair; runs until the workload drains.
class Simulation {
  public:
    Simulation(const RunConfig& cfg, Trace trace);

    // Loads cfg.trace or generates a workload from the generator keys,
    // then rescales arrivals to the requested offered load.
    static Trace make_trace(const RunConfig& cfg);

    RunReport run();

    const Topology& topology() const { return topo_; }
    SimTime now() const { return loop_.now(); }
    int queue_len_between(int from_node, int to_node) const;

    // Calls fn every `interval` of simulated time until the workload
    // finishes; must be set before run().
    void sample_every(SimTime interval, std::function<void()> fn);

  private:
    struct LinkRt {
        std::unique_ptr<EgressQueue> queue;
        LinkUtilEstimator util;
        bool busy = false;
    };
    struct FlowRt {
        Flow flow;
        std::unique_ptr<DctcpSender> sender;
        std::unique_ptr<DctcpReceiver> receiver;
    };

    std::unique_ptr<EgressQueue> make_queue();
    void start_coflow(const Coflow& coflow);
    void on_order(const CoflowOrder& order);
    void on_transport_emit(Packet pkt);
    void enqueue_on(int link, const Packet& pkt);
    void start_service(int link);
    void on_packet_at(int node, int in_link, Packet pkt);
    void deliver_to_host(int host, const Packet& pkt);
    void forward(int node, const Packet& pkt);
    void handle_probe(int node, int in_link, const Packet& pkt);
    void emit_probes(int tor);
    void on_flow_complete(int flow_id);
    void schedule_sampler();
    void collect();

    RunConfig cfg_;
    Trace trace_;
    Topology topo_;
    EventLoop loop_;
    HulaConfig hula_cfg_;
    RngStream red_rng_;
    std::uint64_t ecmp_salt_;

    std::vector<LinkRt> links_;
    std::vector<HulaSwitchState> hula_;
    std::vector<HostShim> shims_;
    std::unique_ptr<Coordinator> coord_;

    std::map<int, FlowRt> flows_;
    std::map<int, std::size_t> flow_index_;   // flow id -> report_.flows slot
    std::map<int, std::size_t> coflow_index_; // coflow id -> report_.coflows slot
    std::map<int, int> open_flows_;           // per coflow
    std::map<int, ConservationEntry> acct_;

    int arrived_coflows_ = 0;
    int completed_flows_ = 0;
    int total_flows_ = 0;
    std::int64_t route_drops_ = 0;
    std::uint64_t probe_counter_ = 0;
    bool ran_ = false;

    SimTime sample_interval_ = 0;
    std::function<void()> sampler_;

    RunReport report_;
};

} // namespace pcoflow

#endif
