// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/simulation.h"

#include <algorithm>
#include <stdexcept>

#include "pcoflow/band_queue.h"
#include "pcoflow/sp_queue_bank.h"

namespace pcoflow {

namespace {
Topology build_topology(const RunConfig& cfg) {
    if (cfg.topology == "bigswitch")
        return Topology::big_switch(cfg.host_count(), cfg.host_rate_bps);
    return Topology::fat_tree_k4(cfg.hosts_per_tor, cfg.host_rate_bps, cfg.fabric_rate_bps);
}
} // namespace

Trace Simulation::make_trace(const RunConfig& cfg) {
    cfg.validate();
    Trace trace;
    if (!cfg.trace.empty()) {
        trace = parse_trace_file(cfg.trace);
    } else {
        TraceGenParams params = facebook_like_preset(cfg.coflows, cfg.host_count());
        if (cfg.max_flow_bytes > 0)
            params.max_long_flow_bytes =
                std::max(cfg.max_flow_bytes, 2 * kShortFlowBytes); // keep long coflows long
        trace = generate_trace(params, cfg.seed);
    }
    CapacityModel capacity{cfg.host_count(), cfg.host_rate_bps};
    return scale_to_load(trace, cfg.load, capacity);
}

Simulation::Simulation(const RunConfig& cfg, Trace trace)
    : cfg_(cfg), trace_(std::move(trace)), topo_(build_topology(cfg_)),
      red_rng_(cfg_.seed, "red-mark"),
      ecmp_salt_(RngStream(cfg_.seed, "ecmp-hash").u64()) {
    cfg_.validate();
    for (const Coflow& c : trace_.coflows)
        for (const Flow& f : c.flows)
            if (f.src_host >= topo_.host_count() || f.dst_host >= topo_.host_count())
                throw std::invalid_argument("trace uses more hosts than the topology has");

    links_.reserve(topo_.links().size());
    for (const auto& l : topo_.links())
        links_.push_back({make_queue(),
                          LinkUtilEstimator(l.rate_bps, hula_cfg_.probe_interval,
                                            hula_cfg_.util_gain),
                          false});
    hula_.assign(topo_.nodes().size(), HulaSwitchState(hula_cfg_));
    shims_.assign(topo_.host_count(), HostShim(cfg_.bands));
    if (cfg_.ordering == "sincronia")
        coord_ = std::make_unique<Coordinator>(
            topo_.host_count(), [this](const CoflowOrder& order) { on_order(order); });
}

std::unique_ptr<EgressQueue> Simulation::make_queue() {
    if (cfg_.scheduler == "dsred") {
        RedParams red{cfg_.red_min_th, cfg_.red_max_th, cfg_.red_max_prob, cfg_.red_capacity};
        return std::make_unique<SpQueueBank>(cfg_.bands, red, &red_rng_);
    }
    BandQueueConfig bq{cfg_.bands, cfg_.band_capacity, cfg_.ecn_threshold,
                       cfg_.scheduler == "pcoflow-drop" ? BandPolicy::Drop
                                                        : BandPolicy::AdaptiveEcn};
    return std::make_unique<BandQueue>(bq);
}

RunReport Simulation::run() {
    if (ran_)
        throw std::logic_error("Simulation::run: already ran");
    ran_ = true;

    for (const Coflow& c : trace_.coflows) {
        coflow_index_[c.coflow_id] = report_.coflows.size();
        report_.coflows.push_back(
            {c.coflow_id, c.arrival, -1, categorize(c), static_cast<int>(c.flows.size())});
        total_flows_ += static_cast<int>(c.flows.size());
        loop_.schedule(c.arrival, EventKind::CoflowArrival, [this, &c] { start_coflow(c); });
    }
    if (cfg_.lb == "hula")
        for (const NodeRec& n : topo_.nodes())
            if (n.kind == NodeKind::Tor && !topo_.neighbors_of_kind(n.id, NodeKind::Agg).empty())
                loop_.schedule(0, EventKind::ProbeEmission, [this, id = n.id] { emit_probes(id); });
    if (sampler_)
        schedule_sampler();

    report_.events = loop_.run();
    report_.end_time = loop_.now();
    collect();
    finalize_report(report_);
    return std::move(report_);
}

void Simulation::start_coflow(const Coflow& coflow) {
    ++arrived_coflows_;
    open_flows_[coflow.coflow_id] = static_cast<int>(coflow.flows.size());
    for (const Flow& f : coflow.flows) {
        shims_[f.src_host].register_flow(f);
        FlowRt& fr = flows_[f.flow_id];
        fr.flow = f;
        int fid = f.flow_id;

        TransportHooks hooks;
        hooks.now = [this] { return loop_.now(); };
        hooks.emit = [this](Packet pkt) { on_transport_emit(std::move(pkt)); };
        hooks.arm_timer = [this, fid](SimTime delay, std::uint64_t epoch) {
            loop_.schedule(loop_.now() + delay, EventKind::TimerExpiry,
                           [this, fid, epoch] { flows_.at(fid).sender->on_timer(epoch); });
        };
        fr.sender = std::make_unique<DctcpSender>(f, hooks);
        fr.receiver = std::make_unique<DctcpReceiver>(
            f, [this](Packet ack) { on_transport_emit(std::move(ack)); },
            [this, fid] { on_flow_complete(fid); });

        flow_index_[fid] = report_.flows.size();
        report_.flows.push_back({fid, coflow.coflow_id, coflow.arrival, -1, f.size_bytes});
        acct_[fid]; // materialize even for flows that never drop
    }
    if (coord_)
        coord_->on_coflow_arrival(coflow);
    for (const Flow& f : coflow.flows) {
        FlowRt& fr = flows_.at(f.flow_id);
        fr.sender->set_priority(shims_[f.src_host].band_for_flow(f.flow_id));
        fr.sender->start();
    }
}

void Simulation::on_order(const CoflowOrder& order) {
    for (HostShim& shim : shims_)
        shim.apply_order(order);
    for (auto& [fid, fr] : flows_) {
        if (fr.receiver->complete())
            continue; // finished flows are unregistered from their shim
        fr.sender->set_priority(shims_[fr.flow.src_host].band_for_flow(fid));
    }
}

void Simulation::on_transport_emit(Packet pkt) {
    ++acct_[pkt.flow_id].sent;
    enqueue_on(topo_.out_links(pkt.src)[0], pkt);
}

void Simulation::enqueue_on(int link, const Packet& pkt) {
    EnqueueOutcome outcome = links_[link].queue->enqueue(pkt);
    if (!outcome.accepted) {
        ++acct_[pkt.flow_id].dropped;
        return;
    }
    if (!links_[link].busy)
        start_service(link);
}

void Simulation::start_service(int link) {
    LinkRt& rt = links_[link];
    std::optional<Packet> pkt = rt.queue->dequeue();
    rt.busy = true;
    const LinkRec& rec = topo_.links()[link];
    SimTime ser = serialization_time(pkt->size_bytes, rec.rate_bps);
    rt.util.on_transmit(pkt->size_bytes, loop_.now());
    loop_.schedule(loop_.now() + ser, EventKind::LinkFree, [this, link] {
        links_[link].busy = false;
        if (!links_[link].queue->empty())
            start_service(link);
    });
    loop_.schedule(loop_.now() + ser + rec.propagation, EventKind::PacketArrival,
                   [this, link, p = *pkt]() mutable { on_packet_at(topo_.links()[link].dst, link, std::move(p)); });
}

void Simulation::on_packet_at(int node, int in_link, Packet pkt) {
    pkt.arrived_at = loop_.now();
    if (topo_.kind(node) == NodeKind::Host) {
        deliver_to_host(node, pkt);
        return;
    }
    if (pkt.is_probe()) {
        handle_probe(node, in_link, pkt);
        return;
    }
    forward(node, pkt);
}

void Simulation::deliver_to_host(int host, const Packet& pkt) {
    (void)host;
    ++acct_[pkt.flow_id].delivered;
    FlowRt& fr = flows_.at(pkt.flow_id);
    if (pkt.kind == PacketKind::Data) {
        fr.receiver->on_data(pkt);
        return;
    }
    std::int64_t before = fr.sender->snd_una();
    fr.sender->on_ack(pkt);
    std::int64_t delta = fr.sender->snd_una() - before;
    if (coord_ && delta > 0)
        coord_->on_bytes_acked(fr.flow.coflow_id, fr.flow.src_host, fr.flow.dst_host,
                               delta * kMtuBytes);
}

void Simulation::forward(int node, const Packet& pkt) {
    std::vector<int> candidates = topo_.next_hop_candidates(node, pkt.dst);
    int next;
    if (candidates.size() == 1) {
        next = candidates[0];
    } else if (cfg_.lb == "hula") {
        std::uint64_t key = flow_hash(ecmp_salt_, pkt.src, pkt.dst, pkt.flow_id);
        next = hula_[node].flowlet_next_hop(key, topo_.tor_of_host(pkt.dst), loop_.now());
        if (next < 0) { // no probe has painted a route yet
            ++acct_[pkt.flow_id].dropped;
            ++route_drops_;
            return;
        }
    } else {
        next = ecmp_pick(flow_hash(ecmp_salt_, pkt.src, pkt.dst, pkt.flow_id), candidates);
    }
    enqueue_on(topo_.link_between(node, next), pkt);
}

void Simulation::handle_probe(int node, int in_link, const Packet& pkt) {
    ++acct_[0].delivered;
    int origin = pkt.src;
    int from = topo_.links()[in_link].src;
    double local = links_[topo_.link_between(node, from)].util.value(loop_.now());
    double combined = std::max(pkt.probe_util, local);
    hula_[node].on_probe(origin, combined, from);
    double carry = hula_[node].best_path_util(origin);
    for (int target : probe_forward_targets(topo_, node, origin, from)) {
        Packet copy = pkt;
        copy.pkt_id = 0xC000000000000000ull | ++probe_counter_;
        copy.probe_util = carry;
        ++acct_[0].sent;
        enqueue_on(topo_.link_between(node, target), copy);
    }
}

void Simulation::emit_probes(int tor) {
    for (int agg : topo_.neighbors_of_kind(tor, NodeKind::Agg)) {
        Packet p;
        p.pkt_id = 0xC000000000000000ull | ++probe_counter_;
        p.kind = PacketKind::Probe;
        p.flow_id = 0;
        p.coflow_id = kNoCoflow;
        p.src = tor;
        p.dst = -1;
        p.size_bytes = kControlBytes;
        p.priority = 1;
        p.ecn_capable = false;
        p.probe_util = 0.0;
        ++acct_[0].sent;
        enqueue_on(topo_.link_between(tor, agg), p);
    }
    bool drained = arrived_coflows_ == static_cast<int>(trace_.coflows.size()) &&
                   completed_flows_ == total_flows_;
    if (!drained)
        loop_.schedule(loop_.now() + hula_cfg_.probe_interval, EventKind::ProbeEmission,
                       [this, tor] { emit_probes(tor); });
}

void Simulation::on_flow_complete(int flow_id) {
    FlowRt& fr = flows_.at(flow_id);
    report_.flows[flow_index_.at(flow_id)].finish = loop_.now();
    shims_[fr.flow.src_host].unregister_flow(flow_id);
    ++completed_flows_;

    int coflow_id = fr.flow.coflow_id;
    int left = --open_flows_.at(coflow_id);
    if (left == 0) {
        report_.coflows[coflow_index_.at(coflow_id)].finish = loop_.now();
        if (coord_)
            coord_->on_coflow_departure(coflow_id);
    } else if (coord_) {
        coord_->on_flow_completion(coflow_id);
    }
}

void Simulation::sample_every(SimTime interval, std::function<void()> fn) {
    if (ran_)
        throw std::logic_error("sample_every: set before run()");
    if (interval <= 0)
        throw std::invalid_argument("sample_every: interval must be positive");
    sample_interval_ = interval;
    sampler_ = std::move(fn);
}

void Simulation::schedule_sampler() {
    loop_.schedule(loop_.now() + sample_interval_, EventKind::TimerExpiry, [this] {
        if (completed_flows_ >= total_flows_)
            return;
        sampler_();
        schedule_sampler();
    });
}

int Simulation::queue_len_between(int from_node, int to_node) const {
    int link = topo_.link_between(from_node, to_node);
    if (link < 0)
        throw std::invalid_argument("queue_len_between: nodes not adjacent");
    return static_cast<int>(links_[link].queue->size());
}

void Simulation::collect() {
    for (auto& [fid, fr] : flows_) {
        (void)fid;
        report_.retransmissions += fr.sender->retransmissions();
        report_.reorder_events += fr.receiver->reorder_events();
    }
    std::int64_t queue_drops = 0;
    for (LinkRt& l : links_) {
        queue_drops += l.queue->counters().dropped;
        report_.ce_marks += l.queue->counters().ce_marks;
        while (std::optional<Packet> p = l.queue->dequeue()) // leftovers, if any
            ++acct_[p->flow_id].residual;
    }
    report_.drops = queue_drops + route_drops_;
    report_.conservation = acct_;
}

} // namespace pcoflow
