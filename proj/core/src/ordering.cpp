// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/ordering.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pcoflow {

DemandMatrix::DemandMatrix(int host_count) : hosts_(host_count) {
    if (host_count < 1)
        throw std::invalid_argument("DemandMatrix: host_count must be >= 1");
}

void DemandMatrix::add_flow(const Flow& f) {
    assert(f.src_host >= 0 && f.src_host < hosts_);
    assert(f.dst_host >= 0 && f.dst_host < hosts_);
    auto [it, fresh] = rows_.try_emplace(f.coflow_id);
    if (fresh)
        it->second.assign(port_count(), 0);
    it->second[egress_port(f.src_host)] += f.size_bytes;
    it->second[ingress_port(f.dst_host)] += f.size_bytes;
}

void DemandMatrix::on_bytes_acked(int coflow_id, int src_host, int dst_host,
                                  std::int64_t bytes) {
    auto it = rows_.find(coflow_id);
    if (it == rows_.end())
        return;
    auto shave = [&](int port) {
        it->second[port] = std::max<std::int64_t>(0, it->second[port] - bytes);
    };
    shave(egress_port(src_host));
    shave(ingress_port(dst_host));
}

void DemandMatrix::remove_coflow(int coflow_id) { rows_.erase(coflow_id); }

std::int64_t DemandMatrix::remaining(int coflow_id, int port) const {
    auto it = rows_.find(coflow_id);
    if (it == rows_.end())
        return 0;
    assert(port >= 0 && port < port_count());
    return it->second[port];
}

std::int64_t DemandMatrix::coflow_total(int coflow_id) const {
    auto it = rows_.find(coflow_id);
    if (it == rows_.end())
        return 0;
    std::int64_t sum = 0;
    for (std::int64_t v : it->second)
        sum += v;
    return sum;
}

std::vector<int> DemandMatrix::active_coflows() const {
    std::vector<int> out;
    for (const auto& [id, row] : rows_)
        if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v > 0; }))
            out.push_back(id);
    return out;
}

int CoflowOrder::position_of(int coflow_id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == coflow_id)
            return static_cast<int>(i) + 1;
    return 0;
}

int bottleneck_port(const DemandMatrix& d, const std::set<int>& among) {
    int best = -1;
    std::int64_t best_sum = 0;
    for (int q = 0; q < d.port_count(); ++q) {
        std::int64_t sum = 0;
        for (const auto& [id, row] : d.rows()) {
            if (!among.empty() && !among.count(id))
                continue;
            sum += row[q];
        }
        if (sum > best_sum) {
            best_sum = sum;
            best = q;
        }
    }
    return best;
}

CoflowOrder bssi_order(const DemandMatrix& d, const std::map<int, double>& weights) {
    std::set<int> unordered;
    std::map<int, double> w;
    for (const auto& [id, row] : d.rows()) {
        unordered.insert(id);
        auto it = weights.find(id);
        w[id] = it != weights.end() ? it->second : 1.0;
    }

    CoflowOrder order;
    order.ids.assign(unordered.size(), 0);
    std::size_t next_back = unordered.size();

    while (!unordered.empty()) {
        int b = bottleneck_port(d, unordered);
        if (b < 0) {
            // Nothing left to drain: ascending ids take the front slots.
            std::size_t i = 0;
            for (int id : unordered)
                order.ids[i++] = id;
            break;
        }
        int pick = -1;
        double pick_ratio = 0.0;
        for (int id : unordered) {
            std::int64_t rem = d.remaining(id, b);
            if (rem <= 0)
                continue;
            double ratio = w[id] / static_cast<double>(rem);
            if (pick < 0 || ratio < pick_ratio) {
                pick = id;
                pick_ratio = ratio;
            }
        }
        assert(pick >= 0);
        order.ids[--next_back] = pick;
        unordered.erase(pick);
        std::int64_t pick_rem = d.remaining(pick, b);
        for (int id : unordered) {
            std::int64_t rem = d.remaining(id, b);
            if (rem > 0)
                w[id] -= w[pick] * static_cast<double>(rem) / static_cast<double>(pick_rem);
        }
    }
    return order;
}

int map_order_to_priority(int position, int num_bands) {
    assert(position >= 1);
    return std::min(position, num_bands);
}

Coordinator::Coordinator(int host_count, std::function<void(const CoflowOrder&)> broadcast)
    : demand_(host_count), broadcast_(std::move(broadcast)) {}

void Coordinator::on_coflow_arrival(const Coflow& coflow) {
    for (const Flow& f : coflow.flows)
        demand_.add_flow(f);
    weights_[coflow.coflow_id] = coflow.weight;
    recompute();
}

void Coordinator::on_bytes_acked(int coflow_id, int src_host, int dst_host,
                                 std::int64_t bytes) {
    demand_.on_bytes_acked(coflow_id, src_host, dst_host, bytes);
}

void Coordinator::on_flow_completion(int coflow_id) {
    (void)coflow_id;
    recompute();
}

void Coordinator::on_coflow_departure(int coflow_id) {
    demand_.remove_coflow(coflow_id);
    weights_.erase(coflow_id);
    recompute();
}

void Coordinator::recompute() {
    CoflowOrder order = bssi_order(demand_, weights_);
    order.epoch = ++epoch_;
    if (broadcast_)
        broadcast_(order);
}

void HostShim::register_flow(const Flow& f) { flow_to_coflow_[f.flow_id] = f.coflow_id; }

void HostShim::unregister_flow(int flow_id) { flow_to_coflow_.erase(flow_id); }

void HostShim::apply_order(const CoflowOrder& order) {
    if (order.epoch >= order_.epoch)
        order_ = order;
}

int HostShim::band_for_coflow(int coflow_id) const {
    int pos = order_.position_of(coflow_id);
    if (pos == 0)
        return num_bands_; // not (yet) ordered: least urgent
    return map_order_to_priority(pos, num_bands_);
}

int HostShim::band_for_flow(int flow_id) const {
    auto it = flow_to_coflow_.find(flow_id);
    if (it == flow_to_coflow_.end())
        throw std::invalid_argument("HostShim: unknown flow " + std::to_string(flow_id));
    return band_for_coflow(it->second);
}

void HostShim::tag(Packet& pkt) const {
    auto it = flow_to_coflow_.find(pkt.flow_id);
    if (it == flow_to_coflow_.end())
        throw std::invalid_argument("HostShim: unknown flow " + std::to_string(pkt.flow_id));
    pkt.coflow_id = it->second;
    pkt.priority = band_for_coflow(it->second);
}

} // namespace pcoflow
