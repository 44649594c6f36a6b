// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_WORKLOAD_H
#define PCOFLOW_WORKLOAD_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcoflow/sim_time.h"

namespace pcoflow {

struct Flow {
    int flow_id = 0;
    int coflow_id = 0;
    int src_host = 0;
    int dst_host = 0;
    std::int64_t size_bytes = 0;
};

struct Coflow {
    int coflow_id = 0;
    SimTime arrival = 0;
    double weight = 1.0;
    std::vector<Flow> flows;

    std::int64_t total_bytes() const;
    std::int64_t longest_flow_bytes() const;
};

struct Trace {
    std::vector<Coflow> coflows; // sorted by arrival
    int port_count = 0;          // number of host NIC ports

    std::size_t total_flows() const;
    std::int64_t total_bytes() const;
};

// Short: longest flow under 5 MB. Narrow: fewer than 50 flows.
enum class CoflowCategory { SN, LN, SW, LW };

constexpr std::int64_t kShortFlowBytes = 5ll * 1024 * 1024;
constexpr int kNarrowFlowCount = 50;

CoflowCategory categorize(const Coflow& coflow);
const char* category_name(CoflowCategory c);

enum class InterArrival { Exponential, Fixed };

// Parametric coflow sampler. Heavy-tailed flow sizes, a mix of narrow and
// wide coflows, mapper->reducer endpoint pattern. Category proportions are
// realized exactly per trace (largest-remainder counts, shuffled).
struct TraceGenParams {
    int n_coflows = 150;
    int port_count = 64;
    double mean_interarrival_us = 4000.0;
    InterArrival interarrival = InterArrival::Exponential;

    // SN / LN / SW / LW mix by coflow count (normalized internally).
    double mix_sn = 0.60;
    double mix_ln = 0.25;
    double mix_sw = 0.08;
    double mix_lw = 0.07;

    // Widths. Narrow: 1 + exp(mean) capped below 50. Wide: bounded Pareto.
    double narrow_width_mean = 4.0;
    int max_width = 150;
    double wide_width_shape = 2.0;

    // Flow sizes (bytes). Short flows: bounded Pareto below 5 MB. Long
    // coflows get one flow drawn from [5 MB, max_long_flow_bytes].
    std::int64_t min_flow_bytes = 20 * 1024;
    double short_size_shape = 1.2;
    std::int64_t max_long_flow_bytes = 1ll * 1024 * 1024 * 1024;
    double long_size_shape = 1.05;
};

TraceGenParams facebook_like_preset(int n_coflows, int port_count, std::uint64_t /*unused*/ = 0);

Trace generate_trace(const TraceGenParams& params, std::uint64_t seed);

// Offered-load model: bytes per second over the sum of all host access links.
struct CapacityModel {
    int host_count = 64;
    std::int64_t access_rate_bps = 10'000'000'000ll;

    double aggregate_bps() const { return static_cast<double>(host_count) * access_rate_bps; }
};

// Rescales inter-arrival gaps by one factor so offered load equals `load`.
// Flow contents and relative arrival order are untouched.
Trace scale_to_load(const Trace& trace, double load, const CapacityModel& capacity);

double offered_load(const Trace& trace, const CapacityModel& capacity);

// JSON-lines trace files, one coflow per line:
//   {"coflow_id":1,"arrival_us":0,"weight":1.0,"flows":[{"src":0,"dst":1,"bytes":1048576}]}
Trace parse_trace(std::istream& in, int port_count_hint = 0);
Trace parse_trace_file(const std::string& path);
std::string serialize_trace(const Trace& trace);
void write_trace_file(const Trace& trace, const std::string& path);

struct TraceStats {
    std::size_t coflows = 0;
    std::size_t flows = 0;
    std::int64_t total_bytes = 0;
    std::int64_t intra_pod_bytes = 0;
    std::int64_t inter_pod_bytes = 0;
    std::size_t count_sn = 0, count_ln = 0, count_sw = 0, count_lw = 0;
};

// Pod membership follows the fat-tree pod of the endpoint's ToR; callers
// pass hosts_per_pod (16 at full scale: 2 ToRs x 8 hosts).
TraceStats compute_trace_stats(const Trace& trace, int hosts_per_pod);

} // namespace pcoflow

#endif
