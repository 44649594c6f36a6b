// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/workload.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pcoflow/rng.h"

namespace pcoflow {

std::int64_t Coflow::total_bytes() const {
    std::int64_t sum = 0;
    for (const Flow& f : flows)
        sum += f.size_bytes;
    return sum;
}

std::int64_t Coflow::longest_flow_bytes() const {
    std::int64_t longest = 0;
    for (const Flow& f : flows)
        longest = std::max(longest, f.size_bytes);
    return longest;
}

std::size_t Trace::total_flows() const {
    std::size_t n = 0;
    for (const Coflow& c : coflows)
        n += c.flows.size();
    return n;
}

std::int64_t Trace::total_bytes() const {
    std::int64_t sum = 0;
    for (const Coflow& c : coflows)
        sum += c.total_bytes();
    return sum;
}

CoflowCategory categorize(const Coflow& coflow) {
    bool is_short = coflow.longest_flow_bytes() < kShortFlowBytes;
    bool narrow = coflow.flows.size() < static_cast<std::size_t>(kNarrowFlowCount);
    if (is_short)
        return narrow ? CoflowCategory::SN : CoflowCategory::SW;
    return narrow ? CoflowCategory::LN : CoflowCategory::LW;
}

const char* category_name(CoflowCategory c) {
    switch (c) {
    case CoflowCategory::SN: return "SN";
    case CoflowCategory::LN: return "LN";
    case CoflowCategory::SW: return "SW";
    case CoflowCategory::LW: return "LW";
    }
    return "?";
}

TraceGenParams facebook_like_preset(int n_coflows, int port_count, std::uint64_t) {
    TraceGenParams p;
    p.n_coflows = n_coflows;
    p.port_count = port_count;
    return p;
}

namespace {

// Largest-remainder apportionment of n over the four category weights.
std::array<int, 4> category_counts(const TraceGenParams& p) {
    std::array<double, 4> mix = {p.mix_sn, p.mix_ln, p.mix_sw, p.mix_lw};
    double total = mix[0] + mix[1] + mix[2] + mix[3];
    if (total <= 0)
        throw std::invalid_argument("generate_trace: category mix must be positive");
    std::array<int, 4> counts{};
    std::array<double, 4> frac{};
    int assigned = 0;
    for (int i = 0; i < 4; ++i) {
        double exact = p.n_coflows * mix[i] / total;
        counts[i] = static_cast<int>(exact);
        frac[i] = exact - counts[i];
        assigned += counts[i];
    }
    while (assigned < p.n_coflows) {
        int best = 0;
        for (int i = 1; i < 4; ++i)
            if (frac[i] > frac[best])
                best = i;
        ++counts[best];
        frac[best] = -1;
        ++assigned;
    }
    return counts;
}

int sample_width(const TraceGenParams& p, bool narrow, RngStream& rng) {
    if (narrow) {
        int w = 1 + static_cast<int>(rng.exponential(p.narrow_width_mean));
        return std::min(w, kNarrowFlowCount - 1);
    }
    int span = std::max(1, p.max_width - kNarrowFlowCount + 1);
    int extra = static_cast<int>(rng.bounded_pareto(p.wide_width_shape, 1.0, span)) - 1;
    return kNarrowFlowCount + std::min(extra, span - 1);
}

} // namespace

Trace generate_trace(const TraceGenParams& p, std::uint64_t seed) {
    if (p.n_coflows < 1)
        throw std::invalid_argument("generate_trace: n_coflows must be >= 1");
    if (p.port_count < 2)
        throw std::invalid_argument("generate_trace: need at least 2 host ports");
    if (p.mean_interarrival_us <= 0)
        throw std::invalid_argument("generate_trace: mean_interarrival_us must be > 0");
    if (p.min_flow_bytes < 1 || p.min_flow_bytes >= kShortFlowBytes)
        throw std::invalid_argument("generate_trace: min_flow_bytes out of range");

    RngStream rng(seed, "trace-gen");

    auto counts = category_counts(p);
    std::vector<CoflowCategory> labels;
    labels.reserve(p.n_coflows);
    for (int i = 0; i < counts[0]; ++i) labels.push_back(CoflowCategory::SN);
    for (int i = 0; i < counts[1]; ++i) labels.push_back(CoflowCategory::LN);
    for (int i = 0; i < counts[2]; ++i) labels.push_back(CoflowCategory::SW);
    for (int i = 0; i < counts[3]; ++i) labels.push_back(CoflowCategory::LW);
    for (std::size_t i = labels.size(); i > 1; --i)
        std::swap(labels[i - 1], labels[rng.uniform_int(0, static_cast<std::int64_t>(i) - 1)]);

    Trace trace;
    trace.port_count = p.port_count;
    trace.coflows.reserve(p.n_coflows);

    double arrival_us = 0.0;
    int next_flow_id = 1;
    for (int i = 0; i < p.n_coflows; ++i) {
        CoflowCategory cat = labels[i];
        bool narrow = (cat == CoflowCategory::SN || cat == CoflowCategory::LN);
        bool is_short = (cat == CoflowCategory::SN || cat == CoflowCategory::SW);
        int width = sample_width(p, narrow, rng);

        Coflow c;
        c.coflow_id = i + 1;
        c.weight = 1.0;
        c.arrival = micros(static_cast<std::int64_t>(std::llround(arrival_us)));
        double gap = (p.interarrival == InterArrival::Exponential)
                         ? rng.exponential(p.mean_interarrival_us)
                         : p.mean_interarrival_us;
        arrival_us += gap;

        // Mapper->reducer pattern: a few receivers aggregate the coflow.
        int max_reducers = std::max(1, p.port_count / 2);
        int n_reducers = std::clamp(width / 8, 1, std::min(max_reducers, width));
        std::vector<int> reducers;
        while (static_cast<int>(reducers.size()) < n_reducers) {
            int h = static_cast<int>(rng.uniform_int(0, p.port_count - 1));
            if (std::find(reducers.begin(), reducers.end(), h) == reducers.end())
                reducers.push_back(h);
        }

        c.flows.reserve(width);
        int long_index = is_short ? -1 : static_cast<int>(rng.uniform_int(0, width - 1));
        std::int64_t long_bytes = 0;
        if (!is_short)
            long_bytes = static_cast<std::int64_t>(rng.bounded_pareto(
                p.long_size_shape, static_cast<double>(kShortFlowBytes),
                static_cast<double>(p.max_long_flow_bytes)));
        for (int f = 0; f < width; ++f) {
            Flow flow;
            flow.flow_id = next_flow_id++;
            flow.coflow_id = c.coflow_id;
            flow.dst_host = reducers[f % n_reducers];
            do {
                flow.src_host = static_cast<int>(rng.uniform_int(0, p.port_count - 1));
            } while (flow.src_host == flow.dst_host);
            if (f == long_index) {
                flow.size_bytes = long_bytes;
            } else {
                double hi = is_short ? static_cast<double>(kShortFlowBytes - 1)
                                     : static_cast<double>(std::max<std::int64_t>(
                                           long_bytes, p.min_flow_bytes + 1));
                flow.size_bytes = static_cast<std::int64_t>(rng.bounded_pareto(
                    p.short_size_shape, static_cast<double>(p.min_flow_bytes), hi));
            }
            c.flows.push_back(flow);
        }
        trace.coflows.push_back(std::move(c));
    }
    return trace;
}

double offered_load(const Trace& trace, const CapacityModel& capacity) {
    if (trace.coflows.size() < 2)
        return 0.0;
    SimTime makespan = trace.coflows.back().arrival - trace.coflows.front().arrival;
    if (makespan <= 0)
        return 0.0;
    double bps = static_cast<double>(trace.total_bytes()) * 8.0 / to_seconds(makespan);
    return bps / capacity.aggregate_bps();
}

Trace scale_to_load(const Trace& trace, double load, const CapacityModel& capacity) {
    if (!(load > 0.0) || load > 1.0)
        throw std::invalid_argument("scale_to_load: load must be in (0, 1]");
    if (trace.coflows.empty())
        throw std::invalid_argument("scale_to_load: empty trace");

    Trace scaled = trace;
    if (trace.coflows.size() < 2)
        return scaled;
    SimTime first = trace.coflows.front().arrival;
    SimTime makespan = trace.coflows.back().arrival - first;
    if (makespan <= 0)
        return scaled; // simultaneous arrivals: nothing a gap factor can do

    double target_makespan_s =
        static_cast<double>(trace.total_bytes()) * 8.0 / (load * capacity.aggregate_bps());
    double factor = target_makespan_s * kSecond / static_cast<double>(makespan);
    for (Coflow& c : scaled.coflows)
        c.arrival = first + static_cast<SimTime>(std::llround((c.arrival - first) * factor));
    return scaled;
}

Trace parse_trace(std::istream& in, int port_count_hint) {
    Trace trace;
    std::string line;
    int line_no = 0;
    int max_host = -1;
    SimTime prev_arrival = -1;
    std::vector<int> seen_ids;
    int next_flow_id = 1;

    auto fail = [&](const std::string& what) {
        throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("malformed JSON (") + e.what() + ")");
        }
        Coflow c;
        try {
            c.coflow_id = j.at("coflow_id").get<int>();
            c.arrival = micros(j.at("arrival_us").get<std::int64_t>());
            c.weight = j.value("weight", 1.0);
            for (const auto& jf : j.at("flows")) {
                Flow f;
                f.flow_id = next_flow_id++;
                f.coflow_id = c.coflow_id;
                f.src_host = jf.at("src").get<int>();
                f.dst_host = jf.at("dst").get<int>();
                f.size_bytes = jf.at("bytes").get<std::int64_t>();
                c.flows.push_back(f);
            }
        } catch (const nlohmann::json::exception& e) {
            fail(std::string("missing or mistyped field (") + e.what() + ")");
        }
        if (c.coflow_id < 1)
            fail("coflow_id must be >= 1 (0 is reserved)");
        if (std::find(seen_ids.begin(), seen_ids.end(), c.coflow_id) != seen_ids.end())
            fail("duplicate coflow_id " + std::to_string(c.coflow_id));
        seen_ids.push_back(c.coflow_id);
        if (c.arrival < 0)
            fail("negative arrival");
        if (c.arrival < prev_arrival)
            fail("arrival regression (arrivals must be non-decreasing)");
        prev_arrival = c.arrival;
        if (c.weight <= 0)
            fail("weight must be positive");
        if (c.flows.empty())
            fail("coflow has no flows");
        for (const Flow& f : c.flows) {
            if (f.size_bytes <= 0)
                fail("flow bytes must be positive");
            if (f.src_host == f.dst_host)
                fail("flow src == dst");
            if (f.src_host < 0 || f.dst_host < 0)
                fail("negative host id");
            if (port_count_hint > 0 &&
                (f.src_host >= port_count_hint || f.dst_host >= port_count_hint))
                fail("host id out of range for " + std::to_string(port_count_hint) + " ports");
            max_host = std::max({max_host, f.src_host, f.dst_host});
        }
        trace.coflows.push_back(std::move(c));
    }
    trace.port_count = port_count_hint > 0 ? port_count_hint : max_host + 1;
    return trace;
}

Trace parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open trace file: " + path);
    return parse_trace(in);
}

std::string serialize_trace(const Trace& trace) {
    std::ostringstream out;
    for (const Coflow& c : trace.coflows) {
        nlohmann::ordered_json j;
        j["coflow_id"] = c.coflow_id;
        j["arrival_us"] = c.arrival / kMicrosecond;
        j["weight"] = c.weight;
        auto& flows = j["flows"] = nlohmann::ordered_json::array();
        for (const Flow& f : c.flows) {
            nlohmann::ordered_json jf;
            jf["src"] = f.src_host;
            jf["dst"] = f.dst_host;
            jf["bytes"] = f.size_bytes;
            flows.push_back(std::move(jf));
        }
        out << j.dump() << '\n';
    }
    return out.str();
}

void write_trace_file(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write trace file: " + path);
    out << serialize_trace(trace);
}

TraceStats compute_trace_stats(const Trace& trace, int hosts_per_pod) {
    TraceStats s;
    s.coflows = trace.coflows.size();
    for (const Coflow& c : trace.coflows) {
        s.flows += c.flows.size();
        switch (categorize(c)) {
        case CoflowCategory::SN: ++s.count_sn; break;
        case CoflowCategory::LN: ++s.count_ln; break;
        case CoflowCategory::SW: ++s.count_sw; break;
        case CoflowCategory::LW: ++s.count_lw; break;
        }
        for (const Flow& f : c.flows) {
            s.total_bytes += f.size_bytes;
            bool intra = hosts_per_pod <= 0 ||
                         (f.src_host / hosts_per_pod) == (f.dst_host / hosts_per_pod);
            (intra ? s.intra_pod_bytes : s.inter_pod_bytes) += f.size_bytes;
        }
    }
    return s;
}

} // namespace pcoflow
