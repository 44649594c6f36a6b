// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_METRICS_H
#define PCOFLOW_METRICS_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcoflow/event_loop.h"
#include "pcoflow/run_config.h"
#include "pcoflow/sim_time.h"
#include "pcoflow/workload.h"

namespace pcoflow {

struct FlowRecord {
    int flow_id = 0;
    int coflow_id = 0;
    SimTime arrival = 0;
    SimTime finish = -1; // last byte delivered; -1 while unfinished
    std::int64_t bytes = 0;

    bool finished() const { return finish >= 0; }
    SimTime fct() const { return finish - arrival; }
};

struct CoflowRecord {
    int coflow_id = 0;
    SimTime arrival = 0;
    SimTime finish = -1; // latest flow finish; -1 while any flow is open
    CoflowCategory category = CoflowCategory::SN;
    int flow_count = 0;

    bool finished() const { return finish >= 0; }
    SimTime cct() const { return finish - arrival; }
};

// sent = delivered + dropped + residual, tracked per flow id (0 = probes
// and other control born in the fabric) and in total.
struct ConservationEntry {
    std::int64_t sent = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped = 0;
    std::int64_t residual = 0;

    bool balanced() const { return sent == delivered + dropped + residual; }
};

struct RunReport {
    std::vector<FlowRecord> flows;
    std::vector<CoflowRecord> coflows;
    int unfinished_coflows = 0;

    double avg_cct_us = 0.0;
    double avg_fct_us = 0.0;
    std::array<double, 4> category_cct_us{}; // indexed by CoflowCategory
    std::array<int, 4> category_counts{};

    std::int64_t drops = 0;
    std::int64_t ce_marks = 0;
    std::int64_t retransmissions = 0;
    std::int64_t reorder_events = 0;

    std::map<int, ConservationEntry> conservation; // by flow id
    ConservationEntry totals;
    bool conservation_ok = false;

    EventLoop::Stats events;
    SimTime end_time = 0;
};

// max(finish) - arrival; callers exclude unfinished coflows themselves.
SimTime compute_cct(const Coflow& coflow, const std::vector<SimTime>& finish_times);

// Fills the averages, category breakdown and conservation verdict from the
// raw per-flow/per-coflow lists. Unfinished coflows are counted and left
// out of every average.
void finalize_report(RunReport& report);

extern const char* kResultsCsvHeader; // fixed column order, no newline

std::string csv_row(int run_id, const RunConfig& cfg, const RunReport& report);

// (base - other) / base, in percent; positive means `other` improved.
double improvement_pct(double base, double other);

} // namespace pcoflow

#endif
