// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/metrics.h"

#include <cstdio>
#include <stdexcept>

namespace pcoflow {

SimTime compute_cct(const Coflow& coflow, const std::vector<SimTime>& finish_times) {
    if (finish_times.empty())
        throw std::invalid_argument("compute_cct: no finish times");
    SimTime last = finish_times.front();
    for (SimTime t : finish_times) {
        if (t < coflow.arrival)
            throw std::invalid_argument("compute_cct: finish before arrival");
        last = std::max(last, t);
    }
    return last - coflow.arrival;
}

void finalize_report(RunReport& report) {
    double cct_sum = 0.0;
    int cct_n = 0;
    report.category_cct_us.fill(0.0);
    report.category_counts.fill(0);
    report.unfinished_coflows = 0;
    for (const CoflowRecord& c : report.coflows) {
        if (!c.finished()) {
            ++report.unfinished_coflows;
            continue;
        }
        double us = to_micros(c.cct());
        cct_sum += us;
        ++cct_n;
        int cat = static_cast<int>(c.category);
        report.category_cct_us[cat] += us;
        ++report.category_counts[cat];
    }
    report.avg_cct_us = cct_n ? cct_sum / cct_n : 0.0;
    for (int cat = 0; cat < 4; ++cat)
        if (report.category_counts[cat])
            report.category_cct_us[cat] /= report.category_counts[cat];

    double fct_sum = 0.0;
    int fct_n = 0;
    for (const FlowRecord& f : report.flows) {
        if (!f.finished())
            continue;
        fct_sum += to_micros(f.fct());
        ++fct_n;
    }
    report.avg_fct_us = fct_n ? fct_sum / fct_n : 0.0;

    report.totals = {};
    report.conservation_ok = true;
    for (const auto& [flow_id, entry] : report.conservation) {
        (void)flow_id;
        report.totals.sent += entry.sent;
        report.totals.delivered += entry.delivered;
        report.totals.dropped += entry.dropped;
        report.totals.residual += entry.residual;
        if (!entry.balanced())
            report.conservation_ok = false;
    }
    if (!report.totals.balanced())
        report.conservation_ok = false;
}

const char* kResultsCsvHeader =
    "run_id,scheduler,ordering,lb,topology,load,seed,avg_cct_us,avg_fct_us,"
    "cct_sn_us,cct_ln_us,cct_sw_us,cct_lw_us,drops,ce_marks,retransmissions,"
    "reorder_events";

std::string csv_row(int run_id, const RunConfig& cfg, const RunReport& report) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%d,%s,%s,%s,%s,%.2f,%llu,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%lld,%lld,%lld,%lld",
                  run_id, cfg.scheduler.c_str(), cfg.ordering.c_str(), cfg.lb.c_str(),
                  cfg.topology.c_str(), cfg.load, static_cast<unsigned long long>(cfg.seed),
                  report.avg_cct_us, report.avg_fct_us,
                  report.category_cct_us[static_cast<int>(CoflowCategory::SN)],
                  report.category_cct_us[static_cast<int>(CoflowCategory::LN)],
                  report.category_cct_us[static_cast<int>(CoflowCategory::SW)],
                  report.category_cct_us[static_cast<int>(CoflowCategory::LW)],
                  static_cast<long long>(report.drops), static_cast<long long>(report.ce_marks),
                  static_cast<long long>(report.retransmissions),
                  static_cast<long long>(report.reorder_events));
    return buf;
}

double improvement_pct(double base, double other) {
    if (base == 0.0)
        return 0.0;
    return (base - other) / base * 100.0;
}

} // namespace pcoflow
