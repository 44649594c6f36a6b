// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_CHARTS_H
#define PCOFLOW_CHARTS_H

#include <cstdint>
#include <string>
#include <vector>

namespace pcoflow {

// One results.csv line, parsed back for reporting.
struct ResultRow {
    int run_id = 0;
    std::string scheduler, ordering, lb, topology;
    double load = 0.0;
    std::uint64_t seed = 0;
    double avg_cct_us = 0.0, avg_fct_us = 0.0;
    double cct_sn_us = 0.0, cct_ln_us = 0.0, cct_sw_us = 0.0, cct_lw_us = 0.0;
    long long drops = 0, ce_marks = 0, retransmissions = 0, reorder_events = 0;

    std::string series() const { return scheduler + "+" + ordering + "+" + lb; }
};

// Validates the header and every field; throws on malformed input.
std::vector<ResultRow> parse_results_csv(const std::string& text);

// Seed-averaged series: avg CCT against load, one series per
// (scheduler, ordering, lb). Header: series,load,avg_cct_us,runs
std::string cct_vs_load_series_csv(const std::vector<ResultRow>& rows);

// Seed-averaged per-category bars, four per series.
// Header: series,category,avg_cct_us,runs
std::string cct_by_category_series_csv(const std::vector<ResultRow>& rows);

// Hand-rolled single-root SVG documents (well-formed XML).
std::string cct_vs_load_svg(const std::vector<ResultRow>& rows);
std::string cct_by_category_svg(const std::vector<ResultRow>& rows);

} // namespace pcoflow

#endif
