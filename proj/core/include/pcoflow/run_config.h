// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_RUN_CONFIG_H
#define PCOFLOW_RUN_CONFIG_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcoflow {

// One simulation run. Produced from flat `key = value` config text; the
// keys scheduler, ordering, lb, topology, load and seed accept
// comma-separated lists which expand into a cartesian run matrix.
struct RunConfig {
    std::string scheduler = "pcoflow-ecn"; // pcoflow-ecn | pcoflow-drop | dsred
    std::string ordering = "sincronia";    // sincronia | none
    std::string lb = "ecmp";               // ecmp | hula
    std::string topology = "fattree";      // fattree | bigswitch
    double load = 0.9;                     // offered fraction of fabric capacity
    std::uint64_t seed = 1;

    std::string trace;     // workload file; empty -> generate
    int coflows = 30;      // generator: coflow count
    int hosts = 0;         // bigswitch size (0 -> 64)
    int hosts_per_tor = 8; // fattree scale (64 hosts at 8)
    std::int64_t max_flow_bytes = 0; // generator size cap (0 -> preset default)

    std::int64_t host_rate_bps = 10'000'000'000;
    std::int64_t fabric_rate_bps = 40'000'000'000;

    int bands = 8;
    int band_capacity = 500;
    int ecn_threshold = 200;
    int red_min_th = 200;
    int red_max_th = 400;
    double red_max_prob = 1.0;
    int red_capacity = 500;

    int host_count() const; // resolved per topology
    void validate() const;  // throws std::invalid_argument on bad values
};

// Parses config text and expands list-valued keys into the run matrix.
// Unknown keys, malformed lines and invalid values all throw.
std::vector<RunConfig> parse_run_configs(std::istream& in);
std::vector<RunConfig> parse_run_configs_text(const std::string& text);
std::vector<RunConfig> load_run_configs(const std::string& path);

} // namespace pcoflow

#endif
