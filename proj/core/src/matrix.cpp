// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/matrix.h"

#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

#include "pcoflow/simulation.h"

namespace pcoflow {

const char* kImprovementsCsvHeader =
    "base_scheduler,scheduler,ordering,lb,topology,load,seeds,"
    "cct_improvement_pct,fct_improvement_pct";

std::string one_line_config(const RunConfig& cfg) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "scheduler=%s ordering=%s lb=%s topology=%s load=%.2f seed=%llu",
                  cfg.scheduler.c_str(), cfg.ordering.c_str(), cfg.lb.c_str(),
                  cfg.topology.c_str(), cfg.load, static_cast<unsigned long long>(cfg.seed));
    return buf;
}

namespace {

int scheduler_rank(const std::string& s) {
    if (s == "dsred")
        return 0;
    if (s == "pcoflow-drop")
        return 1;
    return 2; // pcoflow-ecn
}

std::string improvements_table(const std::vector<RunConfig>& configs,
                               const std::vector<RunReport>& reports) {
    // (ordering, lb, topology, load) -> scheduler -> seed -> metrics
    using GroupKey = std::tuple<std::string, std::string, std::string, double>;
    std::map<GroupKey, std::map<std::string, std::map<std::uint64_t, std::pair<double, double>>>>
        groups;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const RunConfig& c = configs[i];
        groups[{c.ordering, c.lb, c.topology, c.load}][c.scheduler][c.seed] = {
            reports[i].avg_cct_us, reports[i].avg_fct_us};
    }

    std::string out = kImprovementsCsvHeader;
    out += '\n';
    for (const auto& [key, by_scheduler] : groups) {
        for (auto base_it = by_scheduler.begin(); base_it != by_scheduler.end(); ++base_it) {
            for (auto other_it = by_scheduler.begin(); other_it != by_scheduler.end(); ++other_it) {
                if (scheduler_rank(base_it->first) >= scheduler_rank(other_it->first))
                    continue;
                double cct_sum = 0.0, fct_sum = 0.0;
                int n = 0;
                for (const auto& [seed, base_m] : base_it->second) {
                    auto match = other_it->second.find(seed);
                    if (match == other_it->second.end())
                        continue;
                    cct_sum += improvement_pct(base_m.first, match->second.first);
                    fct_sum += improvement_pct(base_m.second, match->second.second);
                    ++n;
                }
                if (n == 0)
                    continue;
                char buf[256];
                std::snprintf(buf, sizeof buf, "%s,%s,%s,%s,%s,%.2f,%d,%.3f,%.3f\n",
                              base_it->first.c_str(), other_it->first.c_str(),
                              std::get<0>(key).c_str(), std::get<1>(key).c_str(),
                              std::get<2>(key).c_str(), std::get<3>(key), n, cct_sum / n,
                              fct_sum / n);
                out += buf;
            }
        }
    }
    return out;
}

} // namespace

MatrixResult run_matrix(const std::vector<RunConfig>& configs) {
    if (configs.empty())
        throw std::invalid_argument("run_matrix: no configs");
    MatrixResult result;
    result.configs = configs;
    result.results_csv = kResultsCsvHeader;
    result.results_csv += '\n';
    for (std::size_t i = 0; i < configs.size(); ++i) {
        try {
            Simulation sim(configs[i], Simulation::make_trace(configs[i]));
            result.reports.push_back(sim.run());
        } catch (const std::exception& e) {
            throw std::runtime_error("run " + std::to_string(i + 1) + " (" +
                                     one_line_config(configs[i]) + ") failed: " + e.what());
        }
        result.results_csv += csv_row(static_cast<int>(i + 1), configs[i], result.reports[i]);
        result.results_csv += '\n';
    }
    result.improvements_csv = improvements_table(configs, result.reports);
    return result;
}

} // namespace pcoflow
