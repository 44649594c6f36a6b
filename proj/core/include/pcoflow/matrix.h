// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_MATRIX_H
#define PCOFLOW_MATRIX_H

#include <string>
#include <vector>

#include "pcoflow/metrics.h"
#include "pcoflow/run_config.h"

namespace pcoflow {

struct MatrixResult {
    std::vector<RunConfig> configs;
    std::vector<RunReport> reports; // same order as configs
    std::string results_csv;        // fixed header + one row per run
    std::string improvements_csv;   // scheduler pairs at matched seeds
};

// Runs every config sequentially (run_id = 1-based position). A failing
// run aborts the whole matrix with the offending config in the message.
MatrixResult run_matrix(const std::vector<RunConfig>& configs);

// Scheduler-pair improvements recomputed from CSV-shaped rows: pairs are
// compared per seed at equal (ordering, lb, topology, load), then averaged.
// The baseline of a pair is whichever comes first in
// {dsred, pcoflow-drop, pcoflow-ecn}.
extern const char* kImprovementsCsvHeader;

std::string one_line_config(const RunConfig& cfg); // for logs and errors

} // namespace pcoflow

#endif
