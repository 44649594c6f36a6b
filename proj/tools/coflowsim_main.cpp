// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
// coflowsim: trace generation, coflow ordering, simulation matrix, reports.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pcoflow/charts.h"
#include "pcoflow/matrix.h"
#include "pcoflow/ordering.h"
#include "pcoflow/run_config.h"
#include "pcoflow/simulation.h"
#include "pcoflow/workload.h"

namespace fs = std::filesystem;
using namespace pcoflow;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int do_simulate(const std::string& cfg_path, long long seed_override, const std::string& out_dir) {
    std::vector<RunConfig> configs = load_run_configs(cfg_path);
    if (seed_override >= 0)
        for (RunConfig& c : configs)
            c.seed = static_cast<std::uint64_t>(seed_override);

    MatrixResult result = run_matrix(configs);
    for (std::size_t i = 0; i < result.configs.size(); ++i) {
        const RunReport& r = result.reports[i];
        std::printf("run %zu: %s  avg_cct=%.1fus avg_fct=%.1fus drops=%lld marks=%lld "
                    "retx=%lld reorders=%lld%s\n",
                    i + 1, one_line_config(result.configs[i]).c_str(), r.avg_cct_us, r.avg_fct_us,
                    static_cast<long long>(r.drops), static_cast<long long>(r.ce_marks),
                    static_cast<long long>(r.retransmissions),
                    static_cast<long long>(r.reorder_events),
                    r.conservation_ok ? "" : "  [conservation VIOLATED]");
        if (r.unfinished_coflows > 0)
            std::fprintf(stderr, "warning: run %zu left %d coflows unfinished (excluded from averages)\n",
                         i + 1, r.unfinished_coflows);
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "results.csv", result.results_csv);
    write_file(fs::path(out_dir) / "improvements.csv", result.improvements_csv);
    std::printf("wrote %s and %s\n", (fs::path(out_dir) / "results.csv").c_str(),
                (fs::path(out_dir) / "improvements.csv").c_str());
    return 0;
}

int do_gen_trace(const std::string& preset, int coflows, std::uint64_t seed, int ports,
                 const std::string& out) {
    if (preset != "facebook-like")
        throw std::runtime_error("unknown preset '" + preset + "' (available: facebook-like)");
    TraceGenParams params = facebook_like_preset(coflows, ports);
    Trace trace = generate_trace(params, seed);
    write_trace_file(trace, out);
    std::printf("wrote %s: %d coflows, %lld flows, %lld bytes\n", out.c_str(),
                static_cast<int>(trace.coflows.size()),
                static_cast<long long>(trace.total_flows()),
                static_cast<long long>(trace.total_bytes()));
    return 0;
}

int do_order(const std::string& trace_path) {
    Trace trace = parse_trace_file(trace_path);
    DemandMatrix demand(trace.port_count);
    std::map<int, double> weights;
    for (const Coflow& c : trace.coflows) {
        weights[c.coflow_id] = c.weight;
        for (const Flow& f : c.flows)
            demand.add_flow(f);
    }
    CoflowOrder order = bssi_order(demand, weights);
    nlohmann::ordered_json j;
    j["epoch"] = 0;
    j["order"] = order.ids;
    std::cout << j.dump() << "\n";
    return 0;
}

int do_report(const std::string& in_dir, bool charts) {
    fs::path results = fs::path(in_dir) / "results.csv";
    std::ifstream in(results, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + results.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<ResultRow> rows = parse_results_csv(text);
    if (rows.empty())
        throw std::runtime_error(results.string() + " has no data rows");

    write_file(fs::path(in_dir) / "cct_vs_load.csv", cct_vs_load_series_csv(rows));
    write_file(fs::path(in_dir) / "cct_by_category.csv", cct_by_category_series_csv(rows));
    std::printf("wrote cct_vs_load.csv and cct_by_category.csv in %s\n", in_dir.c_str());
    if (charts) {
        write_file(fs::path(in_dir) / "cct_vs_load.svg", cct_vs_load_svg(rows));
        write_file(fs::path(in_dir) / "cct_by_category.svg", cct_by_category_svg(rows));
        std::printf("wrote cct_vs_load.svg and cct_by_category.svg in %s\n", in_dir.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coflow-aware datacenter network simulator"};
    app.require_subcommand(1);

    std::string cfg_path, out_dir = ".";
    long long seed_override = -1;
    CLI::App* sim = app.add_subcommand("simulate", "run the experiment matrix from a config file");
    sim->add_option("--config", cfg_path, "flat key = value config file")->required();
    sim->add_option("--seed", seed_override, "override the seed of every run");
    sim->add_option("--out", out_dir, "directory for results.csv and improvements.csv");

    std::string preset = "facebook-like", trace_out = "trace.jsonl";
    int coflows = 150, ports = 64;
    std::uint64_t gen_seed = 1;
    CLI::App* gen = app.add_subcommand("gen-trace", "generate a workload trace");
    gen->add_option("--preset", preset, "workload mix preset (facebook-like)");
    gen->add_option("--coflows", coflows, "number of coflows");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--ports", ports, "number of hosts");
    gen->add_option("--out", trace_out, "output path (json lines)");

    std::string trace_in;
    CLI::App* ord = app.add_subcommand("order", "print the coflow serving order for a trace");
    ord->add_option("--trace", trace_in, "trace file (json lines)")->required();

    std::string report_dir;
    bool charts = false;
    CLI::App* rep = app.add_subcommand("report", "derive chart series from results.csv");
    rep->add_option("--in", report_dir, "directory containing results.csv")->required();
    rep->add_flag("--charts", charts, "also emit SVG charts");

    CLI11_PARSE(app, argc, argv);
    try {
        if (sim->parsed())
            return do_simulate(cfg_path, seed_override, out_dir);
        if (gen->parsed())
            return do_gen_trace(preset, coflows, gen_seed, ports, trace_out);
        if (ord->parsed())
            return do_order(trace_in);
        if (rep->parsed())
            return do_report(report_dir, charts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
