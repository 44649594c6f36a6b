// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>
#include <string>

#include "pcoflow/workload.h"

using namespace pcoflow;

namespace {

Coflow make_coflow(int id, SimTime arrival, std::vector<std::int64_t> sizes, int width_override = -1) {
    Coflow c;
    c.coflow_id = id;
    c.arrival = arrival;
    int n = width_override > 0 ? width_override : static_cast<int>(sizes.size());
    for (int i = 0; i < n; ++i) {
        Flow f;
        f.flow_id = id * 1000 + i;
        f.coflow_id = id;
        f.src_host = i % 8;
        f.dst_host = 8 + (i % 8);
        f.size_bytes = sizes[i % sizes.size()];
        c.flows.push_back(f);
    }
    return c;
}

} // namespace

TEST_CASE("categorization thresholds") {
    CHECK(categorize(make_coflow(1, 0, {4 * 1024 * 1024}, 10)) == CoflowCategory::SN);
    CHECK(categorize(make_coflow(2, 0, {6 * 1024 * 1024}, 60)) == CoflowCategory::LW);
    CHECK(categorize(make_coflow(3, 0, {4 * 1024 * 1024}, 60)) == CoflowCategory::SW);
    CHECK(categorize(make_coflow(4, 0, {6 * 1024 * 1024}, 10)) == CoflowCategory::LN);
    // Boundaries: "short" is strictly below 5 MB; "narrow" strictly below 50 flows.
    CHECK(categorize(make_coflow(5, 0, {5ll * 1024 * 1024}, 10)) == CoflowCategory::LN);
    CHECK(categorize(make_coflow(6, 0, {5ll * 1024 * 1024 - 1}, 10)) == CoflowCategory::SN);
    CHECK(categorize(make_coflow(7, 0, {1024}, 50)) == CoflowCategory::SW);
    CHECK(categorize(make_coflow(8, 0, {1024}, 49)) == CoflowCategory::SN);
}

TEST_CASE("generated trace honours count, hosts, ordering and the category mix") {
    TraceGenParams params = facebook_like_preset(150, 64);
    Trace t = generate_trace(params, 42);
    CHECK(t.coflows.size() == 150);
    CHECK(t.port_count == 64);

    SimTime prev = -1;
    std::set<int> ids;
    bool hosts_ok = true, flows_ok = true, arrivals_ok = true;
    for (const Coflow& c : t.coflows) {
        arrivals_ok = arrivals_ok && c.arrival >= prev;
        prev = c.arrival;
        ids.insert(c.coflow_id);
        flows_ok = flows_ok && !c.flows.empty();
        for (const Flow& f : c.flows) {
            hosts_ok = hosts_ok && f.src_host >= 0 && f.src_host < 64 && f.dst_host >= 0 &&
                       f.dst_host < 64 && f.src_host != f.dst_host;
            flows_ok = flows_ok && f.size_bytes > 0 && f.coflow_id == c.coflow_id;
        }
    }
    CHECK(arrivals_ok);
    CHECK(hosts_ok);
    CHECK(flows_ok);
    CHECK(ids.size() == 150); // unique ids

    TraceStats stats = compute_trace_stats(t, 16);
    CHECK(stats.coflows == 150);
    CHECK(stats.flows == t.total_flows());
    CHECK(stats.total_bytes == t.total_bytes());
    CHECK(stats.intra_pod_bytes + stats.inter_pod_bytes == stats.total_bytes);
    CHECK(stats.count_sn + stats.count_ln + stats.count_sw + stats.count_lw == 150);
    // Majority of coflows are short-narrow, like the reference workload.
    CHECK(stats.count_sn > stats.count_lw);
    CHECK(stats.count_sn >= 75);
    // Hundreds-to-thousands of flows in total for 150 coflows.
    CHECK(t.total_flows() > 500);
    CHECK(t.total_flows() < 6000);
}

TEST_CASE("single tiny coflow comes out short-narrow") {
    TraceGenParams params = facebook_like_preset(1, 4);
    params.mix_sn = 1.0;
    params.mix_ln = params.mix_sw = params.mix_lw = 0.0;
    params.narrow_width_mean = 0.0; // width collapses to a single flow
    Trace t = generate_trace(params, 7);
    REQUIRE(t.coflows.size() == 1);
    CHECK(t.coflows[0].flows.size() == 1);
    CHECK(categorize(t.coflows[0]) == CoflowCategory::SN);
}

TEST_CASE("generation is a pure function of params and seed") {
    TraceGenParams params = facebook_like_preset(40, 16);
    CHECK(serialize_trace(generate_trace(params, 5)) == serialize_trace(generate_trace(params, 5)));
    CHECK(serialize_trace(generate_trace(params, 5)) != serialize_trace(generate_trace(params, 6)));
}

TEST_CASE("invalid generator parameters are rejected") {
    TraceGenParams params = facebook_like_preset(10, 8);
    params.mean_interarrival_us = 0;
    CHECK_THROWS(generate_trace(params, 1));
    params = facebook_like_preset(0, 8);
    CHECK_THROWS(generate_trace(params, 1));
    params = facebook_like_preset(10, 1);
    CHECK_THROWS(generate_trace(params, 1));
}

TEST_CASE("scale_to_load hits the requested offered load") {
    TraceGenParams params = facebook_like_preset(60, 16);
    Trace t = generate_trace(params, 11);
    CapacityModel cap;
    cap.host_count = 16;
    cap.access_rate_bps = 10'000'000'000ll;
    for (double load : {0.1, 0.5, 0.9}) {
        Trace scaled = scale_to_load(t, load, cap);
        CHECK(offered_load(scaled, cap) == doctest::Approx(load).epsilon(0.01));
        // Flow contents and relative order survive.
        REQUIRE(scaled.coflows.size() == t.coflows.size());
        bool same_flows = true, order_ok = true;
        for (std::size_t i = 0; i < t.coflows.size(); ++i) {
            same_flows = same_flows && scaled.coflows[i].flows.size() == t.coflows[i].flows.size();
            for (std::size_t j = 0; j < t.coflows[i].flows.size(); ++j) {
                const Flow &a = t.coflows[i].flows[j], &b = scaled.coflows[i].flows[j];
                same_flows = same_flows && a.size_bytes == b.size_bytes &&
                             a.src_host == b.src_host && a.dst_host == b.dst_host;
            }
            if (i > 0)
                order_ok = order_ok && scaled.coflows[i].arrival >= scaled.coflows[i - 1].arrival;
        }
        CHECK(same_flows);
        CHECK(order_ok);
    }
}

TEST_CASE("doubling the load halves every inter-arrival gap") {
    TraceGenParams params = facebook_like_preset(20, 8);
    Trace t = generate_trace(params, 3);
    CapacityModel cap;
    cap.host_count = 8;
    Trace at_l = scale_to_load(t, 0.3, cap);
    Trace at_2l = scale_to_load(t, 0.6, cap);
    for (std::size_t i = 1; i < t.coflows.size(); ++i) {
        SimTime gap_l = at_l.coflows[i].arrival - at_l.coflows[i - 1].arrival;
        SimTime gap_2l = at_2l.coflows[i].arrival - at_2l.coflows[i - 1].arrival;
        if (gap_l > 1000) // ignore sub-ps rounding on empty gaps
            CHECK(static_cast<double>(gap_2l) ==
                  doctest::Approx(static_cast<double>(gap_l) / 2).epsilon(1e-6));
    }
}

TEST_CASE("degenerate scaling inputs") {
    CapacityModel cap;
    Trace single;
    single.port_count = 4;
    single.coflows.push_back(make_coflow(1, micros(5), {1000}));
    Trace scaled = scale_to_load(single, 0.5, cap);
    CHECK(scaled.coflows[0].arrival == micros(5)); // no gaps to stretch

    CHECK_THROWS(scale_to_load(single, 0.0, cap));
    CHECK_THROWS(scale_to_load(single, 1.5, cap));
    Trace empty;
    CHECK_THROWS(scale_to_load(empty, 0.5, cap));
}

TEST_CASE("trace files round-trip") {
    TraceGenParams params = facebook_like_preset(25, 16);
    Trace t = generate_trace(params, 9);
    std::string text = serialize_trace(t);

    std::istringstream in(text);
    Trace back = parse_trace(in, 16);
    REQUIRE(back.coflows.size() == t.coflows.size());
    bool equal = true;
    for (std::size_t i = 0; i < t.coflows.size(); ++i) {
        const Coflow &a = t.coflows[i], &b = back.coflows[i];
        equal = equal && a.coflow_id == b.coflow_id && a.arrival == b.arrival &&
                a.weight == b.weight && a.flows.size() == b.flows.size();
        for (std::size_t j = 0; equal && j < a.flows.size(); ++j)
            equal = a.flows[j].src_host == b.flows[j].src_host &&
                    a.flows[j].dst_host == b.flows[j].dst_host &&
                    a.flows[j].size_bytes == b.flows[j].size_bytes;
    }
    CHECK(equal);
    // Canonical files survive a parse/serialize cycle byte-for-byte.
    CHECK(serialize_trace(back) == text);
}

TEST_CASE("parser rejects malformed input with the offending line") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_trace(in);
            FAIL_CHECK("expected a parse error for: " << text);
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    std::string good =
        R"({"coflow_id":1,"arrival_us":0,"weight":1.0,"flows":[{"src":0,"dst":1,"bytes":100}]})";
    std::string regressed =
        R"({"coflow_id":2,"arrival_us":0,"weight":1.0,"flows":[{"src":0,"dst":1,"bytes":100}]})";

    expect_error("not json", "line 1");
    expect_error(good + "\n{broken", "line 2");
    expect_error(good + "\n" +
                     R"({"coflow_id":3,"arrival_us":-5,"weight":1,"flows":[{"src":0,"dst":1,"bytes":1}]})",
                 "negative arrival");
    {
        std::istringstream in(good + "\n" + regressed);
        CHECK_NOTHROW(parse_trace(in)); // equal arrivals are fine
    }
    expect_error(
        good + "\n" +
            R"({"coflow_id":2,"arrival_us":-1,"weight":1,"flows":[{"src":0,"dst":1,"bytes":1}]})",
        "line 2");
    expect_error(R"({"coflow_id":0,"arrival_us":0,"weight":1,"flows":[{"src":0,"dst":1,"bytes":1}]})",
                 "reserved");
    expect_error(good + "\n" + good, "duplicate");
    expect_error(R"({"coflow_id":1,"arrival_us":0,"weight":1,"flows":[]})", "no flows");
    expect_error(R"({"coflow_id":1,"arrival_us":0,"weight":1,"flows":[{"src":3,"dst":3,"bytes":1}]})",
                 "src == dst");
    expect_error(R"({"coflow_id":1,"arrival_us":0,"weight":1,"flows":[{"src":0,"dst":1,"bytes":0}]})",
                 "positive");
    expect_error(R"({"coflow_id":1,"arrival_us":0,"weight":1,"flows":[{"src":0,"dst":1}]})",
                 "line 1");

    {
        std::istringstream in(
            R"({"coflow_id":1,"arrival_us":0,"weight":1,"flows":[{"src":0,"dst":99,"bytes":1}]})");
        CHECK_THROWS(parse_trace(in, 16)); // out of range for the declared port count
    }
}

TEST_CASE("arrival regression across lines is rejected") {
    std::string text =
        R"({"coflow_id":1,"arrival_us":100,"weight":1,"flows":[{"src":0,"dst":1,"bytes":1}]})"
        "\n"
        R"({"coflow_id":2,"arrival_us":50,"weight":1,"flows":[{"src":0,"dst":1,"bytes":1}]})";
    std::istringstream in(text);
    try {
        parse_trace(in);
        FAIL_CHECK("expected an arrival-regression error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("regression") != std::string::npos);
    }
}

TEST_CASE("coflow byte helpers") {
    Coflow c = make_coflow(1, 0, {100, 2000, 50});
    CHECK(c.total_bytes() == 2150);
    CHECK(c.longest_flow_bytes() == 2000);
}
