// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>
#include <map>
#include <vector>

#include "pcoflow/band_queue.h"
#include "pcoflow/rng.h"
#include "pcoflow/sp_queue_bank.h"

using namespace pcoflow;

namespace {

Packet data_pkt(int coflow, int prio, int flow = 0, std::int64_t seq = 0, bool ecn = true) {
    Packet p;
    p.coflow_id = coflow;
    p.priority = prio;
    p.flow_id = flow;
    p.seq = seq;
    p.ecn_capable = ecn;
    return p;
}

// Straight multi-list model of the bank, sharing the marking law but
// nothing else with the implementation.
struct ListBank {
    RedParams params;
    RngStream rng;
    std::vector<std::deque<Packet>> lists;

    ListBank(int n, RedParams p, std::uint64_t seed, const char* stream)
        : params(p), rng(seed, stream), lists(n + 1) {}

    EnqueueOutcome enqueue(const Packet& pkt) {
        int q = pkt.is_probe() ? 1 : pkt.priority;
        int qlen = static_cast<int>(lists[q].size());
        if (qlen >= params.capacity)
            return EnqueueOutcome::drop(DropReason::BandFull);
        bool ce = false;
        Packet stored = pkt;
        if (stored.ecn_capable) {
            double prob = red_mark_probability(qlen, params);
            if (prob > 0.0 && rng.bernoulli(prob)) {
                ce = true;
                stored.ce_marked = true;
            }
        }
        lists[q].push_back(stored);
        int rank = 0;
        for (int i = 1; i <= q; ++i)
            rank += static_cast<int>(lists[i].size());
        return EnqueueOutcome::ok(rank, q, ce);
    }

    std::optional<Packet> dequeue() {
        for (auto& l : lists)
            if (!l.empty()) {
                Packet p = l.front();
                l.pop_front();
                return p;
            }
        return std::nullopt;
    }
};

} // namespace

TEST_CASE("marking probability is piecewise linear in the queue length") {
    RedParams p;
    CHECK(red_mark_probability(0, p) == 0.0);
    CHECK(red_mark_probability(200, p) == 0.0);
    CHECK(red_mark_probability(300, p) == doctest::Approx(0.5));
    CHECK(red_mark_probability(400, p) == 1.0);
    CHECK(red_mark_probability(500, p) == 1.0);
    RedParams half = p;
    half.max_mark_prob = 0.4;
    CHECK(red_mark_probability(300, half) == doctest::Approx(0.2));
    CHECK(red_mark_probability(400, half) == doctest::Approx(0.4));
}

TEST_CASE("invalid parameters are rejected") {
    RngStream rng(1, "red-mark");
    RedParams bad;
    bad.min_th = 0;
    CHECK_THROWS(SpQueueBank(8, bad, &rng));
    bad = RedParams{};
    bad.max_th = bad.min_th;
    CHECK_THROWS(SpQueueBank(8, bad, &rng));
    bad = RedParams{};
    bad.max_th = 600; // above capacity
    CHECK_THROWS(SpQueueBank(8, bad, &rng));
    bad = RedParams{};
    bad.max_mark_prob = 0.0;
    CHECK_THROWS(SpQueueBank(8, bad, &rng));
}

TEST_CASE("below min_th nothing is marked") {
    RngStream rng(2, "red-mark");
    SpQueueBank bank(8, RedParams{}, &rng);
    for (int i = 0; i < 200; ++i) {
        auto out = bank.enqueue(data_pkt(1, 3));
        CHECK(out.accepted);
        CHECK(out.band == 3);
        CHECK_FALSE(out.ce_marked);
    }
    CHECK(bank.queue_len(3) == 200);
    CHECK(bank.counters().ce_marks == 0);
}

TEST_CASE("a full queue tail-drops, independent queues unaffected") {
    RngStream rng(3, "red-mark");
    SpQueueBank bank(8, RedParams{}, &rng);
    for (int i = 0; i < 500; ++i)
        REQUIRE(bank.enqueue(data_pkt(1, 2, 0, 0, false)).accepted);
    auto out = bank.enqueue(data_pkt(1, 2));
    CHECK_FALSE(out.accepted);
    CHECK(out.drop_reason == DropReason::BandFull);
    CHECK(bank.drops_by_queue()[2] == 1);
    CHECK(bank.enqueue(data_pkt(1, 3)).accepted);
}

TEST_CASE("marked fraction at pinned length 300 is one half") {
    RngStream rng(4, "red-mark");
    SpQueueBank bank(8, RedParams{}, &rng);
    for (int i = 0; i < 300; ++i)
        bank.enqueue(data_pkt(1, 1, 0, 0, false)); // ECN-blind filler, no draws
    int marked = 0;
    const int kN = 10000;
    for (int i = 0; i < kN; ++i) {
        auto out = bank.enqueue(data_pkt(1, 1)); // sees qlen = 300
        marked += out.ce_marked ? 1 : 0;
        bank.dequeue(); // restore the pinned length
    }
    CHECK(marked / static_cast<double>(kN) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("strict priority and FIFO order within a queue") {
    RngStream rng(5, "red-mark");
    SpQueueBank bank(8, RedParams{}, &rng);
    bank.enqueue(data_pkt(1, 1, 10));
    bank.enqueue(data_pkt(1, 3, 30));
    bank.enqueue(data_pkt(1, 3, 31));
    auto a = bank.dequeue();
    REQUIRE(a);
    CHECK(a->flow_id == 10);
    // Lower-priority traffic waits for a later arrival at priority 1.
    bank.enqueue(data_pkt(1, 1, 11));
    auto b = bank.dequeue();
    REQUIRE(b);
    CHECK(b->flow_id == 11);
    auto c = bank.dequeue();
    auto d = bank.dequeue();
    REQUIRE((c && d));
    CHECK(c->flow_id == 30);
    CHECK(d->flow_id == 31);
    CHECK_FALSE(bank.dequeue().has_value());
}

TEST_CASE("priority flip reorders a flow in the bank but not in the banded queue") {
    // The same script drives both schedulers: two packets of flow 7 at
    // priority 3, a flip, then two more at priority 1.
    auto script = [] {
        std::vector<Packet> s;
        s.push_back(data_pkt(4, 3, 7, 1));
        s.push_back(data_pkt(4, 3, 7, 2));
        s.push_back(data_pkt(4, 1, 7, 3));
        s.push_back(data_pkt(4, 1, 7, 4));
        return s;
    }();

    RngStream rng(6, "red-mark");
    SpQueueBank bank(8, RedParams{}, &rng);
    for (const Packet& p : script)
        bank.enqueue(p);
    std::vector<std::int64_t> bank_order;
    while (auto p = bank.dequeue())
        bank_order.push_back(p->seq);
    CHECK(bank_order == std::vector<std::int64_t>{3, 4, 1, 2}); // reordered

    BandQueue banded({.num_bands = 8, .band_capacity = 500, .ecn_threshold = 200});
    for (const Packet& p : script)
        banded.enqueue(p);
    std::vector<std::int64_t> banded_order;
    while (auto p = banded.dequeue())
        banded_order.push_back(p->seq);
    CHECK(banded_order == std::vector<std::int64_t>{1, 2, 3, 4}); // send order
}

TEST_CASE("random ops agree with the multi-list reference") {
    RedParams params;
    params.min_th = 5;
    params.max_th = 10;
    params.capacity = 15;
    RngStream impl_rng(77, "red-mark");
    SpQueueBank bank(8, params, &impl_rng);
    ListBank ref(8, params, 77, "red-mark");
    RngStream script(78, "sp-script");

    int mismatches = 0;
    for (int step = 0; step < 50000; ++step) {
        if (bank.size() == 0 || script.uniform() < 0.55) {
            Packet p = data_pkt(static_cast<int>(script.uniform_int(1, 4)),
                                static_cast<int>(script.uniform_int(1, 8)),
                                static_cast<int>(script.uniform_int(1, 10)), step);
            p.ecn_capable = script.uniform() < 0.8;
            p.pkt_id = step + 1;
            auto got = bank.enqueue(p);
            auto want = ref.enqueue(p);
            if (got.accepted != want.accepted || got.band != want.band ||
                got.rank != want.rank || got.ce_marked != want.ce_marked)
                ++mismatches;
        } else {
            auto got = bank.dequeue();
            auto want = ref.dequeue();
            if (got.has_value() != want.has_value() || (got && got->pkt_id != want->pkt_id))
                ++mismatches;
        }
    }
    CHECK(mismatches == 0);
    CHECK(bank.counters().accepted - bank.counters().dequeued ==
          static_cast<std::int64_t>(bank.size()));
}
