// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#ifndef PCOFLOW_RNG_H
#define PCOFLOW_RNG_H

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace pcoflow {

// Deterministic random stream named by purpose ("ecmp-hash", "trace-gen",
// "red-mark", ...). Same (seed, stream_id) yields the same draw sequence on
// every platform: the raw mt19937_64 output is pinned by the standard and
// all distributions below are implemented explicitly instead of relying on
// the (implementation-defined) <random> distribution adaptors.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view stream_id)
        : engine_(mix(seed, fnv1a(stream_id))) {}

    std::uint64_t u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(u64() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    // Pareto truncated to [lo, hi]; inverse-CDF sampling of the bounded law.
    double bounded_pareto(double shape, double lo, double hi) {
        double u = uniform();
        double la = std::pow(lo, shape);
        double ha = std::pow(hi, shape);
        return std::pow(-(u * ha - u * la - ha) / (ha * la), -1.0 / shape);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    // splitmix64 finalizer; also used to derive per-purpose seeds.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull + b;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace pcoflow

#endif
