#pragma once

#include "oshop/instance.hpp"
#include "oshop/partition.hpp"

#include <cstdint>
#include <stdexcept>

namespace oshop {

/// SplitMix64 (Steele, Lea & Flood constants). Fixed here so that instance
/// suites are reproducible bit-for-bit across implementations: draws are taken
/// as next() % (bound + 1), p row-major (machine-major) first, then q.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform draw in [0, bound] by modulo; bias is irrelevant here and the
    // modulo form is trivial to reproduce in any language.
    std::uint64_t below(std::uint64_t bound) { return next() % (bound + 1); }
};

/// The worst-case family for list scheduling: 2 machines, 3 jobs. Jobs 1 and 2
/// carry one operation of length a each, job 3 one unit operation per machine
/// and delivery time a. Optimal lateness a+2; every list schedule >= 2a+1.
inline Instance gen_tight(long long a) {
    if (a < 1) throw std::invalid_argument("tight family requires a >= 1");
    Instance inst;
    inst.m = 2;
    inst.n = 3;
    inst.p = {{Rational(a), 0, 1}, {0, Rational(a), 1}};
    inst.q = {0, 0, Rational(a)};
    return inst;
}

struct RandomSpec {
    std::uint64_t seed = 0;
    int m = 2;
    int n = 4;
    long long p_max = 9;
    long long q_max = 20;
};

inline Instance gen_random(const RandomSpec& spec) {
    if (spec.m < 1 || spec.n < 0 || spec.p_max < 0 || spec.q_max < 0)
        throw std::invalid_argument("invalid random generator parameters");
    SplitMix64 rng(spec.seed);
    Instance inst;
    inst.m = spec.m;
    inst.n = spec.n;
    inst.p.assign(spec.m, std::vector<Rational>(spec.n));
    for (int i = 0; i < spec.m; ++i)
        for (int j = 0; j < spec.n; ++j)
            inst.p[i][j] = Rational(rng.below(spec.p_max));
    inst.q.resize(spec.n);
    for (int j = 0; j < spec.n; ++j) inst.q[j] = Rational(rng.below(spec.q_max));
    return inst;
}

struct MixedSpec {
    std::uint64_t seed = 0;
    int m = 2;
    long long big_ops = 300;   // length of every operation of the one big job
    int tiny_count = 3;        // number of unit jobs
    long long q_max = 5;
};

/// One job with an operation of length big_ops on every machine plus
/// tiny_count unit jobs, with random small delivery times. Engineered so that
/// at epsilon = 1 the partition has B = {0}, S empty and the unit jobs in T;
/// verified by running select_partition, parameters that fail are rejected.
/// Pick big_ops >= (2m(m+1))^2 so the unit jobs are below the tiny threshold.
inline Instance gen_mixed(const MixedSpec& spec) {
    if (spec.m < 1 || spec.big_ops < 1 || spec.tiny_count < 0 || spec.q_max < 0)
        throw std::invalid_argument("invalid mixed generator parameters");
    SplitMix64 rng(spec.seed);
    Instance inst;
    inst.m = spec.m;
    inst.n = 1 + spec.tiny_count;
    inst.p.assign(spec.m, std::vector<Rational>(inst.n, Rational(1)));
    for (int i = 0; i < spec.m; ++i) inst.p[i][0] = Rational(spec.big_ops);
    inst.q.resize(inst.n);
    for (int j = 0; j < inst.n; ++j) inst.q[j] = Rational(rng.below(spec.q_max));

    const Partition part = select_partition(inst, Rational(1));
    if (part.big.empty())
        throw std::invalid_argument("mixed generator: big job is not big at epsilon = 1");
    if (spec.tiny_count > 0 && static_cast<int>(part.tiny.size()) != spec.tiny_count)
        throw std::invalid_argument("mixed generator: unit jobs are not tiny at epsilon = 1");
    return inst;
}

}  // namespace oshop
