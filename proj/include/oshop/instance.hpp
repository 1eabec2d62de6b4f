#pragma once

#include "oshop/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace oshop {

/// An open shop instance: m machines, n jobs, processing matrix p[machine][job]
/// and per-job delivery times q[job]. All values are exact nonnegative rationals.
struct Instance {
    int m = 0;
    int n = 0;
    std::vector<std::vector<Rational>> p;  // p[i][j], i = machine, j = job
    std::vector<Rational> q;
};

/// Throws std::invalid_argument naming the offending field if the instance is
/// malformed (dimension mismatch or negative value).
inline void check_instance(const Instance& inst) {
    if (inst.m < 1) throw std::invalid_argument("m must be >= 1");
    if (inst.n < 0) throw std::invalid_argument("n must be >= 0");
    if (static_cast<int>(inst.p.size()) != inst.m)
        throw std::invalid_argument("p has " + std::to_string(inst.p.size()) +
                                    " rows, expected m = " + std::to_string(inst.m));
    for (int i = 0; i < inst.m; ++i) {
        if (static_cast<int>(inst.p[i].size()) != inst.n)
            throw std::invalid_argument("p[" + std::to_string(i) + "] has " +
                                        std::to_string(inst.p[i].size()) +
                                        " entries, expected n = " + std::to_string(inst.n));
        for (int j = 0; j < inst.n; ++j)
            if (inst.p[i][j] < 0)
                throw std::invalid_argument("p[" + std::to_string(i) + "][" +
                                            std::to_string(j) + "] is negative");
    }
    if (static_cast<int>(inst.q.size()) != inst.n)
        throw std::invalid_argument("q has " + std::to_string(inst.q.size()) +
                                    " entries, expected n = " + std::to_string(inst.n));
    for (int j = 0; j < inst.n; ++j)
        if (inst.q[j] < 0)
            throw std::invalid_argument("q[" + std::to_string(j) + "] is negative");
}

/// Two classic lower bounds on the optimal maximum lateness:
/// P = max machine workload, Q = max over jobs of (total work + delivery time).
struct Bounds {
    Rational P;
    Rational Q;
};

inline Bounds bounds(const Instance& inst) {
    Bounds b;
    for (int i = 0; i < inst.m; ++i) {
        Rational load = 0;
        for (int j = 0; j < inst.n; ++j) load += inst.p[i][j];
        if (load > b.P) b.P = load;
    }
    for (int j = 0; j < inst.n; ++j) {
        Rational chain = inst.q[j];
        for (int i = 0; i < inst.m; ++i) chain += inst.p[i][j];
        if (chain > b.Q) b.Q = chain;
    }
    return b;
}

}  // namespace oshop
