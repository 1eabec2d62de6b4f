#pragma once

#include "oshop/instance.hpp"
#include "oshop/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace oshop {

/// eps_bar = epsilon / (2m(m+1)).
inline Rational eps_bar(int m, const Rational& epsilon) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must be in (0, 1]");
    return epsilon / (2 * m * (m + 1));
}

/// The big/small/tiny job partition for a chosen index k. Classification is by
/// each job's largest operation against the thresholds eps_bar^k * P and
/// eps_bar^{k+1} * P.
struct Partition {
    int k = 1;
    Rational epsilon;
    Rational ebar;
    Rational workload;        // P
    Rational big_threshold;   // eps_bar^k * P
    Rational tiny_threshold;  // eps_bar^{k+1} * P
    std::vector<int> big, small, tiny;
    Rational small_work;  // p(S)
    Rational delta;       // grid step, = tiny_threshold
    bool degenerate = false;  // P = 0
};

/// Scans k = 1, 2, ... and returns the first partition whose small-job work is
/// at most epsilon * P. Such k <= ceil(m/epsilon) always exists. When P = 0
/// every job is tiny and the partition is flagged degenerate.
inline Partition select_partition(const Instance& inst, const Rational& epsilon) {
    check_instance(inst);
    Partition part;
    part.epsilon = epsilon;
    part.ebar = eps_bar(inst.m, epsilon);
    for (int i = 0; i < inst.m; ++i) {
        Rational load = 0;
        for (int j = 0; j < inst.n; ++j) load += inst.p[i][j];
        if (load > part.workload) part.workload = load;
    }

    std::vector<Rational> max_op(inst.n, Rational(0));
    for (int j = 0; j < inst.n; ++j)
        for (int i = 0; i < inst.m; ++i)
            if (inst.p[i][j] > max_op[j]) max_op[j] = inst.p[i][j];

    if (part.workload == 0) {
        part.degenerate = true;
        part.delta = 0;
        for (int j = 0; j < inst.n; ++j) part.tiny.push_back(j);
        return part;
    }

    const BigInt k_cap = ceil_div(Rational(inst.m) / epsilon, Rational(1));

    Rational big_thr = part.ebar * part.workload;  // eps_bar^k * P at k = 1
    for (BigInt k = 1; k <= k_cap; ++k) {
        const Rational tiny_thr = big_thr * part.ebar;
        part.big.clear();
        part.small.clear();
        part.tiny.clear();
        part.small_work = 0;
        for (int j = 0; j < inst.n; ++j) {
            if (max_op[j] >= big_thr) {
                part.big.push_back(j);
            } else if (max_op[j] >= tiny_thr) {
                part.small.push_back(j);
                for (int i = 0; i < inst.m; ++i) part.small_work += inst.p[i][j];
            } else {
                part.tiny.push_back(j);
            }
        }
        if (part.small_work <= epsilon * part.workload) {
            part.k = static_cast<int>(k);
            part.big_threshold = big_thr;
            part.tiny_threshold = tiny_thr;
            part.delta = tiny_thr;
            return part;
        }
        big_thr = tiny_thr;
    }
    throw std::logic_error("no admissible k found; this contradicts the partition bound");
}

/// Discretized candidate start times for big-job operations: the arithmetic
/// progression origin, origin + step, ... below horizon, on every machine.
struct Grid {
    Rational origin;   // p(S)
    Rational step;     // delta, or an override
    Rational horizon;  // m * P
    int machines = 0;
    BigInt starts_per_machine = 0;
    BigInt point_count = 0;  // Delta = machines * starts_per_machine

    Rational start_at(const BigInt& index) const { return origin + Rational(index) * step; }

    /// True iff t lies on the progression (t >= origin, (t - origin)/step integral).
    bool on_grid(const Rational& t) const {
        if (step == 0) return t == origin;
        if (t < origin) return false;
        const Rational ratio = (t - origin) / step;
        return denominator(ratio) == 1;
    }
};

inline Grid build_grid(const Instance& inst, const Partition& part,
                       const std::optional<Rational>& delta_override = std::nullopt) {
    Grid grid;
    grid.machines = inst.m;
    grid.origin = part.small_work;
    grid.step = delta_override.value_or(part.delta);
    grid.horizon = Rational(inst.m) * part.workload;
    if (delta_override && *delta_override <= 0)
        throw std::invalid_argument("delta override must be positive");
    if (grid.step == 0) {
        if (!part.big.empty()) throw std::invalid_argument("grid step is zero");
        return grid;
    }
    if (grid.horizon > grid.origin)
        grid.starts_per_machine = ceil_div(grid.horizon - grid.origin, grid.step);
    grid.point_count = BigInt(inst.m) * grid.starts_per_machine;
    return grid;
}

/// The enumeration-size estimate (m * |B|) ^ Delta. Astronomical under the
/// formal step; call only at desk scale.
inline BigInt enumeration_size_bound(const Grid& grid, const Partition& part) {
    const BigInt base = BigInt(grid.machines) * BigInt(part.big.size());
    if (grid.point_count > 100000)
        throw std::overflow_error("grid too large to materialize the enumeration bound");
    return boost::multiprecision::pow(base,
                                      grid.point_count.convert_to<unsigned int>());
}

}  // namespace oshop
