#pragma once

#include "oshop/instance.hpp"
#include "oshop/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oshop {

/// A total priority order on jobs; earlier = higher priority.
struct PriorityList {
    std::vector<int> order;  // permutation of {0..n-1}
};

/// Jackson's order: jobs by non-increasing delivery time, ties by ascending index.
inline PriorityList jackson_priority(const Instance& inst) {
    PriorityList pl;
    pl.order.resize(inst.n);
    std::iota(pl.order.begin(), pl.order.end(), 0);
    std::stable_sort(pl.order.begin(), pl.order.end(),
                     [&](int a, int b) { return inst.q[a] > inst.q[b]; });
    return pl;
}

/// Greedy event-driven list scheduling. At each decision instant t >= release,
/// machines are scanned in ascending index; a free machine takes the
/// highest-priority job that still needs a positive operation on it, is not in
/// blocked_jobs, and is not being processed elsewhere at t. Jobs in
/// blocked_jobs are left out of the returned schedule entirely.
inline Schedule list_schedule(const Instance& inst, const PriorityList& priority,
                              const Rational& release = Rational(0),
                              const std::set<int>& blocked_jobs = {}) {
    if (release < 0) throw std::invalid_argument("release must be nonnegative");
    {
        std::vector<char> seen(inst.n, 0);
        for (int j : priority.order) {
            if (j < 0 || j >= inst.n || seen[j])
                throw std::invalid_argument("priority list is not a permutation of the jobs");
            seen[j] = 1;
        }
        if (static_cast<int>(priority.order.size()) != inst.n)
            throw std::invalid_argument("priority list is not a permutation of the jobs");
    }

    Schedule sched;
    std::vector<std::vector<char>> pending(inst.m, std::vector<char>(inst.n, 0));
    int remaining = 0;
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.p[i][j] > 0 && !blocked_jobs.count(j)) {
                pending[i][j] = 1;
                ++remaining;
            }

    std::vector<Rational> machine_free(inst.m, release);
    std::vector<Rational> job_free(inst.n, release);
    Rational t = release;
    while (remaining > 0) {
        for (int i = 0; i < inst.m; ++i) {
            if (machine_free[i] > t) continue;
            for (int j : priority.order) {
                if (!pending[i][j] || job_free[j] > t) continue;
                sched.ops.push_back({i, j, t, t + inst.p[i][j]});
                machine_free[i] = t + inst.p[i][j];
                job_free[j] = machine_free[i];
                pending[i][j] = 0;
                --remaining;
                break;
            }
        }
        if (remaining == 0) break;
        // Advance to the earliest future completion.
        std::optional<Rational> next;
        for (const auto& f : machine_free)
            if (f > t && (!next || f < *next)) next = f;
        for (const auto& f : job_free)
            if (f > t && (!next || f < *next)) next = f;
        if (!next) throw std::logic_error("list scheduling stalled with operations remaining");
        t = *next;
    }
    return sched;
}

/// One greediness breach: `machine` idled over [begin, end) while `job` had an
/// unstarted positive operation on it and was free for part of the interval.
struct GreedinessReport {
    struct Idle {
        int machine;
        Rational begin;
        Rational end;
        int job;
    };
    std::vector<Idle> violations;
};

/// Audits a schedule against the list-scheduling principle: no machine may be
/// idle while an operation is available on it. Empty for any list_schedule
/// output.
inline GreedinessReport greediness_report(const Instance& inst, const Schedule& sched) {
    if (auto v = validate_schedule(inst, sched); !v.empty()) throw ScheduleInvalid(std::move(v));
    GreedinessReport report;

    std::vector<std::vector<OpRecord>> by_machine(inst.m);
    std::vector<std::vector<OpRecord>> by_job(inst.n);
    for (const auto& op : sched.ops) {
        if (op.end > op.start) {
            by_machine[op.machine].push_back(op);
            by_job[op.job].push_back(op);
        }
    }
    for (auto& g : by_machine)
        std::sort(g.begin(), g.end(),
                  [](const OpRecord& a, const OpRecord& b) { return a.start < b.start; });

    // Lebesgue measure of job j's busy time within [lo, hi].
    auto busy_measure = [&](int j, const Rational& lo, const Rational& hi) {
        Rational total = 0;
        for (const auto& op : by_job[j]) {
            const Rational s = std::max(op.start, lo);
            const Rational e = std::min(op.end, hi);
            if (e > s) total += e - s;
        }
        return total;
    };

    for (int i = 0; i < inst.m; ++i) {
        Rational cursor = 0;
        for (const auto& op : by_machine[i]) {
            if (op.start > cursor) {
                // Maximal idle interval [cursor, op.start) with operations still to come.
                for (int j = 0; j < inst.n; ++j) {
                    if (inst.p[i][j] <= 0) continue;
                    bool started = false;
                    for (const auto& jo : by_machine[i])
                        if (jo.job == j && jo.start < op.start) started = true;
                    if (started) continue;
                    if (busy_measure(j, cursor, op.start) < op.start - cursor)
                        report.violations.push_back({i, cursor, op.start, j});
                }
            }
            cursor = std::max(cursor, op.end);
        }
    }
    return report;
}

}  // namespace oshop
