#pragma once

#include "oshop/instance.hpp"
#include "oshop/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oshop {

struct OpRecord {
    int machine = 0;
    int job = 0;
    Rational start;
    Rational end;
};

/// A (possibly partial) non-preemptive schedule. A complete schedule holds
/// exactly one record per operation with positive processing time; zero-length
/// operations are never materialized.
struct Schedule {
    std::vector<OpRecord> ops;
};

enum class ViolationKind {
    MachineOverlap,
    JobOverlap,
    MissingOperation,
    DuplicateOperation,
    NegativeStart,
    DurationMismatch,
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::MachineOverlap: return "machine-overlap";
        case ViolationKind::JobOverlap: return "job-overlap";
        case ViolationKind::MissingOperation: return "missing-operation";
        case ViolationKind::DuplicateOperation: return "duplicate-operation";
        case ViolationKind::NegativeStart: return "negative-start";
        case ViolationKind::DurationMismatch: return "duration-mismatch";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::string detail;  // offending (machine, job) pairs and times
};

namespace detail {
inline std::string op_str(const OpRecord& o) {
    std::ostringstream os;
    os << "(machine " << o.machine << ", job " << o.job << ") [" << format_rational(o.start)
       << ", " << format_rational(o.end) << ")";
    return os.str();
}
}  // namespace detail

/// Returns the empty list iff the schedule is a feasible complete schedule for
/// the instance. Overlap tests use open intervals, so back-to-back operations
/// are legal.
inline std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched) {
    std::vector<Violation> out;
    std::map<std::pair<int, int>, int> seen;  // (machine, job) -> count
    for (const auto& op : sched.ops) {
        if (op.machine < 0 || op.machine >= inst.m || op.job < 0 || op.job >= inst.n) {
            out.push_back({ViolationKind::DurationMismatch,
                           detail::op_str(op) + " indices out of range"});
            continue;
        }
        if (op.start < 0)
            out.push_back({ViolationKind::NegativeStart, detail::op_str(op)});
        if (op.end - op.start != inst.p[op.machine][op.job])
            out.push_back({ViolationKind::DurationMismatch,
                           detail::op_str(op) + " expected duration " +
                               format_rational(inst.p[op.machine][op.job])});
        if (++seen[{op.machine, op.job}] == 2)
            out.push_back({ViolationKind::DuplicateOperation, detail::op_str(op)});
    }
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.p[i][j] > 0 && !seen.count({i, j}))
                out.push_back({ViolationKind::MissingOperation,
                               "(machine " + std::to_string(i) + ", job " + std::to_string(j) +
                                   ")"});

    auto report_overlaps = [&](std::vector<OpRecord> group, ViolationKind kind) {
        std::sort(group.begin(), group.end(), [](const OpRecord& a, const OpRecord& b) {
            return a.start != b.start ? a.start < b.start
                                      : std::tie(a.machine, a.job) < std::tie(b.machine, b.job);
        });
        Rational frontier;  // max end seen so far
        const OpRecord* frontier_op = nullptr;
        for (const auto& op : group) {
            if (op.end == op.start) continue;  // zero-length, never blocks
            if (frontier_op && op.start < frontier)
                out.push_back({kind, detail::op_str(*frontier_op) + " overlaps " +
                                         detail::op_str(op)});
            if (!frontier_op || op.end > frontier) {
                frontier = op.end;
                frontier_op = &op;
            }
        }
    };

    std::vector<std::vector<OpRecord>> by_machine(inst.m), by_job(inst.n);
    for (const auto& op : sched.ops) {
        if (op.machine < 0 || op.machine >= inst.m || op.job < 0 || op.job >= inst.n) continue;
        by_machine[op.machine].push_back(op);
        by_job[op.job].push_back(op);
    }
    for (auto& g : by_machine) report_overlaps(std::move(g), ViolationKind::MachineOverlap);
    for (auto& g : by_job) report_overlaps(std::move(g), ViolationKind::JobOverlap);
    return out;
}

struct ScheduleInvalid : std::runtime_error {
    std::vector<Violation> violations;
    explicit ScheduleInvalid(std::vector<Violation> v)
        : std::runtime_error("invalid schedule: " +
                             (v.empty() ? std::string("?")
                                        : std::string(to_string(v.front().kind)) + " " +
                                              v.front().detail)),
          violations(std::move(v)) {}
};

/// Per-job completion times C_j, lateness L_j = C_j + q_j, and their maximum.
/// A job with no positive operation completes at 0, so its lateness is q_j.
struct LatenessProfile {
    std::vector<Rational> completion;
    std::vector<Rational> lateness;
    Rational lmax;  // 0 for an empty instance
};

inline LatenessProfile lateness_profile(const Instance& inst, const Schedule& sched) {
    if (auto v = validate_schedule(inst, sched); !v.empty()) throw ScheduleInvalid(std::move(v));
    LatenessProfile prof;
    prof.completion.assign(inst.n, Rational(0));
    for (const auto& op : sched.ops)
        if (op.end > prof.completion[op.job]) prof.completion[op.job] = op.end;
    prof.lateness.resize(inst.n);
    for (int j = 0; j < inst.n; ++j) {
        prof.lateness[j] = prof.completion[j] + inst.q[j];
        if (prof.lateness[j] > prof.lmax) prof.lmax = prof.lateness[j];
    }
    return prof;
}

}  // namespace oshop
