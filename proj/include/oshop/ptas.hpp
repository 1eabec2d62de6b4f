#pragma once

#include "oshop/exact.hpp"
#include "oshop/instance.hpp"
#include "oshop/listsched.hpp"
#include "oshop/partition.hpp"
#include "oshop/schedule.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace oshop {

/// Assignment of every positive big-job operation to a grid start time.
struct GridAssignment {
    struct AssignedOp {
        int machine;
        int job;
        Rational start;
    };
    std::vector<AssignedOp> starts;  // sorted by (machine, job)
};

namespace detail {

inline bool intervals_overlap(const Rational& s1, const Rational& e1, const Rational& s2,
                              const Rational& e2) {
    return s1 < e2 && s2 < e1 && e1 > s1 && e2 > s2;
}

struct BigOp {
    int machine;
    int job;
    Rational start;
    Rational dur;
};

inline std::vector<BigOp> big_ops_of(const Instance& inst, const Partition& part,
                                     const Schedule& sched) {
    std::set<int> big(part.big.begin(), part.big.end());
    std::vector<BigOp> out;
    for (const auto& op : sched.ops)
        if (big.count(op.job) && op.end > op.start)
            out.push_back({op.machine, op.job, op.start, op.end - op.start});
    return out;
}

inline std::vector<BigOp> big_ops_of(const Instance& inst, const GridAssignment& assignment) {
    std::vector<BigOp> out;
    for (const auto& a : assignment.starts)
        out.push_back({a.machine, a.job, a.start, inst.p[a.machine][a.job]});
    return out;
}

}  // namespace detail

/// Checks the GridAssignment invariants against the instance/partition: exactly
/// the positive big operations are assigned, every start lies on the grid, and
/// no same-machine or same-job pair overlaps. Throws on the first breach.
inline void check_assignment(const Instance& inst, const Partition& part, const Grid& grid,
                             const GridAssignment& assignment) {
    std::set<std::pair<int, int>> expected;
    for (int j : part.big)
        for (int i = 0; i < inst.m; ++i)
            if (inst.p[i][j] > 0) expected.insert({i, j});
    std::set<std::pair<int, int>> got;
    for (const auto& a : assignment.starts) got.insert({a.machine, a.job});
    if (got != expected)
        throw std::invalid_argument("assignment does not cover the big operations exactly");
    for (const auto& a : assignment.starts)
        if (!grid.on_grid(a.start))
            throw std::invalid_argument("assigned start " + format_rational(a.start) +
                                        " is not a grid point");
    const auto ops = detail::big_ops_of(inst, assignment);
    for (size_t x = 0; x < ops.size(); ++x)
        for (size_t y = x + 1; y < ops.size(); ++y) {
            const auto& a = ops[x];
            const auto& b = ops[y];
            if (a.machine != b.machine && a.job != b.job) continue;
            if (detail::intervals_overlap(a.start, a.start + a.dur, b.start, b.start + b.dur))
                throw std::invalid_argument("assignment is infeasible: overlapping operations");
        }
}

struct BudgetExceeded : std::runtime_error {
    long long yielded;
    explicit BudgetExceeded(long long count)
        : std::runtime_error("assignment budget exhausted after " + std::to_string(count) +
                             " feasible assignments"),
          yielded(count) {}
};

/// Enumerates every feasible grid assignment of the big operations, in
/// lexicographic order over (machine, job, start-index). Calls `yield` per
/// assignment and returns the total count. Throws BudgetExceeded as soon as
/// more than `budget` assignments exist.
inline long long enumerate_assignments(
    const Instance& inst, const Partition& part, const Grid& grid, long long budget,
    const std::function<void(const GridAssignment&)>& yield) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");

    std::vector<std::pair<int, int>> ops;  // (machine, job), sorted
    for (int i = 0; i < inst.m; ++i)
        for (int j : [&] {
                 auto b = part.big;
                 std::sort(b.begin(), b.end());
                 return b;
             }())
            if (inst.p[i][j] > 0) ops.emplace_back(i, j);
    std::sort(ops.begin(), ops.end());

    long long count = 0;
    GridAssignment current;
    if (ops.empty()) {
        yield(current);  // the single empty assignment
        return 1;
    }
    if (grid.step == 0) throw std::invalid_argument("grid step is zero");

    std::vector<Rational> chosen(ops.size());
    std::function<void(size_t)> dfs = [&](size_t idx) {
        if (idx == ops.size()) {
            if (count == budget) throw BudgetExceeded(count);
            current.starts.clear();
            for (size_t x = 0; x < ops.size(); ++x)
                current.starts.push_back({ops[x].first, ops[x].second, chosen[x]});
            ++count;
            yield(current);
            return;
        }
        const auto [mi, jb] = ops[idx];
        const Rational dur = inst.p[mi][jb];
        for (BigInt s = 0; s < grid.starts_per_machine; ++s) {
            const Rational start = grid.start_at(s);
            bool ok = true;
            for (size_t x = 0; x < idx && ok; ++x) {
                if (ops[x].first != mi && ops[x].second != jb) continue;
                const Rational odur = inst.p[ops[x].first][ops[x].second];
                if (detail::intervals_overlap(start, start + dur, chosen[x], chosen[x] + odur))
                    ok = false;
            }
            if (!ok) continue;
            chosen[idx] = start;
            dfs(idx + 1);
        }
    };
    dfs(0);
    return count;
}

/// Lemma-1 style alignment: restrict a schedule to its big operations, delay
/// everything by 2*m*step, then walk the operations in nondecreasing start
/// order (ties: machine, then job), rounding each start up to the next grid
/// point and translating all later operations by the same amount.
inline GridAssignment align_to_grid(const Instance& inst, const Schedule& schedule,
                                    const Partition& part, const Grid& grid) {
    auto ops = detail::big_ops_of(inst, part, schedule);
    if (grid.step == 0) {
        if (!ops.empty()) throw std::invalid_argument("grid step is zero");
        return {};
    }
    const Rational insert = Rational(2 * inst.m) * grid.step;
    for (auto& op : ops) op.start += insert;
    std::sort(ops.begin(), ops.end(), [](const detail::BigOp& a, const detail::BigOp& b) {
        return std::tie(a.start, a.machine, a.job) < std::tie(b.start, b.machine, b.job);
    });
    for (size_t idx = 0; idx < ops.size(); ++idx) {
        Rational target = ops[idx].start;
        if (target <= grid.origin) {
            target = grid.origin;
        } else {
            target = grid.origin + Rational(ceil_div(target - grid.origin, grid.step)) * grid.step;
        }
        const Rational shift = target - ops[idx].start;
        for (size_t l = idx; l < ops.size(); ++l) ops[l].start += shift;
    }
    GridAssignment out;
    for (const auto& op : ops) out.starts.push_back({op.machine, op.job, op.start});
    std::sort(out.starts.begin(), out.starts.end(),
              [](const GridAssignment::AssignedOp& a, const GridAssignment::AssignedOp& b) {
                  return std::tie(a.machine, a.job) < std::tie(b.machine, b.job);
              });
    return out;
}

/// Counters emitted by the tiny-job packing phase.
struct PackStats {
    int push_events = 0;
    Rational max_push_length;
    int big_ops = 0;
};

/// Phase-4 packing: schedules the small jobs greedily in [0, p(S)], then runs
/// the Jackson-order greedy loop over the tiny jobs with the big operations as
/// movable holes. A tiny operation that cannot fit before the next big
/// operation b on its machine pushes b (and every big operation starting at or
/// after b, on all machines) right by exactly the missing amount, after which b
/// is frozen and can never be pushed again.
inline Schedule pack_tiny(const Instance& inst, const Partition& part,
                          const GridAssignment& assignment, const Grid& grid,
                          PackStats* stats = nullptr) {
    check_assignment(inst, part, grid, assignment);

    Schedule sched;

    // Small jobs first, Jackson order restricted to S; everything else blocked.
    if (!part.small.empty()) {
        std::set<int> blocked;
        for (int j = 0; j < inst.n; ++j) blocked.insert(j);
        for (int j : part.small) blocked.erase(j);
        Schedule prefix = list_schedule(inst, jackson_priority(inst), Rational(0), blocked);
        sched.ops = std::move(prefix.ops);
    }

    struct Hole {
        int machine;
        int job;
        Rational start;
        Rational dur;
        bool frozen = false;
    };
    std::vector<Hole> holes;
    for (const auto& a : assignment.starts)
        holes.push_back({a.machine, a.job, a.start, inst.p[a.machine][a.job]});
    PackStats local;
    local.big_ops = static_cast<int>(holes.size());

    std::vector<std::vector<char>> pending(inst.m, std::vector<char>(inst.n, 0));
    int remaining = 0;
    for (int j : part.tiny)
        for (int i = 0; i < inst.m; ++i)
            if (inst.p[i][j] > 0) {
                pending[i][j] = 1;
                ++remaining;
            }
    const auto tiny_priority = jackson_priority(inst).order;

    std::vector<OpRecord> tiny_placed;
    std::vector<Rational> job_free(inst.n, grid.origin);
    std::vector<Rational> machine_busy_until(inst.m, grid.origin);  // from tiny/S ops only

    auto push_holes = [&](Hole& b, const Rational& amount) {
        if (b.frozen) throw std::logic_error("attempt to push a frozen big operation");
        const Rational pivot = b.start;
        for (auto& h : holes)
            if (h.start >= pivot) h.start += amount;
        b.frozen = true;
        ++local.push_events;
        if (amount > local.max_push_length) local.max_push_length = amount;
    };

    Rational t = grid.origin;
    while (remaining > 0) {
        for (int i = 0; i < inst.m; ++i) {
            if (machine_busy_until[i] > t) continue;
            // A big operation strictly covering t blocks the machine; one
            // starting exactly at t is the zero-length bin ahead.
            Hole* next_big = nullptr;
            bool covered = false;
            for (auto& h : holes) {
                if (h.machine != i) continue;
                if (h.start < t && h.start + h.dur > t) {
                    covered = true;
                    break;
                }
                if (h.start >= t && (!next_big || h.start < next_big->start)) next_big = &h;
            }
            if (covered) continue;

            for (int j : tiny_priority) {
                if (!pending[i][j] || job_free[j] > t) continue;
                const Rational d = inst.p[i][j];
                if (next_big && t + d > next_big->start) {
                    if (next_big->frozen) continue;  // considered again after it completes
                    push_holes(*next_big, t + d - next_big->start);
                }
                tiny_placed.push_back({i, j, t, t + d});
                machine_busy_until[i] = t + d;
                job_free[j] = t + d;
                pending[i][j] = 0;
                --remaining;
                break;
            }
        }
        if (remaining == 0) break;
        std::optional<Rational> next;
        auto consider = [&](const Rational& e) {
            if (e > t && (!next || e < *next)) next = e;
        };
        for (const auto& o : tiny_placed) consider(o.end);
        for (const auto& h : holes) consider(h.start + h.dur);
        for (int i = 0; i < inst.m; ++i) consider(machine_busy_until[i]);
        for (int j = 0; j < inst.n; ++j) consider(job_free[j]);
        if (!next) throw std::logic_error("tiny packing stalled with operations remaining");
        t = *next;
    }

    for (const auto& h : holes) sched.ops.push_back({h.machine, h.job, h.start, h.start + h.dur});
    for (const auto& o : tiny_placed) sched.ops.push_back(o);
    if (stats) *stats = local;
    return sched;
}

/// Hole/bin decomposition of the big operations per machine: holes are the big
/// intervals sorted by start, bins the gaps between consecutive holes (the
/// first bin starts at time 0). Prefix sums included.
struct HoleBinProfile {
    struct MachineProfile {
        std::vector<Rational> hole_start;   // s_ir
        std::vector<Rational> hole_end;     // e_ir
        std::vector<Rational> hole_len;     // h_ir
        std::vector<Rational> bin_len;      // a_ir
        std::vector<Rational> holes_prefix; // H_ir
        std::vector<Rational> bins_prefix;  // A_ir
    };
    std::vector<MachineProfile> machines;
};

namespace detail {
inline HoleBinProfile profile_from_big_ops(int m, std::vector<BigOp> ops) {
    HoleBinProfile prof;
    prof.machines.resize(m);
    std::sort(ops.begin(), ops.end(),
              [](const BigOp& a, const BigOp& b) { return a.start < b.start; });
    for (const auto& op : ops) {
        auto& mp = prof.machines[op.machine];
        const Rational prev_end = mp.hole_end.empty() ? Rational(0) : mp.hole_end.back();
        mp.hole_start.push_back(op.start);
        mp.hole_end.push_back(op.start + op.dur);
        mp.hole_len.push_back(op.dur);
        mp.bin_len.push_back(op.start - prev_end);
        mp.holes_prefix.push_back((mp.holes_prefix.empty() ? Rational(0) : mp.holes_prefix.back()) +
                                  mp.hole_len.back());
        mp.bins_prefix.push_back((mp.bins_prefix.empty() ? Rational(0) : mp.bins_prefix.back()) +
                                 mp.bin_len.back());
    }
    return prof;
}
}  // namespace detail

inline HoleBinProfile hole_bin_profile(const Instance& inst, const Partition& part,
                                       const Schedule& sched) {
    return detail::profile_from_big_ops(inst.m, detail::big_ops_of(inst, part, sched));
}

inline HoleBinProfile hole_bin_profile(const Instance& inst,
                                       const GridAssignment& assignment) {
    return detail::profile_from_big_ops(inst.m, detail::big_ops_of(inst, assignment));
}

struct PtasParams {
    Rational epsilon = 1;
    enum class Mode { Enumerate, OracleGuided } mode = Mode::Enumerate;
    std::optional<Rational> delta_override;
    long long budget = 200000;
    ExactLimits exact_limits;  // oracle-guided mode only
};

struct PtasResult {
    Schedule schedule;
    Rational lmax;
    Partition partition;
    Grid grid;
    GridAssignment chosen;
    long long assignments_evaluated = 0;
    PackStats pack;
    bool epsilon_clamped = false;
};

/// The full approximation pipeline: small jobs in [0, p(S)], grid over
/// [p(S), mP], candidate big-job assignments (full enumeration, or the single
/// assignment aligned from an exact optimum), tiny-job packing, best-of.
inline PtasResult ptas_solve(const Instance& inst, const PtasParams& params) {
    check_instance(inst);
    PtasParams p = params;
    if (p.epsilon > 1) {
        p.epsilon = 1;
        // clamped; the analysis only covers epsilon <= 1
    }

    PtasResult result;
    result.epsilon_clamped = params.epsilon > 1;
    result.partition = select_partition(inst, p.epsilon);

    if (result.partition.degenerate) {
        // All processing times are zero: the empty schedule is optimal.
        result.grid = build_grid(inst, result.partition);
        result.lmax = lateness_profile(inst, result.schedule).lmax;
        result.assignments_evaluated = 1;
        return result;
    }

    result.grid = build_grid(inst, result.partition, p.delta_override);

    auto evaluate = [&](const GridAssignment& assignment) {
        PackStats stats;
        Schedule sched = pack_tiny(inst, result.partition, assignment, result.grid, &stats);
        if (auto v = validate_schedule(inst, sched); !v.empty())
            throw ScheduleInvalid(std::move(v));
        const Rational lmax = lateness_profile(inst, sched).lmax;
        ++result.assignments_evaluated;
        if (result.assignments_evaluated == 1 || lmax < result.lmax) {
            result.lmax = lmax;
            result.schedule = std::move(sched);
            result.chosen = assignment;
            result.pack = stats;
        }
    };

    if (p.mode == PtasParams::Mode::OracleGuided) {
        const ExactResult opt = exact_solve(inst, p.exact_limits);
        if (opt.status != ExactResult::Status::ProvedOptimal)
            throw std::runtime_error("exact solver hit its combination limit; cannot align");
        evaluate(align_to_grid(inst, opt.schedule, result.partition, result.grid));
    } else {
        enumerate_assignments(inst, result.partition, result.grid, p.budget, evaluate);
    }
    return result;
}

}  // namespace oshop
