#include "oshop/gen.hpp"
#include "oshop/ptas.hpp"

#include <doctest.h>

#include <vector>

using namespace oshop;

namespace {

// Hand-built partition/grid for micro cases: every listed job is big, the rest
// tiny, grid on [origin, horizon) with the given step.
Partition micro_partition(const Instance& inst, std::vector<int> big) {
    Partition part;
    part.epsilon = 1;
    part.ebar = eps_bar(inst.m, 1);
    part.workload = bounds(inst).P;
    part.big = std::move(big);
    for (int j = 0; j < inst.n; ++j)
        if (std::find(part.big.begin(), part.big.end(), j) == part.big.end())
            part.tiny.push_back(j);
    part.delta = part.tiny_threshold = part.workload;  // placeholder; tests override the grid
    part.big_threshold = part.workload;
    return part;
}

Grid micro_grid(const Instance& inst, const Rational& step) {
    Grid grid;
    grid.machines = inst.m;
    grid.origin = 0;
    grid.step = step;
    grid.horizon = Rational(inst.m) * bounds(inst).P;
    grid.starts_per_machine = ceil_div(grid.horizon, step);
    grid.point_count = BigInt(inst.m) * grid.starts_per_machine;
    return grid;
}

}  // namespace

TEST_CASE("enumerate_assignments counts") {
    SUBCASE("one big job, two operations of length 2, starts {0,2,4,6}") {
        Instance inst;
        inst.m = 2;
        inst.n = 1;
        inst.p = {{2}, {2}};
        inst.q = {0};
        const Partition part = micro_partition(inst, {0});
        Grid grid = micro_grid(inst, 2);
        grid.horizon = 8;  // emulate mP = 8
        grid.starts_per_machine = 4;
        grid.point_count = 8;

        long long seen = 0;
        const long long total = enumerate_assignments(
            inst, part, grid, 1000, [&](const GridAssignment& a) {
                ++seen;
                check_assignment(inst, part, grid, a);
            });
        CHECK(total == 12);  // 16 pairs minus the 4 overlapping equal-start pairs
        CHECK(seen == 12);
    }
    SUBCASE("two single-operation big jobs on one machine, starts {0,2}") {
        Instance inst;
        inst.m = 1;
        inst.n = 2;
        inst.p = {{2, 2}};
        inst.q = {0, 0};
        const Partition part = micro_partition(inst, {0, 1});
        const Grid grid = micro_grid(inst, 2);  // horizon 4, starts {0, 2}
        long long count = enumerate_assignments(inst, part, grid, 1000,
                                                [](const GridAssignment&) {});
        CHECK(count == 2);

        SUBCASE("budget semantics") {
            long long yielded = 0;
            CHECK_THROWS_AS(enumerate_assignments(inst, part, grid, 1,
                                                  [&](const GridAssignment&) { ++yielded; }),
                            BudgetExceeded);
            CHECK(yielded == 1);
        }
    }
    SUBCASE("empty B yields the single empty assignment") {
        Instance inst;
        inst.m = 1;
        inst.n = 1;
        inst.p = {{1}};
        inst.q = {0};
        const Partition part = micro_partition(inst, {});
        long long count = enumerate_assignments(inst, part, micro_grid(inst, 1), 10,
                                                [](const GridAssignment& a) {
                                                    CHECK(a.starts.empty());
                                                });
        CHECK(count == 1);
    }
}

TEST_CASE("align_to_grid on the tight family optimum") {
    const Instance inst = gen_tight(3);
    const Partition part = select_partition(inst, 1);
    const Grid grid = build_grid(inst, part);
    Schedule opt;
    opt.ops.push_back({0, 2, 0, 1});
    opt.ops.push_back({0, 0, 1, 4});
    opt.ops.push_back({1, 2, 1, 2});
    opt.ops.push_back({1, 1, 2, 5});

    const GridAssignment aligned = align_to_grid(inst, opt, part, grid);
    check_assignment(inst, part, grid, aligned);

    // 2m*delta = 1/9 and all shifted starts already sit on the 1/36 grid, so
    // every start moves by exactly 1/9.
    const Rational shift(1, 9);
    for (const auto& a : aligned.starts) {
        Rational orig;
        for (const auto& op : opt.ops)
            if (op.machine == a.machine && op.job == a.job) orig = op.start;
        CHECK(a.start == orig + shift);
    }
}

TEST_CASE("align_to_grid single operation") {
    Instance inst;
    inst.m = 2;
    inst.n = 1;
    inst.p = {{3}, {0}};
    inst.q = {0};
    const Partition part = micro_partition(inst, {0});
    const Grid grid = micro_grid(inst, 1);
    Schedule s;
    s.ops.push_back({0, 0, 0, 3});
    const GridAssignment aligned = align_to_grid(inst, s, part, grid);
    REQUIRE(aligned.starts.size() == 1);
    CHECK(aligned.starts[0].start == 4);  // 2 m delta with delta = 1
}

TEST_CASE("align_to_grid rounds off-grid starts up and preserves order") {
    Instance inst;
    inst.m = 1;
    inst.n = 2;
    inst.p = {{2, 2}};
    inst.q = {0, 0};
    const Partition part = micro_partition(inst, {0, 1});
    const Grid grid = micro_grid(inst, Rational(3, 2));  // horizon 4 -> naive; step 3/2
    Schedule s;
    s.ops.push_back({0, 0, Rational(1, 4), Rational(9, 4)});
    s.ops.push_back({0, 1, Rational(9, 4), Rational(17, 4)});
    const GridAssignment aligned = align_to_grid(inst, s, part, grid);
    // After the 2m*step = 3 insert: starts 13/4 and 21/4. 13/4 rounds up to
    // 9/2 (shift 5/4), pushing the second op to 13/2, which rounds up to 15/2.
    CHECK(aligned.starts[0].start == Rational(9, 2));
    CHECK(aligned.starts[1].start == Rational(15, 2));
    CHECK(aligned.starts[0].start + 2 <= aligned.starts[1].start);
}

TEST_CASE("pack_tiny with no tiny jobs returns the assignment verbatim") {
    Instance inst;
    inst.m = 2;
    inst.n = 1;
    inst.p = {{2}, {2}};
    inst.q = {0};
    const Partition part = micro_partition(inst, {0});
    const Grid grid = micro_grid(inst, 2);
    GridAssignment a;
    a.starts = {{0, 0, 0}, {1, 0, 2}};
    PackStats stats;
    const Schedule s = pack_tiny(inst, part, a, grid, &stats);
    CHECK(validate_schedule(inst, s).empty());
    CHECK(stats.push_events == 0);
    for (const auto& op : s.ops) {
        if (op.machine == 0) CHECK(op.start == 0);
        if (op.machine == 1) CHECK(op.start == 2);
    }
}

TEST_CASE("push and freeze") {
    Instance inst;
    inst.m = 2;
    inst.n = 3;
    inst.p = {{4, 1, 1}, {4, 1, 0}};
    inst.q = {0, 0, 0};
    Partition part = micro_partition(inst, {0});
    const Grid grid = micro_grid(inst, 1);
    GridAssignment a;
    a.starts = {{0, 0, 0}, {1, 0, 4}};

    SUBCASE("a tiny operation pushes an unfrozen big operation") {
        Instance two = inst;
        two.n = 2;
        for (auto& row : two.p) row.pop_back();
        two.q.pop_back();
        Partition part2 = micro_partition(two, {0});
        PackStats stats;
        const Schedule s = pack_tiny(two, part2, a, grid, &stats);
        CHECK(validate_schedule(two, s).empty());
        CHECK(stats.push_events == 1);
        CHECK(stats.max_push_length == 1);
        for (const auto& op : s.ops) {
            if (op.job == 1 && op.machine == 0) CHECK(op.start == 0);
            if (op.job == 1 && op.machine == 1) CHECK(op.start == 1);
            if (op.job == 0 && op.machine == 0) CHECK(op.start == 1);
            if (op.job == 0 && op.machine == 1) CHECK(op.start == 5);
        }
    }

    SUBCASE("a frozen big operation cannot be pushed again") {
        PackStats stats;
        const Schedule s = pack_tiny(inst, part, a, grid, &stats);
        CHECK(validate_schedule(inst, s).empty());
        CHECK(stats.push_events == 1);
        for (const auto& op : s.ops)
            if (op.job == 2) CHECK(op.start == 5);  // waits for the frozen hole to finish
    }
}

TEST_CASE("hole and bin profiles") {
    const Instance inst = gen_tight(3);
    const Partition part = select_partition(inst, 1);
    SUBCASE("tight optimal schedule") {
        Schedule opt;
        opt.ops.push_back({0, 2, 0, 1});
        opt.ops.push_back({0, 0, 1, 4});
        opt.ops.push_back({1, 2, 1, 2});
        opt.ops.push_back({1, 1, 2, 5});
        const auto prof = hole_bin_profile(inst, part, opt);
        const auto& m0 = prof.machines[0];
        CHECK(m0.hole_len == std::vector<Rational>{1, 3});
        CHECK(m0.bin_len == std::vector<Rational>{0, 0});
        CHECK(m0.holes_prefix == std::vector<Rational>{1, 4});
        CHECK(m0.bins_prefix == std::vector<Rational>{0, 0});
    }
    SUBCASE("no big jobs") {
        Partition none = part;
        none.big.clear();
        const auto prof = hole_bin_profile(inst, none, Schedule{});
        for (const auto& mp : prof.machines) CHECK(mp.hole_len.empty());
    }
    SUBCASE("single hole") {
        Instance one;
        one.m = 1;
        one.n = 1;
        one.p = {{3}};
        one.q = {0};
        Schedule s;
        s.ops.push_back({0, 0, 2, 5});
        const auto prof = hole_bin_profile(one, micro_partition(one, {0}), s);
        const auto& mp = prof.machines[0];
        CHECK(mp.bin_len == std::vector<Rational>{2});
        CHECK(mp.hole_len == std::vector<Rational>{3});
        CHECK(mp.bins_prefix == std::vector<Rational>{2});
        CHECK(mp.holes_prefix == std::vector<Rational>{3});
    }
}

TEST_CASE("ptas_solve oracle-guided on the tight family") {
    const Instance inst = gen_tight(3);
    PtasParams params;
    params.mode = PtasParams::Mode::OracleGuided;
    const PtasResult res = ptas_solve(inst, params);
    CHECK(validate_schedule(inst, res.schedule).empty());
    // T is empty, so the output is the aligned optimum: lmax <= L* + 2(|B|+1)m delta
    const Rational budget = Rational(5) + Rational(2 * 4 * 2) * Rational(1, 36);
    CHECK(res.lmax <= budget);
    CHECK(res.lmax <= 2 * Rational(5));  // (1 + eps) L*
    CHECK(res.assignments_evaluated == 1);
}

TEST_CASE("ptas_solve enumerate mode equals brute force on a micro instance") {
    const Instance inst = gen_mixed({5, 2, 300, 2, 3});
    const Partition part = select_partition(inst, 1);
    const Rational override_step = part.workload / 2;

    PtasParams params;
    params.delta_override = override_step;
    const PtasResult res = ptas_solve(inst, params);
    CHECK(validate_schedule(inst, res.schedule).empty());

    // Independent brute force over the full Cartesian product of start tuples.
    const Grid grid = build_grid(inst, part, override_step);
    std::vector<std::pair<int, int>> ops;
    for (int i = 0; i < inst.m; ++i)
        for (int j : part.big)
            if (inst.p[i][j] > 0) ops.emplace_back(i, j);
    long long feasible = 0;
    std::optional<Rational> best;
    const long long starts = grid.starts_per_machine.convert_to<long long>();
    std::vector<long long> pick(ops.size(), 0);
    while (true) {
        GridAssignment a;
        for (size_t x = 0; x < ops.size(); ++x)
            a.starts.push_back({ops[x].first, ops[x].second, grid.start_at(pick[x])});
        bool ok = true;
        for (size_t x = 0; x < ops.size() && ok; ++x)
            for (size_t y = x + 1; y < ops.size() && ok; ++y) {
                if (ops[x].first != ops[y].first && ops[x].second != ops[y].second) continue;
                const Rational sx = a.starts[x].start, sy = a.starts[y].start;
                const Rational ex = sx + inst.p[ops[x].first][ops[x].second];
                const Rational ey = sy + inst.p[ops[y].first][ops[y].second];
                if (sx < ey && sy < ex) ok = false;
            }
        if (ok) {
            ++feasible;
            const Rational lmax =
                lateness_profile(inst, pack_tiny(inst, part, a, grid)).lmax;
            if (!best || lmax < *best) best = lmax;
        }
        size_t d = 0;
        for (; d < pick.size(); ++d) {
            if (++pick[d] < starts) break;
            pick[d] = 0;
        }
        if (d == pick.size()) break;
    }
    CHECK(res.assignments_evaluated == feasible);
    REQUIRE(best.has_value());
    CHECK(res.lmax == *best);
}

TEST_CASE("ptas_solve degenerate all-zero instance") {
    Instance inst;
    inst.m = 2;
    inst.n = 2;
    inst.p = {{0, 0}, {0, 0}};
    inst.q = {3, 8};
    const PtasResult res = ptas_solve(inst, {});
    CHECK(res.lmax == 8);
    CHECK(res.schedule.ops.empty());
}

TEST_CASE("non-S operations start at or after p(S)") {
    // Force a nonempty S: one dominant job, one mid-size job, one tiny job.
    Instance inst;
    inst.m = 2;
    inst.n = 3;
    inst.p = {{300, 3, 1}, {300, 3, 1}};
    inst.q = {0, 0, 0};
    const Partition part = select_partition(inst, 1);
    REQUIRE(!part.small.empty());
    PtasParams params;
    params.delta_override = part.workload / 2;
    const PtasResult res = ptas_solve(inst, params);
    CHECK(validate_schedule(inst, res.schedule).empty());
    for (const auto& op : res.schedule.ops) {
        bool in_s = std::find(part.small.begin(), part.small.end(), op.job) != part.small.end();
        if (!in_s) CHECK(op.start >= part.small_work);
    }
}
