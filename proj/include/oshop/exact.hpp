#pragma once

#include "oshop/instance.hpp"
#include "oshop/schedule.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace oshop {

/// A disjunctive order choice: per machine, the processing order of the jobs
/// with positive operations on it; per job, the order of its machines.
/// Together they determine at most one semi-active schedule.
struct OrderSpec {
    std::vector<std::vector<int>> machine_orders;  // [machine] -> jobs
    std::vector<std::vector<int>> job_orders;      // [job] -> machines
};

/// Builds the semi-active schedule induced by the given orders: each operation
/// starts at the maximum completion time of its machine- and job-predecessors.
/// Returns nullopt when the combined precedence relation is cyclic.
inline std::optional<Schedule> evaluate_orders(const Instance& inst, const OrderSpec& orders) {
    std::vector<std::pair<int, int>> nodes;  // (machine, job), positive ops only
    std::vector<std::vector<int>> node_id(inst.m, std::vector<int>(inst.n, -1));
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.p[i][j] > 0) {
                node_id[i][j] = static_cast<int>(nodes.size());
                nodes.emplace_back(i, j);
            }

    const int nn = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> succ(nn);
    std::vector<int> indeg(nn, 0);
    auto add_edge = [&](int a, int b) {
        succ[a].push_back(b);
        ++indeg[b];
    };
    for (int i = 0; i < inst.m; ++i)
        for (size_t r = 0; r + 1 < orders.machine_orders[i].size(); ++r)
            add_edge(node_id[i][orders.machine_orders[i][r]],
                     node_id[i][orders.machine_orders[i][r + 1]]);
    for (int j = 0; j < inst.n; ++j)
        for (size_t r = 0; r + 1 < orders.job_orders[j].size(); ++r)
            add_edge(node_id[orders.job_orders[j][r]][j],
                     node_id[orders.job_orders[j][r + 1]][j]);

    std::vector<Rational> start(nn, Rational(0));
    std::vector<int> queue;
    for (int v = 0; v < nn; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int processed = 0;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        ++processed;
        const auto [i, j] = nodes[v];
        const Rational done = start[v] + inst.p[i][j];
        for (int w : succ[v]) {
            if (done > start[w]) start[w] = done;
            if (--indeg[w] == 0) queue.push_back(w);
        }
    }
    if (processed != nn) return std::nullopt;  // cyclic

    Schedule sched;
    for (int v = 0; v < nn; ++v) {
        const auto [i, j] = nodes[v];
        sched.ops.push_back({i, j, start[v], start[v] + inst.p[i][j]});
    }
    return sched;
}

struct ExactResult {
    Schedule schedule;
    Rational lmax_star;
    BigInt combinations_examined = 0;
    enum class Status { ProvedOptimal, LimitExceeded } status = Status::ProvedOptimal;
};

struct ExactLimits {
    BigInt max_combinations = 1000000;
};

/// Exhaustive oracle: enumerates every disjunctive order combination in
/// lexicographic order, skipping cyclic ones, and keeps the first-found best
/// schedule. Semi-active schedules contain an optimum because Lmax is regular.
inline ExactResult exact_solve(const Instance& inst, const ExactLimits& limits = {}) {
    check_instance(inst);

    std::vector<std::vector<int>> machine_support(inst.m), job_support(inst.n);
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.p[i][j] > 0) {
                machine_support[i].push_back(j);
                job_support[j].push_back(i);
            }

    // All permutations of each support set, in lexicographic order.
    auto all_perms = [](std::vector<int> base) {
        std::vector<std::vector<int>> out;
        std::sort(base.begin(), base.end());
        do out.push_back(base);
        while (std::next_permutation(base.begin(), base.end()));
        return out;
    };
    std::vector<std::vector<std::vector<int>>> machine_perms, job_perms;
    for (int i = 0; i < inst.m; ++i) machine_perms.push_back(all_perms(machine_support[i]));
    for (int j = 0; j < inst.n; ++j) job_perms.push_back(all_perms(job_support[j]));

    ExactResult result;
    bool have_incumbent = false;

    OrderSpec orders;
    orders.machine_orders.resize(inst.m);
    orders.job_orders.resize(inst.n);
    std::vector<size_t> idx(inst.m + inst.n, 0);  // mixed-radix counter
    bool limit_hit = false;
    while (true) {
        if (result.combinations_examined >= limits.max_combinations) {
            limit_hit = true;
            break;
        }
        for (int i = 0; i < inst.m; ++i) orders.machine_orders[i] = machine_perms[i][idx[i]];
        for (int j = 0; j < inst.n; ++j) orders.job_orders[j] = job_perms[j][idx[inst.m + j]];
        ++result.combinations_examined;

        if (auto sched = evaluate_orders(inst, orders)) {
            Rational lmax = 0;
            std::vector<Rational> completion(inst.n, Rational(0));
            for (const auto& op : sched->ops)
                if (op.end > completion[op.job]) completion[op.job] = op.end;
            for (int j = 0; j < inst.n; ++j) {
                const Rational late = completion[j] + inst.q[j];
                if (late > lmax) lmax = late;
            }
            if (!have_incumbent || lmax < result.lmax_star) {
                result.lmax_star = lmax;
                result.schedule = std::move(*sched);
                have_incumbent = true;
            }
        }

        // next combination (last digit fastest, so enumeration is lexicographic
        // over (machine orders..., job orders...))
        int d = static_cast<int>(idx.size()) - 1;
        for (; d >= 0; --d) {
            const size_t radix =
                d < inst.m ? machine_perms[d].size() : job_perms[d - inst.m].size();
            if (++idx[d] < radix) break;
            idx[d] = 0;
        }
        if (d < 0) break;
    }

    if (!have_incumbent) {
        // No positive operations at all: the empty schedule is optimal.
        result.lmax_star = 0;
        for (int j = 0; j < inst.n; ++j) result.lmax_star = std::max(result.lmax_star, inst.q[j]);
    }
    result.status = limit_hit ? ExactResult::Status::LimitExceeded
                              : ExactResult::Status::ProvedOptimal;
    return result;
}

}  // namespace oshop
