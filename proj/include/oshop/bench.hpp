#pragma once

#include "oshop/exact.hpp"
#include "oshop/gen.hpp"
#include "oshop/io.hpp"
#include "oshop/listsched.hpp"
#include "oshop/ptas.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace oshop {

struct RunReport {
    struct Row {
        std::string instance_id;
        std::string algo;
        int m = 0;
        int n = 0;
        std::optional<Rational> lmax;
        Rational P, Q;
        std::optional<Rational> lmax_star;
        std::optional<Rational> ratio;
        long long wall_ms = 0;
        std::string status = "ok";
    };
    std::vector<Row> rows;
    bool all_valid = true;
};

namespace detail {

inline std::string csv_rational(const std::optional<Rational>& r) {
    return r ? format_rational(*r) : std::string();
}

inline std::string ratio_float(const std::optional<Rational>& r) {
    if (!r) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", to_double(*r));
    return buf;
}

inline Instance load_bench_instance(const json& entry, std::string& id) {
    if (entry.contains("file")) {
        const std::string path = entry.at("file").get<std::string>();
        id = path;
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open instance file " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return read_instance(buf.str());
    }
    const std::string family = entry.at("family").get<std::string>();
    if (family == "tight") {
        const long long a = entry.at("a").get<long long>();
        id = "tight-a" + std::to_string(a);
        return gen_tight(a);
    }
    if (family == "random") {
        RandomSpec spec;
        spec.seed = entry.at("seed").get<std::uint64_t>();
        spec.m = entry.at("m").get<int>();
        spec.n = entry.at("n").get<int>();
        if (entry.contains("p_max")) spec.p_max = entry.at("p_max").get<long long>();
        if (entry.contains("q_max")) spec.q_max = entry.at("q_max").get<long long>();
        id = "random-s" + std::to_string(spec.seed) + "-m" + std::to_string(spec.m) + "-n" +
             std::to_string(spec.n);
        return gen_random(spec);
    }
    if (family == "mixed") {
        MixedSpec spec;
        spec.seed = entry.at("seed").get<std::uint64_t>();
        if (entry.contains("m")) spec.m = entry.at("m").get<int>();
        if (entry.contains("big_ops")) spec.big_ops = entry.at("big_ops").get<long long>();
        if (entry.contains("tiny_count")) spec.tiny_count = entry.at("tiny_count").get<int>();
        if (entry.contains("q_max")) spec.q_max = entry.at("q_max").get<long long>();
        id = "mixed-s" + std::to_string(spec.seed) + "-m" + std::to_string(spec.m) + "-b" +
             std::to_string(spec.big_ops) + "-t" + std::to_string(spec.tiny_count);
        return gen_mixed(spec);
    }
    throw std::invalid_argument("unknown instance family " + family);
}

}  // namespace detail

/// Runs every (instance, algorithm) cell of a bench config, validating each
/// schedule and computing ratios against the exact optimum when the config
/// includes a certified exact run for the instance.
///
/// Config: {"instances": [...], "algorithms": [...], "out": path?}. Instances
/// are {"file": F} or generator specs {"family": "tight"|"random"|"mixed", ...};
/// algorithms are "jackson" or {"algo": "list"|"jackson"|"ptas"|"exact", ...}.
inline RunReport run_bench(const json& config) {
    RunReport report;
    std::vector<json> algorithms;
    for (const auto& a : config.at("algorithms"))
        algorithms.push_back(a.is_string() ? json{{"algo", a.get<std::string>()}} : a);

    for (const auto& entry : config.at("instances")) {
        std::string id;
        const Instance inst = detail::load_bench_instance(entry, id);
        const Bounds lb = bounds(inst);

        // Certified optimum for this instance, if an exact cell is configured.
        std::optional<Rational> lmax_star;
        for (const auto& a : algorithms) {
            if (a.at("algo").get<std::string>() != "exact") continue;
            ExactLimits limits;
            if (a.contains("max_combinations"))
                limits.max_combinations = BigInt(a.at("max_combinations").get<long long>());
            const ExactResult res = exact_solve(inst, limits);
            if (res.status == ExactResult::Status::ProvedOptimal) lmax_star = res.lmax_star;
            break;
        }

        for (const auto& a : algorithms) {
            RunReport::Row row;
            row.instance_id = id;
            row.m = inst.m;
            row.n = inst.n;
            row.P = lb.P;
            row.Q = lb.Q;
            row.lmax_star = lmax_star;
            const std::string algo = a.at("algo").get<std::string>();
            const auto t0 = std::chrono::steady_clock::now();
            try {
                Schedule sched;
                if (algo == "jackson") {
                    row.algo = "jackson";
                    sched = list_schedule(inst, jackson_priority(inst));
                } else if (algo == "list") {
                    PriorityList pl;
                    for (const auto& v : a.at("priority")) pl.order.push_back(v.get<int>());
                    row.algo = "list";
                    sched = list_schedule(inst, pl);
                } else if (algo == "exact") {
                    row.algo = "exact";
                    ExactLimits limits;
                    if (a.contains("max_combinations"))
                        limits.max_combinations =
                            BigInt(a.at("max_combinations").get<long long>());
                    const ExactResult res = exact_solve(inst, limits);
                    if (res.status != ExactResult::Status::ProvedOptimal)
                        row.status = "limit-exceeded";
                    sched = res.schedule;
                } else if (algo == "ptas") {
                    PtasParams params;
                    if (a.contains("epsilon"))
                        params.epsilon = a.at("epsilon").is_string()
                                             ? parse_rational(a.at("epsilon").get<std::string>())
                                             : Rational(a.at("epsilon").get<long long>());
                    if (a.contains("mode"))
                        params.mode = a.at("mode").get<std::string>() == "oracle-guided"
                                          ? PtasParams::Mode::OracleGuided
                                          : PtasParams::Mode::Enumerate;
                    if (a.contains("delta_override"))
                        params.delta_override =
                            parse_rational(a.at("delta_override").get<std::string>());
                    if (a.contains("budget")) params.budget = a.at("budget").get<long long>();
                    if (a.contains("max_combinations"))
                        params.exact_limits.max_combinations =
                            BigInt(a.at("max_combinations").get<long long>());
                    row.algo = "ptas";
                    sched = ptas_solve(inst, params).schedule;
                } else {
                    throw std::invalid_argument("unknown algorithm " + algo);
                }

                if (auto v = validate_schedule(inst, sched); !v.empty()) {
                    report.all_valid = false;
                    row.status = "invalid-schedule";
                } else {
                    row.lmax = lateness_profile(inst, sched).lmax;
                    if (lmax_star && *lmax_star > 0) row.ratio = *row.lmax / *lmax_star;
                }
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
            row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

inline std::string report_to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "instance,algo,m,n,lmax,P,Q,lmax_star,ratio,ratio_float,wall_ms,status\n";
    for (const auto& row : report.rows) {
        out << row.instance_id << ',' << row.algo << ',' << row.m << ',' << row.n << ','
            << detail::csv_rational(row.lmax) << ',' << format_rational(row.P) << ','
            << format_rational(row.Q) << ',' << detail::csv_rational(row.lmax_star) << ','
            << detail::csv_rational(row.ratio) << ',' << detail::ratio_float(row.ratio) << ','
            << row.wall_ms << ',' << row.status << '\n';
    }
    return out.str();
}

}  // namespace oshop
