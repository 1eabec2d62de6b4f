#include "oshop/oshop.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content << "\n";
    else
        spill(path, content);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open shop scheduling with delivery times: generators, list "
                 "scheduling, an approximation scheme and an exact oracle"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    std::string family = "random", gen_out;
    std::uint64_t seed = 0;
    int gm = 2, gn = 4, tiny_count = 3;
    long long p_max = 9, q_max = 20, tight_a = 3, big_ops = 300, mixed_q_max = 5;
    gen->add_option("--family", family, "random|tight|mixed")->required();
    gen->add_option("--seed", seed);
    gen->add_option("--m", gm);
    gen->add_option("--n", gn);
    gen->add_option("--p-max", p_max);
    gen->add_option("--q-max", q_max);
    gen->add_option("--a", tight_a, "tight family parameter");
    gen->add_option("--big-ops", big_ops, "mixed family: big operation length");
    gen->add_option("--tiny-count", tiny_count, "mixed family: number of unit jobs");
    gen->add_option("--mixed-q-max", mixed_q_max);
    gen->add_option("-o,--output", gen_out);

    // --- solve ---
    auto* solve = app.add_subcommand("solve", "Solve an instance");
    std::string algo, input, solve_out, priority_csv, mode = "enumerate", epsilon = "1",
                delta_override;
    long long budget = 200000, max_combinations = 1000000;
    solve->add_option("--algo", algo, "list|jackson|ptas|exact")->required();
    solve->add_option("--input", input)->required();
    solve->add_option("--priority", priority_csv, "comma-separated job order (list)");
    solve->add_option("--epsilon", epsilon, "rational, e.g. 1/2 (ptas)");
    solve->add_option("--mode", mode, "enumerate|oracle-guided (ptas)");
    solve->add_option("--delta-override", delta_override, "rational grid step (ptas)");
    solve->add_option("--budget", budget, "max feasible assignments (ptas)");
    solve->add_option("--max-combinations", max_combinations, "exact search limit");
    solve->add_option("--output", solve_out, "schedule file (default stdout)");

    // --- validate ---
    auto* validate = app.add_subcommand("validate", "Validate a schedule against an instance");
    std::string v_instance, v_schedule;
    validate->add_option("--instance", v_instance)->required();
    validate->add_option("--schedule", v_schedule)->required();

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "Run a benchmark config, emit CSV");
    std::string config_path, bench_out;
    bench->add_option("--config", config_path)->required();
    bench->add_option("--out", bench_out, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            oshop::Instance inst;
            if (family == "tight") {
                inst = oshop::gen_tight(tight_a);
            } else if (family == "random") {
                inst = oshop::gen_random({seed, gm, gn, p_max, q_max});
            } else if (family == "mixed") {
                inst = oshop::gen_mixed({seed, gm, big_ops, tiny_count, mixed_q_max});
            } else {
                std::cerr << "unknown family " << family << "\n";
                return 2;
            }
            emit(gen_out, oshop::write_instance(inst));
            return 0;
        }

        if (*solve) {
            const oshop::Instance inst = oshop::read_instance(slurp(input));
            oshop::Schedule sched;
            if (algo == "jackson") {
                sched = oshop::list_schedule(inst, oshop::jackson_priority(inst));
            } else if (algo == "list") {
                oshop::PriorityList pl;
                std::stringstream ss(priority_csv);
                std::string tok;
                while (std::getline(ss, tok, ',')) pl.order.push_back(std::stoi(tok));
                sched = oshop::list_schedule(inst, pl);
            } else if (algo == "exact") {
                const auto res =
                    oshop::exact_solve(inst, {oshop::BigInt(max_combinations)});
                if (res.status != oshop::ExactResult::Status::ProvedOptimal)
                    std::cerr << "warning: limit exceeded, result not certified\n";
                std::cerr << "combinations examined: " << res.combinations_examined << "\n";
                sched = res.schedule;
            } else if (algo == "ptas") {
                oshop::PtasParams params;
                params.epsilon = oshop::parse_rational(epsilon);
                params.mode = mode == "oracle-guided" ? oshop::PtasParams::Mode::OracleGuided
                                                      : oshop::PtasParams::Mode::Enumerate;
                if (!delta_override.empty())
                    params.delta_override = oshop::parse_rational(delta_override);
                params.budget = budget;
                params.exact_limits.max_combinations = oshop::BigInt(max_combinations);
                const auto res = oshop::ptas_solve(inst, params);
                std::cerr << oshop::diagnostics_to_json(res, mode).dump(2) << "\n";
                sched = res.schedule;
            } else {
                std::cerr << "unknown algorithm " << algo << "\n";
                return 2;
            }
            const auto prof = oshop::lateness_profile(inst, sched);
            std::cerr << "lmax = " << oshop::format_rational(prof.lmax) << "\n";
            emit(solve_out, oshop::write_schedule(sched));
            return 0;
        }

        if (*validate) {
            const oshop::Instance inst = oshop::read_instance(slurp(v_instance));
            const oshop::Schedule sched = oshop::read_schedule(slurp(v_schedule));
            const auto violations = oshop::validate_schedule(inst, sched);
            for (const auto& v : violations)
                std::cout << oshop::to_string(v.kind) << ": " << v.detail << "\n";
            if (violations.empty()) {
                std::cout << "ok, lmax = "
                          << oshop::format_rational(oshop::lateness_profile(inst, sched).lmax)
                          << "\n";
                return 0;
            }
            return 1;
        }

        if (*bench) {
            const auto config = oshop::json::parse(slurp(config_path));
            const auto report = oshop::run_bench(config);
            std::string out_path = bench_out;
            if (out_path.empty() && config.contains("out"))
                out_path = config.at("out").get<std::string>();
            emit(out_path, oshop::report_to_csv(report));
            return report.all_valid ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
