#pragma once

#include "oshop/instance.hpp"
#include "oshop/ptas.hpp"
#include "oshop/schedule.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace oshop {

using json = nlohmann::json;

inline Rational rational_from_json(const json& v, const std::string& field) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(field + ": " + e.what());
        }
    }
    throw std::invalid_argument(field + ": expected an integer or a \"a/b\" string");
}

inline json rational_to_json(const Rational& r) {
    const BigInt num = numerator(r);
    if (denominator(r) == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
        return num.convert_to<std::int64_t>();
    return format_rational(r);
}

// Instance wire format: {"m": int, "n": int, "p": [[rational]], "q": [rational]},
// p indexed p[machine][job], indices 0-based.
inline Instance instance_from_json(const json& doc) {
    Instance inst;
    if (!doc.is_object()) throw std::invalid_argument("instance: expected a JSON object");
    inst.m = doc.at("m").get<int>();
    inst.n = doc.at("n").get<int>();
    const auto& p = doc.at("p");
    if (!p.is_array()) throw std::invalid_argument("p: expected an array");
    for (size_t i = 0; i < p.size(); ++i) {
        inst.p.emplace_back();
        if (!p[i].is_array())
            throw std::invalid_argument("p[" + std::to_string(i) + "]: expected an array");
        for (size_t j = 0; j < p[i].size(); ++j)
            inst.p.back().push_back(rational_from_json(
                p[i][j], "p[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
    const auto& q = doc.at("q");
    if (!q.is_array()) throw std::invalid_argument("q: expected an array");
    for (size_t j = 0; j < q.size(); ++j)
        inst.q.push_back(rational_from_json(q[j], "q[" + std::to_string(j) + "]"));
    check_instance(inst);
    return inst;
}

inline json instance_to_json(const Instance& inst) {
    json p = json::array();
    for (const auto& row : inst.p) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rational_to_json(v));
        p.push_back(std::move(r));
    }
    json q = json::array();
    for (const auto& v : inst.q) q.push_back(rational_to_json(v));
    return json{{"m", inst.m}, {"n", inst.n}, {"p", std::move(p)}, {"q", std::move(q)}};
}

inline Instance read_instance(const std::string& bytes) {
    try {
        return instance_from_json(json::parse(bytes));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance: malformed JSON: ") + e.what());
    }
}

inline std::string write_instance(const Instance& inst) { return instance_to_json(inst).dump(); }

// Schedule wire format: {"ops": [{"machine", "job", "start", "end"}]}.
inline Schedule schedule_from_json(const json& doc) {
    Schedule sched;
    for (const auto& o : doc.at("ops")) {
        OpRecord rec;
        rec.machine = o.at("machine").get<int>();
        rec.job = o.at("job").get<int>();
        rec.start = rational_from_json(o.at("start"), "start");
        rec.end = rational_from_json(o.at("end"), "end");
        sched.ops.push_back(std::move(rec));
    }
    return sched;
}

inline json schedule_to_json(const Schedule& sched) {
    json ops = json::array();
    for (const auto& o : sched.ops)
        ops.push_back(json{{"machine", o.machine},
                           {"job", o.job},
                           {"start", rational_to_json(o.start)},
                           {"end", rational_to_json(o.end)}});
    return json{{"ops", std::move(ops)}};
}

inline Schedule read_schedule(const std::string& bytes) {
    try {
        return schedule_from_json(json::parse(bytes));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("schedule: malformed JSON: ") + e.what());
    }
}

inline std::string write_schedule(const Schedule& sched) { return schedule_to_json(sched).dump(); }

inline json diagnostics_to_json(const PtasResult& result, const std::string& mode) {
    json b = json::array(), s = json::array(), t = json::array();
    for (int j : result.partition.big) b.push_back(j);
    for (int j : result.partition.small) s.push_back(j);
    for (int j : result.partition.tiny) t.push_back(j);
    return json{{"k", result.partition.k},
                {"eps_bar", format_rational(result.partition.ebar)},
                {"delta", format_rational(result.grid.step)},
                {"B", std::move(b)},
                {"S", std::move(s)},
                {"T", std::move(t)},
                {"pS", format_rational(result.partition.small_work)},
                {"grid_points",
                 result.grid.point_count <= std::numeric_limits<std::int64_t>::max()
                     ? json(result.grid.point_count.convert_to<std::int64_t>())
                     : json(result.grid.point_count.str())},
                {"assignments_evaluated", result.assignments_evaluated},
                {"mode", mode}};
}

}  // namespace oshop
