#pragma once

#include "sfpd/instance.hpp"
#include "sfpd/oracle.hpp"
#include "sfpd/solve_result.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>

namespace sfpd {

// ordered_json keeps field order stable, so identical runs serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json trace_event_json(const TraceEvent& ev) {
    Json j;
    j["time"] = ev.time.str();
    j["phase"] = phase_name(ev.phase);
    switch (ev.kind) {
        case TraceEvent::Kind::ArcTight:
            j["kind"] = "ArcTight";
            j["payload"] = Json{{"element", ev.element}};
            break;
        case TraceEvent::Kind::MoatsRecomputed:
            j["kind"] = "MoatsRecomputed";
            j["payload"] = Json{{"active", ev.active_sets},
                                {"deactivated", ev.deactivated_sets}};
            break;
        case TraceEvent::Kind::MoatsMerged:
            j["kind"] = "MoatsMerged";
            j["payload"] = Json{{"vertices", ev.merged_set},
                                {"origins", ev.merged_origins}};
            break;
        case TraceEvent::Kind::PhaseBoundary:
            j["kind"] = "PhaseBoundary";
            j["payload"] = Json::object();
            break;
    }
    return j;
}

// One event per line, every number an exact rational.
inline std::string trace_jsonl(const std::vector<TraceEvent>& trace) {
    std::ostringstream os;
    for (const auto& ev : trace) os << trace_event_json(ev).dump() << "\n";
    return os.str();
}

inline Json result_json(const SolveResult& res, const Instance& inst,
                        bool include_trace = false) {
    Json j;
    j["algorithm"] = res.algorithm;
    j["instance"] = Json{{"n", inst.vertex_count()},
                         {"m", inst.edge_count()},
                         {"k", inst.pair_count()}};
    j["total_cost"] = res.total_cost.str();
    j["total_cost_approx"] = res.total_cost.to_double();
    j["dual_sum"] = res.dual_sum.str();
    j["max_active_moats"] = res.max_active_moats;
    Json edges = Json::array();
    for (int e : res.f3_edges) {
        const Edge& ed = inst.edge(e);
        edges.push_back(Json{{"u", ed.u}, {"v", ed.v}, {"cost", ed.cost.str()}});
    }
    j["solution_edges"] = edges;
    if (res.algorithm == "bpd") {
        j["f1_arcs"] = res.f1;
        j["f2_arcs"] = res.f2;
        j["fprime_arcs"] = res.fprime;
        j["phase1_arcs"] = res.phase1_arcs;
        j["phase2_arcs"] = res.phase2_arcs;
        Json pairs = Json::array();
        for (const auto& rp : res.reduction_pairs) {
            Json p;
            p["s"] = rp.s;
            p["t"] = rp.t;
            p["path_s"] = rp.path_s;
            p["path_t"] = rp.path_t;
            p["tau_s"] = rp.tau_s_finite ? Json(rp.tau_s.str()) : Json("inf");
            p["tau_t"] = rp.tau_t_finite ? Json(rp.tau_t.str()) : Json("inf");
            p["chosen"] = rp.chose_s ? "s" : "t";
            pairs.push_back(p);
        }
        j["reduction_pairs"] = pairs;
    }
    Json duals = Json::array();
    for (const auto& d : res.duals) {
        duals.push_back(Json{{"vertices", d.vertices},
                             {"value", d.value.str()},
                             {"phase", phase_name(d.phase)},
                             {"origins", d.origin_seeds}});
    }
    j["duals"] = duals;
    if (include_trace) {
        Json tr = Json::array();
        for (const auto& ev : res.trace) tr.push_back(trace_event_json(ev));
        j["trace"] = tr;
    }
    return j;
}

inline Json report_json(const RatioReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["k"] = rep.k;
    if (rep.opt_available) {
        j["opt"] = rep.opt.str();
        j["opt_approx"] = rep.opt.to_double();
        j["opt_edges"] = rep.opt_edges;
    } else {
        j["opt"] = nullptr;
    }
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row;
        row["algorithm"] = r.algorithm;
        row["cost"] = r.cost.str();
        row["cost_approx"] = r.cost.to_double();
        row["dual_sum"] = r.dual_sum.str();
        if (r.ratio_available) {
            row["ratio"] = r.ratio.str();
            row["ratio_approx"] = r.ratio.to_double();
        } else {
            row["ratio"] = nullptr;
        }
        row["bound_lhs"] = r.bound_lhs.str();
        row["bound_rhs"] = r.bound_rhs.str();
        row["bound_slack"] = r.bound_slack.str();
        row["bound_ok"] = r.bound_ok;
        row["dual_feasible"] = r.dual_feasible;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["any_violation"] = rep.any_violation;
    return j;
}

// Aligned plain-text table; rationals first, float rendering as an
// approximate annotation.
inline std::string report_text(const RatioReport& rep) {
    std::ostringstream os;
    os << "instance: n=" << rep.n << " m=" << rep.m << " k=" << rep.k << "\n";
    if (rep.opt_available)
        os << "optimum:  " << rep.opt.str() << "  (~" << std::setprecision(6)
           << rep.opt.to_double() << ")\n";
    else
        os << "optimum:  (not computed)\n";
    os << std::left << std::setw(6) << "algo" << std::setw(16) << "cost"
       << std::setw(16) << "ratio" << std::setw(16) << "dual_sum" << std::setw(18)
       << "bound_slack" << std::setw(7) << "bound" << "dual\n";
    for (const auto& r : rep.rows) {
        std::ostringstream ratio;
        if (r.ratio_available)
            ratio << r.ratio.str() << " (~" << std::setprecision(4)
                  << r.ratio.to_double() << ")";
        else
            ratio << "-";
        os << std::left << std::setw(6) << r.algorithm << std::setw(16) << r.cost.str()
           << std::setw(16) << ratio.str() << std::setw(16) << r.dual_sum.str()
           << std::setw(18) << r.bound_slack.str() << std::setw(7)
           << (r.bound_ok ? "ok" : "VIOLATED") << (r.dual_feasible ? "ok" : "VIOLATED")
           << "\n";
    }
    return os.str();
}

} // namespace sfpd
