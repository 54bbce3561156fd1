#pragma once

#include "sfpd/engine.hpp"
#include "sfpd/instance.hpp"
#include "sfpd/solve_result.hpp"

#include <algorithm>
#include <vector>

namespace sfpd {

namespace detail {

inline bool edges_connect_all_pairs(const std::vector<char>& edge_in,
                                    const Instance& inst) {
    // union-find over the selected edges
    std::vector<int> parent(inst.vertex_count());
    for (int v = 0; v < inst.vertex_count(); ++v) parent[v] = v;
    std::vector<int>* pp = &parent;
    auto find = [pp](int v) {
        while ((*pp)[v] != v) {
            (*pp)[v] = (*pp)[(*pp)[v]];
            v = (*pp)[v];
        }
        return v;
    };
    for (int e = 0; e < inst.edge_count(); ++e)
        if (edge_in[e]) parent[find(inst.edge(e).u)] = find(inst.edge(e).v);
    for (const auto& p : inst.pairs())
        if (find(p.s) != find(p.t)) return false;
    return true;
}

} // namespace detail

// Classical AKR: synchronized undirected moat growth over the violated
// connected components until every pair is connected, then reverse-delete
// pruning. Edge costs are used directly (no bidirection), so the clock is
// in edge-cost units.
inline SolveResult solve_akr(const Instance& inst) {
    int bad = first_disconnected_pair(inst);
    if (bad >= 0) throw Infeasible(bad);

    GrowthEngine engine(inst, /*bidirected=*/false);
    try {
        engine.run_phase(Phase::akr, GrowthRule::akr);
    } catch (const Stuck& s) {
        throw Infeasible(s.pair_index);
    }

    // Reverse-delete pruning over the inclusion order.
    std::vector<char> kept(inst.edge_count(), 0);
    for (const auto& rec : engine.selection_order()) kept[rec.element] = 1;
    const auto& order = engine.selection_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        kept[it->element] = 0;
        if (!detail::edges_connect_all_pairs(kept, inst)) kept[it->element] = 1;
    }

    SolveResult res;
    res.algorithm = "akr";
    res.pair_count = inst.pair_count();
    for (int e = 0; e < inst.edge_count(); ++e)
        if (kept[e]) res.f3_edges.push_back(e);
    for (int e : res.f3_edges) res.total_cost += inst.edge(e).cost;
    res.duals = engine.duals();
    res.dual_sum = engine.dual_sum();
    res.trace = engine.trace();
    res.max_active_moats = engine.max_active_moats();
    return res;
}

// Theorem 1 certificate: cost(F') <= (2 - 2/A) * sum(y), exactly, where A
// is the maximum simultaneous moat count of the run.
inline bool check_akr_bound(const SolveResult& res) {
    int a = res.max_active_moats;
    // A * cost <= (2A - 2) * dual_sum avoids the division.
    return Rational(a) * res.total_cost <= Rational(2 * a - 2) * res.dual_sum;
}

} // namespace sfpd
