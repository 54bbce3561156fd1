#pragma once

#include "sfpd/engine.hpp"
#include "sfpd/instance.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace sfpd {

struct Infeasible : std::runtime_error {
    explicit Infeasible(int pair_index)
        : std::runtime_error("pair " + std::to_string(pair_index) +
                             " is disconnected in the input graph"),
          pair_index(pair_index) {}
    int pair_index;
};

using ArcSet = std::vector<int>;  // sorted arc indices
using EdgeSet = std::vector<int>; // sorted edge indices

inline EdgeSet induced_edges(const ArcSet& arcs_set, const std::vector<Arc>& arcs) {
    EdgeSet out;
    for (int a : arcs_set) out.push_back(arcs[a].parent_edge);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// One antiparallel disjoint-path pair found by the reduction phase.
struct ReductionPair {
    int s = -1; // endpoint the s->t path leaves
    int t = -1;
    std::vector<int> path_s; // arcs, directed s -> t
    std::vector<int> path_t; // arcs, directed t -> s
    bool tau_s_finite = false;
    bool tau_t_finite = false;
    Rational tau_s;
    Rational tau_t;
    bool chose_s = false;
};

struct SolveResult {
    std::string algorithm; // "akr" | "bpd"
    ArcSet f1;
    ArcSet f2;
    EdgeSet f3_edges;
    std::vector<DualRecord> duals;
    Rational total_cost;
    Rational dual_sum;
    std::vector<TraceEvent> trace;
    int max_active_moats = 0;
    int pair_count = 0;

    // bpd extras, empty for akr
    ArcSet phase1_arcs;
    ArcSet phase2_arcs;
    ArcSet fprime;
    std::vector<ReductionPair> reduction_pairs;
};

} // namespace sfpd
