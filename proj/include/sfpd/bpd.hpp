#pragma once

#include "sfpd/engine.hpp"
#include "sfpd/instance.hpp"
#include "sfpd/solve_result.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace sfpd {

// F' does not decompose into antiparallel internally-disjoint path pairs
// with admissible endpoints; surfaces an algorithm-invariant violation
// instead of guessing.
struct MalformedResidual : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A reduction path mixes arcs selected in different phases; the primary
// tau rule refuses to guess (see tau_mixed_fallback).
struct MixedPhases : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both reduction paths have infinite tau; invariant violation.
struct BothInfinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool arc_path_exists(int from, int to, const std::vector<char>& arc_in,
                            const std::vector<Arc>& arcs, int n) {
    if (from == to) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (size_t a = 0; a < arcs.size(); ++a) {
            if (!arc_in[a] || arcs[a].tail != v) continue;
            int h = arcs[a].head;
            if (h == to) return true;
            if (!seen[h]) {
                seen[h] = 1;
                stack.push_back(h);
            }
        }
    }
    return false;
}

inline bool bidirectionally_feasible(const std::vector<char>& arc_in,
                                     const std::vector<Arc>& arcs, const Instance& inst) {
    for (const auto& p : inst.pairs()) {
        if (!arc_path_exists(p.s, p.t, arc_in, arcs, inst.vertex_count())) return false;
        if (!arc_path_exists(p.t, p.s, arc_in, arcs, inst.vertex_count())) return false;
    }
    return true;
}

// All simple directed paths from..to over the permitted arcs, enumerated
// in lexicographic arc-index order.
inline void enumerate_paths(int from, int to, const std::vector<char>& permitted,
                            const std::vector<Arc>& arcs, int n,
                            std::vector<std::vector<int>>& out) {
    std::vector<int> path;
    std::vector<char> visited(n, 0);
    visited[from] = 1;
    // iterative DFS with explicit arc cursors
    struct Frame {
        int vertex;
        size_t cursor;
    };
    std::vector<Frame> stack{{from, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        bool advanced = false;
        for (size_t a = f.cursor; a < arcs.size(); ++a) {
            if (!permitted[a] || arcs[a].tail != f.vertex) continue;
            int h = arcs[a].head;
            if (visited[h]) continue;
            f.cursor = a + 1;
            path.push_back(static_cast<int>(a));
            if (h == to) {
                out.push_back(path);
                path.pop_back();
                continue;
            }
            visited[h] = 1;
            stack.push_back(Frame{h, 0});
            advanced = true;
            break;
        }
        if (!advanced) {
            if (stack.size() > 1) {
                visited[stack.back().vertex] = 0;
                path.pop_back();
            }
            stack.pop_back();
        }
    }
}

} // namespace detail

// Reverse-delete over the full inclusion order; feasibility is
// bidirectional directed reachability for every pair. Returns the arcs
// retained in both directions (F1) and the one-directional residual (F').
inline std::pair<ArcSet, ArcSet> prune_bpd(const std::vector<SelectionRecord>& order,
                                           const std::vector<Arc>& arcs,
                                           const Instance& inst) {
    std::vector<char> kept(arcs.size(), 0);
    for (const auto& rec : order) kept[rec.element] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        kept[it->element] = 0;
        if (!detail::bidirectionally_feasible(kept, arcs, inst)) kept[it->element] = 1;
    }
    ArcSet f1, fprime;
    for (size_t a = 0; a < arcs.size(); ++a) {
        if (!kept[a]) continue;
        if (kept[reverse_arc(static_cast<int>(a))])
            f1.push_back(static_cast<int>(a));
        else
            fprime.push_back(static_cast<int>(a));
    }
    return {f1, fprime};
}

struct TauValue {
    bool finite = false;
    Rational value;
};

// Elapsed phase time between the dual formations at the path's endpoints,
// in the clock of the phase the path's arcs were selected in. The fallback
// (allow_mixed) sums per-arc coverage durations instead of erroring on
// mixed-phase paths.
inline TauValue tau(const std::vector<int>& path, const GrowthEngine& engine,
                    bool allow_mixed = false) {
    if (path.empty()) throw std::invalid_argument("tau: empty path");
    const auto& arcs = engine.arcs();
    std::optional<Phase> phase;
    bool mixed = false;
    for (int a : path) {
        Phase p = engine.selection_phase(a);
        if (!phase)
            phase = p;
        else if (*phase != p)
            mixed = true;
    }
    if (mixed) {
        if (!allow_mixed)
            throw MixedPhases("reduction path mixes selection phases");
        Rational total;
        for (int a : path)
            for (const auto& iv : engine.coverage()[a].intervals)
                total += iv.end - iv.start;
        return TauValue{true, total};
    }
    int u = arcs[path.front()].tail;
    int v = arcs[path.back()].head;
    const auto& st = engine.timestamps(*phase);
    if (!st[v] || !st[u]) return TauValue{false, Rational(0)};
    return TauValue{true, *st[v] - *st[u]};
}

// Endpoint admissibility for the reduction phase: incident to an F1 edge
// or an original terminal.
inline bool admissible_endpoint(int v, const EdgeSet& f1_edges, const Instance& inst) {
    if (inst.is_terminal(v)) return true;
    for (int e : f1_edges)
        if (inst.edge(e).u == v || inst.edge(e).v == v) return true;
    return false;
}

// Decomposes F' into vertex-disjoint antiparallel path pairs between
// admissible endpoints. Throws MalformedResidual if arcs remain that no
// such pair explains.
inline std::vector<ReductionPair> find_reduction_pairs(const ArcSet& fprime,
                                                       const ArcSet& f1,
                                                       const Instance& inst,
                                                       const GrowthEngine& engine) {
    const auto& arcs = engine.arcs();
    const int n = inst.vertex_count();
    EdgeSet f1_edges = induced_edges(f1, arcs);

    std::vector<char> unused(arcs.size(), 0);
    for (int a : fprime) unused[a] = 1;
    std::vector<char> vertex_free(n, 1);

    std::vector<ReductionPair> out;
    bool progress = true;
    while (progress) {
        progress = false;
        // candidate endpoints among free vertices touching unused arcs
        std::vector<int> touched;
        for (size_t a = 0; a < arcs.size(); ++a)
            if (unused[a]) {
                touched.push_back(arcs[a].tail);
                touched.push_back(arcs[a].head);
            }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        std::vector<int> candidates;
        for (int v : touched)
            if (vertex_free[v] && admissible_endpoint(v, f1_edges, inst))
                candidates.push_back(v);

        for (size_t i = 0; i < candidates.size() && !progress; ++i) {
            for (size_t j = i + 1; j < candidates.size() && !progress; ++j) {
                int a = candidates[i], b = candidates[j];
                std::vector<std::vector<int>> fwd;
                detail::enumerate_paths(a, b, unused, arcs, n, fwd);
                for (const auto& p1 : fwd) {
                    // remove p1's internal vertices, then search a way back
                    std::vector<char> residual = unused;
                    for (size_t k = 0; k + 1 < p1.size(); ++k) {
                        int internal = arcs[p1[k]].head;
                        for (size_t x = 0; x < arcs.size(); ++x)
                            if (arcs[x].tail == internal || arcs[x].head == internal)
                                residual[x] = 0;
                    }
                    for (int used_arc : p1) residual[used_arc] = 0;
                    std::vector<std::vector<int>> back;
                    detail::enumerate_paths(b, a, residual, arcs, n, back);
                    if (back.empty()) continue;
                    const auto& p2 = back.front();

                    ReductionPair rp;
                    // orient: the path carrying phase-1 arcs is the s-side
                    Phase ph1 = engine.selection_phase(p1.front());
                    if (ph1 == Phase::phase1) {
                        rp.s = a;
                        rp.t = b;
                        rp.path_s = p1;
                        rp.path_t = p2;
                    } else {
                        rp.s = b;
                        rp.t = a;
                        rp.path_s = p2;
                        rp.path_t = p1;
                    }
                    for (int x : rp.path_s) unused[x] = 0;
                    for (int x : rp.path_t) unused[x] = 0;
                    for (const auto& path : {rp.path_s, rp.path_t}) {
                        for (int x : path) {
                            vertex_free[arcs[x].tail] = 0;
                            vertex_free[arcs[x].head] = 0;
                        }
                    }
                    out.push_back(std::move(rp));
                    progress = true;
                    break;
                }
            }
        }
    }
    for (size_t a = 0; a < arcs.size(); ++a)
        if (unused[a])
            throw MalformedResidual(
                "F' arcs do not decompose into antiparallel disjoint path pairs");
    return out;
}

// Reduction phase: per pair, keep the path with smaller tau (ties prefer
// the s-side path), doubled with its reverse arcs.
inline ArcSet reduce(std::vector<ReductionPair>& pairs, const GrowthEngine& engine,
                     bool allow_mixed = false) {
    ArcSet f2;
    for (auto& rp : pairs) {
        TauValue ts = tau(rp.path_s, engine, allow_mixed);
        TauValue tt = tau(rp.path_t, engine, allow_mixed);
        rp.tau_s_finite = ts.finite;
        rp.tau_t_finite = tt.finite;
        if (ts.finite) rp.tau_s = ts.value;
        if (tt.finite) rp.tau_t = tt.value;
        if (!ts.finite && !tt.finite)
            throw BothInfinite("both reduction paths have infinite tau");
        bool choose_s;
        if (!ts.finite)
            choose_s = false;
        else if (!tt.finite)
            choose_s = true;
        else
            choose_s = ts.value <= tt.value;
        rp.chose_s = choose_s;
        const auto& chosen = choose_s ? rp.path_s : rp.path_t;
        for (int a : chosen) {
            f2.push_back(a);
            f2.push_back(reverse_arc(a));
        }
    }
    std::sort(f2.begin(), f2.end());
    f2.erase(std::unique(f2.begin(), f2.end()), f2.end());
    return f2;
}

// The four-phase bidirected primal-dual algorithm: s-phase growth,
// t-phase growth, reverse-delete pruning, then the tau-guided reduction
// on the one-directional residual.
inline SolveResult solve_bpd(const Instance& inst, bool allow_mixed_tau = false) {
    int bad = first_disconnected_pair(inst);
    if (bad >= 0) throw Infeasible(bad);

    GrowthEngine engine(inst, /*bidirected=*/true);
    try {
        engine.run_phase(Phase::phase1, GrowthRule::s_phase);
        engine.run_phase(Phase::phase2, GrowthRule::t_phase);
    } catch (const Stuck& s) {
        throw Infeasible(s.pair_index);
    }

    auto [f1, fprime] = prune_bpd(engine.selection_order(), engine.arcs(), inst);

    SolveResult res;
    res.algorithm = "bpd";
    res.pair_count = inst.pair_count();
    res.f1 = f1;
    res.fprime = fprime;
    for (const auto& rec : engine.selection_order()) {
        if (rec.phase == Phase::phase1) res.phase1_arcs.push_back(rec.element);
        else res.phase2_arcs.push_back(rec.element);
    }
    std::sort(res.phase1_arcs.begin(), res.phase1_arcs.end());
    std::sort(res.phase2_arcs.begin(), res.phase2_arcs.end());

    res.reduction_pairs = find_reduction_pairs(fprime, f1, inst, engine);
    res.f2 = reduce(res.reduction_pairs, engine, allow_mixed_tau);

    ArcSet f3 = f1;
    f3.insert(f3.end(), res.f2.begin(), res.f2.end());
    std::sort(f3.begin(), f3.end());
    f3.erase(std::unique(f3.begin(), f3.end()), f3.end());
    res.f3_edges = induced_edges(f3, engine.arcs());
    for (int e : res.f3_edges) res.total_cost += inst.edge(e).cost;

    res.duals = engine.duals();
    res.dual_sum = engine.dual_sum();
    res.trace = engine.trace();
    res.max_active_moats = engine.max_active_moats();
    return res;
}

} // namespace sfpd
