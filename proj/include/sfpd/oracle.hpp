#pragma once

#include "sfpd/engine.hpp"
#include "sfpd/instance.hpp"
#include "sfpd/solve_result.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace sfpd {

struct TooLarge : std::runtime_error {
    explicit TooLarge(int m, int budget)
        : std::runtime_error("instance has " + std::to_string(m) +
                             " edges, enumeration budget is " + std::to_string(budget)) {}
};

inline int oracle_budget() {
    if (const char* env = std::getenv("SFPD_ORACLE_BUDGET"))
        return std::max(1, std::atoi(env));
    return 24;
}

// True iff every terminal pair lies in one component of (V, edges).
inline bool check_feasible(const EdgeSet& edges, const Instance& inst) {
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
    for (int e : edges) parent[find(inst.edge(e).u)] = find(inst.edge(e).v);
    for (const auto& p : inst.pairs())
        if (find(p.s) != find(p.t)) return false;
    return true;
}

struct OptResult {
    Rational cost;
    EdgeSet edges;
};

namespace detail {

inline bool feasible_subset(const std::vector<int>& chosen, const Instance& inst) {
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
    for (int e : chosen) parent[find(inst.edge(e).u)] = find(inst.edge(e).v);
    for (const auto& p : inst.pairs())
        if (find(p.s) != find(p.t)) return false;
    return true;
}

} // namespace detail

// Exhaustive exact optimum over edge subsets, enumerated by cardinality
// then lexicographically, with cost pruning against the incumbent. Among
// minimum-cost solutions the lexicographically smallest edge set wins.
inline OptResult brute_force_opt(const Instance& inst, int budget = 0) {
    if (budget <= 0) budget = oracle_budget();
    const int m = inst.edge_count();
    if (m > budget) throw TooLarge(m, budget);
    int bad = first_disconnected_pair(inst);
    if (bad >= 0) throw Infeasible(bad);

    // Exact integer fast path: scale costs by the lcm of denominators.
    BigInt lcm_den = 1;
    for (const auto& e : inst.edges())
        lcm_den = boost::multiprecision::lcm(lcm_den, e.cost.denominator());
    std::vector<long long> w;
    bool use_ints = true;
    BigInt total = 0;
    for (const auto& e : inst.edges()) {
        BigInt scaled = e.cost.numerator() * (lcm_den / e.cost.denominator());
        total += scaled;
        if (scaled > BigInt(std::numeric_limits<long long>::max() / (m + 1))) {
            use_ints = false;
            break;
        }
        w.push_back(static_cast<long long>(scaled));
    }
    if (total > BigInt(std::numeric_limits<long long>::max() / 2)) use_ints = false;

    std::optional<long long> best_w;
    std::optional<Rational> best_r;
    EdgeSet best_edges;

    // sorted weights give a per-cardinality lower bound for early exit
    std::vector<long long> sorted_w = use_ints ? w : std::vector<long long>{};
    if (use_ints) std::sort(sorted_w.begin(), sorted_w.end());

    std::vector<int> chosen;
    auto cost_of = [&](const std::vector<int>& edges) {
        Rational c;
        for (int e : edges) c += inst.edge(e).cost;
        return c;
    };
    auto lex_less = [](const EdgeSet& a, const EdgeSet& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };

    // recursive combination enumeration for a fixed cardinality
    auto search = [&](auto&& self, int start, int remaining, long long acc_w,
                      const Rational& acc_r) -> void {
        if (remaining == 0) {
            if (!detail::feasible_subset(chosen, inst)) return;
            if (use_ints) {
                if (!best_w || acc_w < *best_w ||
                    (acc_w == *best_w && lex_less(chosen, best_edges))) {
                    best_w = acc_w;
                    best_edges = chosen;
                }
            } else {
                if (!best_r || acc_r < *best_r ||
                    (acc_r == *best_r && lex_less(chosen, best_edges))) {
                    best_r = acc_r;
                    best_edges = chosen;
                }
            }
            return;
        }
        for (int e = start; e + remaining <= m; ++e) {
            if (use_ints) {
                long long nw = acc_w + w[e];
                if (best_w && nw > *best_w) continue;
                chosen.push_back(e);
                self(self, e + 1, remaining - 1, nw, acc_r);
                chosen.pop_back();
            } else {
                Rational nr = acc_r + inst.edge(e).cost;
                if (best_r && nr > *best_r) continue;
                chosen.push_back(e);
                self(self, e + 1, remaining - 1, 0, nr);
                chosen.pop_back();
            }
        }
    };

    for (int c = 0; c <= m; ++c) {
        if (use_ints && best_w) {
            long long lower = 0;
            for (int i = 0; i < c; ++i) lower += sorted_w[i];
            if (lower > *best_w) break; // every c-subset is already too costly
        }
        search(search, 0, c, 0, Rational(0));
    }

    OptResult out;
    out.edges = best_edges;
    out.cost = cost_of(best_edges);
    return out;
}

enum class Relaxation { ucr, bcr };

// Exact feasibility of a dual assignment: per-edge cut constraints for
// UCR-D, per-arc constraints at half edge cost for BCR-D.
inline bool check_dual_feasible(const std::vector<DualRecord>& duals, const Instance& inst,
                                Relaxation relaxation) {
    for (const auto& d : duals)
        if (d.value.is_negative()) return false;
    const Rational half(1, 2);
    if (relaxation == Relaxation::ucr) {
        for (const auto& e : inst.edges()) {
            Rational load;
            for (const auto& d : duals)
                if (set_contains(d.vertices, e.u) != set_contains(d.vertices, e.v))
                    load += d.value;
            if (load > e.cost) return false;
        }
        return true;
    }
    for (const auto& e : inst.edges()) {
        Rational fwd, bwd;
        for (const auto& d : duals) {
            bool has_u = set_contains(d.vertices, e.u);
            bool has_v = set_contains(d.vertices, e.v);
            if (has_u && !has_v) fwd += d.value;
            if (has_v && !has_u) bwd += d.value;
        }
        Rational cap = e.cost * half;
        if (fwd > cap || bwd > cap) return false;
    }
    return true;
}

// Exact single-source shortest path cost (for oracle cross-checks on
// single-pair instances).
inline std::optional<Rational> shortest_path_cost(const Instance& inst, int from, int to) {
    std::vector<std::optional<Rational>> dist(inst.vertex_count());
    std::vector<char> done(inst.vertex_count(), 0);
    dist[from] = Rational(0);
    for (;;) {
        int u = -1;
        for (int v = 0; v < inst.vertex_count(); ++v)
            if (!done[v] && dist[v] && (u < 0 || *dist[v] < *dist[u])) u = v;
        if (u < 0) break;
        done[u] = 1;
        if (u == to) return dist[u];
        for (const auto& e : inst.edges()) {
            int other = e.u == u ? e.v : e.v == u ? e.u : -1;
            if (other < 0) continue;
            Rational nd = *dist[u] + e.cost;
            if (!dist[other] || nd < *dist[other]) dist[other] = nd;
        }
    }
    return std::nullopt;
}

// Per-algorithm ratio and bound summary against the exact optimum.
struct RatioRow {
    std::string algorithm;
    Rational cost;
    Rational dual_sum;
    bool ratio_available = false;
    Rational ratio; // cost / OPT
    Rational bound_lhs;
    Rational bound_rhs; // per-algorithm guarantee at (2 - 1/k)
    Rational bound_slack;
    bool bound_ok = false;
    bool dual_feasible = false;
};

struct RatioReport {
    int n = 0, m = 0, k = 0;
    bool opt_available = false;
    Rational opt;
    EdgeSet opt_edges;
    std::vector<RatioRow> rows;
    bool any_violation = false;
};

inline RatioReport ratio_report(const Instance& inst, const std::vector<SolveResult>& results,
                                bool with_opt = true, int budget = 0) {
    RatioReport rep;
    rep.n = inst.vertex_count();
    rep.m = inst.edge_count();
    rep.k = inst.pair_count();
    if (with_opt) {
        OptResult opt = brute_force_opt(inst, budget); // may throw TooLarge
        rep.opt_available = true;
        rep.opt = opt.cost;
        rep.opt_edges = opt.edges;
    }
    const Rational k(inst.pair_count());
    const Rational factor = Rational(2) - Rational(1) / k; // 2 - 1/k
    const Rational half(1, 2);
    for (const auto& r : results) {
        RatioRow row;
        row.algorithm = r.algorithm;
        row.cost = r.total_cost;
        row.dual_sum = r.dual_sum;
        if (rep.opt_available && rep.opt.is_positive()) {
            row.ratio_available = true;
            row.ratio = r.total_cost / rep.opt;
        }
        if (r.algorithm == "akr") {
            row.bound_lhs = r.total_cost;
            row.dual_feasible = check_dual_feasible(r.duals, inst, Relaxation::ucr);
        } else {
            row.bound_lhs = r.total_cost * half;
            row.dual_feasible = check_dual_feasible(r.duals, inst, Relaxation::bcr);
        }
        row.bound_rhs = factor * r.dual_sum;
        row.bound_slack = row.bound_rhs - row.bound_lhs;
        row.bound_ok = row.bound_lhs <= row.bound_rhs;
        if (!row.bound_ok || !row.dual_feasible) rep.any_violation = true;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace sfpd
