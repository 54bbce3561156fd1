#pragma once

#include "sfpd/akr.hpp"
#include "sfpd/bpd.hpp"
#include "sfpd/instance.hpp"
#include "sfpd/oracle.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace sfpd {

// A figure-family generator failed its built-in behavioral validation.
struct ReconstructionInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tight family for the bidirected algorithm: hub terminal s_k, edges
// s_i - s_k and s_k - t_i of cost 1, direct edges s_i - t_i of cost
// 1 + eps. The algorithm pays 2k - 1 while the optimum pays
// (k-1)(1+eps) + 1. Vertices: s_i = i-1, t_i = k+i-1.
inline Instance gen_fig5(int k, const Rational& eps, bool validate = true) {
    if (k < 2) throw std::invalid_argument("fig5: k must be >= 2");
    if (!eps.is_positive()) throw std::invalid_argument("fig5: eps must be positive");
    std::vector<Edge> edges;
    const int hub = k - 1; // s_k
    for (int i = 1; i < k; ++i) edges.push_back(Edge{i - 1, hub, Rational(1)});
    for (int i = 1; i <= k; ++i) edges.push_back(Edge{hub, k + i - 1, Rational(1)});
    for (int i = 1; i < k; ++i)
        edges.push_back(Edge{i - 1, k + i - 1, Rational(1) + eps});
    std::vector<TerminalPair> pairs;
    for (int i = 1; i <= k; ++i) pairs.push_back(TerminalPair{i - 1, k + i - 1});
    Instance inst(2 * k, std::move(edges), std::move(pairs));
    if (validate) {
        Rational bpd_cost = solve_bpd(inst).total_cost;
        if (bpd_cost != Rational(2 * k - 1))
            throw ReconstructionInvalid("fig5: bidirected cost " + bpd_cost.str() +
                                        " != " + std::to_string(2 * k - 1));
        Rational want_opt = Rational(k - 1) * (Rational(1) + eps) + Rational(1);
        Rational opt = brute_force_opt(inst).cost;
        if (opt != want_opt)
            throw ReconstructionInvalid("fig5: optimum " + opt.str() +
                                        " != " + want_opt.str());
    }
    return inst;
}

// Tight family for AKR: a star of (1-eps) edges centered at s_1 over all
// other terminals (the s_1 - t_1 star edge doubles as the cheap direct
// connection), plus half-cost detours s_i - c and c - t_i through a shared
// Steiner center c. AKR floods the star for (2k-1)(1-eps); the bidirected
// algorithm takes the 2k detour halves for a total of k; the optimum pays
// k - eps. Vertices: s_i = i-1, t_i = k+i-1, c = 2k. Generation validates
// all three identities by running the solvers and the oracle.
inline Instance gen_fig4(int k, const Rational& eps, bool validate = true) {
    if (k < 2) throw std::invalid_argument("fig4: k must be >= 2");
    if (!eps.is_positive() || eps >= Rational(1, 4))
        throw std::invalid_argument("fig4: eps must lie in (0, 1/4)");
    std::vector<Edge> edges;
    Rational w = Rational(1) - eps;
    for (int x = 1; x < 2 * k; ++x) edges.push_back(Edge{0, x, w});
    const Rational half(1, 2);
    const int c = 2 * k;
    for (int i = 1; i <= k; ++i) edges.push_back(Edge{i - 1, c, half});
    for (int i = 1; i <= k; ++i) edges.push_back(Edge{k + i - 1, c, half});
    std::vector<TerminalPair> pairs;
    for (int i = 1; i <= k; ++i) pairs.push_back(TerminalPair{i - 1, k + i - 1});
    Instance inst(2 * k + 1, std::move(edges), std::move(pairs));
    if (validate) {
        Rational akr_cost = solve_akr(inst).total_cost;
        Rational want_akr = Rational(2 * k - 1) * (Rational(1) - eps);
        if (akr_cost != want_akr)
            throw ReconstructionInvalid("fig4: akr cost " + akr_cost.str() + " != " +
                                        want_akr.str());
        Rational bpd_cost = solve_bpd(inst).total_cost;
        if (bpd_cost != Rational(k))
            throw ReconstructionInvalid("fig4: bidirected cost " + bpd_cost.str() +
                                        " != " + std::to_string(k));
        Rational opt = brute_force_opt(inst).cost;
        Rational want_opt = Rational(k) - eps;
        if (opt != want_opt)
            throw ReconstructionInvalid("fig4: optimum " + opt.str() + " != " +
                                        want_opt.str());
    }
    return inst;
}

// Two-pair instance on which pruning alone is not enough: after both
// growth phases and the reverse delete, the one-directional residual is
// the arc of cost 1 one way against the arcs of cost 1/2+eps and 1/2 the
// other way, and the reduction phase keeps the cheap pair (tau values
// 3/4 + eps/2 against 1).
//
// Vertices: A=0, v2=1, w=2, B=3, t1=4, u2=5, s1=6; pairs (s1,t1) and
// (u2,v2). A and B are the (non-terminal) endpoints of the residual
// paths. Arc costs: {A,w} 1/2, {A,B} 1, {w,B} 1/2+eps; the attachments
// are tuned so the second pair's duals pre-cover exactly the right
// amounts of the residual arcs. Generation validates the tau values, the
// selection, and the doubled arcs.
inline Instance gen_fig1(const Rational& eps, bool validate = true) {
    if (!eps.is_positive() || eps >= Rational(1, 8))
        throw std::invalid_argument("fig1: eps must lie in (0, 1/8)");
    const Rational alpha(1, 8);
    const Rational pi(1, 2);
    const Rational sigma = alpha + Rational(1) + eps;           // {B,u2}
    const Rational cover1 = Rational(1, 4) - eps / Rational(2); // pre-coverage of {w,B}
    const Rational psi = sigma + cover1;                        // {v2,u2}
    const Rational mu = Rational(5, 4) - eps / Rational(2);     // {v2,w}
    const Rational two(2);
    std::vector<Edge> edges{
        Edge{0, 2, Rational(1)},                      // {A,w}  arc 1/2
        Edge{0, 3, Rational(2)},                      // {A,B}  arc 1
        Edge{0, 6, alpha * two},                      // {A,s1}
        Edge{1, 2, mu * two},                         // {v2,w}
        Edge{1, 5, psi * two},                        // {v2,u2}
        Edge{2, 3, (Rational(1, 2) + eps) * two},     // {w,B}  arc 1/2+eps
        Edge{3, 4, pi * two},                         // {B,t1}
        Edge{3, 5, sigma * two},                      // {B,u2}
    };
    std::vector<TerminalPair> pairs{TerminalPair{6, 4}, TerminalPair{5, 1}};
    Instance inst(7, std::move(edges), std::move(pairs));
    if (validate) {
        SolveResult res = solve_bpd(inst);
        const Rational want_t = Rational(3, 4) + eps / Rational(2);
        if (res.reduction_pairs.size() != 1)
            throw ReconstructionInvalid("fig1: expected exactly one reduction pair");
        const ReductionPair& rp = res.reduction_pairs[0];
        if (!rp.tau_s_finite || rp.tau_s != Rational(1))
            throw ReconstructionInvalid("fig1: tau_s != 1");
        if (!rp.tau_t_finite || rp.tau_t != want_t)
            throw ReconstructionInvalid("fig1: tau_t " + rp.tau_t.str() + " != " +
                                        want_t.str());
        if (rp.chose_s)
            throw ReconstructionInvalid("fig1: reduction chose the s-side path");
        // the doubled arcs carry costs 1/2 and 1/2+eps; the reverse
        // label-1 arc stays out of the solution
        auto arcs = bidirect(inst);
        bool half = false, half_eps = false, label1 = false;
        for (int a : res.f2) {
            if (arcs[a].cost == Rational(1, 2)) half = true;
            if (arcs[a].cost == Rational(1, 2) + eps) half_eps = true;
            if (arcs[a].cost == Rational(1)) label1 = true;
        }
        if (!half || !half_eps || label1)
            throw ReconstructionInvalid("fig1: doubled arcs are not the 1/2 and "
                                        "1/2+eps arcs");
    }
    return inst;
}

// The four-vertex merging scenario plus the two partner terminals that
// keep both pairs unsatisfied long enough. Vertices: s2=0, s1=1, v1=2,
// v2=3, t1=4, t2=5; the s2 edge sorts first so the simultaneous reverse
// arcs resolve into deactivation before the merge.
inline Instance gen_fig2_merging() {
    std::vector<Edge> edges{
        Edge{0, 2, Rational(1)},     // s2 - v1, arc 1/2
        Edge{1, 2, Rational(1, 2)},  // s1 - v1, arc 1/4
        Edge{2, 3, Rational(1)},     // v1 - v2, arc 1/2
        Edge{3, 4, Rational(2)},     // v2 - t1, arc 1
        Edge{3, 5, Rational(9, 4)},  // v2 - t2, arc 9/8
    };
    std::vector<TerminalPair> pairs{TerminalPair{1, 4}, TerminalPair{0, 5}};
    return Instance(6, std::move(edges), std::move(pairs));
}

// Random connected-for-all-pairs instance with grid rational costs
// (denominator <= 100), deterministic per seed.
inline Instance gen_random(int n, double edge_probability, int k, int cost_lo, int cost_hi,
                           unsigned long long seed, int max_attempts = 1000) {
    if (n < 2 || k < 1 || cost_lo < 1 || cost_hi < cost_lo)
        throw std::invalid_argument("gen_random: bad parameters");
    if (edge_probability <= 0.0 || edge_probability > 1.0)
        throw std::invalid_argument("gen_random: edge probability out of (0, 1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> den_dist(1, 100);
    std::uniform_int_distribution<int> vert(0, n - 1);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                if (coin(rng) > edge_probability) continue;
                int den = den_dist(rng);
                std::uniform_int_distribution<long long> num_dist(
                    static_cast<long long>(cost_lo) * den,
                    static_cast<long long>(cost_hi) * den);
                edges.push_back(Edge{u, v, Rational(num_dist(rng), den)});
            }
        std::vector<TerminalPair> pairs;
        for (int i = 0; i < k; ++i) {
            int s = vert(rng), t = vert(rng);
            if (s == t) {
                --i;
                continue;
            }
            pairs.push_back(TerminalPair{s, t});
        }
        if (edges.empty()) continue;
        Instance inst(n, std::move(edges), std::move(pairs));
        if (first_disconnected_pair(inst) == -1) return inst;
    }
    throw GenerationFailed("gen_random: no connected instance within the retry budget");
}

} // namespace sfpd
