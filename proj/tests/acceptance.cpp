// Acceptance suite: runs every acceptance check at its exact threshold
// and prints one pass/fail line per criterion. Exit status is nonzero if
// any criterion fails. argv[1] (optional) points at the CLI binary for
// the determinism criterion.

#include "sfpd/akr.hpp"
#include "sfpd/bpd.hpp"
#include "sfpd/generators.hpp"
#include "sfpd/oracle.hpp"
#include "sfpd/serialize.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace sfpd;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << number << " [" << name << "]: "
              << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool undirected_acyclic(const EdgeSet& edges, const Instance& inst) {
    std::vector<int> parent(inst.vertex_count());
    for (int v = 0; v < inst.vertex_count(); ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int e : edges) {
        int a = find(inst.edge(e).u), b = find(inst.edge(e).v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

bool forest_minimal(const SolveResult& res, const Instance& inst) {
    for (size_t i = 0; i < res.f3_edges.size(); ++i) {
        EdgeSet without = res.f3_edges;
        without.erase(without.begin() + i);
        if (check_feasible(without, inst)) return false;
    }
    return true;
}

// The fixed 500-instance corpus shared by criteria 5 and 6:
// n <= 10, m <= 20, k <= 3, deterministic seeds.
Instance sweep_instance(unsigned long long seed) {
    int n = 5 + static_cast<int>(seed % 6);       // 5..10
    int k = 1 + static_cast<int>(seed % 3);       // 1..3
    double p = n <= 7 ? 0.55 : 0.45;
    for (unsigned long long attempt = 0;; ++attempt) {
        Instance inst = gen_random(n, p, k, 1, 10, seed * 1000 + attempt);
        if (inst.edge_count() <= 20) return inst;
    }
}

std::string run_cli(const std::string& cli, const std::string& args, int* status) {
    std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *status = -1;
        return "";
    }
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    *status = WEXITSTATUS(pclose(pipe));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const Rational eps(1, 100);
    const std::string cli = argc > 1 ? argv[1] : "";

    // 1. fig5 family: bpd = 2k-1, opt = (k-1)(101/100)+1, ratio grows with k
    {
        auto start = Clock::now();
        bool ok = true;
        std::string detail;
        Rational prev_ratio(0);
        for (int k : {2, 3, 5}) {
            Instance inst = gen_fig5(k, eps, false);
            Rational bpd = solve_bpd(inst).total_cost;
            Rational opt = brute_force_opt(inst).cost;
            Rational want_opt = Rational(k - 1) * Rational(101, 100) + Rational(1);
            if (bpd != Rational(2 * k - 1) || opt != want_opt) {
                ok = false;
                detail = "k=" + std::to_string(k) + " bpd=" + bpd.str() +
                         " opt=" + opt.str();
                break;
            }
            Rational ratio = bpd / opt;
            if (ratio <= prev_ratio) {
                ok = false;
                detail = "ratio not increasing at k=" + std::to_string(k);
                break;
            }
            prev_ratio = ratio;
        }
        double t = seconds_since(start);
        if (t >= 5.0) {
            ok = false;
            detail = "runtime " + std::to_string(t) + "s";
        }
        report(1, "fig5 family", ok, detail);
    }

    // 2. fig4 family: akr = (2k-1)(99/100), bpd = k, opt = k - 1/100
    {
        auto start = Clock::now();
        bool ok = true;
        std::string detail;
        for (int k : {2, 3, 5}) {
            Instance inst = gen_fig4(k, eps, false);
            Rational akr = solve_akr(inst).total_cost;
            Rational bpd = solve_bpd(inst).total_cost;
            Rational opt = brute_force_opt(inst).cost;
            if (akr != Rational(2 * k - 1) * Rational(99, 100) || bpd != Rational(k) ||
                opt != Rational(k) - eps) {
                ok = false;
                detail = "k=" + std::to_string(k) + " akr=" + akr.str() + " bpd=" +
                         bpd.str() + " opt=" + opt.str();
                break;
            }
        }
        double t = seconds_since(start);
        if (t >= 5.0) {
            ok = false;
            detail = "runtime " + std::to_string(t) + "s";
        }
        report(2, "fig4 family", ok, detail);
    }

    // 3. fig1 scenario: tau_t = 3/4 + 1/200, tau_s = 1, t-side selected,
    //    doubled 1/2 and 1/2+eps arcs in the solution
    {
        auto start = Clock::now();
        bool ok = true;
        std::string detail;
        Instance inst = gen_fig1(eps, false);
        SolveResult res = solve_bpd(inst);
        if (res.reduction_pairs.size() != 1) {
            ok = false;
            detail = "expected one reduction pair";
        } else {
            const ReductionPair& rp = res.reduction_pairs[0];
            if (rp.tau_t != Rational(3, 4) + Rational(1, 200))
                ok = false, detail = "tau_t=" + rp.tau_t.str();
            if (rp.tau_s != Rational(1)) ok = false, detail += " tau_s=" + rp.tau_s.str();
            if (rp.chose_s) ok = false, detail += " chose s-side";
            auto arcs = bidirect(inst);
            bool half = false, half_eps = false;
            for (int a : res.f2) {
                if (arcs[a].cost == Rational(1, 2) &&
                    std::find(res.f2.begin(), res.f2.end(), reverse_arc(a)) !=
                        res.f2.end())
                    half = true;
                if (arcs[a].cost == Rational(1, 2) + eps &&
                    std::find(res.f2.begin(), res.f2.end(), reverse_arc(a)) !=
                        res.f2.end())
                    half_eps = true;
            }
            if (!half || !half_eps) ok = false, detail += " doubled arcs missing";
        }
        double t = seconds_since(start);
        if (t >= 1.0) {
            ok = false;
            detail = "runtime " + std::to_string(t) + "s";
        }
        report(3, "fig1 scenario", ok, detail);
    }

    // 4. fig2 merging: deactivation of the superset, exactly one active
    //    moat {s2,v1,v2}, then the merge into {s1,s2,v1,v2}
    {
        Instance inst = gen_fig2_merging();
        SolveResult res = solve_bpd(inst);
        const VertexSet merged{0, 1, 2, 3}; // {s1,s2,v1,v2} in generator numbering
        const VertexSet lone{0, 2, 3};      // {s2,v1,v2}
        int deact = -1, merge = -1;
        for (size_t i = 0; i < res.trace.size(); ++i) {
            const auto& ev = res.trace[i];
            if (deact < 0 && ev.kind == TraceEvent::Kind::MoatsRecomputed &&
                std::find(ev.deactivated_sets.begin(), ev.deactivated_sets.end(),
                          merged) != ev.deactivated_sets.end() &&
                ev.active_sets == std::vector<VertexSet>{lone})
                deact = static_cast<int>(i);
            if (deact >= 0 && merge < 0 && ev.kind == TraceEvent::Kind::MoatsMerged &&
                ev.merged_set == merged)
                merge = static_cast<int>(i);
        }
        report(4, "fig2 merging", deact >= 0 && merge > deact);
    }

    // 5. Theorem 5 property suite over 500 fixed random instances
    {
        auto start = Clock::now();
        bool ok = true;
        std::string detail;
        for (unsigned long long seed = 0; seed < 500 && ok; ++seed) {
            Instance inst = sweep_instance(seed);
            SolveResult res = solve_bpd(inst);
            Rational k(inst.pair_count());
            Rational factor = Rational(2) - Rational(1) / k;
            if (!check_feasible(res.f3_edges, inst)) {
                ok = false;
                detail = "infeasible output, seed " + std::to_string(seed);
            } else if (res.total_cost * Rational(1, 2) > factor * res.dual_sum) {
                ok = false;
                detail = "Theorem 5 bound violated, seed " + std::to_string(seed);
            } else if (!check_dual_feasible(res.duals, inst, Relaxation::bcr)) {
                ok = false;
                detail = "BCR-D infeasible, seed " + std::to_string(seed);
            } else if (!undirected_acyclic(res.f3_edges, inst)) {
                ok = false;
                detail = "F3 cyclic, seed " + std::to_string(seed);
            } else {
                Rational opt = brute_force_opt(inst).cost;
                if (res.dual_sum > opt) {
                    ok = false;
                    detail = "weak duality violated, seed " + std::to_string(seed);
                }
            }
        }
        double t = seconds_since(start);
        if (t >= 120.0) {
            ok = false;
            detail = "runtime " + std::to_string(t) + "s";
        }
        report(5, "Theorem 5 suite (500 instances)", ok, detail);
    }

    // 6. Theorem 1 property suite on the same 500 instances
    {
        bool ok = true;
        std::string detail;
        for (unsigned long long seed = 0; seed < 500 && ok; ++seed) {
            Instance inst = sweep_instance(seed);
            SolveResult res = solve_akr(inst);
            if (!check_akr_bound(res)) {
                ok = false;
                detail = "Theorem 1 bound violated, seed " + std::to_string(seed);
            } else if (!check_dual_feasible(res.duals, inst, Relaxation::ucr)) {
                ok = false;
                detail = "UCR-D infeasible, seed " + std::to_string(seed);
            } else if (!forest_minimal(res, inst)) {
                ok = false;
                detail = "pruned forest not minimal, seed " + std::to_string(seed);
            }
        }
        report(6, "Theorem 1 suite (500 instances)", ok, detail);
    }

    // 7. No large-scale experiments exist to reproduce; criteria 1-6 are
    //    the complete experimental surface.
    report(7, "experimental coverage", true, "desk-scale identities only");

    // 8. Determinism: identical CLI invocations produce identical bytes
    {
        bool ok = true;
        std::string detail;
        if (cli.empty()) {
            ok = false;
            detail = "cli path not supplied";
        } else {
            int st1 = 0, st2 = 0;
            std::string fig5a = run_cli(cli, "gen fig5 --k 3 --eps 1/100", &st1);
            std::string fig5b = run_cli(cli, "gen fig5 --k 3 --eps 1/100", &st2);
            ok = ok && st1 == 0 && st2 == 0 && fig5a == fig5b;
            std::ofstream("acc_fig5.sf") << fig5a;
            std::string s1 = run_cli(cli, "solve --algo bpd --trace acc_fig5.sf", &st1);
            std::string s2 = run_cli(cli, "solve --algo bpd --trace acc_fig5.sf", &st2);
            ok = ok && st1 == 0 && st2 == 0 && s1 == s2;
            std::string c1 = run_cli(cli, "compare acc_fig5.sf", &st1);
            std::string c2 = run_cli(cli, "compare acc_fig5.sf", &st2);
            ok = ok && st1 == 0 && st2 == 0 && c1 == c2;
            std::string b1 = run_cli(cli, "batch --seeds 3 --n 7 --k 2", &st1);
            std::string b2 = run_cli(cli, "batch --seeds 3 --n 7 --k 2", &st2);
            ok = ok && st1 == 0 && st2 == 0 && b1 == b2;
            if (!ok) detail = "outputs differ or nonzero exit";
        }
        report(8, "determinism", ok, detail);
    }

    if (failures == 0) std::cout << "all acceptance criteria passed" << std::endl;
    else std::cout << failures << " criterion(s) failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
