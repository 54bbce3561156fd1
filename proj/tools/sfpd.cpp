// Command-line driver: solve instances, compare algorithms against the
// exact optimum, generate instance families, run batch sweeps, and
// re-verify stored results.
//
// Exit codes: 0 ok, 1 parse/usage error, 2 infeasible instance,
// 3 generator validation failure, 4 invariant violation.

#include "sfpd/akr.hpp"
#include "sfpd/bpd.hpp"
#include "sfpd/generators.hpp"
#include "sfpd/instance.hpp"
#include "sfpd/oracle.hpp"
#include "sfpd/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace sfpd;

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_instance(in);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int cmd_solve(const std::string& input, const std::string& algo, bool with_trace,
              const std::string& output) {
    Instance inst = load_instance(input);
    SolveResult res;
    try {
        res = algo == "akr" ? solve_akr(inst) : solve_bpd(inst);
    } catch (const Infeasible& inf) {
        std::cerr << "infeasible: " << inf.what() << "\n";
        return 2;
    }
    write_output(output, result_json(res, inst, with_trace).dump(2) + "\n");
    return 0;
}

int cmd_compare(const std::string& input, bool no_opt, const std::string& output) {
    Instance inst = load_instance(input);
    std::vector<SolveResult> results;
    try {
        results.push_back(solve_akr(inst));
        results.push_back(solve_bpd(inst));
    } catch (const Infeasible& inf) {
        std::cerr << "infeasible: " << inf.what() << "\n";
        return 2;
    }
    RatioReport rep;
    try {
        rep = ratio_report(inst, results, !no_opt);
    } catch (const TooLarge& tl) {
        std::cerr << "warning: " << tl.what() << "; comparing solvers only\n";
        rep = ratio_report(inst, results, false);
    }
    write_output(output, report_text(rep) + report_json(rep).dump(2) + "\n");
    return rep.any_violation ? 4 : 0;
}

int cmd_gen(const std::string& family, int k, const std::string& eps_text, int n,
            double edge_prob, unsigned long long seed, int cost_lo, int cost_hi,
            const std::string& output) {
    Rational eps = Rational::parse(eps_text);
    Instance inst = [&] {
        if (family == "fig1") return gen_fig1(eps);
        if (family == "fig2") return gen_fig2_merging();
        if (family == "fig4") return gen_fig4(k, eps);
        if (family == "fig5") return gen_fig5(k, eps);
        return gen_random(n, edge_prob, k, cost_lo, cost_hi, seed);
    }();
    write_output(output, inst.emit());
    return 0;
}

int cmd_batch(unsigned long long seed_from, unsigned long long count, int n, int k,
              double edge_prob, const std::string& output) {
    std::ostringstream csv;
    csv << "# sfpd batch v1: seed,n,m,k,opt,akr_cost,bpd_cost,akr_ratio,bpd_ratio,"
           "akr_bound_ok,bpd_bound_ok,akr_dual_feasible,bpd_dual_feasible\n";
    bool violation = false;
    for (unsigned long long seed = seed_from; seed < seed_from + count; ++seed) {
        Instance inst = gen_random(n, edge_prob, k, 1, 10, seed);
        SolveResult akr = solve_akr(inst);
        SolveResult bpd = solve_bpd(inst);
        RatioReport rep = ratio_report(inst, {akr, bpd});
        const RatioRow& ra = rep.rows[0];
        const RatioRow& rb = rep.rows[1];
        csv << seed << "," << inst.vertex_count() << "," << inst.edge_count() << ","
            << inst.pair_count() << "," << rep.opt.str() << "," << ra.cost.str() << ","
            << rb.cost.str() << "," << (ra.ratio_available ? ra.ratio.str() : "-") << ","
            << (rb.ratio_available ? rb.ratio.str() : "-") << "," << ra.bound_ok << ","
            << rb.bound_ok << "," << ra.dual_feasible << "," << rb.dual_feasible << "\n";
        if (rep.any_violation) violation = true;
    }
    write_output(output, csv.str());
    return violation ? 4 : 0;
}

int cmd_verify(const std::string& instance_path, const std::string& result_path) {
    Instance inst = load_instance(instance_path);
    std::ifstream in(result_path);
    if (!in) throw std::runtime_error("cannot open '" + result_path + "'");
    Json j = Json::parse(in);

    std::string algo = j.at("algorithm");
    Rational claimed_cost = Rational::parse(j.at("total_cost"));
    EdgeSet claimed_edges;
    for (const auto& e : j.at("solution_edges")) {
        int u = e.at("u"), v = e.at("v");
        bool found = false;
        for (int idx = 0; idx < inst.edge_count(); ++idx)
            if (inst.edge(idx).u == u && inst.edge(idx).v == v) {
                claimed_edges.push_back(idx);
                found = true;
            }
        if (!found) {
            std::cerr << "verify: edge {" << u << "," << v << "} not in instance\n";
            return 4;
        }
    }
    std::vector<DualRecord> duals;
    for (const auto& d : j.at("duals")) {
        DualRecord rec;
        rec.vertices = d.at("vertices").get<VertexSet>();
        rec.value = Rational::parse(d.at("value"));
        duals.push_back(rec);
    }

    bool ok = true;
    if (!check_feasible(claimed_edges, inst)) {
        std::cerr << "verify: solution does not connect every pair\n";
        ok = false;
    }
    Rational recomputed;
    for (int e : claimed_edges) recomputed += inst.edge(e).cost;
    if (recomputed != claimed_cost) {
        std::cerr << "verify: stored cost " << claimed_cost << " != recomputed "
                  << recomputed << "\n";
        ok = false;
    }
    Relaxation rel = algo == "akr" ? Relaxation::ucr : Relaxation::bcr;
    if (!check_dual_feasible(duals, inst, rel)) {
        std::cerr << "verify: dual assignment infeasible for "
                  << (rel == Relaxation::ucr ? "UCR-D" : "BCR-D") << "\n";
        ok = false;
    }
    Rational dual_sum;
    for (const auto& d : duals) dual_sum += d.value;
    const Rational k(inst.pair_count());
    Rational factor = Rational(2) - Rational(1) / k;
    Rational lhs = algo == "akr" ? recomputed : recomputed * Rational(1, 2);
    if (lhs > factor * dual_sum) {
        std::cerr << "verify: approximation bound violated\n";
        ok = false;
    }
    std::cout << (ok ? "verify: ok\n" : "verify: FAILED\n");
    return ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact primal-dual solvers for the Steiner forest problem"};
    app.require_subcommand(1);

    std::string input, output, algo = "bpd", family, eps_text = "1/100";
    std::string result_path;
    bool with_trace = false, no_opt = false;
    int k = 3, n = 8, cost_lo = 1, cost_hi = 10;
    double edge_prob = 0.5;
    unsigned long long seed = 0, seed_from = 0, seed_count = 0;

    auto* solve = app.add_subcommand("solve", "run one solver on an instance file");
    solve->add_option("input", input)->required();
    solve->add_option("--algo", algo)->check(CLI::IsMember({"akr", "bpd"}));
    solve->add_flag("--trace", with_trace, "include the full event trace");
    solve->add_option("--output,-o", output);

    auto* compare = app.add_subcommand("compare", "run both solvers plus the oracle");
    compare->add_option("input", input)->required();
    compare->add_flag("--no-opt", no_opt, "skip the brute-force optimum");
    compare->add_option("--output,-o", output);

    auto* gen = app.add_subcommand("gen", "generate an instance family");
    gen->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig4", "fig5", "random"}));
    gen->add_option("--k", k);
    gen->add_option("--eps", eps_text);
    gen->add_option("--n", n);
    gen->add_option("--edge-prob", edge_prob);
    gen->add_option("--seed", seed);
    gen->add_option("--cost-lo", cost_lo);
    gen->add_option("--cost-hi", cost_hi);
    gen->add_option("--output,-o", output);

    auto* batch = app.add_subcommand("batch", "sweep random seeds, write CSV");
    batch->add_option("--seeds", seed_count, "number of seeds")->required();
    batch->add_option("--seed-from", seed_from);
    batch->add_option("--n", n);
    batch->add_option("--k", k);
    batch->add_option("--edge-prob", edge_prob);
    batch->add_option("--output,-o", output);

    auto* verify = app.add_subcommand("verify", "re-check a stored result JSON");
    verify->add_option("instance", input)->required();
    verify->add_option("result", result_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(input, algo, with_trace, output);
        if (compare->parsed()) return cmd_compare(input, no_opt, output);
        if (gen->parsed())
            return cmd_gen(family, k, eps_text, n, edge_prob, seed, cost_lo, cost_hi,
                           output);
        if (batch->parsed())
            return cmd_batch(seed_from, seed_count, n, k, edge_prob, output);
        if (verify->parsed()) return cmd_verify(input, result_path);
    } catch (const ReconstructionInvalid& ex) {
        std::cerr << "generator validation failed: " << ex.what() << "\n";
        return 3;
    } catch (const Infeasible& ex) {
        std::cerr << "infeasible: " << ex.what() << "\n";
        return 2;
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
