#include "sfpd/engine.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sfpd;

namespace {

// Merging scenario: s2=0, s1=1, v1=2, v2=3, t1=4, t2=5. Arc costs are
// half the edge costs; vertex numbering puts the s2 attachment first so
// simultaneous tight arcs resolve in the narrative's order.
Instance merging_instance() {
    return parse_instance(
        "n 6\n"
        "e 0 2 1\n"    // s2-v1, arc 1/2
        "e 1 2 1/2\n"  // s1-v1, arc 1/4
        "e 2 3 1\n"    // v1-v2, arc 1/2
        "e 3 4 2\n"    // v2-t1, arc 1
        "e 3 5 9/4\n"  // v2-t2, arc 9/8
        "p 1 4\n"      // (s1, t1)
        "p 0 5\n");    // (s2, t2)
}

bool has_set(const std::vector<VertexSet>& sets, const VertexSet& want) {
    return std::find(sets.begin(), sets.end(), want) != sets.end();
}

} // namespace

TEST_CASE("no arcs selected: one singleton violated set per pair") {
    Instance inst = parse_instance(
        "n 6\ne 0 1 1\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 4 5 1\np 0 5\np 1 4\np 2 3\n");
    auto arcs = bidirect(inst);
    std::vector<char> none(arcs.size(), 0);
    auto sets = compute_minimal_violated_sets(none, GrowthRule::s_phase, inst, arcs);
    REQUIRE(sets.size() == 3);
    for (const auto& vs : sets) {
        CHECK(vs.vertices.size() == 1);
        CHECK(vs.active);
    }
}

TEST_CASE("identical closures merge into one violated set with both origins") {
    Instance inst = parse_instance("n 3\ne 0 1 1\ne 0 2 1\np 0 1\np 0 2\n");
    auto arcs = bidirect(inst);
    std::vector<char> none(arcs.size(), 0);
    auto sets = compute_minimal_violated_sets(none, GrowthRule::s_phase, inst, arcs);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].vertices == VertexSet{0});
    CHECK(sets[0].origin_pairs.size() == 2);
}

TEST_CASE("akr rule returns violated components only") {
    Instance inst = parse_instance("n 4\ne 0 1 1\ne 2 3 1\np 0 1\np 2 3\n");
    auto arcs = bidirect(inst);
    std::vector<char> selected(inst.edge_count(), 0);
    selected[0] = 1; // component {0,1} now connects pair 0
    auto sets = compute_minimal_violated_sets(selected, GrowthRule::akr, inst, arcs);
    REQUIRE(sets.size() == 2);
    CHECK(has_set({sets[0].vertices, sets[1].vertices}, VertexSet{2}));
    CHECK(has_set({sets[0].vertices, sets[1].vertices}, VertexSet{3}));
}

TEST_CASE("single moat on an adjacent half-cost arc goes tight after 1/2") {
    Instance inst = parse_instance("n 2\ne 0 1 1\np 0 1\n");
    GrowthEngine engine(inst, true);
    engine.run_phase(Phase::phase1, GrowthRule::s_phase, 0);
    auto [delta, tights] = engine.next_event();
    CHECK(delta == Rational(1, 2));
    REQUIRE(tights.size() == 1);
    CHECK(tights[0] == 0); // forward arc
}

TEST_CASE("two moats on one undirected edge double the speed") {
    Instance inst = parse_instance("n 2\ne 0 1 1\np 0 1\n");
    GrowthEngine engine(inst, false);
    engine.run_phase(Phase::akr, GrowthRule::akr, 0);
    auto [delta, tights] = engine.next_event();
    CHECK(delta == Rational(1, 2)); // cost 1, two moats
    Instance half = parse_instance("n 2\ne 0 1 1/2\np 0 1\n");
    GrowthEngine engine2(half, false);
    engine2.run_phase(Phase::akr, GrowthRule::akr, 0);
    CHECK(engine2.next_event().first == Rational(1, 4));
}

TEST_CASE("s-phase on a single edge selects the forward arc at time 1/2") {
    Instance inst = parse_instance("n 2\ne 0 1 1\np 0 1\n");
    GrowthEngine engine(inst, true);
    engine.run_phase(Phase::phase1, GrowthRule::s_phase);
    REQUIRE(engine.selection_order().size() == 1);
    CHECK(engine.selection_order()[0].element == 0);
    CHECK(engine.selection_order()[0].time == Rational(1, 2));
    REQUIRE(engine.duals().size() == 1);
    CHECK(engine.duals()[0].vertices == VertexSet{0});
    CHECK(engine.duals()[0].value == Rational(1, 2));
}

TEST_CASE("merging scenario reproduces the closure sequence") {
    Instance inst = merging_instance();
    GrowthEngine engine(inst, true);
    engine.run_phase(Phase::phase1, GrowthRule::s_phase);

    const auto& trace = engine.trace();
    const VertexSet superset{0, 1, 2, 3};
    const VertexSet s2_set{0, 2, 3};

    // (1) the superset closure is deactivated while S2 alone stays active
    int deact_idx = -1;
    for (size_t i = 0; i < trace.size(); ++i) {
        const auto& ev = trace[i];
        if (ev.kind == TraceEvent::Kind::MoatsRecomputed &&
            has_set(ev.deactivated_sets, superset)) {
            deact_idx = static_cast<int>(i);
            CHECK(ev.active_sets == std::vector<VertexSet>{s2_set});
            break;
        }
    }
    REQUIRE(deact_idx >= 0);
    CHECK(trace[deact_idx].time == Rational(3, 4));

    // (2) afterwards the two identical closures merge
    int merge_idx = -1;
    for (size_t i = deact_idx; i < trace.size(); ++i)
        if (trace[i].kind == TraceEvent::Kind::MoatsMerged) {
            merge_idx = static_cast<int>(i);
            break;
        }
    REQUIRE(merge_idx > deact_idx);
    CHECK(trace[merge_idx].merged_set == superset);
    CHECK(trace[merge_idx].merged_origins == std::vector<int>{0, 1});
}

TEST_CASE("engine state obeys the core invariants on the merging instance") {
    Instance inst = merging_instance();
    GrowthEngine engine(inst, true);
    engine.run_phase(Phase::phase1, GrowthRule::s_phase);
    engine.run_phase(Phase::phase2, GrowthRule::t_phase);

    // coverage never exceeds cost; selected arcs are covered exactly
    for (int a = 0; a < engine.element_count(); ++a) {
        CHECK(engine.coverage()[a].covered <= engine.element_cost(a));
        if (engine.selected()[a])
            CHECK(engine.coverage()[a].covered == engine.element_cost(a));
    }
    // coverage equals the interval lengths weighted by multiplicity
    for (int a = 0; a < engine.element_count(); ++a) {
        Rational total;
        for (const auto& iv : engine.coverage()[a].intervals)
            total += (iv.end - iv.start) * Rational(iv.multiplicity);
        CHECK(total == engine.coverage()[a].covered);
    }
    // moat count never exceeded k
    CHECK(engine.max_active_moats() <= inst.pair_count());
    // dual sum equals the sum of recorded segments
    Rational s;
    for (const auto& d : engine.duals()) s += d.value;
    CHECK(s == engine.dual_sum());
    // event times are non-decreasing within each phase
    Rational last1(-1), last2(-1);
    for (const auto& ev : engine.trace()) {
        if (ev.phase == Phase::phase1) {
            CHECK(ev.time >= last1);
            last1 = ev.time;
        } else {
            CHECK(ev.time >= last2);
            last2 = ev.time;
        }
    }
    // terminal that seeds a moat has timestamp zero
    CHECK(engine.timestamps(Phase::phase1)[1] == Rational(0));
    CHECK(engine.timestamps(Phase::phase1)[0] == Rational(0));
}

TEST_CASE("identical runs produce identical traces") {
    Instance inst = merging_instance();
    GrowthEngine a(inst, true), b(inst, true);
    a.run_phase(Phase::phase1, GrowthRule::s_phase);
    b.run_phase(Phase::phase1, GrowthRule::s_phase);
    const auto& ta = a.trace();
    const auto& tb = b.trace();
    REQUIRE(ta.size() == tb.size());
    for (size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].kind == tb[i].kind);
        CHECK(ta[i].time == tb[i].time);
        CHECK(ta[i].element == tb[i].element);
        CHECK(ta[i].active_sets == tb[i].active_sets);
    }
}

TEST_CASE("stuck on a disconnected instance") {
    Instance inst = parse_instance("n 4\ne 0 1 1\ne 2 3 1\np 0 2\n");
    GrowthEngine engine(inst, true);
    CHECK_THROWS_AS(engine.run_phase(Phase::phase1, GrowthRule::s_phase), Stuck);
}

TEST_CASE("a vertex never leaves the union of a phase's moats") {
    Instance inst = merging_instance();
    std::vector<char> seen(inst.vertex_count(), 0);
    for (int steps = 0; steps <= 50; ++steps) {
        GrowthEngine probe(inst, true);
        probe.run_phase(Phase::phase1, GrowthRule::s_phase, steps);
        if (probe.moats().empty()) break; // phase completed
        std::vector<char> now(inst.vertex_count(), 0);
        for (const auto& m : probe.moats())
            for (int v : m.vertices) now[v] = 1;
        for (int v = 0; v < inst.vertex_count(); ++v)
            if (seen[v]) CHECK(now[v]);
        seen = now;
    }
}
