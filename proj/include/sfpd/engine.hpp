#pragma once

#include "sfpd/instance.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfpd {

enum class GrowthRule { akr, s_phase, t_phase };
enum class Phase { akr, phase1, phase2 };

inline const char* phase_name(Phase p) {
    switch (p) {
        case Phase::akr: return "akr";
        case Phase::phase1: return "phase1";
        case Phase::phase2: return "phase2";
    }
    return "?";
}

// Raised when some pair can never be reached by dual growth; the caller
// reports the instance infeasible.
struct Stuck : std::runtime_error {
    explicit Stuck(int pair_index)
        : std::runtime_error("no growable arc for pair " + std::to_string(pair_index)),
          pair_index(pair_index) {}
    int pair_index;
};

using VertexSet = std::vector<int>; // sorted, unique

inline bool set_contains(const VertexSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Minimal violated set as the family computation reports it: vertex set,
// originating pairs/terminals, and whether it survived superset filtering.
struct ViolatedSet {
    VertexSet vertices;
    std::vector<int> origin_pairs; // pair indices (s/t rules) or seed terminals (akr)
    std::vector<int> origin_seeds; // seed terminal vertices
    bool active = true;
};

struct TraceEvent {
    enum class Kind { ArcTight, MoatsRecomputed, MoatsMerged, PhaseBoundary };
    Kind kind;
    Phase phase;
    Rational time;
    int element = -1; // ArcTight: arc/edge id
    std::vector<VertexSet> active_sets;      // MoatsRecomputed
    std::vector<VertexSet> deactivated_sets; // MoatsRecomputed (superset-filtered)
    VertexSet merged_set;                    // MoatsMerged
    std::vector<int> merged_origins;         // MoatsMerged: seed terminals
};

struct CoverageInterval {
    Phase phase;
    Rational start;
    Rational end;
    int multiplicity = 0;
    std::vector<int> moat_seeds; // seed terminals of the growing moats
};

struct ElementCoverage {
    Rational covered;
    std::vector<CoverageInterval> intervals;
};

struct DualRecord {
    VertexSet vertices;
    Rational value;
    Phase phase;
    std::vector<int> origin_seeds;
};

struct SelectionRecord {
    int element = -1;
    Phase phase = Phase::phase1;
    Rational time; // phase-local clock at inclusion
    int seq = 0;
};

namespace detail {

// Reachable set from `seed`: directed closure over selected arcs, or the
// connected component over selected edges for the akr rule.
inline VertexSet closure_from(int seed, const Instance& inst, const std::vector<Arc>& arcs,
                              const std::vector<char>& selected, bool directed) {
    std::vector<char> seen(inst.vertex_count(), 0);
    std::vector<int> stack{seed};
    seen[seed] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (directed) {
            for (size_t a = 0; a < arcs.size(); ++a) {
                if (!selected[a]) continue;
                if (arcs[a].tail == v && !seen[arcs[a].head]) {
                    seen[arcs[a].head] = 1;
                    stack.push_back(arcs[a].head);
                }
            }
        } else {
            for (int e = 0; e < inst.edge_count(); ++e) {
                if (!selected[e]) continue;
                const Edge& ed = inst.edge(e);
                int other = -1;
                if (ed.u == v) other = ed.v;
                else if (ed.v == v) other = ed.u;
                if (other >= 0 && !seen[other]) {
                    seen[other] = 1;
                    stack.push_back(other);
                }
            }
        }
    }
    VertexSet out;
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

} // namespace detail

// Stateless family computation: the minimal violated sets for the given
// selection under the requested rule, with superset filtering and merging
// of identical closures applied.
inline std::vector<ViolatedSet> compute_minimal_violated_sets(
    const std::vector<char>& selected, GrowthRule rule, const Instance& inst,
    const std::vector<Arc>& arcs) {
    std::vector<ViolatedSet> out;
    if (rule == GrowthRule::akr) {
        // Components of (V, selected edges) separating some pair; entities
        // are seeded at distinct terminal vertices and grouped by component.
        std::vector<int> seeds;
        for (const auto& p : inst.pairs()) {
            seeds.push_back(p.s);
            seeds.push_back(p.t);
        }
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
        std::map<VertexSet, std::vector<int>> groups;
        for (int v : seeds)
            groups[detail::closure_from(v, inst, arcs, selected, false)].push_back(v);
        for (auto& [set, members] : groups) {
            bool violated = false;
            for (const auto& p : inst.pairs())
                if (set_contains(set, p.s) != set_contains(set, p.t)) violated = true;
            if (!violated) continue;
            ViolatedSet vs;
            vs.vertices = set;
            vs.origin_pairs = members;
            vs.origin_seeds = members;
            out.push_back(std::move(vs));
        }
    } else {
        const bool from_s = rule == GrowthRule::s_phase;
        std::map<VertexSet, std::vector<int>> groups;
        for (int i = 0; i < inst.pair_count(); ++i) {
            int seed = from_s ? inst.pair(i).s : inst.pair(i).t;
            int partner = from_s ? inst.pair(i).t : inst.pair(i).s;
            VertexSet cl = detail::closure_from(seed, inst, arcs, selected, true);
            if (set_contains(cl, partner)) continue; // pair satisfied under this rule
            groups[cl].push_back(i);
        }
        for (auto& [set, members] : groups) {
            ViolatedSet vs;
            vs.vertices = set;
            vs.origin_pairs = members;
            for (int i : members)
                vs.origin_seeds.push_back(from_s ? inst.pair(i).s : inst.pair(i).t);
            std::sort(vs.origin_seeds.begin(), vs.origin_seeds.end());
            vs.origin_seeds.erase(std::unique(vs.origin_seeds.begin(), vs.origin_seeds.end()),
                                  vs.origin_seeds.end());
            out.push_back(std::move(vs));
        }
    }
    // Superset filtering, smallest cardinality upward.
    std::sort(out.begin(), out.end(), [](const ViolatedSet& a, const ViolatedSet& b) {
        if (a.vertices.size() != b.vertices.size())
            return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    for (size_t j = 0; j < out.size(); ++j)
        for (size_t i = 0; i < j && out[j].active; ++i)
            if (out[i].vertices.size() < out[j].vertices.size() &&
                is_subset(out[i].vertices, out[j].vertices))
                out[j].active = false;
    return out;
}

// Synchronized dual-growth engine. One engine instance owns one solver
// run: arc/edge coverage, the selection sequence, moats with their dual
// segments, per-phase clocks and vertex timestamps, and the event trace.
// The bidirected phases share coverage and selection state; AKR runs on
// the undirected edges of a separate engine.
class GrowthEngine {
public:
    GrowthEngine(const Instance& inst, bool bidirected)
        : inst_(inst), bidirected_(bidirected) {
        if (bidirected_) arcs_ = bidirect(inst);
        int m = element_count();
        coverage_.assign(m, ElementCoverage{});
        selected_.assign(m, 0);
        element_cost_.reserve(m);
        for (int e = 0; e < m; ++e)
            element_cost_.push_back(bidirected_ ? arcs_[e].cost : inst.edge(e).cost);
    }

    int element_count() const {
        return bidirected_ ? static_cast<int>(arcs_.size()) : inst_.edge_count();
    }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Rational& element_cost(int e) const { return element_cost_[e]; }
    const std::vector<char>& selected() const { return selected_; }
    const std::vector<SelectionRecord>& selection_order() const { return order_; }
    const std::vector<ElementCoverage>& coverage() const { return coverage_; }
    const std::vector<DualRecord>& duals() const { return duals_; }
    const std::vector<TraceEvent>& trace() const { return trace_; }
    int max_active_moats() const { return max_active_; }

    // Earliest phase-local time any active moat of `phase` contained each
    // vertex; empty optional if it never did.
    const std::vector<std::optional<Rational>>& timestamps(Phase phase) const {
        return stamps_.at(phase);
    }
    bool has_timestamps(Phase phase) const { return stamps_.count(phase) > 0; }

    Rational dual_sum() const {
        Rational s;
        for (const auto& d : duals_) s += d.value;
        return s;
    }

    Phase selection_phase(int element) const {
        for (const auto& r : order_)
            if (r.element == element) return r.phase;
        throw std::logic_error("selection_phase: element not selected");
    }

    // Runs one synchronized growth phase to its termination condition.
    // Throws Stuck if some pair cannot be reached. A non-negative
    // max_inclusions stops after that many arc inclusions with the moats
    // still live (state inspection in tests).
    void run_phase(Phase phase, GrowthRule rule, int max_inclusions = -1) {
        phase_ = phase;
        rule_ = rule;
        clock_ = Rational(0);
        stamps_[phase].assign(inst_.vertex_count(), std::nullopt);
        seed_moats();
        TraceEvent pb;
        pb.kind = TraceEvent::Kind::PhaseBoundary;
        pb.phase = phase;
        pb.time = clock_;
        trace_.push_back(pb);
        recompute(true);
        int included = 0;
        while (!terminated()) {
            if (max_inclusions >= 0 && included >= max_inclusions) return;
            int tight = first_tight_crossed();
            if (tight >= 0) {
                include(tight);
                ++included;
                recompute(false);
                continue;
            }
            Rational delta = next_delta(); // throws Stuck
            advance(delta);
        }
        finish_phase();
    }

    const Rational& clock() const { return clock_; }

    // Minimum time until some crossed, unselected element goes tight, and
    // the elements achieving it (sorted by index).
    std::pair<Rational, std::vector<int>> next_event() const {
        std::optional<Rational> best;
        std::vector<int> tights;
        for (int e = 0; e < element_count(); ++e) {
            if (selected_[e]) continue;
            int d = crossing_count(e);
            if (d == 0) continue;
            Rational delta = (element_cost_[e] - coverage_[e].covered) / Rational(d);
            if (!best || delta < *best) {
                best = delta;
                tights = {e};
            } else if (delta == *best) {
                tights.push_back(e);
            }
        }
        if (!best) throw Stuck(first_unsatisfied_pair());
        return {*best, tights};
    }

    struct MoatView {
        VertexSet vertices;
        std::vector<int> origin_seeds;
        Rational value;
        bool active;
    };
    std::vector<MoatView> moats() const {
        std::vector<MoatView> out;
        for (const auto& m : moats_)
            out.push_back(MoatView{m.set, m.origin_seeds, m.value, m.active});
        return out;
    }

private:
    struct Moat {
        std::vector<int> members; // pair indices (directed) or seed vertices (akr)
        std::vector<int> origin_seeds;
        VertexSet set;
        Rational value; // open dual segment on `set`
        bool active = false;
        bool candidate = false;
    };

    void seed_moats() {
        moats_.clear();
        satisfied_.assign(inst_.pair_count(), 0);
    }

    bool directed() const { return rule_ != GrowthRule::akr; }

    VertexSet closure_of_seed(int seed) const {
        return detail::closure_from(seed, inst_, arcs_, selected_, directed());
    }

    int seed_vertex(int member) const {
        if (rule_ == GrowthRule::akr) return member;
        return rule_ == GrowthRule::s_phase ? inst_.pair(member).s : inst_.pair(member).t;
    }

    bool terminated() const {
        for (int i = 0; i < inst_.pair_count(); ++i) {
            const auto& p = inst_.pair(i);
            if (rule_ == GrowthRule::akr) {
                VertexSet cl = detail::closure_from(p.s, inst_, arcs_, selected_, false);
                if (!set_contains(cl, p.t)) return false;
            } else if (rule_ == GrowthRule::s_phase) {
                VertexSet cl = detail::closure_from(p.s, inst_, arcs_, selected_, true);
                if (!set_contains(cl, p.t)) return false;
            } else {
                VertexSet cl = detail::closure_from(p.t, inst_, arcs_, selected_, true);
                if (!set_contains(cl, p.s)) return false;
            }
        }
        return true;
    }

    int first_unsatisfied_pair() const {
        for (int i = 0; i < inst_.pair_count(); ++i) {
            const auto& p = inst_.pair(i);
            bool dir = directed();
            int from = (rule_ == GrowthRule::t_phase) ? p.t : p.s;
            int to = (rule_ == GrowthRule::t_phase) ? p.s : p.t;
            VertexSet cl = detail::closure_from(from, inst_, arcs_, selected_, dir);
            if (!set_contains(cl, to)) return i;
        }
        return -1;
    }

    bool crosses(const VertexSet& set, int e) const {
        if (bidirected_)
            return set_contains(set, arcs_[e].tail) && !set_contains(set, arcs_[e].head);
        const Edge& ed = inst_.edge(e);
        return set_contains(set, ed.u) != set_contains(set, ed.v);
    }

    int crossing_count(int e) const {
        int d = 0;
        for (const auto& m : moats_)
            if (m.active && crosses(m.set, e)) ++d;
        return d;
    }

    // Recomputes all closures, regroups moats (merging identical closures),
    // applies superset filtering, stamps newly covered vertices, and logs
    // the family change.
    void recompute(bool initial) {
        // Group live members by closure.
        struct Group {
            VertexSet set;
            std::vector<int> members;
            bool candidate = false;
        };
        std::vector<Group> groups;
        auto member_into = [&](VertexSet set, int member, bool candidate) {
            for (auto& g : groups)
                if (g.set == set) {
                    g.members.push_back(member);
                    g.candidate = g.candidate || candidate;
                    return;
                }
            groups.push_back(Group{std::move(set), {member}, candidate});
        };

        if (rule_ == GrowthRule::akr) {
            std::vector<int> seeds;
            for (const auto& p : inst_.pairs()) {
                seeds.push_back(p.s);
                seeds.push_back(p.t);
            }
            std::sort(seeds.begin(), seeds.end());
            seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
            for (int v : seeds)
                member_into(closure_of_seed(v), v, false);
            for (auto& g : groups)
                for (const auto& p : inst_.pairs())
                    if (set_contains(g.set, p.s) != set_contains(g.set, p.t))
                        g.candidate = true;
        } else {
            const bool from_s = rule_ == GrowthRule::s_phase;
            for (int i = 0; i < inst_.pair_count(); ++i) {
                if (satisfied_[i]) continue;
                VertexSet cl = closure_of_seed(seed_vertex(i));
                int partner = from_s ? inst_.pair(i).t : inst_.pair(i).s;
                if (set_contains(cl, partner)) {
                    satisfied_[i] = 1;
                    continue;
                }
                member_into(std::move(cl), i, true);
            }
        }

        // Match groups against previous moats; rotate dual segments on set
        // changes and merge moats whose closures became identical.
        std::vector<Moat> next;
        std::vector<char> consumed(moats_.size(), 0);
        std::vector<TraceEvent> merges;
        for (auto& g : groups) {
            std::vector<int> prev;
            for (size_t mi = 0; mi < moats_.size(); ++mi)
                for (int member : g.members)
                    if (std::find(moats_[mi].members.begin(), moats_[mi].members.end(),
                                  member) != moats_[mi].members.end()) {
                        if (std::find(prev.begin(), prev.end(), static_cast<int>(mi)) ==
                            prev.end())
                            prev.push_back(static_cast<int>(mi));
                        break;
                    }
            Moat nm;
            nm.members = g.members;
            for (int member : g.members) nm.origin_seeds.push_back(seed_vertex(member));
            std::sort(nm.origin_seeds.begin(), nm.origin_seeds.end());
            nm.origin_seeds.erase(std::unique(nm.origin_seeds.begin(), nm.origin_seeds.end()),
                                  nm.origin_seeds.end());
            nm.set = g.set;
            nm.candidate = g.candidate;
            if (prev.size() == 1 && moats_[prev[0]].set == g.set) {
                nm.value = moats_[prev[0]].value; // same dual variable continues
                consumed[prev[0]] = 1;
            } else {
                for (int pi : prev) {
                    emit_segment(moats_[pi]);
                    consumed[pi] = 1;
                }
                nm.value = Rational(0);
                if (prev.size() >= 2) {
                    TraceEvent ev;
                    ev.kind = TraceEvent::Kind::MoatsMerged;
                    ev.phase = phase_;
                    ev.time = clock_;
                    ev.merged_set = g.set;
                    ev.merged_origins = nm.origin_seeds;
                    merges.push_back(ev);
                }
            }
            next.push_back(std::move(nm));
        }
        // Moats whose members all satisfied (or vanished) finish here.
        for (size_t mi = 0; mi < moats_.size(); ++mi)
            if (!consumed[mi]) emit_segment(moats_[mi]);
        moats_ = std::move(next);

        // Superset filtering among candidates, smallest first.
        std::sort(moats_.begin(), moats_.end(), [](const Moat& a, const Moat& b) {
            if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
            return a.set < b.set;
        });
        std::vector<VertexSet> deactivated;
        for (auto& m : moats_) m.active = m.candidate;
        for (size_t j = 0; j < moats_.size(); ++j) {
            if (!moats_[j].active) continue;
            for (size_t i = 0; i < j; ++i) {
                if (!moats_[i].candidate) continue;
                if (moats_[i].set.size() < moats_[j].set.size() &&
                    is_subset(moats_[i].set, moats_[j].set)) {
                    moats_[j].active = false;
                    deactivated.push_back(moats_[j].set);
                    break;
                }
            }
        }

        int active_count = 0;
        auto& st = stamps_[phase_];
        for (const auto& m : moats_) {
            if (!m.active) continue;
            ++active_count;
            for (int v : m.set)
                if (!st[v]) st[v] = clock_;
        }
        max_active_ = std::max(max_active_, active_count);

        for (auto& ev : merges) trace_.push_back(ev);
        std::vector<VertexSet> active_sets;
        for (const auto& m : moats_)
            if (m.active) active_sets.push_back(m.set);
        if (initial || active_sets != last_active_sets_ || !deactivated.empty()) {
            TraceEvent ev;
            ev.kind = TraceEvent::Kind::MoatsRecomputed;
            ev.phase = phase_;
            ev.time = clock_;
            ev.active_sets = active_sets;
            ev.deactivated_sets = deactivated;
            trace_.push_back(ev);
            last_active_sets_ = active_sets;
        }
    }

    void emit_segment(Moat& m) {
        if (m.value.is_positive()) {
            DualRecord d;
            d.vertices = m.set;
            d.value = m.value;
            d.phase = phase_;
            d.origin_seeds = m.origin_seeds;
            duals_.push_back(std::move(d));
        }
        m.value = Rational(0);
    }

    int first_tight_crossed() const {
        for (int e = 0; e < element_count(); ++e) {
            if (selected_[e]) continue;
            if (coverage_[e].covered != element_cost_[e]) continue;
            if (crossing_count(e) > 0) return e;
        }
        return -1;
    }

    Rational next_delta() const { return next_event().first; }

    void advance(Rational delta) {
        if (delta.is_negative())
            throw std::logic_error("advance: negative delta");
        if (delta.is_zero()) return;
        Rational end = clock_ + delta;
        for (int e = 0; e < element_count(); ++e) {
            if (selected_[e]) continue;
            int d = 0;
            std::vector<int> growing;
            for (const auto& m : moats_)
                if (m.active && crosses(m.set, e)) {
                    ++d;
                    growing.insert(growing.end(), m.origin_seeds.begin(),
                                   m.origin_seeds.end());
                }
            if (d == 0) continue;
            coverage_[e].covered += delta * Rational(d);
            if (coverage_[e].covered > element_cost_[e])
                throw std::logic_error("advance: coverage overshoot");
            std::sort(growing.begin(), growing.end());
            coverage_[e].intervals.push_back(
                CoverageInterval{phase_, clock_, end, d, std::move(growing)});
        }
        for (auto& m : moats_)
            if (m.active) m.value += delta;
        clock_ = end;
    }

    void include(int e) {
        selected_[e] = 1;
        SelectionRecord rec;
        rec.element = e;
        rec.phase = phase_;
        rec.time = clock_;
        rec.seq = static_cast<int>(order_.size());
        order_.push_back(rec);
        TraceEvent ev;
        ev.kind = TraceEvent::Kind::ArcTight;
        ev.phase = phase_;
        ev.time = clock_;
        ev.element = e;
        trace_.push_back(ev);
    }

    void finish_phase() {
        for (auto& m : moats_) emit_segment(m);
        moats_.clear();
        last_active_sets_.clear();
    }

    const Instance& inst_;
    bool bidirected_;
    std::vector<Arc> arcs_;
    std::vector<Rational> element_cost_;
    std::vector<ElementCoverage> coverage_;
    std::vector<char> selected_;
    std::vector<SelectionRecord> order_;
    std::vector<Moat> moats_;
    std::vector<char> satisfied_;
    std::vector<DualRecord> duals_;
    std::vector<TraceEvent> trace_;
    std::map<Phase, std::vector<std::optional<Rational>>> stamps_;
    std::vector<VertexSet> last_active_sets_;
    Rational clock_;
    Phase phase_ = Phase::phase1;
    GrowthRule rule_ = GrowthRule::s_phase;
    int max_active_ = 0;
};

} // namespace sfpd
