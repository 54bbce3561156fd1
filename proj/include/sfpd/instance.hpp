#pragma once

#include "sfpd/rational.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sfpd {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct Edge {
    int u = 0;
    int v = 0; // u < v after canonicalization
    Rational cost;
};

struct TerminalPair {
    int s = 0;
    int t = 0;
};

// Undirected instance: n vertices, positive rational edge costs, k >= 1
// terminal pairs. Edges are stored canonically (u < v, sorted by (u, v)),
// so edge indices are stable across parse/emit round trips. Immutable
// after construction.
class Instance {
public:
    Instance(int vertex_count, std::vector<Edge> edges, std::vector<TerminalPair> pairs)
        : n_(vertex_count), edges_(std::move(edges)), pairs_(std::move(pairs)) {
        validate();
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int pair_count() const { return static_cast<int>(pairs_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<TerminalPair>& pairs() const { return pairs_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const TerminalPair& pair(int i) const { return pairs_[i]; }

    bool is_terminal(int v) const {
        for (const auto& p : pairs_)
            if (p.s == v || p.t == v) return true;
        return false;
    }

    Rational total_edge_cost() const {
        Rational sum;
        for (const auto& e : edges_) sum += e.cost;
        return sum;
    }

    // Canonical serialization: n line, edges sorted by (u,v), pairs in
    // input order, costs as lowest-terms p/q.
    std::string emit() const {
        std::ostringstream os;
        os << "n " << n_ << "\n";
        for (const auto& e : edges_)
            os << "e " << e.u << " " << e.v << " " << e.cost.str() << "\n";
        for (const auto& p : pairs_)
            os << "p " << p.s << " " << p.t << "\n";
        return os.str();
    }

    friend bool operator==(const Instance& a, const Instance& b) {
        if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size() ||
            a.pairs_.size() != b.pairs_.size())
            return false;
        for (size_t i = 0; i < a.edges_.size(); ++i) {
            if (a.edges_[i].u != b.edges_[i].u || a.edges_[i].v != b.edges_[i].v ||
                a.edges_[i].cost != b.edges_[i].cost)
                return false;
        }
        for (size_t i = 0; i < a.pairs_.size(); ++i)
            if (a.pairs_[i].s != b.pairs_[i].s || a.pairs_[i].t != b.pairs_[i].t)
                return false;
        return true;
    }

private:
    void validate() {
        if (n_ <= 0)
            throw std::invalid_argument("instance: vertex count must be positive");
        if (pairs_.empty())
            throw std::invalid_argument("instance: at least one terminal pair required");
        for (auto& e : edges_) {
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
                throw std::invalid_argument("instance: edge endpoint out of range");
            if (e.u == e.v)
                throw std::invalid_argument("instance: self-loop edge");
            if (!e.cost.is_positive())
                throw std::invalid_argument("instance: non-positive edge cost");
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        for (size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
                throw std::invalid_argument("instance: duplicate edge");
        for (const auto& p : pairs_) {
            if (p.s < 0 || p.s >= n_ || p.t < 0 || p.t >= n_)
                throw std::invalid_argument("instance: terminal out of range");
            if (p.s == p.t)
                throw std::invalid_argument("instance: pair with s == t");
        }
    }

    int n_;
    std::vector<Edge> edges_;
    std::vector<TerminalPair> pairs_;
};

// Index of the first pair not connected in (V, E), or -1 if all pairs are.
inline int first_disconnected_pair(const Instance& inst) {
    std::vector<int> comp(inst.vertex_count(), -1);
    int next = 0;
    for (int start = 0; start < inst.vertex_count(); ++start) {
        if (comp[start] >= 0) continue;
        int id = next++;
        std::vector<int> stack{start};
        comp[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& e : inst.edges()) {
                int other = e.u == v ? e.v : e.v == v ? e.u : -1;
                if (other >= 0 && comp[other] < 0) {
                    comp[other] = id;
                    stack.push_back(other);
                }
            }
        }
    }
    for (int i = 0; i < inst.pair_count(); ++i)
        if (comp[inst.pair(i).s] != comp[inst.pair(i).t]) return i;
    return -1;
}

// One directed arc of the bidirected expansion. Arc 2e is the u->v
// direction of edge e, arc 2e+1 is v->u; both cost half the edge.
struct Arc {
    int tail = 0;
    int head = 0;
    Rational cost;
    int parent_edge = 0;
    bool forward = true;
};

inline std::vector<Arc> bidirect(const Instance& inst) {
    std::vector<Arc> arcs;
    arcs.reserve(2 * inst.edges().size());
    const Rational half(1, 2);
    for (int e = 0; e < inst.edge_count(); ++e) {
        const Edge& ed = inst.edge(e);
        Rational c = ed.cost * half;
        arcs.push_back(Arc{ed.u, ed.v, c, e, true});
        arcs.push_back(Arc{ed.v, ed.u, c, e, false});
    }
    return arcs;
}

inline int reverse_arc(int a) { return a ^ 1; }

// Parses the instance file format:
//   n <vertex_count>
//   e <u> <v> <cost>     cost ::= integer | p/q | finite decimal
//   p <s> <t>
// '#' starts a comment; records may appear in any order after the n line.
inline Instance parse_instance(std::istream& in) {
    int n = -1;
    std::vector<Edge> edges;
    std::vector<TerminalPair> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "n") {
            if (n >= 0) throw ParseError(lineno, "duplicate n record");
            if (!(ls >> n) || n <= 0)
                throw ParseError(lineno, "bad vertex count");
        } else if (tag == "e") {
            if (n < 0) throw ParseError(lineno, "edge before n record");
            int u, v;
            std::string cost_text;
            if (!(ls >> u >> v >> cost_text))
                throw ParseError(lineno, "malformed edge record");
            Rational c;
            try {
                c = Rational::parse(cost_text);
            } catch (const std::exception& ex) {
                throw ParseError(lineno, ex.what());
            }
            if (!c.is_positive())
                throw ParseError(lineno, "non-positive edge cost");
            if (u < 0 || v < 0 || (n >= 0 && (u >= n || v >= n)))
                throw ParseError(lineno, "edge endpoint out of range");
            if (u == v)
                throw ParseError(lineno, "self-loop edge");
            edges.push_back(Edge{u, v, c});
        } else if (tag == "p") {
            if (n < 0) throw ParseError(lineno, "pair before n record");
            int s, t;
            if (!(ls >> s >> t))
                throw ParseError(lineno, "malformed pair record");
            if (s < 0 || t < 0 || s >= n || t >= n)
                throw ParseError(lineno, "terminal out of range");
            if (s == t)
                throw ParseError(lineno, "pair with s == t");
            pairs.push_back(TerminalPair{s, t});
        } else {
            throw ParseError(lineno, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError(lineno, "trailing tokens '" + extra + "'");
    }
    if (n < 0) throw ParseError(lineno, "missing n record");
    if (pairs.empty()) throw ParseError(lineno, "no terminal pairs");
    try {
        return Instance(n, std::move(edges), std::move(pairs));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(lineno, ex.what());
    }
}

inline Instance parse_instance(const std::string& text) {
    std::istringstream is(text);
    return parse_instance(is);
}

} // namespace sfpd
