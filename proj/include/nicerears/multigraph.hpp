#pragma once

// Loopless undirected multigraph with stable edge identities, plus the
// connectivity / bridge / block machinery everything else is built on.
//
// Parallel edges are semantically distinct, so the edge id (index into the
// edge list) is the key everywhere; endpoint pairs are never used as keys.
// Subgraph views are ordinary Multigraphs that keep the original edge ids
// in `label`, so solutions computed on a view lift back without translation.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nicerears {

class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int n) : n_(n), adj_(n) {
        if (n < 1) throw std::invalid_argument("Multigraph: vertex count must be >= 1");
    }

    // Adds edge {u,v}; returns its id. Loops are rejected.
    int add_edge(int u, int v, int label = -1) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("add_edge: vertex out of range");
        if (u == v) throw std::invalid_argument("add_edge: loops are forbidden");
        int id = static_cast<int>(ends_.size());
        ends_.emplace_back(u, v);
        label_.push_back(label < 0 ? id : label);
        adj_[u].push_back({v, id});
        adj_[v].push_back({u, id});
        return id;
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(ends_.size()); }

    std::pair<int, int> ends(int e) const { return ends_.at(e); }
    int u(int e) const { return ends_.at(e).first; }
    int v(int e) const { return ends_.at(e).second; }

    // Original edge id of edge `e` in the host this view was taken from.
    int label(int e) const { return label_.at(e); }

    // Endpoint of `e` other than `x`.
    int other_end(int e, int x) const {
        auto [a, b] = ends_.at(e);
        if (x == a) return b;
        if (x == b) return a;
        throw std::invalid_argument("other_end: vertex not incident to edge");
    }

    bool incident(int e, int x) const {
        auto [a, b] = ends_.at(e);
        return x == a || x == b;
    }

    // Neighbors as (vertex, edge-id) pairs; parallel edges appear once each.
    const std::vector<std::pair<int, int>>& adj(int v) const { return adj_.at(v); }

    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    bool has_edge_between(int a, int b) const {
        for (auto [w, e] : adj_.at(a))
            if (w == b) return true;
        return false;
    }

    // Some edge id between a and b, or -1.
    int find_edge(int a, int b) const {
        for (auto [w, e] : adj_.at(a))
            if (w == b) return e;
        return -1;
    }

    // View of the subgraph on `vertices` containing all edges with both ends
    // inside. Vertices are renumbered 0..|vertices|-1 in the given order;
    // `to_host` maps view vertices back. Edge labels carry the host labels.
    Multigraph induced_subgraph(const std::vector<int>& vertices,
                                std::vector<int>* to_host = nullptr) const {
        std::vector<int> idx(n_, -1);
        for (int i = 0; i < static_cast<int>(vertices.size()); ++i) idx[vertices[i]] = i;
        Multigraph h(static_cast<int>(vertices.size()));
        for (int e = 0; e < num_edges(); ++e) {
            auto [a, b] = ends_[e];
            if (idx[a] >= 0 && idx[b] >= 0) h.add_edge(idx[a], idx[b], label_[e]);
        }
        if (to_host) *to_host = vertices;
        return h;
    }

    // View with the given edge ids only (all vertices kept).
    Multigraph edge_subgraph(const std::vector<int>& edge_ids) const {
        Multigraph h(n_);
        for (int e : edge_ids) h.add_edge(u(e), v(e), label_[e]);
        return h;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> ends_;
    std::vector<int> label_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Edge multiset over a host graph; multiplicities are 0, 1 or 2 (more than
// two copies of an edge are never useful for the problems handled here).
class SolutionMultiset {
public:
    SolutionMultiset() = default;
    explicit SolutionMultiset(int num_edges) : mult_(num_edges, 0) {}

    int multiplicity(int e) const { return mult_.at(e); }

    void set(int e, int m) {
        if (m < 0 || m > 2) throw std::invalid_argument("multiplicity must be 0, 1 or 2");
        mult_.at(e) = m;
    }

    void add(int e, int delta = 1) { set(e, mult_.at(e) + delta); }

    int cardinality() const {
        int s = 0;
        for (int m : mult_) s += m;
        return s;
    }

    int num_edges() const { return static_cast<int>(mult_.size()); }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int e = 0; e < num_edges(); ++e)
            if (mult_[e] > 0) s.push_back(e);
        return s;
    }

    bool operator==(const SolutionMultiset& o) const { return mult_ == o.mult_; }

private:
    std::vector<int> mult_;
};

struct ConnectivityReport {
    std::vector<std::vector<int>> components;  // vertex partition
    std::vector<int> bridges;                  // edge ids
    bool is_connected = false;
    bool is_2ec = false;
    bool is_2vc = false;
};

namespace detail {

// DFS lowpoint pass shared by bridge and block computation. Visits edges by
// id (never re-traverses the tree edge used to enter a vertex, but does
// follow a parallel copy of it, which is what makes parallel edges non-bridges).
struct LowpointDFS {
    const Multigraph& g;
    std::vector<int> disc, low, comp;
    std::vector<int> bridges;
    std::vector<bool> is_cut;
    std::vector<std::vector<int>> block_edges;  // edge ids per block
    std::vector<int> edge_stack;
    int timer = 0, ncomp = 0;

    explicit LowpointDFS(const Multigraph& graph)
        : g(graph),
          disc(graph.num_vertices(), -1),
          low(graph.num_vertices(), 0),
          comp(graph.num_vertices(), -1),
          is_cut(graph.num_vertices(), false) {}

    void run() {
        for (int s = 0; s < g.num_vertices(); ++s)
            if (disc[s] < 0) {
                dfs(s, -1);
                ++ncomp;
            }
    }

    void dfs(int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        comp[v] = ncomp;
        int children = 0;
        for (auto [w, e] : g.adj(v)) {
            if (e == parent_edge) continue;
            if (disc[w] < 0) {
                edge_stack.push_back(e);
                ++children;
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) bridges.push_back(e);
                if ((parent_edge >= 0 && low[w] >= disc[v]) ||
                    (parent_edge < 0 && children > 1))
                    is_cut[v] = true;
                if (low[w] >= disc[v]) pop_block(e);
            } else if (disc[w] < disc[v]) {
                edge_stack.push_back(e);
                low[v] = std::min(low[v], disc[w]);
            }
        }
        if (parent_edge < 0 && !edge_stack.empty()) pop_block(-1);
    }

    void pop_block(int until_edge) {
        std::vector<int> blk;
        while (!edge_stack.empty()) {
            int e = edge_stack.back();
            edge_stack.pop_back();
            blk.push_back(e);
            if (e == until_edge) break;
        }
        if (!blk.empty()) {
            std::sort(blk.begin(), blk.end());
            block_edges.push_back(std::move(blk));
        }
    }
};

}  // namespace detail

inline ConnectivityReport connectivity_report(const Multigraph& g) {
    detail::LowpointDFS dfs(g);
    dfs.run();
    ConnectivityReport r;
    r.components.resize(dfs.ncomp);
    for (int v = 0; v < g.num_vertices(); ++v) r.components[dfs.comp[v]].push_back(v);
    r.bridges = dfs.bridges;
    std::sort(r.bridges.begin(), r.bridges.end());
    r.is_connected = dfs.ncomp == 1;
    r.is_2ec = r.is_connected && r.bridges.empty() && g.num_vertices() >= 1 &&
               (g.num_vertices() >= 2 ? g.num_edges() >= 2 : true);
    if (g.num_vertices() == 1) r.is_2ec = true;
    // n=2 with >=2 parallel edges counts as 2-vertex-connected so the ear
    // machinery accepts it; larger graphs need no cut vertex.
    bool any_cut = std::find(dfs.is_cut.begin(), dfs.is_cut.end(), true) != dfs.is_cut.end();
    if (g.num_vertices() == 1)
        r.is_2vc = true;
    else if (g.num_vertices() == 2)
        r.is_2vc = g.num_edges() >= 2;
    else
        r.is_2vc = r.is_connected && !any_cut && r.bridges.empty();
    return r;
}

inline bool is_connected(const Multigraph& g) {
    return connectivity_report(g).is_connected;
}

// Connectivity of the subgraph spanned by edges with multiplicity > 0,
// required to reach every vertex of the host.
inline bool spans_connected(const Multigraph& g, const SolutionMultiset& sol) {
    if (g.num_vertices() == 1) return true;
    std::vector<int> comp(g.num_vertices(), -1);
    std::vector<int> stack = {0};
    comp[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, e] : g.adj(v))
            if (sol.multiplicity(e) > 0 && comp[w] < 0) {
                comp[w] = 0;
                stack.push_back(w);
            }
    }
    return std::find(comp.begin(), comp.end(), -1) == comp.end();
}

// True iff the multi-subgraph given by `sol` is 2-edge-connected and spanning
// (every singleton cut sees total multiplicity >= 2, connected support).
inline bool is_2ec_solution(const Multigraph& g, const SolutionMultiset& sol) {
    if (!spans_connected(g, sol)) return false;
    // A doubled edge is never a bridge; single copies must not be bridges of
    // the support graph where doubled edges count as two parallel copies.
    Multigraph h(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        for (int c = 0; c < sol.multiplicity(e); ++c) h.add_edge(g.u(e), g.v(e), e);
    auto rep = connectivity_report(h);
    return rep.is_2ec;
}

struct BlockTree {
    // Per block: sorted vertex list and sorted edge-id list. Bridge edges form
    // their own two-vertex blocks.
    std::vector<std::vector<int>> block_vertices;
    std::vector<std::vector<int>> block_edges;
    std::vector<int> cut_vertices;       // sorted
    std::vector<int> block_of_edge;      // edge id -> block index
};

inline BlockTree blocks(const Multigraph& g) {
    auto rep = connectivity_report(g);
    if (!rep.is_connected) throw std::invalid_argument("blocks: graph must be connected");
    detail::LowpointDFS dfs(g);
    dfs.run();
    BlockTree bt;
    bt.block_edges = dfs.block_edges;
    bt.block_of_edge.assign(g.num_edges(), -1);
    for (int b = 0; b < static_cast<int>(bt.block_edges.size()); ++b) {
        std::set<int> vs;
        for (int e : bt.block_edges[b]) {
            bt.block_of_edge[e] = b;
            vs.insert(g.u(e));
            vs.insert(g.v(e));
        }
        bt.block_vertices.emplace_back(vs.begin(), vs.end());
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (dfs.is_cut[v]) bt.cut_vertices.push_back(v);
    return bt;
}

// Per-block T split: the even set among (T ∩ V_i) \ {cut vertices adjustments}.
// For each block, every vertex of T inside the block is kept; cut vertices are
// toggled so each block's T_i becomes even while the union resolves T.
// Works because the block tree is a tree: process blocks leaf-to-root.
inline std::vector<std::vector<int>> split_t_over_blocks(const Multigraph& g,
                                                         const BlockTree& bt,
                                                         const std::vector<int>& T) {
    int nb = static_cast<int>(bt.block_vertices.size());
    std::vector<std::vector<int>> result(nb);
    if (nb == 0) return result;
    std::vector<bool> in_t(g.num_vertices(), false);
    for (int v : T) in_t[v] = true;

    // Build the block-cut tree: nodes = blocks + cut vertices.
    std::vector<bool> is_cut(g.num_vertices(), false);
    for (int c : bt.cut_vertices) is_cut[c] = true;
    // For each block, parity demand is resolved bottom-up: a leaf block takes
    // T_i = (T ∩ V_i) possibly toggling its single cut vertex to make |T_i|
    // even; the toggle propagates as a parity correction at that cut vertex.
    // Implement by rooting the block tree at block 0 and doing a DFS.
    std::vector<std::vector<int>> blocks_of_cut(g.num_vertices());
    for (int b = 0; b < nb; ++b)
        for (int v : bt.block_vertices[b])
            if (is_cut[v]) blocks_of_cut[v].push_back(b);

    std::vector<bool> visited(nb, false);
    // parity_fix[v]: pending parity toggle at cut vertex v seen by its parent block
    std::vector<int> parity_fix(g.num_vertices(), 0);

    std::function<void(int, int)> dfs = [&](int b, int parent_cut) {
        visited[b] = true;
        std::vector<int> ti;
        int parity = 0;
        for (int v : bt.block_vertices[b]) {
            if (is_cut[v] && v != parent_cut) {
                for (int b2 : blocks_of_cut[v])
                    if (!visited[b2]) dfs(b2, v);
            }
        }
        for (int v : bt.block_vertices[b]) {
            if (v == parent_cut) continue;  // the block above decides for it
            int want = (in_t[v] ? 1 : 0);
            if (is_cut[v]) {
                // Children hanging off v may have included v in their T_i;
                // fold those toggles in so the total parity at v matches T.
                want = (want + parity_fix[v]) % 2;
                parity_fix[v] = 0;
            }
            if (want) {
                ti.push_back(v);
                parity ^= 1;
            }
        }
        if (parity % 2 == 1) {
            if (parent_cut < 0)
                throw std::invalid_argument("split_t_over_blocks: |T| must be even");
            ti.push_back(parent_cut);
            parity_fix[parent_cut] ^= 1;
        }
        std::sort(ti.begin(), ti.end());
        result[b] = std::move(ti);
    };
    dfs(0, -1);
    for (int b = 0; b < nb; ++b)
        if (!visited[b]) throw std::logic_error("split_t_over_blocks: block tree not connected");
    return result;
}

// --- instance file format -------------------------------------------------
//
//   c comment
//   p <n> <m>
//   e <u> <v>        (1-indexed, m lines)
//   t <v1> <v2> ...  (optional, even count)

struct Instance {
    Multigraph graph;
    std::vector<int> t;  // sorted, 0-indexed; empty if no t line
    bool has_t = false;
};

inline Instance parse_graph(const std::string& text) {
    Instance inst;
    std::istringstream in(text);
    std::string line;
    int lineno = 0, n = -1, m = -1, seen_edges = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) fail("duplicate p line");
            if (!(ls >> n >> m) || n < 1 || m < 0) fail("malformed p line");
            inst.graph = Multigraph(n);
        } else if (tag == "e") {
            if (n < 0) fail("e line before p line");
            int a, b;
            if (!(ls >> a >> b)) fail("malformed e line");
            if (a < 1 || a > n || b < 1 || b > n) fail("vertex out of range");
            if (a == b) fail("loop edge");
            inst.graph.add_edge(a - 1, b - 1);
            ++seen_edges;
        } else if (tag == "t") {
            if (n < 0) fail("t line before p line");
            if (inst.has_t) fail("duplicate t line");
            int v;
            while (ls >> v) {
                if (v < 1 || v > n) fail("T vertex out of range");
                inst.t.push_back(v - 1);
            }
            std::sort(inst.t.begin(), inst.t.end());
            inst.t.erase(std::unique(inst.t.begin(), inst.t.end()), inst.t.end());
            if (inst.t.size() % 2 != 0) fail("odd |T|");
            inst.has_t = true;
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::runtime_error("parse error: missing p line");
    if (seen_edges != m)
        throw std::runtime_error("parse error: p line declares " + std::to_string(m) +
                                 " edges, file has " + std::to_string(seen_edges));
    return inst;
}

inline std::string format_instance(const Multigraph& g, const std::vector<int>& t = {}) {
    std::ostringstream out;
    out << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (int e = 0; e < g.num_edges(); ++e)
        out << "e " << g.u(e) + 1 << " " << g.v(e) + 1 << "\n";
    if (!t.empty()) {
        out << "t";
        for (int v : t) out << " " << v + 1;
        out << "\n";
    }
    return out.str();
}

// Solution file: lines `x <edge-id> <multiplicity>`.
inline SolutionMultiset parse_solution(const std::string& text, int num_edges) {
    SolutionMultiset sol(num_edges);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag != "x")
            throw std::runtime_error("solution parse error at line " + std::to_string(lineno));
        int e, m;
        if (!(ls >> e >> m) || e < 0 || e >= num_edges || m < 0 || m > 2)
            throw std::runtime_error("solution parse error at line " + std::to_string(lineno));
        sol.set(e, m);
    }
    return sol;
}

inline std::string format_solution(const SolutionMultiset& sol) {
    std::ostringstream out;
    for (int e = 0; e < sol.num_edges(); ++e)
        if (sol.multiplicity(e) > 0) out << "x " << e << " " << sol.multiplicity(e) << "\n";
    return out.str();
}

// Degree of v in the multiset solution.
inline int solution_degree(const Multigraph& g, const SolutionMultiset& sol, int v) {
    int d = 0;
    for (auto [w, e] : g.adj(v)) d += sol.multiplicity(e);
    return d;
}

// True iff sol is a T-join of 2G whose support connects all of V (Definition
// of a connected-T-join; a tour is the T = ∅ case).
inline bool is_connected_t_join(const Multigraph& g, const SolutionMultiset& sol,
                                const std::vector<int>& T) {
    std::vector<bool> in_t(g.num_vertices(), false);
    for (int v : T) in_t[v] = true;
    for (int v = 0; v < g.num_vertices(); ++v)
        if ((solution_degree(g, sol, v) % 2 == 1) != in_t[v]) return false;
    return spans_connected(g, sol);
}

}  // namespace nicerears
