#pragma once

// T-join computations built on blossom matching: minimum weight T-joins via
// the metric-closure reduction (handling negative weights by the standard
// sign flip) and the pair-constrained odd join used by the tour construction
// from removable pairings.

#include "nicerears/matching.hpp"
#include "nicerears/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace nicerears {

struct TJoinResult {
    std::vector<int> edges;  // sorted edge ids, each used once
    long long weight = 0;
};

// Removable edge set R with disjoint pairs, each pair being two edges sharing
// a vertex; deleting any subset of R that uses at most one edge per pair must
// keep the graph connected (checked by the validator, not here).
struct RemovablePairing {
    std::vector<int> r;                         // sorted edge ids
    std::vector<std::pair<int, int>> pairs;     // edge-id pairs, each sharing a vertex
};

namespace detail {

constexpr long long kDistInf = std::numeric_limits<long long>::max() / 4;

// Single-source shortest paths with nonnegative weights; fills dist and the
// parent edge per vertex so paths can be reconstructed edge-by-edge.
inline void dijkstra(const Multigraph& g, const std::vector<long long>& w, int src,
                     std::vector<long long>& dist, std::vector<int>& parent_edge) {
    int n = g.num_vertices();
    dist.assign(n, kDistInf);
    parent_edge.assign(n, -1);
    dist[src] = 0;
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (auto [u, e] : g.adj(v)) {
            long long nd = d + w[e];
            if (nd < dist[u]) {
                dist[u] = nd;
                parent_edge[u] = e;
                pq.push({nd, u});
            }
        }
    }
}

// Minimum weight T-join for nonnegative weights: metric closure on T, blossom
// matching, then symmetric difference of the matched shortest paths.
inline TJoinResult min_t_join_nonneg(const Multigraph& g, const std::vector<int>& t,
                                     const std::vector<long long>& w) {
    TJoinResult res;
    if (t.empty()) return res;
    if (t.size() % 2 != 0) throw std::invalid_argument("min_t_join: |T| must be even");
    int k = static_cast<int>(t.size());
    std::vector<std::vector<long long>> dist(k);
    std::vector<std::vector<int>> parent(k);
    for (int i = 0; i < k; ++i) dijkstra(g, w, t[i], dist[i], parent[i]);
    std::vector<std::vector<long long>> closure(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i != j && dist[i][t[j]] >= kDistInf)
                throw std::invalid_argument("min_t_join: T vertices split across components");
            closure[i][j] = dist[i][t[j]];
        }
    auto matching = min_weight_perfect_matching(closure);
    std::vector<int> parity(g.num_edges(), 0);
    for (auto [i, j] : matching) {
        // walk t[j] back to t[i] along the shortest path tree of t[i]
        int v = t[j];
        while (v != t[i]) {
            int e = parent[i][v];
            parity[e] ^= 1;
            v = g.other_end(e, v);
        }
    }
    for (int e = 0; e < g.num_edges(); ++e)
        if (parity[e]) {
            res.edges.push_back(e);
            res.weight += w[e];
        }
    return res;
}

}  // namespace detail

// Minimum weight T-join; weights may be negative (solved by flipping the
// negative edge set N and computing a (T Δ odd(N))-join under |w|).
inline TJoinResult min_t_join(const Multigraph& g, const std::vector<int>& t,
                              const std::vector<long long>& w) {
    if (static_cast<int>(w.size()) != g.num_edges())
        throw std::invalid_argument("min_t_join: weight vector size mismatch");
    std::vector<long long> aw(w.size());
    std::vector<int> flip_parity(g.num_vertices(), 0);
    std::vector<bool> negative(w.size(), false);
    long long neg_total = 0;
    for (int e = 0; e < g.num_edges(); ++e) {
        aw[e] = std::abs(w[e]);
        if (w[e] < 0) {
            negative[e] = true;
            neg_total += w[e];
            flip_parity[g.u(e)] ^= 1;
            flip_parity[g.v(e)] ^= 1;
        }
    }
    std::vector<int> in_t(g.num_vertices(), 0);
    for (int v : t) in_t[v] ^= 1;
    std::vector<int> t2;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (in_t[v] ^ flip_parity[v]) t2.push_back(v);
    auto inner = detail::min_t_join_nonneg(g, t2, aw);
    std::vector<int> parity(g.num_edges(), 0);
    for (int e : inner.edges) parity[e] ^= 1;
    for (int e = 0; e < g.num_edges(); ++e)
        if (negative[e]) parity[e] ^= 1;
    TJoinResult res;
    for (int e = 0; e < g.num_edges(); ++e)
        if (parity[e]) {
            res.edges.push_back(e);
            res.weight += w[e];
        }
    return res;
}

// Cardinality version: τ(G,T).
inline TJoinResult min_cardinality_t_join(const Multigraph& g, const std::vector<int>& t) {
    return min_t_join(g, t, std::vector<long long>(g.num_edges(), 1));
}

struct ConstrainedOddJoin {
    std::vector<int> edges;  // host edge ids, sorted
    long long weight = 0;    // under c = -1 on R, +1 elsewhere
};

// Minimum weight odd join F (T-join for the odd-degree vertices of g) with
// |F ∩ P| ≤ 1 for every pair, under weights -1 on R and +1 elsewhere.
// Realized on an auxiliary graph: each pair {v,w},{v,w'} gets a new vertex
// v_P with a zero-weight attachment edge {v,v_P} and the pair edges re-hung
// at v_P; a big constant added to the three edges at v_P forces exactly one
// of them into the join, so at most one pair edge survives the projection.
inline ConstrainedOddJoin constrained_odd_join(const Multigraph& g,
                                               const RemovablePairing& pairing) {
    std::vector<bool> in_r(g.num_edges(), false);
    for (int e : pairing.r) {
        if (e < 0 || e >= g.num_edges())
            throw std::invalid_argument("constrained_odd_join: R edge out of range");
        in_r[e] = true;
    }
    std::vector<bool> in_pair(g.num_edges(), false);
    for (auto [e1, e2] : pairing.pairs) {
        if (!in_r[e1] || !in_r[e2])
            throw std::invalid_argument("constrained_odd_join: pair edge not in R");
        if (in_pair[e1] || in_pair[e2])
            throw std::invalid_argument("constrained_odd_join: pairs must be disjoint");
        in_pair[e1] = in_pair[e2] = true;
    }

    int n = g.num_vertices();
    int np = static_cast<int>(pairing.pairs.size());
    Multigraph aux(n + np);
    std::vector<long long> w;
    std::vector<int> host_edge;  // aux edge -> host edge id, or -1 for attachments
    std::vector<int> aux_of_host(g.num_edges(), -1);
    std::vector<bool> rehung(g.num_edges(), false);
    std::vector<int> pair_vertex_edges;  // aux edge ids incident to some v_P

    for (int p = 0; p < np; ++p) {
        auto [e1, e2] = pairing.pairs[p];
        // shared vertex of the two pair edges
        int shared = -1;
        for (int x : {g.u(e1), g.v(e1)})
            if (g.incident(e2, x)) shared = x;
        if (shared < 0)
            throw std::invalid_argument("constrained_odd_join: pair edges share no vertex");
        int vp = n + p;
        int a = aux.add_edge(shared, vp);
        host_edge.push_back(-1);
        w.push_back(0);
        (void)a;
        for (int e : {e1, e2}) {
            int far = g.other_end(e, shared);
            aux.add_edge(vp, far);
            host_edge.push_back(e);
            w.push_back(in_r[e] ? -1 : 1);
            rehung[e] = true;
        }
    }
    for (int e = 0; e < g.num_edges(); ++e)
        if (!rehung[e]) {
            aux.add_edge(g.u(e), g.v(e));
            host_edge.push_back(e);
            w.push_back(in_r[e] ? -1 : 1);
        }
    // the three edges at each v_P get the big constant
    long long big = aux.num_edges() + 1;
    for (int e = 0; e < aux.num_edges(); ++e)
        if (aux.u(e) >= n || aux.v(e) >= n) w[e] += big;

    std::vector<int> t;
    for (int v = 0; v < aux.num_vertices(); ++v)
        if (aux.degree(v) % 2 == 1) t.push_back(v);
    auto join = min_t_join(aux, t, w);

    ConstrainedOddJoin res;
    for (int e : join.edges)
        if (host_edge[e] >= 0) res.edges.push_back(host_edge[e]);
    std::sort(res.edges.begin(), res.edges.end());
    for (int e : res.edges) res.weight += in_r[e] ? -1 : 1;

    // one edge per pair at most, by the forced-parity argument
    std::vector<bool> chosen(g.num_edges(), false);
    for (int e : res.edges) chosen[e] = true;
    for (auto [e1, e2] : pairing.pairs)
        if (chosen[e1] && chosen[e2])
            throw std::logic_error("constrained_odd_join: pair constraint violated");
    return res;
}

}  // namespace nicerears
