#pragma once

// The approximation algorithms: connected T-joins within 3/2, tours within
// 7/5, and 2-edge-connected spanning subgraphs within 4/3, all measured
// against the subtour/partition LP relaxations through the combinatorial
// bounds l_mu / l_phi / lambda. Every construction re-checks the counting
// identities its guarantee depends on and throws on any mismatch, so a wrong
// intermediate object can never silently become a weaker answer.
//
// Shared pipeline per 2-vertex-connected block: minimum-even-ear
// decomposition -> nice rewrite -> associated eardrum -> maximum earmuff ->
// ears rerouted through the earmuff paths. Tiny blocks (up to 3 vertices) go
// to the exact solver instead; their optimum trivially satisfies every ratio.

#include "nicerears/bounds.hpp"
#include "nicerears/earmuff.hpp"
#include "nicerears/ears.hpp"
#include "nicerears/multigraph.hpp"
#include "nicerears/oracle.hpp"
#include "nicerears/tjoin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nicerears {

// Everything the earmuff-based construction needs about one graph: a nice
// decomposition whose clean ears realize a maximum earmuff, the eardrum cores
// in the earmuff's order, and the witness-verified bounds.
struct MuffedDecomposition {
    EarDecomposition ears;
    std::vector<std::vector<int>> cores;
    EarmuffResult muff;
    int phi = 0;
    int lphi = 0;
    int lmu = 0;

    Rational lambda_value() const { return lambda(lmu, lphi); }
};

// From a given nice decomposition: pick the eardrum, maximize the earmuff,
// reroute the clean ears through the earmuff paths. Requires the root not to
// be clean, i.e. the graph has more than one nontrivial ear or a long root.
inline MuffedDecomposition prepare_muffed(const Multigraph& g, const EarDecomposition& nice_d,
                                          const std::vector<int>& t) {
    if (!is_nice(nice_d)) throw std::invalid_argument("prepare_muffed: decomposition not nice");
    MuffedDecomposition md;
    md.phi = nice_d.even_count();
    auto drum = associated_eardrum(nice_d, t);
    md.cores = drum.cores;
    md.muff = maximum_earmuff(g, drum.cores);
    md.ears = reroot_ears(nice_d, drum, md.muff);
    if (!is_nice(md.ears))
        throw std::logic_error("prepare_muffed: rerouting broke the nice conditions");
    if (md.ears.even_count() != md.phi)
        throw std::logic_error("prepare_muffed: rerouting changed the even ear count");
    md.lphi = l_phi(g, md.phi);
    md.lmu = l_mu(g, md.cores, md.muff).value;
    return md;
}

inline MuffedDecomposition prepare_muffed(const Multigraph& g, const std::vector<int>& t) {
    return prepare_muffed(g, make_nice(min_even_ear_decomposition(g)), t);
}

namespace detail {

inline std::vector<std::vector<int>> sorted_cores(std::vector<std::vector<int>> cores) {
    for (auto& c : cores) std::sort(c.begin(), c.end());
    std::sort(cores.begin(), cores.end());
    return cores;
}

// Induced subgraph whose labels refer to the immediate parent's edge ids
// (Multigraph::induced_subgraph would propagate the parent's own labels).
inline Multigraph relabeled_induced(const Multigraph& g, const std::vector<int>& vertices) {
    std::vector<int> idx(g.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) idx[vertices[i]] = i;
    Multigraph h(static_cast<int>(vertices.size()));
    for (int e = 0; e < g.num_edges(); ++e)
        if (idx[g.u(e)] >= 0 && idx[g.v(e)] >= 0) h.add_edge(idx[g.u(e)], idx[g.v(e)], e);
    return h;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace detail

// Connected T-join through the earmuff: clean ears, a connector inside V_0,
// the per-ear reduction of the remaining pendant ears, and a parity-fixing
// join in G[V_0]. Cardinality at most lmu + lphi/2 - (number of pendant ears).
inline SolutionMultiset connected_tjoin_via_earmuff(const Multigraph& g,
                                                    const std::vector<int>& t,
                                                    const MuffedDecomposition& md) {
    const EarDecomposition& d = md.ears;
    int n = g.num_vertices(), m = g.num_edges();
    auto drum = associated_eardrum(d, t);
    if (detail::sorted_cores(drum.cores) != detail::sorted_cores(md.cores))
        throw std::invalid_argument("via_earmuff: eardrum does not match the earmuff");

    std::vector<bool> in_t(n, false);
    for (int v : t) in_t[v] = true;
    std::vector<bool> clean_ear(d.ears.size(), false);
    for (int i : drum.clean_ear_index) clean_ear[i] = true;

    // vertex classes: V_M = clean internals, V_1 = other pendant internals
    std::vector<int> cls(n, 0);  // 0: V_0, 1: V_1, 2: V_M
    std::vector<int> pendant_other;
    int pendant_total = 0;
    for (int i = 0; i < static_cast<int>(d.ears.size()); ++i) {
        if (d.ears[i].trivial() || !d.is_pendant(i)) continue;
        ++pendant_total;
        if (clean_ear[i]) {
            for (int v : d.ears[i].inn()) cls[v] = 2;
        } else {
            pendant_other.push_back(i);
            for (int v : d.ears[i].inn()) cls[v] = 1;
        }
    }
    std::vector<int> v0;
    int vm_size = 0;
    for (int v = 0; v < n; ++v) {
        if (cls[v] == 0) v0.push_back(v);
        if (cls[v] == 2) ++vm_size;
    }
    if (v0.empty()) throw std::logic_error("via_earmuff: V_0 is empty");

    SolutionMultiset sol(m);

    // E_1: the clean ears, whose cardinality is 3|V_M|/2 + (clean 2-ears)/2
    int e1 = 0, clean_2ears = 0;
    for (int i : drum.clean_ear_index) {
        for (int e : d.ears[i].edges) sol.set(e, 1);
        e1 += d.ears[i].length();
        if (d.ears[i].length() == 2) ++clean_2ears;
    }
    if (2 * e1 != 3 * vm_size + clean_2ears)
        throw std::logic_error("via_earmuff: clean ear count identity failed");

    // the clean ears must realize a maximum earmuff: the graph they span
    // together with V_0 has exactly |V_0| - mu components
    detail::Dsu dsu(n);
    for (int i : drum.clean_ear_index) {
        for (int x : {d.ears[i].end0(), d.ears[i].end1()})
            if (cls[x] != 0)
                throw std::logic_error("via_earmuff: clean ear endpoint outside V_0");
        for (int e : d.ears[i].edges) dsu.unite(g.u(e), g.v(e));
    }
    std::set<int> roots;
    for (int v = 0; v < n; ++v)
        if (cls[v] != 1) roots.insert(dsu.find(v));
    if (static_cast<int>(roots.size()) != static_cast<int>(v0.size()) - md.muff.mu)
        throw std::logic_error("via_earmuff: clean ears do not realize a maximum earmuff");

    // E_2: connect those components through edges of G[V_0]
    int e2 = 0;
    for (int e = 0; e < m; ++e)
        if (cls[g.u(e)] == 0 && cls[g.v(e)] == 0 && dsu.unite(g.u(e), g.v(e))) {
            sol.set(e, 1);
            ++e2;
        }
    if (e2 != static_cast<int>(v0.size()) - md.muff.mu - 1)
        throw std::logic_error("via_earmuff: connector has the wrong size");

    // E_3: reduce the pendant non-clean ears, threading the parity demand
    std::vector<int> t_cur(t);
    std::sort(t_cur.begin(), t_cur.end());
    for (int i : pendant_other) {
        const Ear& p = d.ears[i];
        for (int x : {p.end0(), p.end1()})
            if (cls[x] != 0)
                throw std::logic_error("via_earmuff: pendant ear endpoint outside V_0");
        auto r = ear_reduction_step(g, p, t_cur);
        for (int e : p.edges) sol.set(e, r.f_prime.multiplicity(e));
        t_cur = r.s_prime;
    }

    // E_4: fix the remaining parities inside G[V_0]
    std::vector<int> residual;
    for (int v = 0; v < n; ++v)
        if ((solution_degree(g, sol, v) % 2 == 1) != in_t[v]) residual.push_back(v);
    for (int v : residual)
        if (cls[v] != 0) throw std::logic_error("via_earmuff: parity demand left outside V_0");
    if (!residual.empty()) {
        auto g0 = detail::relabeled_induced(g, v0);
        if (!connectivity_report(g0).is_2ec)
            throw std::logic_error("via_earmuff: G[V_0] is not 2-edge-connected");
        std::vector<int> local_of(n, -1);
        for (int i = 0; i < static_cast<int>(v0.size()); ++i) local_of[v0[i]] = i;
        std::vector<int> t0;
        for (int v : residual) t0.push_back(local_of[v]);
        for (int e : min_cardinality_t_join(g0, t0).edges) sol.add(g0.label(e), 1);
    }

    if (!is_connected_t_join(g, sol, t))
        throw std::logic_error("via_earmuff: result is not a connected T-join");
    if (2 * sol.cardinality() > 2 * md.lmu + md.lphi - 2 * pendant_total)
        throw std::logic_error("via_earmuff: cardinality bound violated");
    return sol;
}

// Connected T-join by reducing the nontrivial ears in reverse order; the
// doubled bound 3(|V|-1) + phi - 2*(nontrivial non-short ears) is checked.
inline SolutionMultiset connected_tjoin_via_induction(const Multigraph& g,
                                                      const std::vector<int>& t,
                                                      const EarDecomposition& d) {
    int n = g.num_vertices();
    SolutionMultiset sol(g.num_edges());
    std::vector<int> t_cur(t);
    std::sort(t_cur.begin(), t_cur.end());
    int long_ears = 0;
    for (int i = static_cast<int>(d.ears.size()) - 1; i >= 0; --i) {
        const Ear& p = d.ears[i];
        if (p.trivial()) continue;
        if (!p.is_short()) ++long_ears;
        auto r = ear_reduction_step(g, p, t_cur);
        for (int e : p.edges) sol.set(e, r.f_prime.multiplicity(e));
        t_cur = r.s_prime;
    }
    if (!t_cur.empty())
        throw std::logic_error("via_induction: parity demand survived the root circuit");
    if (!is_connected_t_join(g, sol, t))
        throw std::logic_error("via_induction: result is not a connected T-join");
    if (2 * sol.cardinality() > 3 * (n - 1) + d.even_count() - 2 * long_ears)
        throw std::logic_error("via_induction: cardinality bound violated");
    return sol;
}

// --- removable pairings and the tour they induce -----------------------------

// For a decomposition without trivial ears: each non-pendant ear contributes
// the pair of its edges at a vertex where another ear attaches; each pendant
// ear contributes its first edge unpaired. |R| = 2*(ears) - (pendant ears).
inline RemovablePairing removable_pairing_from_ears(const EarDecomposition& d) {
    int k = static_cast<int>(d.ears.size());
    for (const auto& p : d.ears)
        if (p.trivial())
            throw std::invalid_argument("removable_pairing_from_ears: trivial ear present");
    RemovablePairing pairing;
    int pendant = 0;
    for (int i = 0; i < k; ++i) {
        const Ear& p = d.ears[i];
        if (d.is_pendant(i)) {
            ++pendant;
            pairing.r.push_back(p.edges[0]);
            continue;
        }
        // a vertex of inn(P) where another ear attaches
        int at = -1;
        for (int j = 0; j < k && at < 0; ++j) {
            if (j == i) continue;
            for (int x : {d.ears[j].end0(), d.ears[j].end1()}) {
                for (size_t idx = 1; idx + 1 < p.vertices.size(); ++idx)
                    if (p.vertices[idx] == x) {
                        at = static_cast<int>(idx);
                        break;
                    }
                if (at >= 0) break;
            }
        }
        if (at < 0)
            throw std::logic_error("removable_pairing_from_ears: non-pendant ear unattached");
        int e1 = p.edges[at - 1], e2 = p.edges[at];
        pairing.r.push_back(e1);
        pairing.r.push_back(e2);
        pairing.pairs.push_back({e1, e2});
    }
    std::sort(pairing.r.begin(), pairing.r.end());
    if (static_cast<int>(pairing.r.size()) != 2 * k - pendant)
        throw std::logic_error("removable_pairing_from_ears: |R| != 2k - pi");
    return pairing;
}

// Exhaustively check the definition: every deletion of at most one edge per
// pair plus any unpaired R edges leaves the graph connected.
inline void verify_removable_pairing(const Multigraph& g, const RemovablePairing& pairing,
                                     long long leaf_budget = 4'000'000) {
    std::vector<bool> in_r(g.num_edges(), false);
    for (int e : pairing.r) in_r[e] = true;
    std::vector<bool> in_pair(g.num_edges(), false);
    for (auto [e1, e2] : pairing.pairs) {
        if (!in_r[e1] || !in_r[e2])
            throw std::logic_error("verify_removable_pairing: pair edge not in R");
        if (in_pair[e1] || in_pair[e2])
            throw std::logic_error("verify_removable_pairing: pairs overlap");
        in_pair[e1] = in_pair[e2] = true;
        int shared = -1;
        for (int x : {g.u(e1), g.v(e1)})
            if (g.incident(e2, x)) shared = x;
        if (shared < 0 || e1 == e2)
            throw std::logic_error("verify_removable_pairing: pair edges share no vertex");
        if (g.degree(shared) < 3)
            throw std::logic_error("verify_removable_pairing: no third edge at the pair vertex");
    }
    std::vector<int> unpaired;
    for (int e : pairing.r)
        if (!in_pair[e]) unpaired.push_back(e);

    long long leaves = 1;
    for (size_t i = 0; i < pairing.pairs.size(); ++i) leaves *= 3;
    for (size_t i = 0; i < unpaired.size(); ++i) leaves *= 2;
    if (leaves > leaf_budget)
        throw std::runtime_error("verify_removable_pairing: too many deletion sets");

    SolutionMultiset keep(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) keep.set(e, 1);
    std::function<void(size_t)> rec_unpaired = [&](size_t idx) {
        if (idx == unpaired.size()) {
            if (!spans_connected(g, keep))
                throw std::logic_error("verify_removable_pairing: a deletion set disconnects");
            return;
        }
        rec_unpaired(idx + 1);
        keep.set(unpaired[idx], 0);
        rec_unpaired(idx + 1);
        keep.set(unpaired[idx], 1);
    };
    std::function<void(size_t)> rec_pairs = [&](size_t idx) {
        if (idx == pairing.pairs.size()) {
            rec_unpaired(0);
            return;
        }
        auto [e1, e2] = pairing.pairs[idx];
        rec_pairs(idx + 1);
        keep.set(e1, 0);
        rec_pairs(idx + 1);
        keep.set(e1, 1);
        keep.set(e2, 0);
        rec_pairs(idx + 1);
        keep.set(e2, 1);
    };
    rec_pairs(0);
}

// Tour from a removable pairing: all edges, plus the constrained odd join
// doubled outside R and deleted inside R. Cardinality |E| + c(F) with
// 3 c(F) <= |E| - 2|R| checked exactly.
inline SolutionMultiset pairing_tour(const Multigraph& g, const RemovablePairing& pairing) {
    auto join = constrained_odd_join(g, pairing);
    if (3 * join.weight > g.num_edges() - 2 * static_cast<int>(pairing.r.size()))
        throw std::logic_error("pairing_tour: odd join weight bound violated");
    std::vector<bool> in_r(g.num_edges(), false);
    for (int e : pairing.r) in_r[e] = true;
    SolutionMultiset tour(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) tour.set(e, 1);
    for (int e : join.edges) tour.set(e, in_r[e] ? 0 : 2);
    if (!is_connected_t_join(g, tour, {}))
        throw std::logic_error("pairing_tour: result is not a tour");
    return tour;
}

// --- piece splitting (blocks of the union of nontrivial ears) ----------------

struct PieceDecomposition {
    Multigraph graph;                 // edge labels are host edge ids
    std::vector<int> to_host_vertex;
    EarDecomposition ears;            // in local ids, no trivial ears
};

// Drop the 1-ears and split the remaining graph into its blocks; each
// nontrivial ear lies wholly inside one block, and the restricted ear lists
// (original order) are valid decompositions of the pieces.
inline std::vector<PieceDecomposition> split_into_pieces(const Multigraph& g,
                                                         const EarDecomposition& d) {
    std::vector<int> keep_edges;
    std::vector<int> owner_ear(g.num_edges(), -1);
    for (int i = 0; i < static_cast<int>(d.ears.size()); ++i) {
        if (d.ears[i].trivial()) continue;
        for (int e : d.ears[i].edges) {
            owner_ear[e] = i;
            keep_edges.push_back(e);
        }
    }
    std::sort(keep_edges.begin(), keep_edges.end());
    Multigraph h(g.num_vertices());
    std::vector<int> h_of(g.num_edges(), -1);
    for (int e : keep_edges) h_of[e] = h.add_edge(g.u(e), g.v(e), e);
    auto bt = blocks(h);

    int nb = static_cast<int>(bt.block_vertices.size());
    std::vector<PieceDecomposition> pieces(nb);
    std::vector<std::vector<int>> local_vertex(nb, std::vector<int>(g.num_vertices(), -1));
    std::vector<std::vector<int>> local_edge(nb, std::vector<int>(g.num_edges(), -1));
    for (int b = 0; b < nb; ++b) {
        pieces[b].graph = Multigraph(static_cast<int>(bt.block_vertices[b].size()));
        pieces[b].to_host_vertex = bt.block_vertices[b];
        for (int i = 0; i < static_cast<int>(bt.block_vertices[b].size()); ++i)
            local_vertex[b][bt.block_vertices[b][i]] = i;
        for (int he : bt.block_edges[b]) {
            int host = h.label(he);
            local_edge[b][host] = pieces[b].graph.add_edge(local_vertex[b][h.u(he)],
                                                           local_vertex[b][h.v(he)], host);
        }
    }
    for (int i = 0; i < static_cast<int>(d.ears.size()); ++i) {
        const Ear& p = d.ears[i];
        if (p.trivial()) continue;
        int b = bt.block_of_edge[h_of[p.edges[0]]];
        Ear q;
        for (int e : p.edges) {
            if (bt.block_of_edge[h_of[e]] != b)
                throw std::logic_error("split_into_pieces: ear straddles two pieces");
            q.edges.push_back(local_edge[b][e]);
        }
        for (int v : p.vertices) q.vertices.push_back(local_vertex[b][v]);
        pieces[b].ears.ears.push_back(std::move(q));
    }
    for (auto& piece : pieces) {
        piece.ears.host = piece.graph;
        validate_ear_decomposition(piece.ears);
    }
    return pieces;
}

// --- public algorithms --------------------------------------------------------

struct BlockReport {
    int vertices = 0;
    int edges = 0;
    std::string method;
    int cardinality = 0;
    int lmu = -1;
    int lphi = -1;
};

struct RunTrace {
    std::vector<BlockReport> blocks;
    int cardinality = 0;
};

namespace detail {

inline void lift_block_solution(const Multigraph& block, const SolutionMultiset& sol,
                                SolutionMultiset& total) {
    for (int e = 0; e < block.num_edges(); ++e)
        if (sol.multiplicity(e) > 0) total.add(block.label(e), sol.multiplicity(e));
}

inline std::vector<int> to_local(const std::vector<int>& host_set,
                                 const std::vector<int>& to_host) {
    std::vector<int> out;
    std::map<int, int> idx;
    for (int i = 0; i < static_cast<int>(to_host.size()); ++i) idx[to_host[i]] = i;
    for (int v : host_set) out.push_back(idx.at(v));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// 3/2-approximate connected T-join: per block, the better of the earmuff
// construction and the reverse ear reduction; both are within 3/2 of the
// larger of the lmu / lphi bounds, hence of LP(G,T).
inline SolutionMultiset connected_tjoin_3_2(const Multigraph& g, std::vector<int> t,
                                            RunTrace* trace = nullptr) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (t.size() % 2) throw std::invalid_argument("connected_tjoin_3_2: |T| must be even");
    if (!is_connected(g)) throw std::invalid_argument("connected_tjoin_3_2: graph disconnected");
    SolutionMultiset total(g.num_edges());
    if (g.num_vertices() == 1) return total;
    auto bt = blocks(g);
    auto ts = split_t_over_blocks(g, bt, t);
    for (int b = 0; b < static_cast<int>(bt.block_vertices.size()); ++b) {
        auto bg = detail::relabeled_induced(g, bt.block_vertices[b]);
        if (bg.num_edges() != static_cast<int>(bt.block_edges[b].size()))
            throw std::logic_error("connected_tjoin_3_2: block subgraph mismatch");
        auto t_local = detail::to_local(ts[b], bt.block_vertices[b]);
        BlockReport rep;
        rep.vertices = bg.num_vertices();
        rep.edges = bg.num_edges();
        SolutionMultiset sol;
        if (bg.num_vertices() <= 3) {
            sol = ConnectedJoinOracle(bg).solution(t_local);
            rep.method = "exact";
        } else {
            auto md = prepare_muffed(bg, t_local);
            auto s1 = connected_tjoin_via_earmuff(bg, t_local, md);
            auto s2 = connected_tjoin_via_induction(bg, t_local, md.ears);
            bool pick1 = s1.cardinality() <= s2.cardinality();
            sol = pick1 ? s1 : s2;
            rep.method = pick1 ? "earmuff" : "induction";
            rep.lmu = md.lmu;
            rep.lphi = md.lphi;
            if (2 * sol.cardinality() > 3 * std::max(md.lmu, md.lphi))
                throw std::logic_error("connected_tjoin_3_2: 3/2 bound violated in a block");
        }
        rep.cardinality = sol.cardinality();
        if (trace) trace->blocks.push_back(rep);
        detail::lift_block_solution(bg, sol, total);
    }
    if (!is_connected_t_join(g, total, t))
        throw std::logic_error("connected_tjoin_3_2: assembled solution invalid");
    if (trace) trace->cardinality = total.cardinality();
    return total;
}

namespace detail {

// Tour of one 2-vertex-connected block with at least 4 vertices: the earmuff
// construction on the whole block competes against piecewise tours (per block
// of the graph without 1-ears, the better of the pairing tour and the earmuff
// construction), and the result is within 7/5 of lambda = (2 lmu + lphi)/3.
inline SolutionMultiset block_tour_7_5(const Multigraph& bg, BlockReport* rep) {
    auto md = prepare_muffed(bg, {});
    auto whole = connected_tjoin_via_earmuff(bg, {}, md);

    auto pieces = split_into_pieces(bg, md.ears);
    SolutionMultiset piecewise(bg.num_edges());
    int sum_mu = 0, sum_phi = 0;
    std::vector<std::vector<int>> all_piece_cores;
    for (const auto& piece : pieces) {
        const Multigraph& pg = piece.graph;
        if (!is_nice(piece.ears))
            throw std::logic_error("block_tour_7_5: piece decomposition not nice");
        auto drum_p = associated_eardrum(piece.ears, {});
        auto muff_p = maximum_earmuff(pg, drum_p.cores);
        MuffedDecomposition mdp;
        mdp.ears = piece.ears;
        mdp.cores = drum_p.cores;
        mdp.muff = muff_p;
        mdp.phi = piece.ears.even_count();
        mdp.lphi = l_phi(pg, mdp.phi);
        mdp.lmu = l_mu(pg, drum_p.cores, muff_p).value;
        auto s1 = connected_tjoin_via_earmuff(pg, {}, mdp);
        auto s2 = pairing_tour(pg, removable_pairing_from_ears(piece.ears));
        const auto& s = s1.cardinality() <= s2.cardinality() ? s1 : s2;
        if (15 * s.cardinality() > 7 * (2 * mdp.lmu + mdp.lphi))
            throw std::logic_error("block_tour_7_5: 7/5 bound violated in a piece");
        lift_block_solution(pg, s, piecewise);
        sum_mu += muff_p.mu;
        sum_phi += mdp.phi;
        for (const auto& c : drum_p.cores) {
            std::vector<int> host_core;
            for (int v : c) host_core.push_back(piece.to_host_vertex[v]);
            all_piece_cores.push_back(host_core);
        }
    }
    if (sum_mu != md.muff.mu)
        throw std::logic_error("block_tour_7_5: piece earmuffs do not add up");
    if (sum_phi != md.phi)
        throw std::logic_error("block_tour_7_5: piece even ears do not add up");
    if (sorted_cores(all_piece_cores) != sorted_cores(md.cores))
        throw std::logic_error("block_tour_7_5: piece eardrums do not restrict the eardrum");
    if (!is_connected_t_join(bg, piecewise, {}))
        throw std::logic_error("block_tour_7_5: piecewise tour invalid");

    const auto& best = whole.cardinality() <= piecewise.cardinality() ? whole : piecewise;
    if (15 * best.cardinality() > 7 * (2 * md.lmu + md.lphi))
        throw std::logic_error("block_tour_7_5: 7/5 bound violated in a block");
    if (rep) {
        rep->method = whole.cardinality() <= piecewise.cardinality() ? "earmuff" : "pieces";
        rep->lmu = md.lmu;
        rep->lphi = md.lphi;
    }
    return best;
}

}  // namespace detail

// 7/5-approximate tour of a connected graph.
inline SolutionMultiset tsp_7_5(const Multigraph& g, RunTrace* trace = nullptr) {
    if (!is_connected(g)) throw std::invalid_argument("tsp_7_5: graph disconnected");
    SolutionMultiset total(g.num_edges());
    if (g.num_vertices() == 1) return total;
    auto bt = blocks(g);
    for (int b = 0; b < static_cast<int>(bt.block_vertices.size()); ++b) {
        auto bg = detail::relabeled_induced(g, bt.block_vertices[b]);
        BlockReport rep;
        rep.vertices = bg.num_vertices();
        rep.edges = bg.num_edges();
        SolutionMultiset sol;
        if (bg.num_vertices() <= 3) {
            sol = ConnectedJoinOracle(bg).solution({});
            rep.method = "exact";
        } else {
            sol = detail::block_tour_7_5(bg, &rep);
        }
        rep.cardinality = sol.cardinality();
        if (trace) trace->blocks.push_back(rep);
        detail::lift_block_solution(bg, sol, total);
    }
    if (!is_connected_t_join(g, total, {}))
        throw std::logic_error("tsp_7_5: assembled tour invalid");
    if (trace) trace->cardinality = total.cardinality();
    return total;
}

// Shrink a tour (or any 2-edge-connected multiset) of a bridgeless graph to a
// simple 2-edge-connected spanning subgraph without increasing cardinality:
// a doubled edge is either dropped to one copy or, when that copy would be a
// bridge, traded for a fresh edge across the same cut.
inline SolutionMultiset tour_to_2ecss(const Multigraph& g, const SolutionMultiset& tour) {
    if (!connectivity_report(g).is_2ec)
        throw std::invalid_argument("tour_to_2ecss: graph is not 2-edge-connected");
    SolutionMultiset sol = tour;
    if (!is_2ec_solution(g, sol))
        throw std::invalid_argument("tour_to_2ecss: input is not 2-edge-connected");
    int guard = 3 * g.num_edges() + 8;
    for (;;) {
        if (--guard < 0) throw std::logic_error("tour_to_2ecss: did not terminate");
        int doubled = -1;
        for (int e = 0; e < g.num_edges() && doubled < 0; ++e)
            if (sol.multiplicity(e) == 2) doubled = e;
        if (doubled < 0) break;
        sol.set(doubled, 1);
        if (is_2ec_solution(g, sol)) continue;
        // the two copies formed a cut: find its sides and a replacement edge
        sol.set(doubled, 0);
        std::vector<int> side(g.num_vertices(), -1);
        std::vector<int> stack = {g.u(doubled)};
        side[g.u(doubled)] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : g.adj(v))
                if (sol.multiplicity(e) > 0 && side[w] < 0) {
                    side[w] = 0;
                    stack.push_back(w);
                }
        }
        int swap = -1;
        for (int e = 0; e < g.num_edges() && swap < 0; ++e)
            if (e != doubled && (side[g.u(e)] == 0) != (side[g.v(e)] == 0)) swap = e;
        if (swap < 0) throw std::logic_error("tour_to_2ecss: no replacement across the cut");
        if (sol.multiplicity(swap) != 0)
            throw std::logic_error("tour_to_2ecss: replacement edge already used");
        sol.set(doubled, 1);
        sol.set(swap, 1);
        if (!is_2ec_solution(g, sol))
            throw std::logic_error("tour_to_2ecss: replacement broke 2-edge-connectivity");
    }
    if (sol.cardinality() > tour.cardinality())
        throw std::logic_error("tour_to_2ecss: cardinality increased");
    return sol;
}

// 4/3-approximate minimum 2-edge-connected spanning subgraph: per block, the
// better of (a) all edges of nontrivial ears and (b) the earmuff tour shrunk
// to a simple subgraph; the minimum is within 4/3 of max(lmu, lphi).
inline SolutionMultiset two_ecss_4_3(const Multigraph& g, RunTrace* trace = nullptr) {
    if (!connectivity_report(g).is_2ec)
        throw std::invalid_argument("two_ecss_4_3: graph is not 2-edge-connected");
    SolutionMultiset total(g.num_edges());
    if (g.num_vertices() == 1) return total;
    auto bt = blocks(g);
    for (int b = 0; b < static_cast<int>(bt.block_vertices.size()); ++b) {
        auto bg = detail::relabeled_induced(g, bt.block_vertices[b]);
        BlockReport rep;
        rep.vertices = bg.num_vertices();
        rep.edges = bg.num_edges();
        SolutionMultiset sol;
        if (bg.num_vertices() <= 3) {
            opt_2ecss(bg, nullptr, &sol);
            rep.method = "exact";
        } else {
            auto md = prepare_muffed(bg, {});
            int pendant = md.ears.pendant_count();
            SolutionMultiset ear_edges(bg.num_edges());
            for (const auto& p : md.ears.ears)
                if (!p.trivial())
                    for (int e : p.edges) ear_edges.set(e, 1);
            if (!is_2ec_solution(bg, ear_edges))
                throw std::logic_error("two_ecss_4_3: nontrivial ears are not 2-edge-connected");
            if (4 * ear_edges.cardinality() > 5 * md.lphi + 2 * pendant)
                throw std::logic_error("two_ecss_4_3: ear edge count bound violated");
            auto shrunk = tour_to_2ecss(bg, connected_tjoin_via_earmuff(bg, {}, md));
            bool pick_ears = ear_edges.cardinality() <= shrunk.cardinality();
            sol = pick_ears ? ear_edges : shrunk;
            rep.method = pick_ears ? "ear-edges" : "earmuff-tour";
            rep.lmu = md.lmu;
            rep.lphi = md.lphi;
            if (3 * sol.cardinality() > 4 * std::max(md.lmu, md.lphi))
                throw std::logic_error("two_ecss_4_3: 4/3 bound violated in a block");
        }
        rep.cardinality = sol.cardinality();
        if (trace) trace->blocks.push_back(rep);
        detail::lift_block_solution(bg, sol, total);
    }
    if (!is_2ec_solution(g, total))
        throw std::logic_error("two_ecss_4_3: assembled subgraph invalid");
    for (int e = 0; e < g.num_edges(); ++e)
        if (total.multiplicity(e) > 1)
            throw std::logic_error("two_ecss_4_3: an edge was doubled");
    if (trace) trace->cardinality = total.cardinality();
    return total;
}

// Tour from a 2-edge-connected spanning multiset H: per block of H, any ear
// decomposition with one removable edge per ear gives a tour of cardinality
// at most (2/3)(|E(H)| + |V| - 1) through the pairing construction.
inline SolutionMultiset tour_from_2ecss(const Multigraph& g, const SolutionMultiset& sub) {
    if (!is_2ec_solution(g, sub))
        throw std::invalid_argument("tour_from_2ecss: input is not 2-edge-connected");
    Multigraph h(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        for (int c = 0; c < sub.multiplicity(e); ++c) h.add_edge(g.u(e), g.v(e), e);
    std::vector<int> count(g.num_edges(), 0);
    int raw_total = 0;
    if (g.num_vertices() > 1) {
        auto bt = blocks(h);
        for (int b = 0; b < static_cast<int>(bt.block_vertices.size()); ++b) {
            Multigraph hb(static_cast<int>(bt.block_vertices[b].size()));
            std::vector<int> local(g.num_vertices(), -1);
            for (int i = 0; i < static_cast<int>(bt.block_vertices[b].size()); ++i)
                local[bt.block_vertices[b][i]] = i;
            for (int he : bt.block_edges[b])
                hb.add_edge(local[h.u(he)], local[h.v(he)], h.label(he));
            auto d = open_ear_decomposition(hb);
            RemovablePairing pairing;
            for (const auto& p : d.ears) pairing.r.push_back(p.edges[0]);
            std::sort(pairing.r.begin(), pairing.r.end());
            auto tour_b = pairing_tour(hb, pairing);
            if (3 * tour_b.cardinality() > 2 * (hb.num_edges() + hb.num_vertices() - 1))
                throw std::logic_error("tour_from_2ecss: block tour bound violated");
            raw_total += tour_b.cardinality();
            for (int e = 0; e < hb.num_edges(); ++e) count[hb.label(e)] += tour_b.multiplicity(e);
        }
    }
    SolutionMultiset tour(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int c = count[e];
        if (c > 2) c -= 2;  // parity-preserving reduction keeps the tour valid
        tour.set(e, c);
    }
    if (!is_connected_t_join(g, tour, {}))
        throw std::logic_error("tour_from_2ecss: result is not a tour");
    if (3 * raw_total > 2 * (sub.cardinality() + g.num_vertices() - 1))
        throw std::logic_error("tour_from_2ecss: cardinality bound violated");
    return tour;
}

// Baseline connected T-join: a spanning tree plus a join fixing its parities.
inline SolutionMultiset christofides_tjoin(const Multigraph& g, const std::vector<int>& t) {
    if (!is_connected(g)) throw std::invalid_argument("christofides_tjoin: graph disconnected");
    int n = g.num_vertices();
    SolutionMultiset sol(g.num_edges());
    std::vector<bool> seen(n, false);
    std::vector<int> queue = {0};
    seen[0] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (auto [w, e] : g.adj(queue[qi]))
            if (!seen[w]) {
                seen[w] = true;
                sol.set(e, 1);
                queue.push_back(w);
            }
    std::vector<bool> in_t(n, false);
    for (int v : t) in_t[v] = true;
    std::vector<int> residual;
    for (int v = 0; v < n; ++v)
        if ((solution_degree(g, sol, v) % 2 == 1) != in_t[v]) residual.push_back(v);
    for (int e : min_cardinality_t_join(g, residual).edges) sol.add(e, 1);
    if (!is_connected_t_join(g, sol, t))
        throw std::logic_error("christofides_tjoin: result is not a connected T-join");
    return sol;
}

}  // namespace nicerears
