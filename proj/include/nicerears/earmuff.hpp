#pragma once

// Earmuffs: for an eardrum M (disjoint cores of size 1 or 2), pick a path
// through each core of a largest subset F so that the path union is a forest.
// The maximization runs on an abstract formulation — pick representative
// endpoint pairs e_f from ground sets U_f so that the pairs form a forest —
// solved greedily with an augmenting search, and certified by a partition of
// the ground set (weak duality holds for every partition, equality proves
// optimality). The earmuff itself is recovered by realizing each pair as a
// path, substituting one endpoint when the pair is not directly realizable.

#include "nicerears/ears.hpp"
#include "nicerears/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nicerears {

struct ForestRepSystem {
    std::vector<int> picked;                   // indices into the core list, increasing
    std::vector<std::pair<int, int>> pairs;    // representative pairs, parallel to picked
};

// Partition of the ground set witnessing that no larger system exists:
// every class W absorbs at most |W|-1 representative pairs, so
// |F| <= |M| - sum over W of (|{f : U_f ⊆ W}| - (|W| - 1)).
struct MuffCertificate {
    std::vector<std::vector<int>> partition;
    int bound = 0;
};

inline int certificate_bound(int u_size, const std::vector<std::vector<int>>& u_sets,
                             const std::vector<std::vector<int>>& partition) {
    std::vector<int> cls(u_size, -1);
    for (int w = 0; w < static_cast<int>(partition.size()); ++w)
        for (int v : partition[w]) {
            if (v < 0 || v >= u_size || cls[v] != -1)
                throw std::invalid_argument("certificate_bound: not a partition");
            cls[v] = w;
        }
    for (int v = 0; v < u_size; ++v)
        if (cls[v] == -1) throw std::invalid_argument("certificate_bound: not a partition");
    int bound = static_cast<int>(u_sets.size());
    for (const auto& w : partition) {
        int inside = 0;
        for (const auto& uf : u_sets) {
            bool in = !uf.empty();
            for (int v : uf)
                if (cls[v] != cls[w[0]]) in = false;
            if (in && cls[uf[0]] == cls[w[0]]) inside += 1;
        }
        bound -= std::max(0, inside - (static_cast<int>(w.size()) - 1));
    }
    return bound;
}

namespace detail {

// Forest over the ground set given by the currently picked pairs.
struct RepForest {
    int n;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> comp;  // component id per vertex
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge index)

    RepForest(int u_size, const std::vector<std::pair<int, int>>& pairs)
        : n(u_size), edges(pairs), comp(u_size, -1), adj(u_size) {
        for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
            auto [a, b] = pairs[i];
            adj[a].push_back({b, i});
            adj[b].push_back({a, i});
        }
        int c = 0;
        for (int v = 0; v < n; ++v) {
            if (comp[v] >= 0) continue;
            std::vector<int> queue = {v};
            comp[v] = c;
            for (size_t qi = 0; qi < queue.size(); ++qi)
                for (auto [w, e] : adj[queue[qi]])
                    if (comp[w] < 0) {
                        comp[w] = c;
                        queue.push_back(w);
                    }
            ++c;
        }
    }

    bool is_forest() const {
        int num_comp = *std::max_element(comp.begin(), comp.end()) + 1;
        return static_cast<int>(edges.size()) == n - num_comp;
    }

    // vertices on the side of edges[i].first after deleting edge i
    std::vector<bool> side_of(int i) const {
        std::vector<bool> side(n, false);
        int src = edges[i].first;
        std::vector<int> queue = {src};
        side[src] = true;
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (auto [w, e] : adj[queue[qi]]) {
                if (e == i || side[w]) continue;
                side[w] = true;
                queue.push_back(w);
            }
        return side;
    }
};

}  // namespace detail

// Greedy maximization with augmenting search. Cores are inserted in index
// order; when core g cannot be represented directly, the search walks a
// digraph whose arcs (f, f') mean "some pair from U_f straddles the current
// pair of f'", re-assigning pairs along a shortest arc path that ends at a
// core whose ground set spans two forest components. If no such path exists,
// the set of ground elements reachable from g is closed and g stays out.
inline ForestRepSystem max_forest_representatives(int u_size,
                                                  const std::vector<std::vector<int>>& u_sets) {
    for (const auto& uf : u_sets) {
        if (uf.empty())
            throw std::invalid_argument("max_forest_representatives: empty ground set");
        for (int v : uf)
            if (v < 0 || v >= u_size)
                throw std::invalid_argument("max_forest_representatives: element out of range");
    }
    int m = static_cast<int>(u_sets.size());
    ForestRepSystem sys;

    auto rebuild_and_check = [&]() {
        detail::RepForest forest(u_size, sys.pairs);
        if (!forest.is_forest())
            throw std::logic_error("max_forest_representatives: augmentation broke the forest");
    };

    for (int g = 0; g < m; ++g) {
        detail::RepForest forest(u_size, sys.pairs);
        int k = static_cast<int>(sys.picked.size());

        // spread(f): two elements of U_f in different components, if any
        auto spread = [&](int f) -> std::optional<std::pair<int, int>> {
            for (size_t i = 0; i < u_sets[f].size(); ++i)
                for (size_t j = i + 1; j < u_sets[f].size(); ++j)
                    if (forest.comp[u_sets[f][i]] != forest.comp[u_sets[f][j]])
                        return std::make_pair(u_sets[f][i], u_sets[f][j]);
            return std::nullopt;
        };

        // witness(f, i): a pair from U_f straddling picked pair i, if any
        auto witness = [&](int f, int i) -> std::optional<std::pair<int, int>> {
            auto side = forest.side_of(i);
            int c = forest.comp[forest.edges[i].first];
            int in_side = -1, off_side = -1;
            for (int v : u_sets[f]) {
                if (forest.comp[v] != c) continue;
                (side[v] ? in_side : off_side) = v;
            }
            if (in_side >= 0 && off_side >= 0) return std::make_pair(in_side, off_side);
            return std::nullopt;
        };

        // BFS nodes: -1 for g itself, 0..k-1 for picked cores
        std::vector<int> pred(k, -2);  // -2 unvisited
        std::vector<std::optional<std::pair<int, int>>> via(k);
        std::vector<int> queue;
        int goal = -3;
        std::optional<std::pair<int, int>> goal_pair = spread(g);
        if (goal_pair) {
            sys.picked.push_back(g);
            sys.pairs.push_back(*goal_pair);
            rebuild_and_check();
            continue;
        }
        // expand from g
        for (int i = 0; i < k; ++i)
            if (auto w = witness(g, i)) {
                pred[i] = -1;
                via[i] = w;
                queue.push_back(i);
            }
        std::optional<std::pair<int, int>> end_pair;
        for (size_t qi = 0; qi < queue.size() && goal == -3; ++qi) {
            int i = queue[qi];
            int f = sys.picked[i];
            if (auto sp = spread(f)) {
                goal = i;
                end_pair = sp;
                break;
            }
            for (int j = 0; j < k; ++j) {
                if (pred[j] != -2) continue;
                if (auto w = witness(f, j)) {
                    pred[j] = i;
                    via[j] = w;
                    queue.push_back(j);
                }
            }
        }
        if (goal == -3) continue;  // g stays unrepresented
        // re-assign pairs along the path, then give g the freed slot
        int i = goal;
        sys.pairs[i] = *end_pair;
        while (pred[i] != -1) {
            sys.pairs[pred[i]] = *via[i];
            i = pred[i];
        }
        std::pair<int, int> g_pair = *via[i];
        // keep picked sorted by core index
        auto pos = std::upper_bound(sys.picked.begin(), sys.picked.end(), g);
        sys.pairs.insert(sys.pairs.begin() + (pos - sys.picked.begin()), g_pair);
        sys.picked.insert(pos, g);
        rebuild_and_check();
    }
    return sys;
}

// Optimality certificate for a maximum system: reachable closures merged into
// maximal closed classes plus singletons; the resulting partition's bound
// must equal the system size.
inline MuffCertificate forest_rep_certificate(int u_size,
                                              const std::vector<std::vector<int>>& u_sets,
                                              const ForestRepSystem& sys) {
    int m = static_cast<int>(u_sets.size());
    int k = static_cast<int>(sys.picked.size());
    detail::RepForest forest(u_size, sys.pairs);

    auto spread_free = [&](int f) {
        for (size_t i = 0; i < u_sets[f].size(); ++i)
            for (size_t j = i + 1; j < u_sets[f].size(); ++j)
                if (forest.comp[u_sets[f][i]] != forest.comp[u_sets[f][j]]) return true;
        return false;
    };
    auto witness_exists = [&](int f, int i) {
        auto side = forest.side_of(i);
        int c = forest.comp[forest.edges[i].first];
        bool in_side = false, off_side = false;
        for (int v : u_sets[f]) {
            if (forest.comp[v] != c) continue;
            (side[v] ? in_side : off_side) = true;
        }
        return in_side && off_side;
    };

    // union-find over ground elements; closures of cores merge their sets
    std::vector<int> parent(u_size);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    for (int f = 0; f < m; ++f) {
        if (spread_free(f)) {
            // a core able to reach two components must be picked already;
            // otherwise the greedy phase failed
            if (!std::binary_search(sys.picked.begin(), sys.picked.end(), f))
                throw std::logic_error("forest_rep_certificate: system is not maximum");
            continue;
        }
        // reachability from f through the picked pairs
        std::vector<bool> visited(k, false);
        std::vector<int> queue;
        std::vector<int> reach_cores = {f};
        for (int i = 0; i < k; ++i)
            if (witness_exists(f, i)) {
                visited[i] = true;
                queue.push_back(i);
            }
        bool hit_spread = false;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int fi = sys.picked[queue[qi]];
            reach_cores.push_back(fi);
            if (spread_free(fi)) {
                hit_spread = true;
                break;
            }
            for (int j = 0; j < k; ++j)
                if (!visited[j] && witness_exists(fi, j)) {
                    visited[j] = true;
                    queue.push_back(j);
                }
        }
        if (hit_spread) {
            if (!std::binary_search(sys.picked.begin(), sys.picked.end(), f))
                throw std::logic_error("forest_rep_certificate: augmenting path missed");
            continue;
        }
        int anchor = u_sets[f][0];
        for (int fc : reach_cores)
            for (int v : u_sets[fc]) unite(anchor, v);
    }

    std::vector<std::vector<int>> classes(u_size);
    for (int v = 0; v < u_size; ++v) classes[find(v)].push_back(v);
    MuffCertificate cert;
    for (auto& w : classes)
        if (!w.empty()) cert.partition.push_back(std::move(w));
    cert.bound = certificate_bound(u_size, u_sets, cert.partition);
    if (cert.bound != k)
        throw std::logic_error("forest_rep_certificate: bound does not match the system size");
    return cert;
}

// --- graph layer -------------------------------------------------------------

struct EarmuffResult {
    std::vector<int> u;                        // host ids of U = V \ V_M, sorted
    std::vector<std::vector<int>> u_sets;      // per core, in U-index space
    ForestRepSystem system;                    // in U-index space
    std::vector<int> picked;                   // core indices with a path
    std::vector<Ear> paths;                    // realized paths, parallel to picked
    MuffCertificate certificate;               // in U-index space
    int mu = 0;
};

// Ground sets: for f = {a}, neighbors of a outside V_M; for f = {a, b}, the
// union of both outside-neighbor sets. Realizability of individual pairs is
// handled during path realization.
inline std::vector<std::vector<int>> eardrum_endpoint_sets(const Multigraph& g,
                                                           const std::vector<std::vector<int>>& cores,
                                                           const std::vector<int>& u_index) {
    std::vector<std::vector<int>> u_sets;
    for (const auto& f : cores) {
        std::vector<int> uf;
        for (int a : f)
            for (auto [w, e] : g.adj(a))
                if (u_index[w] >= 0) uf.push_back(u_index[w]);
        std::sort(uf.begin(), uf.end());
        uf.erase(std::unique(uf.begin(), uf.end()), uf.end());
        if (uf.empty())
            throw std::invalid_argument("earmuff: a core has no path through it");
        u_sets.push_back(std::move(uf));
    }
    return u_sets;
}

namespace detail {

// Build the path through core f with the given endpoints, if the graph allows
// that orientation; edge ids are the lowest-id copies.
inline std::optional<Ear> path_through_core(const Multigraph& g, const std::vector<int>& f,
                                            int u, int v) {
    Ear p;
    if (f.size() == 1) {
        int a = f[0];
        int e1 = g.find_edge(u, a), e2 = g.find_edge(a, v);
        if (e1 < 0 || e2 < 0) return std::nullopt;
        p.vertices = {u, a, v};
        p.edges = {e1, e2};
        return p;
    }
    int a = f[0], b = f[1];
    int core_edge = g.find_edge(a, b);
    if (core_edge < 0) throw std::logic_error("path_through_core: core pair not adjacent");
    for (int flip = 0; flip < 2; ++flip) {
        int x = flip ? b : a, y = flip ? a : b;
        int e1 = g.find_edge(u, x), e2 = g.find_edge(y, v);
        if (e1 >= 0 && e2 >= 0) {
            p.vertices = {u, x, y, v};
            p.edges = {e1, core_edge, e2};
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Maximum earmuff: ground-set maximization, then path realization. When a
// representative pair {u, v} has both endpoints adjacent to the same single
// core vertex, one endpoint is swapped for an outside neighbor of the other
// core vertex; exactly the swap that avoids closing a cycle is kept.
inline EarmuffResult maximum_earmuff(const Multigraph& g,
                                     const std::vector<std::vector<int>>& cores) {
    EarmuffResult res;
    std::vector<bool> in_vm(g.num_vertices(), false);
    for (const auto& f : cores)
        for (int a : f) {
            if (in_vm[a]) throw std::invalid_argument("maximum_earmuff: cores overlap");
            in_vm[a] = true;
        }
    std::vector<int> u_index(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!in_vm[v]) {
            u_index[v] = static_cast<int>(res.u.size());
            res.u.push_back(v);
        }
    int u_size = static_cast<int>(res.u.size());
    res.u_sets = eardrum_endpoint_sets(g, cores, u_index);
    res.system = max_forest_representatives(u_size, res.u_sets);
    res.certificate = forest_rep_certificate(u_size, res.u_sets, res.system);
    res.picked = res.system.picked;
    res.mu = static_cast<int>(res.picked.size());

    // realize paths; pairs evolve as substitutions happen, so keep a live copy
    auto pairs = res.system.pairs;
    for (int i = 0; i < res.mu; ++i) {
        const auto& f = cores[res.picked[i]];
        int hu = res.u[pairs[i].first], hv = res.u[pairs[i].second];
        auto direct = detail::path_through_core(g, f, hu, hv);
        if (direct) {
            res.paths.push_back(*direct);
            continue;
        }
        // both endpoints hang off the same core vertex: find it, then swap one
        // endpoint for an outside neighbor of the other core vertex
        int a = f[0], b = f[1];
        if (g.find_edge(hu, a) < 0 || g.find_edge(hv, a) < 0) std::swap(a, b);
        if (g.find_edge(hu, a) < 0 || g.find_edge(hv, a) < 0)
            throw std::logic_error("maximum_earmuff: unrealizable representative pair");
        int w = -1;
        for (auto [x, e] : g.adj(b))
            if (u_index[x] >= 0) {
                w = x;
                break;
            }
        if (w < 0) throw std::logic_error("maximum_earmuff: core vertex has no outside neighbor");
        int wi = u_index[w];
        // replacing pair i by {u, w} closes a cycle only if w sits on u's side
        detail::RepForest forest(u_size, pairs);
        int keep;  // the endpoint that stays
        int edge_i = -1;
        for (int j = 0; j < static_cast<int>(forest.edges.size()); ++j)
            if (forest.edges[j] == pairs[i]) edge_i = j;
        auto side_u = forest.side_of(edge_i);  // side of pairs[i].first
        bool w_in_tree = forest.comp[wi] == forest.comp[pairs[i].first];
        if (!w_in_tree || !side_u[wi])
            keep = pairs[i].first;
        else
            keep = pairs[i].second;
        pairs[i] = {keep, wi};
        auto p = detail::path_through_core(g, f, res.u[keep], w);
        if (!p) throw std::logic_error("maximum_earmuff: substituted pair still unrealizable");
        res.paths.push_back(*p);
        detail::RepForest check(u_size, pairs);
        if (!check.is_forest())
            throw std::logic_error("maximum_earmuff: substitution broke the forest");
    }
    res.system.pairs = pairs;
    return res;
}

// Replace the clean ears of a nice decomposition that carry earmuff paths by
// those paths, keeping the decomposition valid: non-clean nontrivial ears
// first (original order), then the new paths, then the untouched clean ears,
// then everything else as 1-ears.
inline EarDecomposition reroot_ears(const EarDecomposition& d, const Eardrum& drum,
                                    const EarmuffResult& muff) {
    std::vector<bool> is_clean(d.ears.size(), false);
    for (int i : drum.clean_ear_index) is_clean[i] = true;
    if (!d.ears.empty() && is_clean[0])
        throw std::invalid_argument("reroot_ears: the root circuit is a clean ear");
    EarDecomposition out;
    out.host = d.host;
    std::vector<bool> edge_used(d.host.num_edges(), false);
    auto push = [&](const Ear& p) {
        for (int e : p.edges) {
            if (edge_used[e]) throw std::logic_error("reroot_ears: edge used twice");
            edge_used[e] = true;
        }
        out.ears.push_back(p);
    };
    for (int i = 0; i < static_cast<int>(d.ears.size()); ++i)
        if (!d.ears[i].trivial() && !is_clean[i]) push(d.ears[i]);
    for (const Ear& q : muff.paths) push(q);
    std::vector<bool> kept(drum.cores.size(), true);
    for (int i : muff.picked) kept[i] = false;
    for (size_t i = 0; i < drum.cores.size(); ++i)
        if (kept[i]) push(d.ears[drum.clean_ear_index[i]]);
    for (int e = 0; e < d.host.num_edges(); ++e)
        if (!edge_used[e]) {
            Ear t;
            t.vertices = {d.host.u(e), d.host.v(e)};
            t.edges = {e};
            out.ears.push_back(t);
            edge_used[e] = true;
        }
    validate_ear_decomposition(out);
    return out;
}

}  // namespace nicerears
