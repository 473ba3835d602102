#pragma once

// Instance families for benchmarks and tests. The three "hard" families are
// the known worst cases of the three algorithms: on them the computed
// solution can approach 3/2, 7/5 and 4/3 times the optimum. Each generated
// instance carries an explicit optimum witness (a Hamiltonian path or
// circuit, or a hand-built solution), verified on construction.

#include "nicerears/multigraph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace nicerears {

struct GeneratedInstance {
    Multigraph graph;
    std::vector<int> t;
    SolutionMultiset witness;  // a solution of cardinality `opt`
    int opt = 0;
};

namespace detail {

inline void check_instance(GeneratedInstance& inst, int n, int m) {
    if (inst.graph.num_vertices() != n || inst.graph.num_edges() != m)
        throw std::logic_error("generator: size formula violated");
    if (!is_connected_t_join(inst.graph, inst.witness, inst.t))
        throw std::logic_error("generator: witness is not a solution");
    if (inst.witness.cardinality() != inst.opt)
        throw std::logic_error("generator: witness cardinality mismatch");
}

inline SolutionMultiset walk_to_solution(const Multigraph& g, const std::vector<int>& walk) {
    SolutionMultiset sol(g.num_edges());
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        int e = g.find_edge(walk[i], walk[i + 1]);
        if (e < 0) throw std::logic_error("generator: witness walk leaves the graph");
        sol.add(e, 1);
    }
    return sol;
}

}  // namespace detail

// Two horizontal paths of 4k+1 vertices joined at s and t, a center vertex on
// the middle column, and diagonal chords; T = {s, t}. A Hamiltonian s-t-path
// exists, so the optimum connected T-join has 8k+4 edges, yet the algorithm
// may return ~3/2 times as much. 8k+5 vertices, 12k+5 edges.
inline GeneratedInstance hard_tjoin_instance(int k) {
    if (k < 1) throw std::invalid_argument("hard_tjoin_instance: k must be >= 1");
    int rows = 4 * k + 1, m = 2 * k;
    int s = 0, t = 1, a = 2;
    auto u = [&](int i) { return 3 + i; };
    auto v = [&](int i) { return 3 + rows + i; };
    GeneratedInstance inst;
    inst.graph = Multigraph(3 + 2 * rows);
    Multigraph& g = inst.graph;
    g.add_edge(s, u(0));
    g.add_edge(s, v(0));
    for (int i = 0; i + 1 < rows; ++i) {
        g.add_edge(u(i), u(i + 1));
        g.add_edge(v(i), v(i + 1));
    }
    g.add_edge(u(rows - 1), t);
    g.add_edge(v(rows - 1), t);
    g.add_edge(a, u(m));
    g.add_edge(a, v(m));
    for (int i = 0; i < m; ++i) g.add_edge(u(i), v(i + 1));
    for (int i = m + 1; i + 1 < rows; ++i) g.add_edge(u(i + 1), v(i));
    inst.t = {s, t};
    // Hamiltonian s-t-path zig-zagging through the diagonals
    std::vector<int> walk = {s, v(0), v(1)};
    for (int j = 0; j < k; ++j) {
        walk.push_back(u(2 * j));
        walk.push_back(u(2 * j + 1));
        walk.push_back(v(2 * j + 2));
        if (2 * j + 2 != m) walk.push_back(v(2 * j + 3));
    }
    walk.push_back(a);
    walk.push_back(u(m));
    walk.push_back(u(m + 1));
    walk.push_back(u(m + 2));
    for (int j = 1; j <= k; ++j) {
        walk.push_back(v(m + 2 * j - 1));
        walk.push_back(v(m + 2 * j));
        if (j < k) {
            walk.push_back(u(m + 2 * j + 1));
            walk.push_back(u(m + 2 * j + 2));
        }
    }
    walk.push_back(t);
    inst.witness = detail::walk_to_solution(g, walk);
    inst.opt = 8 * k + 4;
    detail::check_instance(inst, 8 * k + 5, 12 * k + 5);
    return inst;
}

// Chain of k ten-vertex gadgets closed by one extra edge; Hamiltonian, so the
// optimum tour has 10k+1 edges, yet the algorithm may return ~7/5 times as
// much. 10k+1 vertices, 13k+1 edges.
inline GeneratedInstance hard_tour_instance(int k) {
    if (k < 1) throw std::invalid_argument("hard_tour_instance: k must be >= 1");
    auto x = [&](int i, int j) { return 1 + 10 * i + j; };
    GeneratedInstance inst;
    inst.graph = Multigraph(10 * k + 1);
    Multigraph& g = inst.graph;
    for (int i = 0; i < k; ++i) {
        int prev_bottom = i == 0 ? 0 : x(i - 1, 6);
        int prev_top = i == 0 ? 0 : x(i - 1, 9);
        g.add_edge(prev_bottom, x(i, 0));
        g.add_edge(prev_top, x(i, 3));
        g.add_edge(x(i, 0), x(i, 1));
        g.add_edge(x(i, 1), x(i, 2));
        g.add_edge(x(i, 2), x(i, 3));
        g.add_edge(x(i, 0), x(i, 6));
        g.add_edge(x(i, 2), x(i, 4));
        g.add_edge(x(i, 4), x(i, 5));
        g.add_edge(x(i, 5), x(i, 8));
        g.add_edge(x(i, 3), x(i, 9));
        g.add_edge(x(i, 6), x(i, 7));
        g.add_edge(x(i, 7), x(i, 8));
        g.add_edge(x(i, 8), x(i, 9));
    }
    g.add_edge(x(k - 1, 6), x(k - 1, 9));
    // Hamiltonian circuit: forward through each gadget, back along the tops
    std::vector<int> walk = {0};
    for (int i = 0; i < k; ++i)
        for (int j : {0, 1, 2, 4, 5, 8, 7, 6}) walk.push_back(x(i, j));
    for (int i = k - 1; i >= 0; --i) {
        walk.push_back(x(i, 9));
        walk.push_back(x(i, 3));
    }
    walk.push_back(0);
    inst.witness = detail::walk_to_solution(g, walk);
    inst.opt = 10 * k + 1;
    detail::check_instance(inst, 10 * k + 1, 13 * k + 1);
    return inst;
}

// Chain of 4k six-vertex columns (the last has four vertices) with chords;
// Hamiltonian, so the optimum 2ECSS has 24k edges, yet the algorithm may
// return ~4/3 times as much. 24k vertices, 44k-2 edges.
inline GeneratedInstance hard_2ecss_instance(int k) {
    if (k < 1) throw std::invalid_argument("hard_2ecss_instance: k must be >= 1");
    int last = 4 * k;
    // group i = 1..4k has vertices j = 1..6 (the last group only j = 1..4)
    auto y = [&](int i, int j) { return 2 + 6 * (i - 1) + (j - 1); };
    GeneratedInstance inst;
    inst.graph = Multigraph(24 * k);
    Multigraph& g = inst.graph;
    int v0 = 0, v06 = 1;
    g.add_edge(v0, y(1, 1));
    g.add_edge(v0, y(1, 4));
    g.add_edge(v0, v06);
    g.add_edge(v06, y(1, 3));
    g.add_edge(y(1, 1), y(1, 2));
    g.add_edge(y(1, 2), y(1, 3));
    g.add_edge(y(1, 3), y(1, 4));
    for (int i = 1; i < last; ++i) {
        g.add_edge(y(i, 1), y(i + 1, 1));
        g.add_edge(y(i, 4), y(i + 1, 4));
        g.add_edge(y(i, i % 2 ? 3 : 2), y(i, 5));
        g.add_edge(y(i, 5), y(i, 6));
        g.add_edge(y(i, 6), y(i + 1, i % 2 ? 2 : 3));
        g.add_edge(y(i + 1, 1), y(i + 1, 2));
        g.add_edge(y(i + 1, 2), y(i + 1, 3));
        g.add_edge(y(i + 1, 3), y(i + 1, 4));
    }
    for (int i = 1; i < last; ++i)
        g.add_edge(y(i, i % 2 ? 2 : 3), y(i, i % 2 ? 6 : 5));
    for (int j = 0; j < k; ++j) {
        int a = 4 * j + 1;
        g.add_edge(y(a + 1, 1), y(a, 2));
        g.add_edge(y(a + 1, 1), y(a + 1, 6));
        g.add_edge(y(a + 1, 1), y(a + 3, 1));
        g.add_edge(y(a + 2, 4), y(a, 4));
        g.add_edge(y(a + 2, 4), y(a + 1, 6));
        g.add_edge(y(a + 2, 4), y(a + 3, 3));
    }
    g.add_edge(v0, y(2, 3));
    for (int j = 0; j < k; ++j)
        g.add_edge(y(4 * j + 3, 2), y(4 * j + 4, j == k - 1 ? 2 : 6));
    for (int j = 0; j + 1 < k; ++j)
        g.add_edge(y(4 * j + 6, 3), y(4 * j + 4, 6));
    // Hamiltonian circuit: forward over columns 1,2,3,5,6; back along row 4
    std::vector<int> walk = {v0, v06};
    for (int j = 0; j < k; ++j) {
        int a = 4 * j + 1;
        for (int q : {3, 5, 6, 2, 1}) walk.push_back(y(a, q));
        for (int q : {1, 2, 3, 5, 6}) walk.push_back(y(a + 1, q));
        for (int q : {3, 5, 6, 2, 1}) walk.push_back(y(a + 2, q));
        walk.push_back(y(a + 3, 1));
        walk.push_back(y(a + 3, 2));
        if (j < k - 1) {
            walk.push_back(y(a + 3, 5));
            walk.push_back(y(a + 3, 6));
        } else {
            walk.push_back(y(a + 3, 3));
            walk.push_back(y(a + 3, 4));
        }
    }
    for (int i = last - 1; i >= 1; --i) {
        walk.push_back(y(i, 4));
        if (i % 4 == 0) walk.push_back(y(i, 3));
    }
    walk.push_back(v0);
    inst.witness = detail::walk_to_solution(g, walk);
    inst.opt = 24 * k;
    detail::check_instance(inst, 24 * k, 44 * k - 2);
    return inst;
}

// Three internally disjoint paths of length k between two hubs. The optimum
// tour traverses two paths and doubles all but one edge of the third:
// 4k-2 edges (certified exhaustively in the tests for small k).
inline GeneratedInstance theta_instance(int k) {
    if (k < 1) throw std::invalid_argument("theta_instance: k must be >= 1");
    GeneratedInstance inst;
    inst.graph = Multigraph(2 + 3 * (k - 1));
    Multigraph& g = inst.graph;
    std::vector<std::vector<int>> path_edges(3);
    int next = 2;
    for (int p = 0; p < 3; ++p) {
        int prev = 0;
        for (int i = 0; i + 1 < k; ++i) {
            path_edges[p].push_back(g.add_edge(prev, next));
            prev = next++;
        }
        path_edges[p].push_back(g.add_edge(prev, 1));
    }
    inst.witness = SolutionMultiset(g.num_edges());
    for (int p = 0; p < 2; ++p)
        for (int e : path_edges[p]) inst.witness.set(e, 1);
    for (int i = 0; i + 1 < k; ++i) inst.witness.set(path_edges[2][i], 2);
    inst.opt = 4 * k - 2;
    detail::check_instance(inst, 2 + 3 * (k - 1), 3 * k);
    return inst;
}

// Even circuit C_{2n} with T a pair of antipodal vertices. The optimum
// connected T-join takes one arc plus all but one edge of the other doubled:
// 3n-2 edges (certified exhaustively in the tests for small n).
inline GeneratedInstance antipodal_cycle_instance(int n) {
    if (n < 2) throw std::invalid_argument("antipodal_cycle_instance: n must be >= 2");
    GeneratedInstance inst;
    inst.graph = Multigraph(2 * n);
    Multigraph& g = inst.graph;
    for (int i = 0; i < 2 * n; ++i) g.add_edge(i, (i + 1) % (2 * n));
    inst.t = {0, n};
    inst.witness = SolutionMultiset(g.num_edges());
    for (int i = 0; i < n; ++i) inst.witness.set(i, 1);
    for (int i = n; i + 1 < 2 * n; ++i) inst.witness.set(i, 2);
    inst.opt = 3 * n - 2;
    detail::check_instance(inst, 2 * n, 2 * n);
    return inst;
}

// Random simple 2-edge-connected graph: a random connected graph with extra
// chords, regenerated until it is bridgeless. Deterministic for a fixed rng.
inline Multigraph random_2ec_graph(std::mt19937& rng, int n, int extra) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Multigraph g(n);
        for (int i = 1; i < n; ++i) g.add_edge(static_cast<int>(rng() % i), i);
        for (int i = 0; i < extra; ++i) {
            int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
            if (a != b && !g.has_edge_between(a, b)) g.add_edge(a, b);
        }
        if (connectivity_report(g).is_2ec) return g;
    }
    throw std::runtime_error("random_2ec_graph: no bridgeless sample found");
}

namespace detail {

// graphs on n vertices as bitmasks over vertex pairs {i<j}
inline int pair_bit(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::uint64_t canonical_mask(std::uint64_t mask, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~0ull;
    do {
        std::uint64_t out = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (mask >> pair_bit(i, j, n) & 1)
                    out |= 1ull << pair_bit(perm[i], perm[j], n);
        best = std::min(best, out);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

// All connected simple graphs on n vertices, one per isomorphism class,
// built by repeatedly attaching a new vertex to every smaller class.
// (Counts: 1, 1, 2, 6, 21, 112, 853 for n = 1..7.)
inline std::vector<Multigraph> connected_graph_catalog(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("connected_graph_catalog: n out of range");
    std::set<std::uint64_t> level = {0};  // the one-vertex graph
    for (int m = 1; m < n; ++m) {
        std::set<std::uint64_t> next;
        for (std::uint64_t mask : level)
            for (std::uint64_t nb = 1; nb < (1ull << m); ++nb) {
                std::uint64_t grown = 0;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        if (mask >> detail::pair_bit(i, j, m) & 1)
                            grown |= 1ull << detail::pair_bit(i, j, m + 1);
                for (int i = 0; i < m; ++i)
                    if (nb >> i & 1) grown |= 1ull << detail::pair_bit(i, m, m + 1);
                next.insert(detail::canonical_mask(grown, m + 1));
            }
        level = std::move(next);
    }
    std::vector<Multigraph> out;
    for (std::uint64_t mask : level) {
        Multigraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (mask >> detail::pair_bit(i, j, n) & 1) g.add_edge(i, j);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace nicerears
