#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nicerears/lp.hpp"

#include <random>

using namespace nicerears;

namespace {

Multigraph cycle(int n) {
    Multigraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Multigraph petersen() {
    Multigraph g(10);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);
    for (int i = 0; i < 5; ++i) g.add_edge(i, 5 + i);
    return g;
}

// three internally disjoint paths of length k between two hubs
Multigraph theta(int k) {
    Multigraph g(2 + 3 * (k - 1));
    int next = 2;
    for (int p = 0; p < 3; ++p) {
        int prev = 0;
        for (int i = 0; i < k - 1; ++i) {
            g.add_edge(prev, next);
            prev = next++;
        }
        g.add_edge(prev, 1);
    }
    return g;
}

Multigraph random_connected(std::mt19937& rng, int n, int extra) {
    Multigraph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(static_cast<int>(rng() % i), i);
    for (int i = 0; i < extra; ++i) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a != b) g.add_edge(a, b);
    }
    return g;
}

// one-shot solve with the complete constraint system, bypassing lazy separation
Rational full_lp(const Multigraph& g, const std::vector<int>& t) {
    int n = g.num_vertices();
    int m = g.num_edges();
    std::vector<int> in_t(n, 0);
    for (int v : t) in_t[v] = 1;
    detail::DualSimplex simplex(m, std::vector<Rational>(m, 1));
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<bool> in_w(n, false);
        int t_in = 0;
        for (int v = 0; v < n - 1; ++v)
            if (mask >> v & 1) {
                in_w[v] = true;
                t_in += in_t[v];
            }
        if (t_in % 2) continue;
        auto c = detail::cut_constraint(g, in_w, 2);
        std::vector<Rational> col(m);
        for (int e = 0; e < m; ++e) col[e] = c.edge_count[e];
        simplex.add_column(col, Rational(2));
    }
    if (!t.empty())
        detail::for_each_partition(n, [&](const std::vector<int>& assign, int classes) {
            if (classes <= 1) return;
            std::vector<Rational> col(m, 0);
            for (int e = 0; e < m; ++e)
                if (assign[g.u(e)] != assign[g.v(e)]) col[e] = 1;
            simplex.add_column(col, Rational(classes - 1));
        });
    std::vector<Rational> x;
    return simplex.solve(x);
}

}  // namespace

TEST_CASE("cycles and cliques") {
    CHECK(lp_value(cycle(3)).value == 3);
    CHECK(lp_value(cycle(4)).value == 4);
    CHECK(lp_value(cycle(5)).value == 5);
    Multigraph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
    CHECK(lp_value(k4).value == 4);
}

TEST_CASE("bridges cost two") {
    Multigraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(lp_value(path).value == 4);
}

TEST_CASE("petersen hits the vertex-count bound") {
    CHECK(lp_value(petersen()).value == 10);
}

TEST_CASE("theta graph has the fractional optimum below the tour optimum") {
    CHECK(lp_value(theta(2)).value == 6);   // all-ones point; tours need 8
    CHECK(lp_value(theta(3)).value == 9);
}

TEST_CASE("antipodal pair on an even cycle") {
    for (int n = 2; n <= 3; ++n) {
        auto g = cycle(2 * n);
        auto r = lp_value(g, {0, n});
        CHECK(r.value == 2 * n);
        CHECK(lp_feasible(g, {0, n}, r.x));
    }
}

TEST_CASE("adjacent pair on C4 gives the tree bound") {
    auto r = lp_value(cycle(4), {0, 1});
    CHECK(r.value == 3);
}

TEST_CASE("lazy separation agrees with the one-shot solve") {
    std::mt19937 rng(6060);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        auto g = random_connected(rng, n, static_cast<int>(rng() % 5));
        CHECK(lp_value(g).value == full_lp(g, {}));
        std::vector<int> t;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) t.push_back(v);
        if (t.size() % 2) t.pop_back();
        auto r = lp_value(g, t);
        CHECK(r.value == full_lp(g, t));
        CHECK(lp_feasible(g, t, r.x));
        Rational sum = 0;
        for (const auto& v : r.x) sum += v;
        CHECK(sum == r.value);
        // relaxed cut family can only lower the value
        CHECK(lp_value(g, t, true).value <= r.value);
        // LP(G, {}) is LP(G)
        CHECK(lp_value(g, std::vector<int>{}).value == lp_value(g).value);
    }
}

TEST_CASE("lp respects the basic sandwich bounds") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);
        auto g = random_connected(rng, n, 2 + static_cast<int>(rng() % 5));
        if (!connectivity_report(g).is_2ec) continue;
        auto r = lp_value(g);
        CHECK(r.value >= n);
        CHECK(r.value <= g.num_edges());  // all-ones point is feasible when 2EC
    }
}

TEST_CASE("infeasible points are rejected") {
    auto g = cycle(4);
    CHECK(!lp_feasible(g, {}, std::vector<Rational>(4, Rational(1, 2))));
    CHECK(lp_feasible(g, {}, std::vector<Rational>(4, 1)));
}
