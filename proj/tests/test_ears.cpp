#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nicerears/ears.hpp"
#include "nicerears/tjoin.hpp"

#include <random>

using namespace nicerears;

namespace {

Multigraph cycle(int n) {
    Multigraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Multigraph complete(int n) {
    Multigraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Multigraph petersen() {
    Multigraph g(10);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);
    for (int i = 0; i < 5; ++i) g.add_edge(i, 5 + i);
    return g;
}

Multigraph random_2vc(std::mt19937& rng, int n, bool allow_parallel) {
    for (;;) {
        Multigraph g(n);
        for (int i = 1; i < n; ++i) g.add_edge(static_cast<int>(rng() % i), i);
        int extra = 2 + static_cast<int>(rng() % (n + 2));
        for (int i = 0; i < extra; ++i) {
            int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
            if (a == b) continue;
            if (!allow_parallel && g.has_edge_between(a, b)) continue;
            g.add_edge(a, b);
        }
        if (connectivity_report(g).is_2vc) return g;
    }
}

// φ via the T-join identity: the largest 2τ(G,T) - |V| + 1 over even T.
int phi_by_t_joins(const Multigraph& g) {
    int n = g.num_vertices();
    int best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        std::vector<int> t;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) t.push_back(v);
        int tau = static_cast<int>(min_cardinality_t_join(g, t).weight);
        best = std::max(best, 2 * tau - n + 1);
    }
    return best;
}

}  // namespace

TEST_CASE("open ear decomposition on classic graphs") {
    for (const Multigraph& g : {cycle(5), complete(4), petersen()}) {
        auto d = open_ear_decomposition(g);
        CHECK(static_cast<int>(d.ears.size()) == g.num_edges() - g.num_vertices() + 1);
        CHECK(d.ears[0].closed());
        for (size_t i = 1; i < d.ears.size(); ++i) CHECK(!d.ears[i].closed());
    }
}

TEST_CASE("open ear decomposition requires 2-vertex-connectivity") {
    Multigraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK_THROWS(open_ear_decomposition(path));
}

TEST_CASE("phi lower bound basics") {
    CHECK(phi_lower_bound(cycle(4)) == 1);
    CHECK(phi_lower_bound(cycle(5)) == 0);
    CHECK(is_factor_critical(cycle(5)));
    CHECK(!is_factor_critical(cycle(4)));
}

TEST_CASE("minimum even ears matches the T-join identity on random graphs") {
    std::mt19937 rng(4321);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);
        auto g = random_2vc(rng, n, trial % 3 == 0);
        auto d = min_even_ear_decomposition(g);
        int phi = d.even_count();
        CHECK(phi == phi_by_t_joins(g));
        CHECK(phi >= phi_lower_bound(g));
    }
}

TEST_CASE("bipartite K34 needs two even ears") {
    Multigraph g(7);
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 7; ++b) g.add_edge(a, b);
    CHECK(phi_lower_bound(g) == 2);
    auto d = min_even_ear_decomposition(g);
    CHECK(d.even_count() == 2);
    CHECK(d.even_count() == phi_by_t_joins(g));
}

TEST_CASE("search budget exhaustion is reported") {
    CHECK_THROWS_AS(min_even_ear_decomposition(petersen(), 3), std::runtime_error);
}

TEST_CASE("make_nice produces nice decompositions with the same even count") {
    std::mt19937 rng(97);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        auto g = random_2vc(rng, n, trial % 4 == 0);
        auto d = min_even_ear_decomposition(g);
        auto nd = make_nice(d);
        CHECK(is_nice(nd));
        CHECK(nd.even_count() == d.even_count());
        CHECK(static_cast<int>(nd.ears.size()) == static_cast<int>(d.ears.size()));
    }
}

TEST_CASE("eardrum cores come from clean pendant short ears") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 5 + static_cast<int>(rng() % 4);
        auto g = random_2vc(rng, n, false);
        auto nd = make_nice(min_even_ear_decomposition(g));
        std::vector<int> t;
        for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0) t.push_back(v);
        if (t.size() % 2) t.pop_back();
        auto m = associated_eardrum(nd, t);
        std::vector<int> owner(n, -1);
        for (size_t i = 0; i < m.cores.size(); ++i) {
            const auto& core = m.cores[i];
            CHECK(core.size() >= 1);
            CHECK(core.size() <= 2);
            for (int v : core) {
                CHECK(owner[v] == -1);  // cores are disjoint
                owner[v] = static_cast<int>(i);
                CHECK(!std::binary_search(t.begin(), t.end(), v));
            }
            const Ear& p = nd.ears[m.clean_ear_index[i]];
            CHECK(p.is_short());
            auto inn = p.inn();
            std::sort(inn.begin(), inn.end());
            CHECK(inn == core);
        }
        // no edge joins two different cores (the eardrum induces degree <= 1
        // only inside cores)
        for (int e = 0; e < g.num_edges(); ++e) {
            int a = owner[g.u(e)], b = owner[g.v(e)];
            CHECK((a < 0 || b < 0 || a == b));
        }
    }
}

TEST_CASE("ear reduction step meets the degree and size guarantees") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        int len = 2 + static_cast<int>(rng() % 6);
        auto g = cycle(2 * len);  // the ear is one half of an even cycle
        Ear p;
        for (int j = 0; j <= len; ++j) p.vertices.push_back(j);
        for (int j = 0; j < len; ++j) p.edges.push_back(j);
        std::vector<int> t;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (rng() % 2) t.push_back(v);

        auto r = ear_reduction_step(g, p, t);

        auto check_parity = [&](const std::vector<int>& fdeg, const std::vector<int>& demand) {
            std::vector<int> want(g.num_vertices(), 0);
            for (int v : demand) want[v] ^= 1;
            std::vector<int> in_t(g.num_vertices(), 0);
            for (int v : t) in_t[v] ^= 1;
            // F fixes parity: odd degree exactly at T Δ demand
            for (int v = 0; v < g.num_vertices(); ++v)
                CHECK(fdeg[v] % 2 == (in_t[v] ^ want[v]));
        };
        std::vector<int> fdeg(g.num_vertices(), 0);
        for (int e : r.f) {
            fdeg[g.u(e)]++;
            fdeg[g.v(e)]++;
        }
        check_parity(fdeg, r.s);
        int inn_count = len - 1;
        int phi_p = (len % 2 == 0) ? 1 : 0;
        CHECK(2 * static_cast<int>(r.f.size()) <= inn_count + phi_p);

        std::vector<int> fpdeg(g.num_vertices(), 0);
        for (int e = 0; e < g.num_edges(); ++e) {
            fpdeg[g.u(e)] += r.f_prime.multiplicity(e);
            fpdeg[g.v(e)] += r.f_prime.multiplicity(e);
        }
        check_parity(fpdeg, r.s_prime);
        // every vertex of P reaches an endpoint of P within F' (the endpoints
        // are joined up through the rest of the graph)
        {
            Multigraph h(g.num_vertices());
            for (int e = 0; e < g.num_edges(); ++e)
                if (r.f_prime.multiplicity(e) > 0) h.add_edge(g.u(e), g.v(e));
            std::vector<bool> seen(g.num_vertices(), false);
            std::vector<int> queue = {p.vertices.front(), p.vertices.back()};
            seen[p.vertices.front()] = true;
            seen[p.vertices.back()] = true;
            for (size_t qi = 0; qi < queue.size(); ++qi)
                for (auto [w, e] : h.adj(queue[qi]))
                    if (!seen[w]) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
            for (int v : p.vertices) CHECK(seen[v]);
        }
        bool inn_clear = true;
        for (int j = 1; j < len; ++j)
            if (std::find(t.begin(), t.end(), j) != t.end()) inn_clear = false;
        int gamma = (len <= 3 && inn_clear) ? 1 : 0;
        CHECK(2 * r.f_prime_cardinality <= 3 * inn_count + phi_p + 2 * gamma - 2);
    }
}

TEST_CASE("debug dump is stable") {
    auto d = open_ear_decomposition(cycle(4));
    auto dump = d.debug_dump();
    CHECK(dump.rfind("ear 0 kind=closed edges=", 0) == 0);
}
