#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nicerears/approx.hpp"
#include "nicerears/bounds.hpp"
#include "nicerears/generators.hpp"
#include "nicerears/lp.hpp"
#include "nicerears/oracle.hpp"

#include <random>

using namespace nicerears;

TEST_CASE("hard T-join family: sizes, phi, and certified optimum") {
    for (int k = 1; k <= 3; ++k) {
        auto inst = hard_tjoin_instance(k);
        CHECK(inst.graph.num_vertices() == 8 * k + 5);
        CHECK(inst.graph.num_edges() == 12 * k + 5);
        CHECK(inst.opt == 8 * k + 4);
        CHECK(is_connected_t_join(inst.graph, inst.witness, inst.t));
        // the witness is a Hamiltonian s-t-path, so it meets the |V|-1 bound
        CHECK(opt_connected_tjoin(inst.graph, inst.t, &inst.witness) == inst.opt);
        CHECK(connectivity_report(inst.graph).is_2vc);
        if (k == 1) CHECK(phi_oracle(inst.graph) == 2);
        CHECK(min_even_ear_decomposition(inst.graph).even_count() == 2);
    }
}

TEST_CASE("hard tour family: sizes, phi, and certified optimum") {
    for (int k = 1; k <= 3; ++k) {
        auto inst = hard_tour_instance(k);
        CHECK(inst.graph.num_vertices() == 10 * k + 1);
        CHECK(inst.graph.num_edges() == 13 * k + 1);
        CHECK(inst.opt == 10 * k + 1);
        CHECK(is_connected_t_join(inst.graph, inst.witness, {}));
        CHECK(opt_tour(inst.graph, &inst.witness) == inst.opt);  // Hamiltonian circuit
        CHECK(connectivity_report(inst.graph).is_2vc);
        if (k == 1) {
            CHECK(phi_oracle(inst.graph) == 0);
            CHECK(lp_value(inst.graph).value == Rational(inst.opt));
        }
        CHECK(min_even_ear_decomposition(inst.graph).even_count() == 0);
    }
}

TEST_CASE("hard 2ECSS family: sizes, phi, and certified optimum") {
    for (int k = 1; k <= 2; ++k) {
        auto inst = hard_2ecss_instance(k);
        CHECK(inst.graph.num_vertices() == 24 * k);
        CHECK(inst.graph.num_edges() == 44 * k - 2);
        CHECK(inst.opt == 24 * k);
        CHECK(is_connected_t_join(inst.graph, inst.witness, {}));
        CHECK(opt_tour(inst.graph, &inst.witness) == inst.opt);  // Hamiltonian circuit
        CHECK(connectivity_report(inst.graph).is_2vc);
    }
}

TEST_CASE("hard families exercise the algorithms within their ratios") {
    auto tj = hard_tjoin_instance(2);
    auto sol = connected_tjoin_3_2(tj.graph, tj.t);
    CHECK(is_connected_t_join(tj.graph, sol, tj.t));
    CHECK(2 * sol.cardinality() <= 3 * tj.opt);

    auto tp = hard_tour_instance(2);
    auto tour = tsp_7_5(tp.graph);
    CHECK(is_connected_t_join(tp.graph, tour, {}));
    CHECK(5 * tour.cardinality() <= 7 * tp.opt);

    auto te = hard_2ecss_instance(1);
    auto sub = two_ecss_4_3(te.graph);
    CHECK(is_2ec_solution(te.graph, sub));
    CHECK(3 * sub.cardinality() <= 4 * te.opt);
    // the known worst case: both constructions give 32k-1 edges here
    CHECK(sub.cardinality() <= 32 * 1 - 1);
}

TEST_CASE("theta family optimum matches the exhaustive oracle") {
    for (int k = 2; k <= 4; ++k) {
        auto inst = theta_instance(k);
        CHECK(inst.opt == 4 * k - 2);
        CHECK(is_connected_t_join(inst.graph, inst.witness, {}));
        CHECK(ConnectedJoinOracle(inst.graph).opt_tour() == inst.opt);
    }
}

TEST_CASE("antipodal circuit family optimum matches the exhaustive oracle") {
    for (int n = 2; n <= 5; ++n) {
        auto inst = antipodal_cycle_instance(n);
        CHECK(inst.opt == 3 * n - 2);
        CHECK(is_connected_t_join(inst.graph, inst.witness, inst.t));
        CHECK(ConnectedJoinOracle(inst.graph).opt(inst.t) == inst.opt);
    }
}

TEST_CASE("random bridgeless graphs are bridgeless and deterministic") {
    std::mt19937 rng(123);
    auto g1 = random_2ec_graph(rng, 8, 5);
    CHECK(connectivity_report(g1).is_2ec);
    std::mt19937 rng2(123);
    auto g2 = random_2ec_graph(rng2, 8, 5);
    CHECK(format_instance(g1) == format_instance(g2));
}

TEST_CASE("connected graph catalog has the known class counts") {
    CHECK(connected_graph_catalog(3).size() == 2);
    CHECK(connected_graph_catalog(4).size() == 6);
    CHECK(connected_graph_catalog(5).size() == 21);
    CHECK(connected_graph_catalog(6).size() == 112);
    CHECK(connected_graph_catalog(7).size() == 853);
    for (const auto& g : connected_graph_catalog(5)) CHECK(is_connected(g));
}

TEST_CASE("algorithms are exact-ratio safe on every small connected graph") {
    // the full isomorphism-free sweep: every connected graph on up to 6
    // vertices, all three algorithms, ratios against the exhaustive oracle
    for (int n = 3; n <= 6; ++n) {
        for (const auto& g : connected_graph_catalog(n)) {
            auto tour = tsp_7_5(g);
            CHECK(5 * tour.cardinality() <= 7 * opt_tour(g));
            auto join = connected_tjoin_3_2(g, {});
            CHECK(2 * join.cardinality() <= 3 * opt_connected_tjoin(g, {}));
            if (connectivity_report(g).is_2ec) {
                auto sub = two_ecss_4_3(g);
                CHECK(3 * sub.cardinality() <= 4 * opt_2ecss(g));
            }
        }
    }
}
