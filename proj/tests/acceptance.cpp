// Acceptance suite: ten independent checks, one pass/fail line each.
// The exit code is the number of failed checks.
//
// Check 9 is expected to fail: the asserted optima for the two integrality-gap
// families (3n for the antipodal circuit, 4k for the theta graph) are each two
// edges too large. The exhaustive oracle certifies 3n-2 and 4k-2; the
// half-integral LP values 2n and 3k and the limiting ratios 3/2 and 4/3 are
// confirmed. The check reports the certified numbers instead of silently
// adopting the wrong constants.

#include "nicerears/approx.hpp"
#include "nicerears/bounds.hpp"
#include "nicerears/generators.hpp"
#include "nicerears/lp.hpp"
#include "nicerears/oracle.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace nicerears;

namespace {

Multigraph random_connected(std::mt19937& rng, int n, int extra) {
    Multigraph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(static_cast<int>(rng() % i), i);
    for (int i = 0; i < extra; ++i) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a != b && !g.has_edge_between(a, b)) g.add_edge(a, b);
    }
    return g;
}

// bridgeless random multigraph; parallel edges allowed among the chords
Multigraph random_2ec_multigraph(std::mt19937& rng, int n, int extra) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Multigraph g(n);
        for (int i = 1; i < n; ++i) g.add_edge(static_cast<int>(rng() % i), i);
        for (int i = 0; i < extra; ++i) {
            int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
            if (a != b) g.add_edge(a, b);
        }
        if (connectivity_report(g).is_2ec) return g;
    }
    throw std::runtime_error("random_2ec_multigraph: no bridgeless sample found");
}

std::vector<int> random_even_set(std::mt19937& rng, int n) {
    std::vector<int> t;
    for (int v = 0; v < n; ++v)
        if (rng() % 2) t.push_back(v);
    if (t.size() % 2) t.pop_back();
    return t;
}

// blocks of g as standalone graphs (2EC input, so no bridge blocks)
std::vector<Multigraph> block_graphs(const Multigraph& g) {
    auto bt = blocks(g);
    std::vector<Multigraph> out;
    for (size_t b = 0; b < bt.block_vertices.size(); ++b) {
        std::vector<int> local(g.num_vertices(), -1);
        for (size_t i = 0; i < bt.block_vertices[b].size(); ++i)
            local[bt.block_vertices[b][i]] = static_cast<int>(i);
        Multigraph h(static_cast<int>(bt.block_vertices[b].size()));
        for (int e : bt.block_edges[b]) h.add_edge(local[g.u(e)], local[g.v(e)]);
        out.push_back(std::move(h));
    }
    return out;
}

// disjoint cores (singletons or adjacent pairs) inducing max degree <= 1
std::vector<std::vector<int>> random_eardrum(std::mt19937& rng, const Multigraph& g) {
    int n = g.num_vertices();
    std::vector<bool> in_vm(n, false);
    std::vector<std::vector<int>> cores;
    auto clashes = [&](const std::vector<int>& f) {
        for (int a : f)
            for (auto [w, e] : g.adj(a))
                if (in_vm[w] && std::find(f.begin(), f.end(), w) == f.end()) return true;
        return false;
    };
    auto outside_ok = [&](const std::vector<int>& f) {
        auto vm = in_vm;
        for (int a : f) vm[a] = true;
        for (int a : f) {
            bool any = false;
            for (auto [w, e] : g.adj(a))
                if (!vm[w]) any = true;
            if (!any) return false;
        }
        return true;
    };
    for (int attempt = 0; attempt < 6; ++attempt) {
        int a = static_cast<int>(rng() % n);
        if (in_vm[a]) continue;
        std::vector<int> f = {a};
        if (rng() % 2 && g.degree(a) > 0) {
            auto [w, e] = g.adj(a)[rng() % g.adj(a).size()];
            if (w != a && !in_vm[w]) f.push_back(w);
        }
        std::sort(f.begin(), f.end());
        if (clashes(f) || !outside_ok(f)) continue;
        for (int v : f) in_vm[v] = true;
        cores.push_back(f);
    }
    return cores;
}

std::string card_detail(const char* what, long long got, long long cap) {
    std::ostringstream ss;
    ss << what << ": " << got << " exceeds " << cap;
    return ss.str();
}

// shared across checks: every 2ECSS produced in checks 1 and 4 is lifted back
// to a tour in check 10
struct LiftRecord {
    int checked = 0;
    std::string failure;
};
LiftRecord lift_record;

void record_lift(const Multigraph& g, const SolutionMultiset& sub) {
    auto lifted = tour_from_2ecss(g, sub);
    if (!is_connected_t_join(g, lifted, {})) {
        lift_record.failure = "lifted multiset is not a tour";
        return;
    }
    if (3 * lifted.cardinality() > 2 * (sub.cardinality() + g.num_vertices() - 1)) {
        lift_record.failure =
            card_detail("3*lift", 3 * lifted.cardinality(),
                        2 * (sub.cardinality() + g.num_vertices() - 1));
        return;
    }
    ++lift_record.checked;
}

// returns "" on pass, otherwise a failure description
std::string check_ratio_suite() {
    std::vector<Multigraph> suite;
    for (int n = 3; n <= 7; ++n)
        for (auto& g : connected_graph_catalog(n)) suite.push_back(std::move(g));
    std::mt19937 gen_rng(987654321);
    for (int i = 0; i < 300; ++i) {
        int n = 4 + static_cast<int>(gen_rng() % 5);
        int extra = 2 + static_cast<int>(gen_rng() % 5);
        suite.push_back(random_2ec_multigraph(gen_rng, n, extra));
    }
    std::mt19937 t_rng(20240801);
    for (const auto& g : suite) {
        int n = g.num_vertices();
        Rational lp = lp_value(g).value;
        auto tour = tsp_7_5(g);
        if (Rational(5 * tour.cardinality()) > Rational(7) * lp)
            return "a tour exceeds 7/5 of LP(G)";
        if (tour.cardinality() < opt_tour(g)) return "a tour beats the exhaustive optimum";
        if (connectivity_report(g).is_2ec) {
            auto sub = two_ecss_4_3(g);
            if (Rational(3 * sub.cardinality()) > Rational(4) * lp)
                return "a 2ECSS exceeds 4/3 of LP(G)";
            if (sub.cardinality() < opt_2ecss(g)) return "a 2ECSS beats the exhaustive optimum";
            record_lift(g, sub);
            if (!lift_record.failure.empty())
                lift_record.failure += " (while collecting for check 10)";
        }
        if (n > 7) continue;  // partition LP cap for the T-join part
        ConnectedJoinOracle oracle(g);
        std::map<std::vector<int>, Rational> lp_cache;
        for (int rep = 0; rep < 50; ++rep) {
            auto t = random_even_set(t_rng, n);
            auto join = connected_tjoin_3_2(g, t);
            auto it = lp_cache.find(t);
            if (it == lp_cache.end())
                it = lp_cache.emplace(t, lp_value(g, t).value).first;
            if (Rational(2 * join.cardinality()) > Rational(3) * it->second)
                return "a connected T-join exceeds 3/2 of LP(G,T)";
            if (join.cardinality() < oracle.opt(t))
                return "a connected T-join beats the exhaustive optimum";
        }
    }
    return "";
}

std::string check_hard_tjoin_family() {
    for (int k = 1; k <= 4; ++k) {
        auto inst = hard_tjoin_instance(k);
        if (opt_connected_tjoin(inst.graph, inst.t, &inst.witness) != 8 * k + 4)
            return "optimum is not 8k+4";
        // phi = 2 exactly: the search finds two even ears, and an odd-order
        // non-factor-critical graph cannot do better
        if (min_even_ear_decomposition(inst.graph).even_count() != 2)
            return "search did not reach two even ears";
        if (phi_lower_bound(inst.graph) != 2) return "parity lower bound is not 2";
        if (k == 1 && phi_oracle(inst.graph) != 2) return "T-join identity disagrees on phi";
        auto sol = connected_tjoin_3_2(inst.graph, inst.t);
        if (sol.cardinality() > 12 * k + 6)
            return card_detail("output", sol.cardinality(), 12 * k + 6);
        if (!is_connected_t_join(inst.graph, sol, inst.t)) return "output fails verification";
    }
    return "";
}

std::string check_hard_tour_family() {
    for (int k = 1; k <= 3; ++k) {
        auto inst = hard_tour_instance(k);
        int n = 10 * k + 1;
        // optimum: the generator's Hamiltonian circuit meets the |V| bound;
        // LP(G) is then squeezed between the degree cuts (>= |V|) and the
        // integral optimum, so LP = opt = 10k+1
        if (opt_tour(inst.graph, &inst.witness) != n) return "optimum is not 10k+1";
        if (k == 1 && lp_value(inst.graph).value != Rational(n))
            return "direct LP value is not 10k+1";
        if (min_even_ear_decomposition(inst.graph).even_count() != 0)
            return "phi is not 0";
        auto tour = tsp_7_5(inst.graph);
        if (tour.cardinality() > 14 * k) return card_detail("tour", tour.cardinality(), 14 * k);
        if (5 * tour.cardinality() > 7 * n) return "tour exceeds 7/5 of the optimum";
        auto md = prepare_muffed(inst.graph, {});
        if (md.lambda_value() != Rational(10 * k)) return "lambda is not 10k";
    }
    return "";
}

// the known worst-case ear decomposition of the 2ECSS family: an opening
// five-circuit, one two-ear, a five-ear per further column group, a pendant
// three-ear per middle path, and trivial ears for the rest
EarDecomposition worst_case_2ecss_decomposition(const Multigraph& g, int k) {
    auto y = [&](int i, int j) { return 2 + 6 * (i - 1) + (j - 1); };
    int v0 = 0, v06 = 1;
    auto make_ear = [&](const std::vector<int>& vs) {
        Ear p;
        p.vertices = vs;
        for (size_t i = 0; i + 1 < vs.size(); ++i) {
            int e = g.find_edge(vs[i], vs[i + 1]);
            if (e < 0) throw std::logic_error("worst-case decomposition: missing edge");
            p.edges.push_back(e);
        }
        return p;
    };
    EarDecomposition d;
    d.host = g;
    d.ears.push_back(make_ear({v0, v06, y(1, 3), y(1, 2), y(1, 1), v0}));
    d.ears.push_back(make_ear({v0, y(1, 4), y(1, 3)}));  // the single even ear
    for (int i = 2; i <= 4 * k; ++i)
        d.ears.push_back(make_ear({y(i - 1, 1), y(i, 1), y(i, 2), y(i, 3), y(i, 4), y(i - 1, 4)}));
    for (int i = 1; i < 4 * k; ++i)
        d.ears.push_back(
            make_ear({y(i, i % 2 ? 3 : 2), y(i, 5), y(i, 6), y(i + 1, i % 2 ? 2 : 3)}));
    std::vector<bool> used(g.num_edges(), false);
    for (const auto& p : d.ears)
        for (int e : p.edges) used[e] = true;
    for (int e = 0; e < g.num_edges(); ++e)
        if (!used[e]) {
            Ear p;
            p.vertices = {g.u(e), g.v(e)};
            p.edges = {e};
            d.ears.push_back(std::move(p));
        }
    validate_ear_decomposition(d);
    return d;
}

std::string check_hard_2ecss_family() {
    for (int k = 1; k <= 2; ++k) {
        auto inst = hard_2ecss_instance(k);
        int n = 24 * k;
        // optimum: the Hamiltonian circuit is a 2ECSS with |V| edges and every
        // 2ECSS needs degree two everywhere; LP(G) is squeezed the same way,
        // so LP = opt = 24k
        if (opt_2ecss(inst.graph, &inst.witness) != n) return "optimum is not 24k";
        // phi = 1: the search finds one even ear and even order forces >= 1
        if (min_even_ear_decomposition(inst.graph).even_count() != 1) return "phi is not 1";
        if (phi_lower_bound(inst.graph) != 1) return "parity lower bound is not 1";
        auto sub = two_ecss_4_3(inst.graph);
        if (sub.cardinality() > 32 * k) return card_detail("output", sub.cardinality(), 32 * k);
        if (!is_2ec_solution(inst.graph, sub)) return "output fails verification";
        record_lift(inst.graph, sub);
        if (!lift_record.failure.empty())
            return lift_record.failure + " (while collecting for check 10)";
        auto d = worst_case_2ecss_decomposition(inst.graph, k);
        if (d.even_count() != 1) return "worst-case decomposition has a wrong even count";
        int nontrivial_edges = 0;
        for (const auto& p : d.ears)
            if (!p.trivial()) nontrivial_edges += static_cast<int>(p.edges.size());
        if (nontrivial_edges != 32 * k - 1)
            return card_detail("nontrivial-ear edges", nontrivial_edges, 32 * k - 1);
    }
    return "";
}

std::string check_even_ear_identities() {
    for (int n = 3; n <= 7; ++n)
        for (const auto& g : connected_graph_catalog(n)) {
            if (!connectivity_report(g).is_2ec) continue;
            int phi = 0;
            for (const auto& b : block_graphs(g))
                phi += min_even_ear_decomposition(b).even_count();
            if (phi != phi_oracle(g)) return "even-ear count disagrees with the T-join identity";
            int best_tau = 0;
            for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
                unsigned full = mask << 1;
                if (__builtin_popcount(full) % 2) full |= 1;
                std::vector<int> t;
                for (int v = 0; v < n; ++v)
                    if (full >> v & 1) t.push_back(v);
                best_tau =
                    std::max(best_tau, static_cast<int>(min_cardinality_t_join(g, t).weight));
            }
            if (2 * best_tau != n + phi - 1) return "max T-join size is not (|V|+phi-1)/2";
        }
    return "";
}

std::string check_earmuff_minmax() {
    std::mt19937 rng(606060);
    int done = 0;
    while (done < 200) {
        int n = 6 + static_cast<int>(rng() % 5);
        auto g = random_connected(rng, n, 3 + static_cast<int>(rng() % 6));
        auto cores = random_eardrum(rng, g);
        if (cores.empty()) continue;
        EarmuffResult muff;
        try {
            muff = maximum_earmuff(g, cores);
        } catch (const std::invalid_argument&) {
            continue;  // degenerate sample: a core without outside neighbors
        }
        if (static_cast<int>(muff.u.size()) > 8) continue;
        if (muff.mu != mu_oracle(g, cores)) return "greedy mu disagrees with the oracle";
        // the certificate partition reproduces |M| - sum of surpluses
        int bound = certificate_bound(static_cast<int>(muff.u.size()), muff.u_sets,
                                      muff.certificate.partition);
        if (bound != muff.mu || muff.certificate.bound != muff.mu)
            return "certificate value disagrees with mu";
        ++done;
    }
    return "";
}

std::string check_pairing_tours() {
    std::mt19937 rng(770077);
    int done = 0;
    while (done < 100) {
        int n = 5 + static_cast<int>(rng() % 6);
        auto g = random_connected(rng, n, 3 + static_cast<int>(rng() % 5));
        if (!connectivity_report(g).is_2vc) continue;
        auto md = prepare_muffed(g, {});
        for (const auto& piece : split_into_pieces(g, md.ears)) {
            auto pairing = removable_pairing_from_ears(piece.ears);
            auto tour = pairing_tour(piece.graph, pairing);
            int m = piece.graph.num_edges();
            int r = static_cast<int>(pairing.r.size());
            if (3 * tour.cardinality() > 4 * m - 2 * r)
                return card_detail("3*tour", 3 * tour.cardinality(), 4 * m - 2 * r);
            if (r <= 14) verify_removable_pairing(piece.graph, pairing);  // throws on failure
        }
        ++done;
    }
    return "";
}

std::string check_bound_ordering() {
    // the l_mu dual witness chain is re-derived and verified inside every
    // l_mu call; here the full ordering is checked against exact LP values
    std::mt19937 rng(80808);
    for (int n = 4; n <= 7; ++n)
        for (const auto& g : connected_graph_catalog(n)) {
            if (!connectivity_report(g).is_2vc) continue;
            Rational lp = lp_value(g).value;
            for (int rep = 0; rep < 3; ++rep) {
                auto t = random_even_set(rng, n);
                auto md = prepare_muffed(g, t);
                Rational lp_t = t.empty() ? lp : lp_value(g, t).value;
                make_bounds_certificate(g, md.phi, md.cores, md.muff, lp, lp_t);
            }
        }
    for (int k = 2; k <= 4; ++k) {
        auto inst = theta_instance(k);
        auto md = prepare_muffed(inst.graph, {});
        make_bounds_certificate(inst.graph, md.phi, md.cores, md.muff,
                                lp_value(inst.graph).value);
    }
    for (int n = 2; n <= 5; ++n) {
        auto inst = antipodal_cycle_instance(n);
        auto md = prepare_muffed(inst.graph, inst.t);
        make_bounds_certificate(inst.graph, md.phi, md.cores, md.muff,
                                lp_value(inst.graph).value,
                                lp_value(inst.graph, inst.t).value);
    }
    {
        auto inst = hard_tour_instance(1);
        auto md = prepare_muffed(inst.graph, {});
        make_bounds_certificate(inst.graph, md.phi, md.cores, md.muff,
                                lp_value(inst.graph).value);
    }
    return "";
}

std::string check_integrality_gap_witnesses() {
    std::ostringstream ss;
    bool literal_ok = true;
    for (int n = 2; n <= 5; ++n) {
        auto inst = antipodal_cycle_instance(n);
        int opt = ConnectedJoinOracle(inst.graph).opt(inst.t);
        Rational lp = lp_value(inst.graph, inst.t).value;
        if (opt != inst.opt || !is_connected_t_join(inst.graph, inst.witness, inst.t))
            return "antipodal-circuit oracle value is uncertified";
        if (lp != Rational(2 * n)) return "antipodal-circuit LP value is not 2n";
        if (opt != 3 * n) literal_ok = false;
    }
    for (int k = 2; k <= 4; ++k) {
        auto inst = theta_instance(k);
        int opt = opt_tour(inst.graph);
        Rational lp = lp_value(inst.graph).value;
        if (opt != inst.opt || !is_connected_t_join(inst.graph, inst.witness, {}))
            return "theta oracle value is uncertified";
        if (lp != Rational(3 * k)) return "theta LP value is not 3k";
        if (opt != 4 * k) literal_ok = false;
    }
    // the limiting ratios survive: (3n-2)/2n and (4k-2)/3k increase toward
    // 3/2 and 4/3
    for (int n = 2; n < 5; ++n)
        if (Rational(3 * n - 2, 2 * n) >= Rational(3 * (n + 1) - 2, 2 * (n + 1)) ||
            Rational(3 * n - 2, 2 * n) >= Rational(3, 2))
            return "antipodal-circuit ratios are not increasing toward 3/2";
    for (int k = 2; k < 4; ++k)
        if (Rational(4 * k - 2, 3 * k) >= Rational(4 * (k + 1) - 2, 3 * (k + 1)) ||
            Rational(4 * k - 2, 3 * k) >= Rational(4, 3))
            return "theta ratios are not increasing toward 4/3";
    if (!literal_ok) {
        ss << "asserted optima 3n and 4k are each two too large: exhaustive search "
              "certifies 3n-2 (circuit, LP 2n) and 4k-2 (theta, LP 3k); "
              "the limiting ratios 3/2 and 4/3 are confirmed";
        return ss.str();
    }
    return "";
}

std::string check_tour_lifting() {
    if (!lift_record.failure.empty()) return lift_record.failure;
    if (lift_record.checked < 100) return "too few 2ECSS solutions were lifted";
    return "";
}

}  // namespace

int main() {
    struct Check {
        const char* name;
        std::function<std::string()> run;
    };
    std::vector<Check> checks = {
        {"ratio suite (catalog n<=7 + 300 random bridgeless multigraphs, exact LP)",
         check_ratio_suite},
        {"hard connected-T-join family (opt 8k+4, phi 2, output <= 12k+6)",
         check_hard_tjoin_family},
        {"hard tour family (opt = LP = 10k+1, phi 0, tour <= 14k, lambda 10k)",
         check_hard_tour_family},
        {"hard 2ECSS family (opt = LP = 24k, phi 1, output <= 32k, 32k-1 ear edges)",
         check_hard_2ecss_family},
        {"even-ear / T-join identities on all bridgeless graphs n<=7", check_even_ear_identities},
        {"earmuff min-max (greedy = oracle = certificate, 200 instances)",
         check_earmuff_minmax},
        {"pairing tours <= 4/3|E| - 2/3|R| with exhaustive pairing checks",
         check_pairing_tours},
        {"bound ordering l_phi, lambda <= LP(G), l_mu <= LP(G,T), LP(G) >= |V|",
         check_bound_ordering},
        {"integrality-gap witnesses (circuit 3/2, theta 4/3)",
         check_integrality_gap_witnesses},
        {"tour from 2ECSS <= 2/3(|E(H)|+|V|-1) for every produced subgraph",
         check_tour_lifting},
    };
    int failures = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        std::string detail;
        try {
            detail = checks[i].run();
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        if (detail.empty()) {
            std::cout << "check " << i + 1 << ": PASS — " << checks[i].name << "\n";
        } else {
            std::cout << "check " << i + 1 << ": FAIL — " << checks[i].name << " — " << detail
                      << "\n";
            ++failures;
        }
        std::cout.flush();
    }
    return failures;
}
