// nicer-ears: solve / generate / verify / oracle for graphic TSP,
// connected T-joins and 2-edge-connected spanning subgraphs.

#include "CLI11.hpp"
#include "json.hpp"

#include "nicerears/approx.hpp"
#include "nicerears/bounds.hpp"
#include "nicerears/generators.hpp"
#include "nicerears/lp.hpp"
#include "nicerears/oracle.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace nicerears;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int oracle_value(const std::string& problem, const Multigraph& g, const std::vector<int>& t) {
    if (problem == "tsp") return opt_tour(g);
    if (problem == "tjoin") return opt_connected_tjoin(g, t);
    return opt_2ecss(g);
}

int run_solve(const std::string& problem, const std::string& file, bool with_lp,
              bool with_oracle, const std::string& json_path) {
    auto inst = parse_graph(read_file(file));
    const Multigraph& g = inst.graph;
    if (problem == "tjoin" && !inst.has_t)
        throw std::runtime_error("tjoin requires a t line in the instance");

    RunTrace trace;
    SolutionMultiset sol;
    if (problem == "tsp") sol = tsp_7_5(g, &trace);
    else if (problem == "tjoin") sol = connected_tjoin_3_2(g, inst.t, &trace);
    else if (problem == "2ecss") sol = two_ecss_4_3(g, &trace);
    else throw std::runtime_error("unknown problem: " + problem);

    json report;
    report["schema_version"] = 1;
    report["problem"] = problem;
    report["instance"] = {{"vertices", g.num_vertices()},
                          {"edges", g.num_edges()},
                          {"t", inst.t}};
    report["cardinality"] = sol.cardinality();
    report["solution"] = format_solution(sol);

    // combinatorial bounds, per block (the same numbers the algorithms used)
    json blocks = json::array();
    for (const auto& b : trace.blocks) {
        json jb = {{"vertices", b.vertices}, {"edges", b.edges},
                   {"method", b.method},     {"cardinality", b.cardinality}};
        if (b.lmu >= 0) {
            jb["l_mu"] = b.lmu;
            jb["l_phi"] = b.lphi;
            jb["lambda"] = rational_to_string(lambda(b.lmu, b.lphi));
        }
        blocks.push_back(jb);
    }
    report["trace"] = blocks;

    bool all_ok = true;
    if (with_lp) {
        Rational lp = problem == "tjoin" ? lp_value(g, inst.t).value : lp_value(g).value;
        report["lp"] = rational_to_string(lp);
        Rational ratio = problem == "tsp"     ? Rational(7, 5)
                         : problem == "tjoin" ? Rational(3, 2)
                                              : Rational(4, 3);
        bool ok = Rational(sol.cardinality()) <= ratio * lp;
        report["ratio_vs_lp_ok"] = ok;
        all_ok = all_ok && ok;
    }
    if (with_oracle) {
        int opt = oracle_value(problem, g, inst.t);
        report["oracle"] = opt;
        bool ok = sol.cardinality() >= opt;
        if (problem == "tsp") ok = ok && 5 * sol.cardinality() <= 7 * opt;
        if (problem == "tjoin") ok = ok && 2 * sol.cardinality() <= 3 * opt;
        if (problem == "2ecss") ok = ok && 3 * sol.cardinality() <= 4 * opt;
        report["ratio_vs_oracle_ok"] = ok;
        all_ok = all_ok && ok;
    }
    write_output(json_path, report.dump(2) + "\n");
    return all_ok ? 0 : 1;
}

int run_gen(const std::string& family, int k, int n, int extra, unsigned seed,
            const std::string& out_path, const std::string& witness_path) {
    GeneratedInstance inst;
    if (family == "fig3") inst = hard_tjoin_instance(k);
    else if (family == "fig4") inst = hard_tour_instance(k);
    else if (family == "fig5") inst = hard_2ecss_instance(k);
    else if (family == "theta") inst = theta_instance(k);
    else if (family == "cycle_st") inst = antipodal_cycle_instance(n);
    else if (family == "random") {
        std::mt19937 rng(seed);
        inst.graph = random_2ec_graph(rng, n, extra);
    } else {
        throw std::runtime_error("unknown family: " + family);
    }
    write_output(out_path, format_instance(inst.graph, inst.t));
    if (!witness_path.empty()) {
        if (inst.witness.num_edges() == 0)
            throw std::runtime_error("family " + family + " has no optimum witness");
        write_output(witness_path, format_solution(inst.witness));
    }
    return 0;
}

int run_verify(const std::string& problem, const std::string& inst_path,
               const std::string& sol_path) {
    auto inst = parse_graph(read_file(inst_path));
    auto sol = parse_solution(read_file(sol_path), inst.graph.num_edges());
    std::string verdict = "pass";
    std::string reason;
    if (problem == "2ecss") {
        for (int e = 0; e < inst.graph.num_edges() && reason.empty(); ++e)
            if (sol.multiplicity(e) > 1) reason = "edge used more than once";
        if (reason.empty() && !is_2ec_solution(inst.graph, sol))
            reason = "not a 2-edge-connected spanning subgraph";
    } else {
        const std::vector<int>& t = problem == "tsp" ? std::vector<int>{} : inst.t;
        if (!spans_connected(inst.graph, sol)) reason = "support is not spanning connected";
        else if (!is_connected_t_join(inst.graph, sol, t)) reason = "wrong degree parities";
    }
    if (!reason.empty()) verdict = "fail";
    json report = {{"schema_version", 1},
                   {"problem", problem},
                   {"verdict", verdict},
                   {"cardinality", sol.cardinality()}};
    if (!reason.empty()) report["reason"] = reason;
    std::cout << report.dump(2) << "\n";
    return verdict == "pass" ? 0 : 1;
}

int run_oracle(const std::string& problem, const std::string& file) {
    auto inst = parse_graph(read_file(file));
    json report = {{"schema_version", 1},
                   {"problem", problem},
                   {"opt", oracle_value(problem, inst.graph, inst.t)}};
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ear-decomposition approximation toolkit"};
    app.require_subcommand(1);

    std::string problem, file, sol_file, json_path, family, out_path, witness_path;
    bool with_lp = false, with_oracle = false;
    int k = 1, n = 8, extra = 4;
    unsigned seed = 1;

    auto* solve = app.add_subcommand("solve", "run an approximation algorithm");
    solve->add_option("problem", problem, "tsp | tjoin | 2ecss")->required();
    solve->add_option("file", file, "instance file")->required();
    solve->add_flag("--lp", with_lp, "compute the exact LP value (small instances)");
    solve->add_flag("--oracle", with_oracle, "compute the exact optimum (small instances)");
    solve->add_option("--json", json_path, "write the report here instead of stdout");

    auto* gen = app.add_subcommand("gen", "generate an instance family member");
    gen->add_option("family", family, "fig3 | fig4 | fig5 | theta | cycle_st | random")
        ->required();
    gen->add_option("--k", k, "family size parameter");
    gen->add_option("--n", n, "vertex parameter (cycle_st: half the circuit; random: n)");
    gen->add_option("--extra", extra, "extra chords for the random family");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("-o,--output", out_path, "instance output file (default stdout)");
    gen->add_option("--witness", witness_path, "also write the optimum witness solution");

    auto* verify = app.add_subcommand("verify", "check a solution file");
    verify->add_option("problem", problem, "tsp | tjoin | 2ecss")->required();
    verify->add_option("instance", file, "instance file")->required();
    verify->add_option("solution", sol_file, "solution file (lines: x <edge-id> <mult>)")
        ->required();

    auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
    oracle->add_option("problem", problem, "tsp | tjoin | 2ecss")->required();
    oracle->add_option("file", file, "instance file")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (solve->parsed()) return run_solve(problem, file, with_lp, with_oracle, json_path);
        if (gen->parsed()) return run_gen(family, k, n, extra, seed, out_path, witness_path);
        if (verify->parsed()) return run_verify(problem, file, sol_file);
        if (oracle->parsed()) return run_oracle(problem, file);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
