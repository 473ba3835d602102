#pragma once

// Brute-force optima for desk-scale certification. Connected T-joins (and
// tours, the T = ∅ case) use the decomposition "solution = spanning tree +
// parity-fixing join": per graph, enumerate the parity vectors achievable by
// spanning trees and tabulate minimum T'-joins for all even T', then answer
// each query by a table scan. 2ECSS optima come from cardinality-increasing
// subset search. Large instances are accepted only with an optimum witness
// whose cardinality meets the unconditional lower bound.

#include "nicerears/ears.hpp"
#include "nicerears/multigraph.hpp"
#include "nicerears/tjoin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace nicerears {

namespace detail {

constexpr int kOracleMaxN = 12;

inline unsigned parity_mask(const Multigraph& g, const std::vector<int>& edges) {
    unsigned mask = 0;
    for (int e : edges) mask ^= (1u << g.u(e)) ^ (1u << g.v(e));
    return mask;
}

}  // namespace detail

// Per-graph tables answering minimum connected-T-join queries exactly.
class ConnectedJoinOracle {
public:
    explicit ConnectedJoinOracle(const Multigraph& g) : g_(g), n_(g.num_vertices()) {
        if (n_ > detail::kOracleMaxN)
            throw std::invalid_argument("ConnectedJoinOracle: graph too large (n > 12)");
        if (!is_connected(g)) throw std::invalid_argument("ConnectedJoinOracle: disconnected");
        enumerate_tree_parities();
        tabulate_joins();
    }

    // minimum cardinality of a connected T-join (edge multiset, multiplicities
    // up to 2, spanning and connected, odd degree exactly at T)
    int opt(const std::vector<int>& t) const {
        unsigned t_mask = 0;
        for (int v : t) t_mask ^= 1u << v;
        int best = -1;
        for (const auto& [q, tree] : tree_parities_) {
            int tau = tau_table_.at(q ^ t_mask);
            if (tau < 0) continue;
            int total = n_ - 1 + tau;
            if (best < 0 || total < best) best = total;
        }
        if (best < 0) throw std::logic_error("ConnectedJoinOracle: no solution");
        return best;
    }

    int opt_tour() const { return opt({}); }

    // an optimal solution: the best tree plus a parity-fixing join
    SolutionMultiset solution(const std::vector<int>& t) const {
        unsigned t_mask = 0;
        for (int v : t) t_mask ^= 1u << v;
        int best = -1;
        unsigned best_q = 0;
        for (const auto& [q, tree] : tree_parities_) {
            int tau = tau_table_.at(q ^ t_mask);
            if (tau < 0) continue;
            int total = n_ - 1 + tau;
            if (best < 0 || total < best) {
                best = total;
                best_q = q;
            }
        }
        if (best < 0) throw std::logic_error("ConnectedJoinOracle: no solution");
        SolutionMultiset sol(g_.num_edges());
        for (int e : tree_parities_.at(best_q)) sol.add(e);
        std::vector<int> residual;
        unsigned r = best_q ^ t_mask;
        for (int v = 0; v < n_; ++v)
            if (r >> v & 1) residual.push_back(v);
        for (int e : min_cardinality_t_join(g_, residual).edges) sol.add(e);
        return sol;
    }

private:
    void enumerate_tree_parities() {
        int m = g_.num_edges();
        long long budget = 20'000'000;
        std::vector<int> chosen;
        std::function<void(int, std::vector<int>&, int)> rec = [&](int idx, std::vector<int>& dsu,
                                                                   int cnt) {
            if (--budget < 0)
                throw std::runtime_error("ConnectedJoinOracle: too many spanning trees");
            if (cnt == n_ - 1) {
                tree_parities_.emplace(detail::parity_mask(g_, chosen), chosen);
                return;
            }
            if (idx == m || m - idx < n_ - 1 - cnt) return;
            rec(idx + 1, dsu, cnt);  // skip edge idx
            std::function<int(int)> find = [&](int x) {
                while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
                return x;
            };
            int a = find(g_.u(idx)), b = find(g_.v(idx));
            if (a != b) {
                auto save = dsu;
                dsu[a] = b;
                chosen.push_back(idx);
                rec(idx + 1, dsu, cnt + 1);
                chosen.pop_back();
                dsu = save;
            }
        };
        std::vector<int> dsu(n_);
        for (int i = 0; i < n_; ++i) dsu[i] = i;
        rec(0, dsu, 0);
        if (tree_parities_.empty())
            throw std::logic_error("ConnectedJoinOracle: no spanning tree found");
    }

    void tabulate_joins() {
        tau_table_.assign(1u << n_, -1);
        for (unsigned mask = 0; mask < (1u << n_); ++mask) {
            if (__builtin_popcount(mask) % 2) continue;
            std::vector<int> t;
            for (int v = 0; v < n_; ++v)
                if (mask >> v & 1) t.push_back(v);
            tau_table_[mask] = static_cast<int>(min_cardinality_t_join(g_, t).weight);
        }
    }

    Multigraph g_;
    int n_;
    std::map<unsigned, std::vector<int>> tree_parities_;  // parity -> one tree
    std::vector<int> tau_table_;
};

// One-shot versions. A witness (a valid solution whose cardinality meets the
// unconditional lower bound) certifies the optimum at any size; otherwise the
// exhaustive oracle runs within its size cap.
inline int opt_connected_tjoin(const Multigraph& g, const std::vector<int>& t,
                               const SolutionMultiset* witness = nullptr) {
    int lower = g.num_vertices() - 1;
    if (t.empty()) lower = g.num_vertices();  // a tree has odd-degree leaves
    if (witness) {
        if (!is_connected_t_join(g, *witness, t))
            throw std::invalid_argument("opt_connected_tjoin: witness is not a solution");
        if (witness->cardinality() == lower) return lower;
    }
    ConnectedJoinOracle oracle(g);
    int best = oracle.opt(t);
    if (witness && witness->cardinality() < best)
        throw std::logic_error("opt_connected_tjoin: witness beats the oracle");
    return best;
}

inline int opt_tour(const Multigraph& g, const SolutionMultiset* witness = nullptr) {
    return opt_connected_tjoin(g, {}, witness);
}

// Minimum cardinality 2-edge-connected spanning subgraph (each edge at most
// once), by subset search in increasing cardinality with degree pruning.
inline int opt_2ecss(const Multigraph& g, const SolutionMultiset* witness = nullptr,
                     SolutionMultiset* solution_out = nullptr) {
    int n = g.num_vertices(), m = g.num_edges();
    if (!connectivity_report(g).is_2ec)
        throw std::invalid_argument("opt_2ecss: graph is not 2-edge-connected");
    if (witness) {
        SolutionMultiset w = *witness;
        for (int e = 0; e < m; ++e)
            if (w.multiplicity(e) > 1) throw std::invalid_argument("opt_2ecss: witness doubles an edge");
        if (!is_2ec_solution(g, w)) throw std::invalid_argument("opt_2ecss: witness not 2EC");
        if (w.cardinality() == n) {
            if (solution_out) *solution_out = w;
            return n;
        }
    }
    if (n > detail::kOracleMaxN && m > 24)
        throw std::invalid_argument("opt_2ecss: graph too large without a tight witness");
    std::vector<int> chosen, found_edges;
    auto feasible = [&]() {
        SolutionMultiset sol(m);
        for (int e : chosen) sol.set(e, 1);
        if (!is_2ec_solution(g, sol)) return false;
        found_edges = chosen;
        return true;
    };
    for (int target = n; target <= m; ++target) {
        bool found = false;
        std::function<void(int)> rec = [&](int idx) {
            if (found) return;
            int picked = static_cast<int>(chosen.size());
            if (picked == target) {
                if (feasible()) found = true;
                return;
            }
            if (m - idx < target - picked) return;
            chosen.push_back(idx);
            rec(idx + 1);
            chosen.pop_back();
            if (!found) rec(idx + 1);
        };
        rec(0);
        if (found) {
            if (witness && witness->cardinality() < target)
                throw std::logic_error("opt_2ecss: witness beats the oracle");
            if (solution_out) {
                SolutionMultiset sol(m);
                for (int e : found_edges) sol.set(e, 1);
                *solution_out = sol;
            }
            return target;
        }
    }
    throw std::logic_error("opt_2ecss: search failed");
}

// φ(G) through the T-join identity: the largest 2τ(G,T) - |V| + 1 over even T.
inline int phi_oracle(const Multigraph& g) {
    int n = g.num_vertices();
    if (n > 14) throw std::invalid_argument("phi_oracle: graph too large (n > 14)");
    int best = 0;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        unsigned full = mask << 1;  // pair up with vertex 0 when parity demands
        if (__builtin_popcount(full) % 2) full |= 1;
        std::vector<int> t;
        for (int v = 0; v < n; ++v)
            if (full >> v & 1) t.push_back(v);
        int tau = static_cast<int>(min_cardinality_t_join(g, t).weight);
        best = std::max(best, 2 * tau - n + 1);
    }
    return best;
}

// Maximum earmuff by direct product enumeration over the actual path sets.
inline int mu_oracle(const Multigraph& g, const std::vector<std::vector<int>>& cores,
                     long long state_budget = 1'000'000) {
    std::vector<bool> in_vm(g.num_vertices(), false);
    for (const auto& f : cores)
        for (int a : f) in_vm[a] = true;
    // candidate endpoint pairs per core, restricted to realizable paths
    std::vector<std::vector<std::pair<int, int>>> options;
    for (const auto& f : cores) {
        std::vector<std::pair<int, int>> opts;
        if (f.size() == 1) {
            std::vector<int> nb;
            for (auto [w, e] : g.adj(f[0]))
                if (!in_vm[w]) nb.push_back(w);
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j) opts.push_back({nb[i], nb[j]});
        } else {
            std::set<std::pair<int, int>> seen;
            for (auto [u, e1] : g.adj(f[0]))
                for (auto [v, e2] : g.adj(f[1])) {
                    if (in_vm[u] || in_vm[v] || u == v) continue;
                    seen.insert({std::min(u, v), std::max(u, v)});
                }
            opts.assign(seen.begin(), seen.end());
        }
        options.push_back(std::move(opts));
    }
    int m = static_cast<int>(cores.size());
    int best = 0;
    long long budget = state_budget;
    std::function<void(int, std::vector<int>&, int)> rec = [&](int idx, std::vector<int>& dsu,
                                                               int count) {
        if (--budget < 0) throw std::runtime_error("mu_oracle: state budget exceeded");
        best = std::max(best, count);
        if (idx == m || count + (m - idx) <= best) return;
        rec(idx + 1, dsu, count);
        std::function<int(int)> find = [&](int x) {
            while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
            return x;
        };
        for (auto [u, v] : options[idx]) {
            int a = find(u), b = find(v);
            if (a == b) continue;
            auto save = dsu;
            dsu[a] = b;
            rec(idx + 1, dsu, count + 1);
            dsu = save;
        }
    };
    std::vector<int> dsu(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) dsu[i] = i;
    rec(0, dsu, 0);
    return best;
}

}  // namespace nicerears
