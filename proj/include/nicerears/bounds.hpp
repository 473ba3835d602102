#pragma once

// Combinatorial lower bounds used as denominators in every ratio claim.
//   l_phi:  |V| + phi - 1, valid against any 2ECSS and against LP(G)
//   l_mu:   |V| - 1 + |M| - mu, valid against any connected T-join with
//           V_M disjoint from T, and against LP(G,T)
//   lambda: (2/3) l_mu + (1/3) l_phi, valid against LP(G)
// l_mu re-derives its value through an explicit dual witness (a partition of
// V plus a cut multiset packing each edge at most twice) on every call, so a
// bug in the earmuff layer cannot silently inflate the bound.

#include "nicerears/earmuff.hpp"
#include "nicerears/multigraph.hpp"
#include "nicerears/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace nicerears {

inline int l_phi(const Multigraph& g, int phi) {
    int value = g.num_vertices() + phi - 1;
    if (value % 2)
        throw std::logic_error("l_phi: |V| + phi - 1 must be even");
    return value;
}

// Dual witness for l_mu: x(E) >= x(δ(hat partition)) + (1/2) Σ x(δ(S))
//                             >= (|hat| - 1) + |S| = l_mu
// for every point x feasible for the partition + even-cut system.
struct LMuWitness {
    int value = 0;
    std::vector<std::vector<int>> hat_partition;  // partition of V(G)
    std::vector<std::vector<int>> cut_sets;       // multiset of vertex sets
};

inline LMuWitness l_mu(const Multigraph& g, const std::vector<std::vector<int>>& cores,
                       const EarmuffResult& muff) {
    int n = g.num_vertices();
    int m_size = static_cast<int>(cores.size());
    if (static_cast<int>(muff.u_sets.size()) != m_size)
        throw std::invalid_argument("l_mu: earmuff result does not match the eardrum");
    int claimed = n - 1 + m_size - muff.mu;

    // which cores are confined to a single certificate class
    std::vector<int> u_class(muff.u.size(), -1);
    for (int w = 0; w < static_cast<int>(muff.certificate.partition.size()); ++w)
        for (int i : muff.certificate.partition[w]) u_class[i] = w;
    std::vector<bool> confined(m_size, false);
    for (int f = 0; f < m_size; ++f) {
        bool same = true;
        for (size_t j = 1; j < muff.u_sets[f].size(); ++j)
            if (u_class[muff.u_sets[f][j]] != u_class[muff.u_sets[f][0]]) same = false;
        confined[f] = same;
    }

    LMuWitness wit;
    // merged classes: W plus the cores living inside W
    for (int w = 0; w < static_cast<int>(muff.certificate.partition.size()); ++w) {
        std::vector<int> cls;
        for (int i : muff.certificate.partition[w]) cls.push_back(muff.u[i]);
        for (int f = 0; f < m_size; ++f)
            if (confined[f] && u_class[muff.u_sets[f][0]] == w)
                for (int x : cores[f]) cls.push_back(x);
        wit.hat_partition.push_back(std::move(cls));
    }
    // unconfined core vertices become singletons
    for (int f = 0; f < m_size; ++f)
        if (!confined[f])
            for (int x : cores[f]) wit.hat_partition.push_back({x});
    // cut multiset: per confined core, each vertex singleton plus the core
    for (int f = 0; f < m_size; ++f) {
        if (!confined[f]) continue;
        for (int x : cores[f]) wit.cut_sets.push_back({x});
        wit.cut_sets.push_back(cores[f]);
    }

    // structural verification: hat partitions V; no cut edge crosses hat;
    // no edge lies in more than two cuts
    std::vector<int> cls_of(n, -1);
    for (int c = 0; c < static_cast<int>(wit.hat_partition.size()); ++c)
        for (int v : wit.hat_partition[c]) {
            if (v < 0 || v >= n || cls_of[v] != -1)
                throw std::logic_error("l_mu: witness classes do not partition V");
            cls_of[v] = c;
        }
    for (int v = 0; v < n; ++v)
        if (cls_of[v] < 0) throw std::logic_error("l_mu: witness classes do not cover V");
    std::vector<int> cut_load(g.num_edges(), 0);
    for (const auto& s : wit.cut_sets) {
        std::vector<bool> in_s(n, false);
        for (int v : s) in_s[v] = true;
        for (int e = 0; e < g.num_edges(); ++e)
            if (in_s[g.u(e)] != in_s[g.v(e)]) {
                if (cls_of[g.u(e)] != cls_of[g.v(e)])
                    throw std::logic_error("l_mu: a witness cut meets the partition cut");
                if (++cut_load[e] > 2)
                    throw std::logic_error("l_mu: an edge lies in more than two witness cuts");
            }
    }

    // arithmetic chain: the witness reproduces the claimed bound exactly
    wit.value = static_cast<int>(wit.hat_partition.size()) - 1 +
                static_cast<int>(wit.cut_sets.size());
    if (wit.value != claimed)
        throw std::logic_error("l_mu: witness arithmetic does not reproduce the bound");
    return wit;
}

inline Rational lambda(int l_mu_value, int l_phi_value) {
    return Rational(2 * l_mu_value + l_phi_value, 3);
}

// Bundle of all bounds for one instance; LP values are optional and, when
// present, are checked to dominate the combinatorial bounds.
struct BoundsCertificate {
    int l_phi = 0;
    int l_mu = 0;
    Rational lambda;
    LMuWitness witness;
    std::optional<Rational> lp;    // LP(G)
    std::optional<Rational> lp_t;  // LP(G,T)
};

inline BoundsCertificate make_bounds_certificate(const Multigraph& g, int phi,
                                                 const std::vector<std::vector<int>>& cores,
                                                 const EarmuffResult& muff,
                                                 const std::optional<Rational>& lp = {},
                                                 const std::optional<Rational>& lp_t = {}) {
    BoundsCertificate cert;
    cert.l_phi = l_phi(g, phi);
    cert.witness = l_mu(g, cores, muff);
    cert.l_mu = cert.witness.value;
    cert.lambda = lambda(cert.l_mu, cert.l_phi);
    cert.lp = lp;
    cert.lp_t = lp_t;
    if (lp) {
        if (Rational(cert.l_phi) > *lp) throw std::logic_error("bounds: l_phi exceeds LP(G)");
        if (cert.lambda > *lp) throw std::logic_error("bounds: lambda exceeds LP(G)");
        if (*lp < g.num_vertices()) throw std::logic_error("bounds: LP(G) below |V|");
    }
    if (lp_t && Rational(cert.l_mu) > *lp_t)
        throw std::logic_error("bounds: l_mu exceeds LP(G,T)");
    return cert;
}

}  // namespace nicerears
