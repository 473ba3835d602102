#pragma once

// Exact LP lower bounds, desk scale. Two relaxations are supported:
//   lp_value(g):    min x(E), x >= 0, x(δ(W)) >= 2 for all nonempty W ⊊ V
//   lp_value(g, T): additionally restricts the cut family to |W ∩ T| even and
//                   adds x(δ(𝒲)) >= |𝒲|-1 for every partition 𝒲 of V
// Solved with exact rational simplex on the dual (always feasible at y = 0),
// generating violated cuts/partitions lazily; at these sizes every candidate
// constraint can simply be evaluated per round.

#include "nicerears/multigraph.hpp"
#include "nicerears/rational.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace nicerears {

struct LpResult {
    Rational value;
    std::vector<Rational> x;  // primal optimum, per edge
};

namespace detail {

// max b^T y subject to A y <= cap (componentwise), y >= 0, by dense tableau
// simplex with Bland's rule. Returns the optimal value; `primal_out` receives
// the duals of the rows (the primal solution of the original minimization).
class DualSimplex {
public:
    DualSimplex(int rows, std::vector<Rational> cap) : m_(rows), cap_(std::move(cap)) {}

    void add_column(const std::vector<Rational>& col, const Rational& objective) {
        cols_.push_back(col);
        obj_.push_back(objective);
    }

    int num_columns() const { return static_cast<int>(cols_.size()); }

    Rational solve(std::vector<Rational>& primal_out) {
        int n = num_columns();
        // tableau: m_ rows, columns = n structural + m_ slack + rhs
        int width = n + m_ + 1;
        std::vector<std::vector<Rational>> tab(m_ + 1, std::vector<Rational>(width, 0));
        std::vector<int> basis(m_);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n; ++j) tab[i][j] = cols_[j][i];
            tab[i][n + i] = 1;
            tab[i][width - 1] = cap_[i];
            basis[i] = n + i;
        }
        for (int j = 0; j < n; ++j) tab[m_][j] = -obj_[j];  // maximize

        for (;;) {
            int pivot_col = -1;
            for (int j = 0; j < n + m_; ++j)
                if (tab[m_][j] < 0) {  // Bland: smallest index
                    pivot_col = j;
                    break;
                }
            if (pivot_col < 0) break;
            int pivot_row = -1;
            Rational best_ratio = 0;
            for (int i = 0; i < m_; ++i) {
                if (tab[i][pivot_col] <= 0) continue;
                Rational ratio = tab[i][width - 1] / tab[i][pivot_col];
                if (pivot_row < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[pivot_row])) {
                    pivot_row = i;
                    best_ratio = ratio;
                }
            }
            if (pivot_row < 0) throw std::logic_error("lp: dual is unbounded");
            Rational p = tab[pivot_row][pivot_col];
            for (auto& v : tab[pivot_row]) v /= p;
            for (int i = 0; i <= m_; ++i) {
                if (i == pivot_row || tab[i][pivot_col] == 0) continue;
                Rational factor = tab[i][pivot_col];
                for (int j = 0; j < width; ++j) tab[i][j] -= factor * tab[pivot_row][j];
            }
            basis[pivot_row] = pivot_col;
        }
        primal_out.assign(m_, 0);
        for (int i = 0; i < m_; ++i) primal_out[i] = tab[m_][n + i];  // slack reduced costs
        return tab[m_][width - 1];
    }

private:
    int m_;
    std::vector<Rational> cap_;
    std::vector<std::vector<Rational>> cols_;
    std::vector<Rational> obj_;
};

struct LpConstraint {
    std::vector<int> edge_count;  // coefficient per edge (0/1 here)
    int rhs;
};

inline Rational constraint_value(const LpConstraint& c, const std::vector<Rational>& x) {
    Rational v = 0;
    for (size_t e = 0; e < x.size(); ++e)
        if (c.edge_count[e]) v += x[e] * c.edge_count[e];
    return v;
}

inline LpConstraint cut_constraint(const Multigraph& g, const std::vector<bool>& in_w, int rhs) {
    LpConstraint c;
    c.edge_count.assign(g.num_edges(), 0);
    c.rhs = rhs;
    for (int e = 0; e < g.num_edges(); ++e)
        if (in_w[g.u(e)] != in_w[g.v(e)]) c.edge_count[e] = 1;
    return c;
}

// visit every partition of {0..n-1} as a class-assignment vector
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& fn) {
    std::vector<int> assign(n, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == n) {
            fn(assign, used);
            return;
        }
        for (int c = 0; c <= used; ++c) {
            assign[i] = c;
            rec(i + 1, std::max(used, c + 1));
        }
    };
    rec(0, 0);
}

inline LpResult solve_with_lazy_constraints(
    const Multigraph& g,
    const std::function<void(const std::vector<Rational>&, std::vector<LpConstraint>&)>& separate) {
    int m = g.num_edges();
    std::vector<LpConstraint> active;
    LpResult res;
    res.x.assign(m, 0);
    for (int round = 0;; ++round) {
        if (round > 4096) throw std::logic_error("lp: separation did not converge");
        std::vector<LpConstraint> violated;
        separate(res.x, violated);
        if (violated.empty()) break;
        for (auto& c : violated) active.push_back(std::move(c));
        DualSimplex simplex(m, std::vector<Rational>(m, 1));
        for (const auto& c : active) {
            std::vector<Rational> col(m);
            for (int e = 0; e < m; ++e) col[e] = c.edge_count[e];
            simplex.add_column(col, Rational(c.rhs));
        }
        res.value = simplex.solve(res.x);
    }
    return res;
}

}  // namespace detail

// LP(G): full cut family. Candidate cuts are screened in floating point and
// the chosen ones re-checked exactly; convergence is always certified by a
// final exact pass, so the returned value is exact.
inline LpResult lp_value(const Multigraph& g) {
    int n = g.num_vertices();
    int m = g.num_edges();
    if (n > 16) throw std::invalid_argument("lp_value: graph too large (n > 16)");
    if (n <= 1) return {Rational(0), std::vector<Rational>(g.num_edges(), 0)};
    // enumerate W not containing vertex n-1 (δ(W) = δ(complement))
    auto exact_cut = [&](unsigned mask) {
        std::vector<bool> in_w(n, false);
        for (int v = 0; v < n - 1; ++v)
            if (mask >> v & 1) in_w[v] = true;
        return detail::cut_constraint(g, in_w, 2);
    };
    auto separate = [&](const std::vector<Rational>& x, std::vector<detail::LpConstraint>& out) {
        std::vector<double> xd(m);
        for (int e = 0; e < m; ++e) xd[e] = x[e].convert_to<double>();
        struct Cand {
            double gap;
            unsigned mask;
        };
        std::vector<Cand> cands;
        for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
            double val = 0;
            for (int e = 0; e < m; ++e)
                if (((mask >> g.u(e)) & 1u) != ((mask >> g.v(e)) & 1u)) val += xd[e];
            if (val < 2 - 1e-7) cands.push_back({2 - val, mask});
        }
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.gap > b.gap; });
        for (size_t i = 0; i < cands.size() && out.size() < 24; ++i) {
            auto c = exact_cut(cands[i].mask);
            if (detail::constraint_value(c, x) < c.rhs) out.push_back(std::move(c));
        }
        if (!out.empty()) return;
        // exact pass: either confirms optimality or recovers what screening missed
        for (unsigned mask = 1; mask < (1u << (n - 1)) && out.size() < 24; ++mask) {
            auto c = exact_cut(mask);
            if (detail::constraint_value(c, x) < c.rhs) out.push_back(std::move(c));
        }
    };
    return detail::solve_with_lazy_constraints(g, separate);
}

// LP(G,T): cuts with |W ∩ T| even (or W ∩ T = ∅ when `relaxed`), plus the
// partition family.
inline LpResult lp_value(const Multigraph& g, const std::vector<int>& t, bool relaxed = false) {
    int n = g.num_vertices();
    if (t.empty()) return lp_value(g);
    if (n > 10) throw std::invalid_argument("lp_value: graph too large for partition LP (n > 10)");
    if (t.size() % 2) throw std::invalid_argument("lp_value: |T| must be even");
    std::vector<int> in_t(n, 0);
    for (int v : t) in_t[v] = 1;
    auto cut_ok = [&](unsigned mask) {
        int t_in = 0, t_out = 0;
        for (int v = 0; v < n; ++v)
            ((mask >> v) & 1u ? t_in : t_out) += in_t[v];
        return relaxed ? (t_in == 0 || t_out == 0) : (t_in % 2 == 0);
    };
    auto exact_cut = [&](unsigned mask) {
        std::vector<bool> in_w(n, false);
        for (int v = 0; v < n - 1; ++v)
            if (mask >> v & 1) in_w[v] = true;
        return detail::cut_constraint(g, in_w, 2);
    };
    auto partition_constraint = [&](const std::vector<int>& assign, int classes) {
        detail::LpConstraint c;
        c.edge_count.assign(g.num_edges(), 0);
        c.rhs = classes - 1;
        for (int e = 0; e < g.num_edges(); ++e)
            if (assign[g.u(e)] != assign[g.v(e)]) c.edge_count[e] = 1;
        return c;
    };
    // screen in floating point, re-check the chosen constraints exactly, and
    // certify convergence with a final exact pass (as in lp_value(g) above)
    auto separate = [&](const std::vector<Rational>& x, std::vector<detail::LpConstraint>& out) {
        int m = g.num_edges();
        std::vector<double> xd(m);
        for (int e = 0; e < m; ++e) xd[e] = x[e].convert_to<double>();
        struct Cand {
            double gap;
            unsigned mask;                 // cut candidate, or 0 for a partition
            std::vector<int> assign;       // partition candidate when mask == 0
            int classes = 0;
        };
        std::vector<Cand> cands;
        for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
            if (!cut_ok(mask)) continue;
            double val = 0;
            for (int e = 0; e < m; ++e)
                if (((mask >> g.u(e)) & 1u) != ((mask >> g.v(e)) & 1u)) val += xd[e];
            if (val < 2 - 1e-7) cands.push_back({2 - val, mask, {}, 0});
        }
        detail::for_each_partition(n, [&](const std::vector<int>& assign, int classes) {
            if (classes <= 1) return;
            double val = 0;
            for (int e = 0; e < m; ++e)
                if (assign[g.u(e)] != assign[g.v(e)]) val += xd[e];
            if (val < classes - 1 - 1e-7) cands.push_back({classes - 1 - val, 0, assign, classes});
        });
        std::sort(cands.begin(), cands.end(),
                  [](const Cand& a, const Cand& b) { return a.gap > b.gap; });
        for (size_t i = 0; i < cands.size() && out.size() < 24; ++i) {
            auto c = cands[i].mask ? exact_cut(cands[i].mask)
                                   : partition_constraint(cands[i].assign, cands[i].classes);
            if (detail::constraint_value(c, x) < c.rhs) out.push_back(std::move(c));
        }
        if (!out.empty()) return;
        for (unsigned mask = 1; mask < (1u << (n - 1)) && out.size() < 24; ++mask) {
            if (!cut_ok(mask)) continue;
            auto c = exact_cut(mask);
            if (detail::constraint_value(c, x) < c.rhs) out.push_back(std::move(c));
        }
        detail::for_each_partition(n, [&](const std::vector<int>& assign, int classes) {
            if (classes <= 1 || out.size() >= 24) return;
            auto c = partition_constraint(assign, classes);
            if (detail::constraint_value(c, x) < c.rhs) out.push_back(std::move(c));
        });
    };
    return detail::solve_with_lazy_constraints(g, separate);
}

// Feasibility of a given point for the LP(G,T) constraint system; used to
// certify upper bounds on LP values from explicit fractional solutions.
inline bool lp_feasible(const Multigraph& g, const std::vector<int>& t,
                        const std::vector<Rational>& x, bool relaxed = false) {
    int n = g.num_vertices();
    if (n > 12) throw std::invalid_argument("lp_feasible: graph too large (n > 12)");
    if (static_cast<int>(x.size()) != g.num_edges())
        throw std::invalid_argument("lp_feasible: point has wrong dimension");
    for (const auto& v : x)
        if (v < 0) return false;
    std::vector<int> in_t(n, 0);
    for (int v : t) in_t[v] = 1;
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<bool> in_w(n, false);
        int t_in = 0, t_out = 0;
        for (int v = 0; v < n; ++v) {
            if (v < n - 1 && (mask >> v & 1)) in_w[v] = true;
            (in_w[v] ? t_in : t_out) += in_t[v];
        }
        bool applies = t.empty() || (relaxed ? (t_in == 0 || t_out == 0) : (t_in % 2 == 0));
        if (!applies) continue;
        auto c = detail::cut_constraint(g, in_w, 2);
        if (detail::constraint_value(c, x) < 2) return false;
    }
    if (!t.empty()) {
        bool ok = true;
        detail::for_each_partition(n, [&](const std::vector<int>& assign, int classes) {
            if (!ok || classes <= 1) return;
            Rational val = 0;
            for (int e = 0; e < g.num_edges(); ++e)
                if (assign[g.u(e)] != assign[g.v(e)]) val += x[e];
            if (val < classes - 1) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace nicerears
