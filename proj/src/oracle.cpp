#include "circol/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "circol/lp_model.hpp"

namespace circol::oracle {

namespace {

using Mask = std::uint64_t;

void check_budget(int n, const OracleBudget& budget) {
    if (n > budget.max_vertices || n > 62) {
        throw Error(ErrorCode::OverBudget,
                    "oracle budget is " + std::to_string(budget.max_vertices) + " vertices, got " + std::to_string(n));
    }
}

std::vector<Mask> neighbor_masks(const CircleGraph& graph) {
    std::vector<Mask> nb(static_cast<std::size_t>(graph.size()), 0);
    for (const Edge& e : graph.edges()) {
        nb[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
        nb[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
    }
    return nb;
}

bool independent(const std::vector<Mask>& nb, Mask set) {
    for (Mask rest = set; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (nb[static_cast<std::size_t>(v)] & set) return false;
    }
    return true;
}

VertexSet members(Mask set) {
    VertexSet out;
    for (Mask rest = set; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest));
    return out;
}

int clique_number(const std::vector<Mask>& nb) {
    int best = 0;
    std::function<void(Mask, int)> grow = [&](Mask candidates, int size) {
        best = std::max(best, size);
        if (size + std::popcount(candidates) <= best) return;
        while (candidates) {
            const int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            grow(candidates & nb[static_cast<std::size_t>(v)], size + 1);
            if (size + 1 + std::popcount(candidates) <= best) return;
        }
    };
    const int n = static_cast<int>(nb.size());
    grow(n == 0 ? 0 : (n == 64 ? ~Mask{0} : (Mask{1} << n) - 1), 0);
    return best;
}

// Covering LP min Σ q_S over the given sets.
double cover_lp(int n, const std::vector<Mask>& sets, Relation relation, const SimplexOptions& opt) {
    LpModel m("cover");
    std::vector<Term> objective;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        objective.push_back({m.add_variable("q_" + std::to_string(k), 0.0, kInf, VarKind::Continuous), 1.0});
    }
    m.set_objective(Sense::Minimize, std::move(objective));
    for (int v = 0; v < n; ++v) {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < sets.size(); ++k) {
            if (sets[k] >> v & 1) terms.push_back({static_cast<int>(k), 1.0});
        }
        m.add_constraint("v_" + std::to_string(v + 1), std::move(terms), relation, 1.0);
    }
    const LpSolution sol = solve_lp(m, opt);
    if (sol.status != LpStatus::Optimal) {
        throw Error(ErrorCode::NumericalFailure, "covering LP did not solve");
    }
    return sol.objective;
}

std::vector<Mask> maximal_masks(const CircleGraph& graph, const OracleBudget& budget) {
    const int n = graph.size();
    check_budget(n, budget);
    const auto nb = neighbor_masks(graph);
    const Mask all = n == 0 ? 0 : (Mask{1} << n) - 1;
    // Bron–Kerbosch with pivoting on the complement graph.
    std::vector<Mask> non_nb(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) non_nb[static_cast<std::size_t>(v)] = all & ~nb[static_cast<std::size_t>(v)] & ~(Mask{1} << v);
    std::vector<Mask> out;
    std::function<void(Mask, Mask, Mask)> expand = [&](Mask r, Mask p, Mask x) {
        if (!p && !x) {
            if (out.size() >= budget.max_independent_sets) {
                throw Error(ErrorCode::OverBudget, "too many maximal independent sets");
            }
            out.push_back(r);
            return;
        }
        const Mask px = p | x;
        int pivot = std::countr_zero(px);
        int best = -1;
        for (Mask rest = px; rest; rest &= rest - 1) {
            const int u = std::countr_zero(rest);
            const int cnt = std::popcount(p & non_nb[static_cast<std::size_t>(u)]);
            if (cnt > best) {
                best = cnt;
                pivot = u;
            }
        }
        for (Mask rest = p & ~non_nb[static_cast<std::size_t>(pivot)]; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const Mask bit = Mask{1} << v;
            expand(r | bit, p & non_nb[static_cast<std::size_t>(v)], x & non_nb[static_cast<std::size_t>(v)]);
            p &= ~bit;
            x |= bit;
        }
    };
    expand(0, all, 0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

int chromatic_exact(const CircleGraph& graph, const OracleBudget& budget) {
    const int n = graph.size();
    check_budget(n, budget);
    if (n == 0) return 0;
    const auto nb = neighbor_masks(graph);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return graph.degree(a) > graph.degree(b); });

    std::vector<int> color(static_cast<std::size_t>(n), 0);
    std::function<bool(int, int, int)> place = [&](int k, int used, int limit) {
        if (k == n) return true;
        const int v = order[static_cast<std::size_t>(k)];
        for (int c = 1; c <= std::min(used + 1, limit); ++c) {
            bool ok = true;
            for (int u : graph.neighbors(v)) {
                if (color[static_cast<std::size_t>(u)] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[static_cast<std::size_t>(v)] = c;
            if (place(k + 1, std::max(used, c), limit)) return true;
            color[static_cast<std::size_t>(v)] = 0;
        }
        return false;
    };
    for (int k = std::max(1, clique_number(nb));; ++k) {
        std::fill(color.begin(), color.end(), 0);
        if (place(0, 0, k)) return k;
    }
}

std::vector<VertexSet> maximal_independent_sets(const CircleGraph& graph, const OracleBudget& budget) {
    std::vector<VertexSet> out;
    for (Mask m : maximal_masks(graph, budget)) out.push_back(members(m));
    return out;
}

double fractional_chromatic_exact(const CircleGraph& graph, const OracleBudget& budget, const SimplexOptions& lp) {
    const auto sets = maximal_masks(graph, budget);
    return cover_lp(graph.size(), sets, Relation::GreaterEqual, lp);
}

double fractional_chromatic_all_sets(const CircleGraph& graph, const OracleBudget& budget, const SimplexOptions& lp) {
    const int n = graph.size();
    check_budget(n, budget);
    const auto nb = neighbor_masks(graph);
    std::vector<Mask> sets;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if (independent(nb, s)) sets.push_back(s);
    }
    if (sets.size() > budget.max_independent_sets) {
        throw Error(ErrorCode::OverBudget, "too many independent sets");
    }
    return cover_lp(n, sets, Relation::Equal, lp);
}

double mwis_exact(const CircleGraph& graph, std::span<const double> weights, const OracleBudget& budget) {
    const int n = graph.size();
    check_budget(n, budget);
    const auto nb = neighbor_masks(graph);
    double best = 0.0;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if (!independent(nb, s)) continue;
        double w = 0.0;
        for (Mask rest = s; rest; rest &= rest - 1) w += weights[static_cast<std::size_t>(std::countr_zero(rest))];
        best = std::max(best, w);
    }
    return best;
}

int max_antichain_exact(const IntervalRepresentation& rep, std::span<const int> subset) {
    const std::size_t k = subset.size();
    if (k > 24) throw Error(ErrorCode::OverBudget, "subset too large for enumeration");
    int best = 0;
    for (Mask s = 1; s < (Mask{1} << k); ++s) {
        if (std::popcount(s) <= best) continue;
        bool ok = true;
        for (Mask a = s; a && ok; a &= a - 1) {
            const int i = subset[static_cast<std::size_t>(std::countr_zero(a))];
            for (Mask b = a & (a - 1); b; b &= b - 1) {
                const int j = subset[static_cast<std::size_t>(std::countr_zero(b))];
                // incomparable in the interval order = intersecting
                if (rep.precedes_or_equal(i, j) || rep.precedes_or_equal(j, i)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) best = std::popcount(s);
    }
    return best;
}

std::vector<VertexSet> bounded_height_sets(const IntervalRepresentation& rep, int height) {
    const int n = rep.size();
    if (n > 16) throw Error(ErrorCode::OverBudget, "too many vertices for subset enumeration");
    const CircleGraph graph = build_graph(rep);
    const auto nb = neighbor_masks(graph);
    std::vector<VertexSet> out;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if (!independent(nb, s)) continue;
        const VertexSet set = members(s);
        if (max_antichain_exact(rep, set) <= height) out.push_back(set);
    }
    return out;
}

int stacks_exact(const IntervalRepresentation& rep, int height, const OracleBudget& budget) {
    const int n = rep.size();
    check_budget(n, budget);
    std::vector<Mask> sets;
    for (const auto& s : bounded_height_sets(rep, height)) {
        Mask m = 0;
        for (int v : s) m |= Mask{1} << v;
        sets.push_back(m);
    }
    const Mask all = (Mask{1} << n) - 1;
    constexpr int kUnset = std::numeric_limits<int>::max();
    std::vector<int> best(static_cast<std::size_t>(all) + 1, kUnset);
    best[0] = 0;
    // Every mask is solved after all of its proper submasks.
    for (Mask mask = 1; mask <= all; ++mask) {
        const Mask low = mask & (~mask + 1);
        int value = kUnset;
        for (Mask s : sets) {
            if (!(s & low) || (s & ~mask)) continue;
            const int rest = best[static_cast<std::size_t>(mask & ~s)];
            if (rest != kUnset) value = std::min(value, rest + 1);
        }
        best[static_cast<std::size_t>(mask)] = value;
    }
    return best[static_cast<std::size_t>(all)];
}

double stacks_lp_exact(const IntervalRepresentation& rep, int height, const OracleBudget& budget,
                       const SimplexOptions& lp) {
    const int n = rep.size();
    check_budget(n, budget);
    std::vector<Mask> sets;
    for (const auto& s : bounded_height_sets(rep, height)) {
        Mask m = 0;
        for (int v : s) m |= Mask{1} << v;
        sets.push_back(m);
    }
    return cover_lp(n, sets, Relation::Equal, lp);
}

} // namespace circol::oracle
