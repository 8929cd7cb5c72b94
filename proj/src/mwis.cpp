#include "circol/mwis.hpp"

#include <algorithm>
#include <string>

namespace circol {

ChainResult max_weight_chain(const IntervalRepresentation& rep, std::span<const int> candidates,
                             std::span<const double> values) {
    std::vector<int> order(candidates.begin(), candidates.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rep[a].right < rep[b].right; });
    const std::size_t k = order.size();
    // best[t]: optimum over the first t intervals by right endpoint
    std::vector<double> best(k + 1, 0.0);
    std::vector<std::size_t> pred(k, 0);
    std::vector<char> take(k, 0);
    for (std::size_t t = 0; t < k; ++t) {
        const int v = order[t];
        // number of earlier intervals ending before v starts
        auto it = std::lower_bound(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t), rep[v].left,
                                   [&](int u, int left) { return rep[u].right < left; });
        pred[t] = static_cast<std::size_t>(it - order.begin());
        const double with = values[static_cast<std::size_t>(v)] + best[pred[t]];
        if (with > best[t]) {
            best[t + 1] = with;
            take[t] = 1;
        } else {
            best[t + 1] = best[t];
        }
    }
    ChainResult result{best[k], {}};
    for (std::size_t t = k; t > 0;) {
        if (take[t - 1]) {
            result.chain.push_back(order[t - 1]);
            t = pred[t - 1];
        } else {
            --t;
        }
    }
    std::reverse(result.chain.begin(), result.chain.end());
    return result;
}

MwisResult solve_mwis(const IntervalRepresentation& rep, std::span<const double> weights) {
    const int n = rep.size();
    const ContainmentDag dag(rep);
    MwisResult result;
    result.labels.ell.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<VertexSet> chosen(static_cast<std::size_t>(n));
    const auto& topo = rep.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        const int i = *it;
        const auto& kids = dag.children(i);
        double label = weights[static_cast<std::size_t>(i)];
        if (!kids.empty()) {
            ChainResult inner = max_weight_chain(rep, kids, result.labels.ell);
            label += inner.value;
            chosen[static_cast<std::size_t>(i)] = std::move(inner.chain);
        }
        result.labels.ell[static_cast<std::size_t>(i)] = label;
    }
    ChainResult top = max_weight_chain(rep, dag.children(kRoot), result.labels.ell);
    result.labels.root = top.value;
    result.value = top.value;

    std::vector<int> stack(top.chain.begin(), top.chain.end());
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        result.set.push_back(v);
        for (int u : chosen[static_cast<std::size_t>(v)]) stack.push_back(u);
    }
    std::sort(result.set.begin(), result.set.end());
    return result;
}

std::vector<VertexSet> chain_partition(const IntervalRepresentation& rep, std::span<const int> subset) {
    std::vector<int> order(subset.begin(), subset.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rep[a].left < rep[b].left; });
    std::vector<VertexSet> chains;
    for (int v : order) {
        auto slot = std::find_if(chains.begin(), chains.end(),
                                 [&](const VertexSet& chain) { return rep[chain.back()].precedes(rep[v]); });
        if (slot == chains.end()) {
            chains.push_back({v});
        } else {
            slot->push_back(v);
        }
    }
    return chains;
}

Coloring decode_arborescence(const IntervalRepresentation& rep, std::span<const Arc> arcs, int c) {
    const int n = rep.size();
    std::vector<int> parent(static_cast<std::size_t>(n), kRoot);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const Arc& a : arcs) {
        if (a.to < 0 || a.to >= n) {
            throw Error(ErrorCode::NotArborescence, "arc points at an unknown vertex");
        }
        if (seen[static_cast<std::size_t>(a.to)]) {
            throw Error(ErrorCode::NotArborescence,
                        "vertex " + std::to_string(a.to + 1) + " has more than one incoming arc", a.to);
        }
        seen[static_cast<std::size_t>(a.to)] = 1;
        parent[static_cast<std::size_t>(a.to)] = a.from;
    }
    for (int v = 0; v < n; ++v) {
        if (!seen[static_cast<std::size_t>(v)]) {
            throw Error(ErrorCode::NotArborescence, "vertex " + std::to_string(v + 1) + " has no incoming arc", v);
        }
    }
    return decode_parents(rep, parent, c);
}

Coloring decode_parents(const IntervalRepresentation& rep, std::span<const int> parent, int c) {
    const int n = rep.size();
    if (static_cast<int>(parent.size()) != n) {
        throw Error(ErrorCode::NotArborescence, "parent vector has the wrong length");
    }
    std::vector<VertexSet> kids(static_cast<std::size_t>(n));
    VertexSet top;
    for (int j = 0; j < n; ++j) {
        const int p = parent[static_cast<std::size_t>(j)];
        if (p == kRoot) {
            top.push_back(j);
            continue;
        }
        if (p < 0 || p >= n || !rep[p].contains(rep[j])) {
            throw Error(ErrorCode::NotArborescence,
                        "arc into vertex " + std::to_string(j + 1) + " is not a containment arc", j);
        }
        kids[static_cast<std::size_t>(p)].push_back(j);
    }
    for (int i = 0; i < n; ++i) {
        if (!rep.is_chain(kids[static_cast<std::size_t>(i)])) {
            throw Error(ErrorCode::C1Violated,
                        "children of vertex " + std::to_string(i + 1) + " are not a chain", i);
        }
    }
    const auto chains = chain_partition(rep, top);
    if (static_cast<int>(chains.size()) > c) {
        // first interval that opened a chain beyond c sits in a too-large antichain
        const int culprit = chains[static_cast<std::size_t>(c)].front();
        throw Error(ErrorCode::C2Violated,
                    "root children contain an antichain of size " + std::to_string(chains.size()) +
                        " > " + std::to_string(c),
                    culprit);
    }
    Coloring coloring;
    coloring.colors.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < chains.size(); ++k) {
        for (int v : chains[k]) coloring.colors[static_cast<std::size_t>(v)] = static_cast<int>(k) + 1;
    }
    // parents start before their children
    for (int v : rep.topological_order()) {
        const int p = parent[static_cast<std::size_t>(v)];
        if (p != kRoot) coloring.colors[static_cast<std::size_t>(v)] = coloring.colors[static_cast<std::size_t>(p)];
    }
    coloring.num_colors = static_cast<int>(chains.size());
    coloring.parent = std::vector<int>(parent.begin(), parent.end());
    return coloring;
}

} // namespace circol
