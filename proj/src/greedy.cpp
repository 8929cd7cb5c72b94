#include "circol/greedy.hpp"

#include <numeric>
#include <vector>

namespace circol {

Coloring first_fit(const CircleGraph& graph, std::span<const int> order) {
    const int n = graph.size();
    std::vector<int> colors(static_cast<std::size_t>(n), 0);
    std::vector<int> mark(static_cast<std::size_t>(n) + 2, -1);
    for (int v : order) {
        for (int u : graph.neighbors(v)) {
            const int c = colors[static_cast<std::size_t>(u)];
            if (c > 0) mark[static_cast<std::size_t>(c)] = v;
        }
        int c = 1;
        while (mark[static_cast<std::size_t>(c)] == v) ++c;
        colors[static_cast<std::size_t>(v)] = c;
    }
    return Coloring::from_colors(std::move(colors));
}

Coloring first_fit(const CircleGraph& graph) {
    std::vector<int> order(static_cast<std::size_t>(graph.size()));
    std::iota(order.begin(), order.end(), 0);
    return first_fit(graph, order);
}

} // namespace circol
