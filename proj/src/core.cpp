#include "circol/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace circol {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::DuplicateEndpoint: return "DuplicateEndpoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingVertex: return "MissingVertex";
    case ErrorCode::NotArborescence: return "NotArborescence";
    case ErrorCode::C1Violated: return "C1Violated";
    case ErrorCode::C2Violated: return "C2Violated";
    case ErrorCode::VertexNotBranching: return "VertexNotBranching";
    case ErrorCode::InvalidHeight: return "InvalidHeight";
    case ErrorCode::D0Violated: return "D0Violated";
    case ErrorCode::D1Violated: return "D1Violated";
    case ErrorCode::D2Violated: return "D2Violated";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::OverBudget: return "OverBudget";
    case ErrorCode::InvalidModel: return "InvalidModel";
    }
    return "Unknown";
}

IntervalRepresentation IntervalRepresentation::normalize(
    std::span<const std::pair<std::int64_t, std::int64_t>> raw) {
    if (raw.empty()) {
        throw Error(ErrorCode::Empty, "instance has no intervals");
    }
    // endpoint value -> owning vertex
    std::map<std::int64_t, int> owner;
    for (std::size_t v = 0; v < raw.size(); ++v) {
        for (std::int64_t value : {raw[v].first, raw[v].second}) {
            auto [it, inserted] = owner.emplace(value, static_cast<int>(v));
            if (!inserted) {
                throw Error(ErrorCode::DuplicateEndpoint,
                            "endpoint " + std::to_string(value) + " is shared by vertices " +
                                std::to_string(it->second + 1) + " and " + std::to_string(v + 1),
                            static_cast<int>(v));
            }
        }
    }
    std::map<std::int64_t, int> rank;
    int next = 1;
    for (const auto& entry : owner) {
        rank[entry.first] = next++;
    }
    std::vector<Interval> intervals;
    intervals.reserve(raw.size());
    for (const auto& [a, b] : raw) {
        int ra = rank[a];
        int rb = rank[b];
        intervals.push_back({std::min(ra, rb), std::max(ra, rb)});
    }
    return IntervalRepresentation(std::move(intervals));
}

IntervalRepresentation::IntervalRepresentation(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
    if (intervals_.empty()) {
        throw Error(ErrorCode::Empty, "instance has no intervals");
    }
    const int n = size();
    std::vector<char> seen(static_cast<std::size_t>(2 * n + 1), 0);
    for (int v = 0; v < n; ++v) {
        const auto& iv = intervals_[static_cast<std::size_t>(v)];
        if (iv.left >= iv.right || iv.left < 1 || iv.right > 2 * n) {
            throw Error(ErrorCode::DuplicateEndpoint,
                        "interval of vertex " + std::to_string(v + 1) + " is not normalized", v);
        }
        for (int p : {iv.left, iv.right}) {
            if (seen[static_cast<std::size_t>(p)]) {
                throw Error(ErrorCode::DuplicateEndpoint,
                            "endpoint " + std::to_string(p) + " appears twice", v);
            }
            seen[static_cast<std::size_t>(p)] = 1;
        }
    }
    by_left_.resize(static_cast<std::size_t>(n));
    std::iota(by_left_.begin(), by_left_.end(), 0);
    std::sort(by_left_.begin(), by_left_.end(),
              [this](int a, int b) { return (*this)[a].left < (*this)[b].left; });
}

bool IntervalRepresentation::is_chain(std::span<const int> vertices) const {
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < vertices.size(); ++b) {
            const int i = vertices[a];
            const int j = vertices[b];
            if (i == j) continue;
            if (!precedes_or_equal(i, j) && !precedes_or_equal(j, i)) return false;
        }
    }
    return true;
}

bool IntervalRepresentation::is_antichain(std::span<const int> vertices) const {
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < vertices.size(); ++b) {
            if (vertices[a] != vertices[b] && !(*this)[vertices[a]].intersects((*this)[vertices[b]])) {
                return false;
            }
        }
    }
    return true;
}

int IntervalRepresentation::longest_containment_chain() const {
    // Children have larger left endpoints, so a reverse sweep sees them first.
    const int n = size();
    std::vector<int> depth(static_cast<std::size_t>(n), 1);
    int best = 0;
    for (auto it = by_left_.rbegin(); it != by_left_.rend(); ++it) {
        const int i = *it;
        for (int j = 0; j < n; ++j) {
            if ((*this)[i].contains((*this)[j])) {
                depth[static_cast<std::size_t>(i)] =
                    std::max(depth[static_cast<std::size_t>(i)], depth[static_cast<std::size_t>(j)] + 1);
            }
        }
        best = std::max(best, depth[static_cast<std::size_t>(i)]);
    }
    return best;
}

CircleGraph::CircleGraph(int n)
    : n_(n), adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
      neighbors_(static_cast<std::size_t>(n)) {}

CircleGraph::CircleGraph(int n, std::span<const Edge> edges) : CircleGraph(n) {
    for (Edge e : edges) {
        if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw Error(ErrorCode::InvalidModel, "invalid edge");
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        auto& cell = adj_[static_cast<std::size_t>(e.u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(e.v)];
        if (cell) continue;
        cell = 1;
        adj_[static_cast<std::size_t>(e.v) * static_cast<std::size_t>(n) + static_cast<std::size_t>(e.u)] = 1;
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (const Edge& e : edges_) {
        neighbors_[static_cast<std::size_t>(e.u)].push_back(e.v);
        neighbors_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

bool CircleGraph::is_independent(std::span<const int> vertices) const {
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < vertices.size(); ++b) {
            if (vertices[a] != vertices[b] && adjacent(vertices[a], vertices[b])) return false;
        }
    }
    return true;
}

CircleGraph build_graph(const IntervalRepresentation& rep) {
    std::vector<Edge> edges;
    const int n = rep.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rep[i].overlaps(rep[j])) edges.push_back({i, j});
        }
    }
    return CircleGraph(n, edges);
}

ContainmentDag::ContainmentDag(const IntervalRepresentation& rep)
    : children_(static_cast<std::size_t>(rep.size())), parents_(static_cast<std::size_t>(rep.size())) {
    const int n = rep.size();
    root_children_.resize(static_cast<std::size_t>(n));
    std::iota(root_children_.begin(), root_children_.end(), 0);
    for (int j = 0; j < n; ++j) arcs_.push_back({kRoot, j});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (rep[i].contains(rep[j])) {
                children_[static_cast<std::size_t>(i)].push_back(j);
                parents_[static_cast<std::size_t>(j)].push_back(i);
                arcs_.push_back({i, j});
            }
        }
        if (!children_[static_cast<std::size_t>(i)].empty()) branching_.push_back(i);
    }
}

const std::vector<int>& ContainmentDag::children(int node) const {
    return node == kRoot ? root_children_ : children_[static_cast<std::size_t>(node)];
}

bool ContainmentDag::has_arc(int from, int to) const {
    if (to < 0 || to >= size()) return false;
    if (from == kRoot) return true;
    if (from < 0 || from >= size()) return false;
    const auto& kids = children_[static_cast<std::size_t>(from)];
    return std::binary_search(kids.begin(), kids.end(), to);
}

CliqueMatrix::CliqueMatrix(const IntervalRepresentation& rep) : intervals_(rep.intervals()) {
    for (int p : rep.topological_order()) {
        Row row{rep[p].left, {}};
        for (int v = 0; v < rep.size(); ++v) {
            if (rep[v].covers(row.point)) row.vertices.push_back(v);
        }
        rows_.push_back(std::move(row));
    }
}

bool CliqueMatrix::entry(std::size_t row, int v) const {
    return intervals_[static_cast<std::size_t>(v)].covers(rows_[row].point);
}

int CliqueMatrix::max_row_sum(std::span<const int> subset) const {
    std::vector<char> in(intervals_.size(), 0);
    for (int v : subset) in[static_cast<std::size_t>(v)] = 1;
    int best = 0;
    for (const auto& row : rows_) {
        int sum = 0;
        for (int v : row.vertices) sum += in[static_cast<std::size_t>(v)];
        best = std::max(best, sum);
    }
    return best;
}

std::vector<CliqueMatrix::Row> CliqueMatrix::maximal_rows(std::span<const int> subset) const {
    // Events: (position, vertex, is_left)
    struct Event {
        int pos;
        int vertex;
        bool left;
    };
    std::vector<Event> events;
    events.reserve(subset.size() * 2);
    for (int v : subset) {
        const auto& iv = intervals_[static_cast<std::size_t>(v)];
        events.push_back({iv.left, v, true});
        events.push_back({iv.right, v, false});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });
    std::vector<Row> out;
    std::vector<int> active;
    for (std::size_t k = 0; k < events.size(); ++k) {
        const Event& e = events[k];
        if (!e.left) {
            active.erase(std::find(active.begin(), active.end(), e.vertex));
            continue;
        }
        active.push_back(e.vertex);
        if (k + 1 < events.size() && !events[k + 1].left) {
            Row row{e.pos, active};
            std::sort(row.vertices.begin(), row.vertices.end());
            out.push_back(std::move(row));
        }
    }
    return out;
}

int max_antichain(const IntervalRepresentation& rep, std::span<const int> subset) {
    std::vector<std::pair<int, int>> events;
    events.reserve(subset.size() * 2);
    for (int v : subset) {
        events.emplace_back(rep[v].left, +1);
        events.emplace_back(rep[v].right, -1);
    }
    std::sort(events.begin(), events.end());
    int depth = 0;
    int best = 0;
    for (const auto& [pos, delta] : events) {
        depth += delta;
        best = std::max(best, depth);
    }
    return best;
}

Coloring Coloring::from_colors(std::vector<int> colors) {
    Coloring c;
    c.num_colors = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
    c.colors = std::move(colors);
    return c;
}

bool validate_coloring(const CircleGraph& graph, const Coloring& coloring) {
    const int n = graph.size();
    for (int v = 0; v < n; ++v) {
        if (static_cast<std::size_t>(v) >= coloring.colors.size() ||
            coloring.colors[static_cast<std::size_t>(v)] < 1) {
            throw Error(ErrorCode::MissingVertex, "vertex " + std::to_string(v + 1) + " has no color", v);
        }
    }
    for (const Edge& e : graph.edges()) {
        if (coloring.colors[static_cast<std::size_t>(e.u)] == coloring.colors[static_cast<std::size_t>(e.v)]) {
            return false;
        }
    }
    return true;
}

std::vector<int> arborescence_of(const IntervalRepresentation& rep, std::span<const int> colors) {
    const int n = rep.size();
    std::vector<int> parent(static_cast<std::size_t>(n), kRoot);
    for (int j = 0; j < n; ++j) {
        int best = kRoot;
        for (int i = 0; i < n; ++i) {
            if (colors[static_cast<std::size_t>(i)] != colors[static_cast<std::size_t>(j)] || !rep[i].contains(rep[j])) {
                continue;
            }
            if (best == kRoot || rep[best].contains(rep[i])) best = i;
        }
        parent[static_cast<std::size_t>(j)] = best;
    }
    return parent;
}

std::vector<Arc> parents_to_arcs(std::span<const int> parent) {
    std::vector<Arc> arcs;
    arcs.reserve(parent.size());
    for (std::size_t j = 0; j < parent.size(); ++j) arcs.push_back({parent[j], static_cast<int>(j)});
    return arcs;
}

} // namespace circol
