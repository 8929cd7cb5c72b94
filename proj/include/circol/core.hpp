#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circol/error.hpp"

namespace circol {

// Vertices are 0-based indices in input order. The artificial root of the
// containment DAG is kRoot; external formats print it as 0 and shift real
// vertices to 1-based IDs.
inline constexpr int kRoot = -1;

using VertexSet = std::vector<int>;

struct Interval {
    int left = 0;
    int right = 0;

    bool covers(int point) const noexcept { return left <= point && point <= right; }
    // Strict containment I(this) ⊋ I(other).
    bool contains(const Interval& other) const noexcept {
        return left < other.left && other.right < right;
    }
    bool intersects(const Interval& other) const noexcept {
        return !(right < other.left || other.right < left);
    }
    // Partial overlap: intersect and neither contains the other.
    bool overlaps(const Interval& other) const noexcept {
        return (left < other.left && other.left < right && right < other.right) ||
               (other.left < left && left < other.right && other.right < right);
    }
    // Interval order: this ends before other starts.
    bool precedes(const Interval& other) const noexcept { return right < other.left; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

class IntervalRepresentation {
public:
    // Accepts raw endpoint pairs in any order and rank-compresses them onto
    // 1..2n. Throws Error{Empty} or Error{DuplicateEndpoint}.
    static IntervalRepresentation normalize(std::span<const std::pair<std::int64_t, std::int64_t>> raw);

    // Wraps intervals already on 1..2n; throws if they are not.
    explicit IntervalRepresentation(std::vector<Interval> intervals);

    int size() const noexcept { return static_cast<int>(intervals_.size()); }
    const Interval& operator[](int v) const { return intervals_[static_cast<std::size_t>(v)]; }
    const std::vector<Interval>& intervals() const noexcept { return intervals_; }

    // Vertices by ascending left endpoint. If I(i) ⊇ I(j) then i comes first,
    // so this is a topological order of the containment DAG.
    const std::vector<int>& topological_order() const noexcept { return by_left_; }

    // i ⪯ j in the interval order (reflexive).
    bool precedes_or_equal(int i, int j) const {
        return i == j || (*this)[i].precedes((*this)[j]);
    }

    bool is_chain(std::span<const int> vertices) const;
    bool is_antichain(std::span<const int> vertices) const;

    // Length (vertex count) of the longest strictly nested family.
    int longest_containment_chain() const;

    friend bool operator==(const IntervalRepresentation& a, const IntervalRepresentation& b) {
        return a.intervals_ == b.intervals_;
    }

private:
    std::vector<Interval> intervals_;
    std::vector<int> by_left_;
};

struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class CircleGraph {
public:
    explicit CircleGraph(int n = 0);
    CircleGraph(int n, std::span<const Edge> edges);

    int size() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool adjacent(int u, int v) const {
        return adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
    }
    const std::vector<int>& neighbors(int v) const { return neighbors_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    // Edges with u < v, lexicographic.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool is_independent(std::span<const int> vertices) const;

private:
    int n_;
    std::vector<char> adj_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<Edge> edges_;
};

CircleGraph build_graph(const IntervalRepresentation& rep);

struct Arc {
    int from = kRoot; // kRoot or a vertex
    int to = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
};

// The containment DAG: root → every vertex, plus i → j whenever I(i) ⊋ I(j).
class ContainmentDag {
public:
    explicit ContainmentDag(const IntervalRepresentation& rep);

    int size() const noexcept { return static_cast<int>(children_.size()); }
    // R_V(i); for kRoot this is every vertex. Children sorted by vertex index.
    const std::vector<int>& children(int node) const;
    const std::vector<int>& parents(int v) const { return parents_[static_cast<std::size_t>(v)]; }
    bool has_arc(int from, int to) const;
    // Vertices with at least one child (V•), ascending.
    const std::vector<int>& branching() const noexcept { return branching_; }
    bool is_branching(int node) const { return node == kRoot || !children(node).empty(); }
    // Root arcs first (by child), then vertex arcs grouped by tail in index order.
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }

private:
    std::vector<int> root_children_;
    std::vector<std::vector<int>> children_;
    std::vector<std::vector<int>> parents_;
    std::vector<int> branching_;
    std::vector<Arc> arcs_;
};

// Point-versus-interval incidence matrix, one row per left endpoint sorted by
// position. Row p covers vertex i iff the sweep point lies in I(i).
class CliqueMatrix {
public:
    struct Row {
        int point = 0;        // sweep position on 1..2n
        VertexSet vertices;   // covered vertices, ascending
    };

    explicit CliqueMatrix(const IntervalRepresentation& rep);

    const std::vector<Row>& rows() const noexcept { return rows_; }
    bool entry(std::size_t row, int v) const;

    // Largest row sum over the characteristic vector of `subset`.
    int max_row_sum(std::span<const int> subset) const;

    // Rows restricted to `subset`, keeping only the maximal (non-dominated)
    // ones. These are exactly the maximal cliques of the interval graph on
    // `subset`; a left endpoint yields one when the next event after it
    // inside the subset is a right endpoint.
    std::vector<Row> maximal_rows(std::span<const int> subset) const;

private:
    std::vector<Interval> intervals_;
    std::vector<Row> rows_;
};

// Same value as CliqueMatrix::max_row_sum, computed by a direct endpoint sweep.
int max_antichain(const IntervalRepresentation& rep, std::span<const int> subset);

struct Coloring {
    std::vector<int> colors;   // 1-based color per vertex
    int num_colors = 0;
    // Arborescence certificate: parent per vertex (kRoot or a vertex).
    std::optional<std::vector<int>> parent;

    static Coloring from_colors(std::vector<int> colors);
};

// Throws Error{MissingVertex} when a vertex has no positive color.
bool validate_coloring(const CircleGraph& graph, const Coloring& coloring);

// T(φ): each vertex points at the inclusion-minimal same-colored interval that
// strictly contains it, or at the root.
std::vector<int> arborescence_of(const IntervalRepresentation& rep, std::span<const int> colors);

std::vector<Arc> parents_to_arcs(std::span<const int> parent);

} // namespace circol
