#pragma once

#include <span>
#include <vector>

#include "circol/core.hpp"
#include "circol/lp_model.hpp"

namespace circol {

// Copy (vertex, layer) of the layered DAG; the root is (kRoot, 0).
struct LayeredNode {
    int vertex = kRoot;
    int layer = 0;
    friend bool operator==(const LayeredNode&, const LayeredNode&) = default;
};

struct LayeredArc {
    LayeredNode from;
    LayeredNode to;
    friend bool operator==(const LayeredArc&, const LayeredArc&) = default;
};

// H copies of every vertex: the root feeds layer 1, and (i,h) → (j,h+1)
// whenever I(i) ⊋ I(j).
class LayeredDag {
public:
    // Throws Error{InvalidHeight} for height < 1.
    LayeredDag(const IntervalRepresentation& rep, int height);

    int height() const noexcept { return height_; }
    int vertex_count() const noexcept { return n_; }
    std::size_t node_count() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(height_) + 1; }
    const std::vector<LayeredArc>& arcs() const noexcept { return arcs_; }
    // Arc indices entering / leaving a node.
    const std::vector<int>& in_arcs(LayeredNode node) const;
    const std::vector<int>& out_arcs(LayeredNode node) const;

private:
    std::size_t slot(LayeredNode node) const;

    int n_;
    int height_;
    std::vector<LayeredArc> arcs_;
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
};

struct StackPlan {
    std::vector<VertexSet> stacks; // bottom to top (ascending left endpoint)
    std::vector<int> heights;
    std::vector<int> stack_of;     // vertex -> stack index

    Coloring coloring() const;
};

// Capacitated stack formulation over the layered DAG. Arc variables are
// named "x_<tail>_<layer>_<head>" with the root printed as tail 0, layer 0.
LpModel build_cgh(const IntervalRepresentation& rep, const LayeredDag& dag, const CliqueMatrix& cm,
                  bool relax = false);

// Turns a layered arc set into an H-admissible c-stack plan. Throws
// D0Violated, D1Violated or D2Violated naming the offending vertex.
StackPlan decode_plan(const IntervalRepresentation& rep, const LayeredDag& dag, std::span<const LayeredArc> arcs,
                      int c);

std::vector<LayeredArc> layered_arcs_from_cgh(const LpModel& model, const std::vector<double>& values);

// Partition, independence and height checks.
bool check_plan(const IntervalRepresentation& rep, const CircleGraph& graph, const StackPlan& plan, int height);

// Height-aware First Fit, used as a starting plan.
StackPlan greedy_plan(const IntervalRepresentation& rep, const CircleGraph& graph, int height);

} // namespace circol
