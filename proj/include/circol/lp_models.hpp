#pragma once

#include <optional>
#include <span>
#include <vector>

#include "circol/core.hpp"
#include "circol/lp_model.hpp"

namespace circol {

// External names: vertex v prints as v+1, the root as 0, sweep points by
// their position on 1..2n. Arc variables are "x_<tail>_<head>".

// Coloring formulation over arborescences of the containment DAG. With
// `relax`, x becomes continuous in [0,1] and c continuous in [0,inf).
LpModel build_cg(const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                 bool relax = false);

// Max-weight chain LP over R_V(node) and its dual. `node` is kRoot or a
// branching vertex; otherwise throws Error{VertexNotBranching}.
LpModel build_lc(int node, const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                 std::span<const double> values);
LpModel build_dlc(int node, const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                  std::span<const double> values);

// Flat LP whose optimum is the max-weight independent set value.
LpModel build_isd(const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                  std::span<const double> weights);

// Fractional coloring LP (dual of the CG relaxation).
LpModel build_fcp(const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm);

// Classical assignment formulation with `colors` color slots; defaults to
// the First Fit color count.
LpModel build_cl(const CircleGraph& graph, std::optional<int> colors = std::nullopt);

// Asymmetric representatives formulation; vertices ranked by non-increasing
// degree, ties by index.
LpModel build_as(const CircleGraph& graph);
std::vector<int> degree_order(const CircleGraph& graph);

// Decodes the arc variables of a CG solution into a parent vector
// (x > 0.5 selects the arc).
std::vector<int> parents_from_cg(const LpModel& model, const std::vector<double>& values, int n);

} // namespace circol
