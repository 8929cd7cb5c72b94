#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "circol/core.hpp"
#include "circol/simplex.hpp"

namespace circol::oracle {

// Brute-force references. Every entry point refuses inputs over budget with
// Error{OverBudget} instead of running unbounded.
struct OracleBudget {
    int max_vertices = 12;
    std::size_t max_independent_sets = 1u << 20;
};

// χ by backtracking, starting at the clique lower bound.
int chromatic_exact(const CircleGraph& graph, const OracleBudget& budget = {});

// χ_f from the covering LP over the maximal independent sets.
double fractional_chromatic_exact(const CircleGraph& graph, const OracleBudget& budget = {},
                                  const SimplexOptions& lp = {});

// χ_f from the equality LP over every non-empty independent set.
double fractional_chromatic_all_sets(const CircleGraph& graph, const OracleBudget& budget = {},
                                     const SimplexOptions& lp = {});

// Maximum weight over all independent sets, the empty set included.
double mwis_exact(const CircleGraph& graph, std::span<const double> weights, const OracleBudget& budget = {});

std::vector<VertexSet> maximal_independent_sets(const CircleGraph& graph, const OracleBudget& budget = {});

// Maximum antichain by subset enumeration.
int max_antichain_exact(const IntervalRepresentation& rep, std::span<const int> subset);

// Independent sets whose height (largest nested family) is at most `height`.
std::vector<VertexSet> bounded_height_sets(const IntervalRepresentation& rep, int height);

// Fewest stacks of height at most `height` covering V; n ≤ 8.
int stacks_exact(const IntervalRepresentation& rep, int height, const OracleBudget& budget = {8});

// LP relaxation of the same set-partitioning problem.
double stacks_lp_exact(const IntervalRepresentation& rep, int height, const OracleBudget& budget = {8},
                       const SimplexOptions& lp = {});

} // namespace circol::oracle
