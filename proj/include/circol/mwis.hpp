#pragma once

#include <span>
#include <vector>

#include "circol/core.hpp"

namespace circol {

struct ChainResult {
    double value = 0.0;
    VertexSet chain; // ascending by position on the line
};

// Maximum-value chain of (V,⪯) among `candidates`. The empty chain is
// allowed, so the value is never negative. `values` is indexed by vertex.
ChainResult max_weight_chain(const IntervalRepresentation& rep, std::span<const int> candidates,
                             std::span<const double> values);

struct DpLabels {
    double root = 0.0;        // ℓ_0
    std::vector<double> ell;  // ℓ_i per vertex
};

struct MwisResult {
    double value = 0.0;
    DpLabels labels;
    VertexSet set; // ascending vertex indices
};

// Max-weight independent set by the containment recursion: each vertex's
// label is its own weight plus the best chain of its children's labels,
// evaluated children first. Negative weights are allowed.
MwisResult solve_mwis(const IntervalRepresentation& rep, std::span<const double> weights);

// Greedy Dilworth partition of `subset` into max_antichain(subset) chains.
// Intervals are taken by ascending left endpoint and appended to the
// lowest-index chain whose last interval ends before this one starts.
std::vector<VertexSet> chain_partition(const IntervalRepresentation& rep, std::span<const int> subset);

// Builds a c-coloring from an arborescence of the containment DAG whose
// child sets are chains (C1) and whose root children contain no antichain
// larger than c (C2). Throws NotArborescence, C1Violated or C2Violated.
Coloring decode_arborescence(const IntervalRepresentation& rep, std::span<const Arc> arcs, int c);

// Same, from a parent vector (kRoot for root children).
Coloring decode_parents(const IntervalRepresentation& rep, std::span<const int> parent, int c);

} // namespace circol
