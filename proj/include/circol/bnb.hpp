#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "circol/core.hpp"
#include "circol/greedy.hpp"
#include "circol/lp_model.hpp"
#include "circol/simplex.hpp"
#include "circol/stowage.hpp"

namespace circol {

struct BranchOptions {
    SimplexOptions lp;
    double integrality_tol = 1e-6;
    std::size_t node_limit = 200000;
    // Objective takes integer values on every integer solution, so node
    // bounds may be rounded up.
    bool integral_objective = true;
    std::ostream* log = nullptr; // one line per node when set
};

struct MipIncumbent {
    double objective = 0.0;
    std::vector<double> values;
};

struct MipResult {
    bool optimal = false;
    double objective = 0.0;
    std::vector<double> values;
    double root_lp = 0.0;
    double root_ms = 0.0;
    bool root_integral = false;
    std::size_t nodes = 0;
};

// Returns the variable to branch on, or -1 to fall back to the default
// (most fractional integer variable, lowest index).
using BranchSelector = std::function<int(const LpModel&, const std::vector<double>&)>;

// Best-bound branch-and-bound over the LP relaxation; deeper nodes first on
// equal bounds. Minimization and maximization both work. Throws
// Error{Infeasible} if no integer solution exists and Error{NumericalFailure}
// when the node limit is hit.
MipResult solve_mip(const LpModel& model, const BranchOptions& options = {},
                    std::optional<MipIncumbent> start = std::nullopt, const BranchSelector& select = {});

struct PhaseTimings {
    double build_ms = 0.0;
    double root_ms = 0.0;   // root LP inside the search
    double search_ms = 0.0; // whole branch-and-bound including the root
    double decode_ms = 0.0;
};

struct SolveReport {
    int chromatic_number = 0;        // χ, or the stack count for solve_stacks
    double fractional_chromatic = 0; // root LP value
    double root_gap = 0.0;           // chromatic_number - fractional_chromatic
    std::size_t nodes_explored = 0;
    bool root_integral = false;
    int height = 0;                  // effective stack height (solve_stacks)
    Coloring coloring;
    std::optional<StackPlan> plan;
    PhaseTimings timings;
};

struct SolveOptions {
    BranchOptions branch;
};

// Exact χ via the arborescence formulation, warm-started from First Fit.
SolveReport solve_chromatic(const IntervalRepresentation& rep, const SolveOptions& options = {});

// Minimum number of stacks of height at most `height`. The height is capped
// at longest containment chain + 1 before the model is built.
SolveReport solve_stacks(const IntervalRepresentation& rep, int height, const SolveOptions& options = {});

// Root LP value of the CG relaxation.
double fractional_chromatic(const IntervalRepresentation& rep, const SimplexOptions& options = {});

} // namespace circol
