#include "circol/bnb.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <queue>
#include <string>

#include "circol/lp_models.hpp"
#include "circol/mwis.hpp"

namespace circol {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct Fixing {
    int var;
    double lower;
    double upper;
};

struct Node {
    double bound;
    int depth;
    std::size_t seq;
    std::vector<Fixing> fixings;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.seq > b.seq;
    }
};

int default_branch(const LpModel& model, const std::vector<double>& values, double tol) {
    int best = -1;
    double best_dist = 1.0;
    for (int j = 0; j < model.variable_count(); ++j) {
        if (model.variable(j).kind == VarKind::Continuous) continue;
        const double v = values[static_cast<std::size_t>(j)];
        const double frac = v - std::floor(v);
        if (frac <= tol || frac >= 1.0 - tol) continue;
        const double dist = std::abs(frac - 0.5);
        if (dist < best_dist) {
            best_dist = dist;
            best = j;
        }
    }
    return best;
}

} // namespace

MipResult solve_mip(const LpModel& model, const BranchOptions& options, std::optional<MipIncumbent> start,
                    const BranchSelector& select) {
    // Work in minimization form: key = sign * objective.
    const double sign = model.sense() == Sense::Maximize ? -1.0 : 1.0;
    const LpModel relaxed = model.relaxed();
    const double tol = options.integrality_tol;

    MipResult result;
    std::optional<double> incumbent;
    if (start) {
        incumbent = sign * start->objective;
        result.values = start->values;
        result.objective = start->objective;
    }

    auto node_bound = [&](double lp) {
        const double key = sign * lp;
        return options.integral_objective ? std::ceil(key - tol) : key;
    };
    auto pruned = [&](double bound) {
        if (!incumbent) return false;
        return options.integral_objective ? bound >= *incumbent - 0.5 : bound >= *incumbent - 1e-9;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::size_t seq = 0;
    open.push({-kInf, 0, seq++, {}});
    bool root = true;
    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (pruned(node.bound)) continue;
        if (++result.nodes > options.node_limit) {
            throw Error(ErrorCode::NumericalFailure,
                        "branch-and-bound node limit of " + std::to_string(options.node_limit) + " reached");
        }

        LpModel sub = relaxed;
        for (const Fixing& f : node.fixings) sub.set_bounds(f.var, f.lower, f.upper);
        const auto lp_start = Clock::now();
        const LpSolution lp = solve_lp(sub, options.lp);
        const bool feasible = lp.status == LpStatus::Optimal;
        if (lp.status == LpStatus::Unbounded) {
            throw Error(ErrorCode::NumericalFailure, "LP relaxation is unbounded");
        }
        const double bound = feasible ? node_bound(lp.objective) : kInf;
        const bool integral = feasible && is_integral(model, lp.primal, tol);
        if (root) {
            root = false;
            if (!feasible) throw Error(ErrorCode::Infeasible, "LP relaxation is infeasible");
            result.root_lp = lp.objective;
            result.root_ms = elapsed_ms(lp_start);
            result.root_integral = integral;
        }
        if (options.log) {
            *options.log << "node " << result.nodes << " depth " << node.depth << " bound "
                         << (feasible ? sign * bound : kInf) << " incumbent "
                         << (incumbent ? sign * *incumbent : kInf) << '\n';
        }
        if (!feasible || pruned(bound)) continue;

        if (integral) {
            std::vector<double> values = lp.primal;
            for (int j = 0; j < model.variable_count(); ++j) {
                if (model.variable(j).kind != VarKind::Continuous) {
                    values[static_cast<std::size_t>(j)] = std::round(values[static_cast<std::size_t>(j)]);
                }
            }
            const double value = model.evaluate(values);
            if (!incumbent || sign * value < *incumbent - 1e-9) {
                incumbent = sign * value;
                result.objective = value;
                result.values = std::move(values);
            }
            continue;
        }

        int var = select ? select(model, lp.primal) : -1;
        if (var < 0) var = default_branch(model, lp.primal, tol);
        if (var < 0) {
            throw Error(ErrorCode::NumericalFailure, "fractional LP solution without a branching candidate");
        }
        const double v = lp.primal[static_cast<std::size_t>(var)];
        const Variable& info = model.variable(var);
        Node down{bound, node.depth + 1, seq++, node.fixings};
        down.fixings.push_back({var, -kInf, std::floor(v)});
        Node up{bound, node.depth + 1, seq++, node.fixings};
        up.fixings.push_back({var, std::ceil(v), kInf});
        // Collapse all fixings of the branched variable into one, intersected
        // with its declared bounds.
        auto tighten = [var, &info](Node& n) {
            double lo = info.lower;
            double hi = info.upper;
            for (const auto& f : n.fixings) {
                if (f.var != var) continue;
                lo = std::max(lo, f.lower);
                hi = std::min(hi, f.upper);
            }
            std::erase_if(n.fixings, [var](const Fixing& f) { return f.var == var; });
            n.fixings.push_back({var, lo, hi});
            return lo <= hi;
        };
        if (tighten(down)) open.push(std::move(down));
        if (tighten(up)) open.push(std::move(up));
    }
    if (!incumbent) throw Error(ErrorCode::Infeasible, "no integer solution exists");
    result.optimal = true;
    return result;
}

namespace {

// Values for the CG/CG_H variables that encode a given arc selection.
std::vector<double> assignment_for(const LpModel& model, const std::vector<std::vector<int>>& chosen_index, int c) {
    std::vector<double> values(static_cast<std::size_t>(model.variable_count()), 0.0);
    for (int v = 0; v < model.variable_count(); ++v) {
        const auto& tag = model.variable(v).tag;
        if (tag.role == "c") {
            values[static_cast<std::size_t>(v)] = c;
        } else if (tag.role == "x") {
            for (const auto& idx : chosen_index) {
                if (idx == tag.index) values[static_cast<std::size_t>(v)] = 1.0;
            }
        }
    }
    return values;
}

// Most fractional arc variable; ties go to the tail with more children,
// then to the lower variable index. The color count is never branched on.
BranchSelector arc_selector(const ContainmentDag& dag, double tol) {
    return [&dag, tol](const LpModel& model, const std::vector<double>& values) {
        int best = -1;
        double best_dist = 1.0;
        std::size_t best_span = 0;
        for (int j = 0; j < model.variable_count(); ++j) {
            const auto& tag = model.variable(j).tag;
            if (tag.role != "x") continue;
            const double v = values[static_cast<std::size_t>(j)];
            const double frac = v - std::floor(v);
            if (frac <= tol || frac >= 1.0 - tol) continue;
            const int tail = tag.index.front() == 0 ? kRoot : tag.index.front() - 1;
            const std::size_t span = dag.children(tail).size();
            const double dist = std::abs(frac - 0.5);
            if (best < 0 || dist < best_dist - 1e-12 || (std::abs(dist - best_dist) <= 1e-12 && span > best_span)) {
                best = j;
                best_dist = dist;
                best_span = span;
            }
        }
        return best;
    };
}

} // namespace

SolveReport solve_chromatic(const IntervalRepresentation& rep, const SolveOptions& options) {
    SolveReport report;
    auto t0 = Clock::now();
    const CircleGraph graph = build_graph(rep);
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    const LpModel model = build_cg(rep, dag, cm);

    const Coloring greedy = first_fit(graph, rep.topological_order());
    const auto greedy_parent = arborescence_of(rep, greedy.colors);
    std::vector<std::vector<int>> chosen;
    for (int j = 0; j < rep.size(); ++j) {
        const int p = greedy_parent[static_cast<std::size_t>(j)];
        chosen.push_back({p == kRoot ? 0 : p + 1, j + 1});
    }
    MipIncumbent start{static_cast<double>(greedy.num_colors), assignment_for(model, chosen, greedy.num_colors)};
    report.timings.build_ms = elapsed_ms(t0);

    t0 = Clock::now();
    const MipResult mip = solve_mip(model, options.branch, start, arc_selector(dag, options.branch.integrality_tol));
    report.timings.search_ms = elapsed_ms(t0);
    report.timings.root_ms = mip.root_ms;

    t0 = Clock::now();
    report.chromatic_number = static_cast<int>(std::lround(mip.objective));
    report.fractional_chromatic = mip.root_lp;
    report.root_gap = report.chromatic_number - report.fractional_chromatic;
    report.nodes_explored = mip.nodes;
    report.root_integral = mip.root_integral;
    const auto parent = parents_from_cg(model, mip.values, rep.size());
    report.coloring = decode_parents(rep, parent, report.chromatic_number);
    report.timings.decode_ms = elapsed_ms(t0);
    return report;
}

SolveReport solve_stacks(const IntervalRepresentation& rep, int height, const SolveOptions& options) {
    if (height < 1) {
        throw Error(ErrorCode::InvalidHeight, "stack height must be at least 1, got " + std::to_string(height));
    }
    SolveReport report;
    auto t0 = Clock::now();
    const int effective = std::min(height, rep.longest_containment_chain() + 1);
    report.height = effective;
    const CircleGraph graph = build_graph(rep);
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    const LayeredDag layered(rep, effective);
    const LpModel model = build_cgh(rep, layered, cm);

    // Starting plan expressed as layered arcs: parent in T(φ) at depth h-1.
    const StackPlan greedy = greedy_plan(rep, graph, effective);
    const auto colors = greedy.coloring().colors;
    const auto parent = arborescence_of(rep, colors);
    std::vector<int> depth(static_cast<std::size_t>(rep.size()), 0);
    for (int v : rep.topological_order()) {
        const int p = parent[static_cast<std::size_t>(v)];
        depth[static_cast<std::size_t>(v)] = p == kRoot ? 1 : depth[static_cast<std::size_t>(p)] + 1;
    }
    std::vector<std::vector<int>> chosen;
    for (int j = 0; j < rep.size(); ++j) {
        const int p = parent[static_cast<std::size_t>(j)];
        chosen.push_back({p == kRoot ? 0 : p + 1, depth[static_cast<std::size_t>(j)] - 1, j + 1});
    }
    const int greedy_count = static_cast<int>(greedy.stacks.size());
    MipIncumbent start{static_cast<double>(greedy_count), assignment_for(model, chosen, greedy_count)};
    report.timings.build_ms = elapsed_ms(t0);

    t0 = Clock::now();
    const MipResult mip = solve_mip(model, options.branch, start, arc_selector(dag, options.branch.integrality_tol));
    report.timings.search_ms = elapsed_ms(t0);
    report.timings.root_ms = mip.root_ms;

    t0 = Clock::now();
    report.chromatic_number = static_cast<int>(std::lround(mip.objective));
    report.fractional_chromatic = mip.root_lp;
    report.root_gap = report.chromatic_number - report.fractional_chromatic;
    report.nodes_explored = mip.nodes;
    report.root_integral = mip.root_integral;
    StackPlan plan = decode_plan(rep, layered, layered_arcs_from_cgh(model, mip.values), report.chromatic_number);
    report.coloring = plan.coloring();
    report.plan = std::move(plan);
    report.timings.decode_ms = elapsed_ms(t0);
    return report;
}

double fractional_chromatic(const IntervalRepresentation& rep, const SimplexOptions& options) {
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    const LpSolution lp = solve_lp(build_cg(rep, dag, cm, true), options);
    if (lp.status != LpStatus::Optimal) {
        throw Error(ErrorCode::NumericalFailure, "CG relaxation did not solve to optimality");
    }
    return lp.objective;
}

} // namespace circol
