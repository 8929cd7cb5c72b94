#include "circol/stowage.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "circol/mwis.hpp"

namespace circol {

namespace {

int ext(int v) { return v == kRoot ? 0 : v + 1; }

} // namespace

LayeredDag::LayeredDag(const IntervalRepresentation& rep, int height) : n_(rep.size()), height_(height) {
    if (height < 1) {
        throw Error(ErrorCode::InvalidHeight, "stack height must be at least 1, got " + std::to_string(height));
    }
    in_.resize(node_count());
    out_.resize(node_count());
    auto add = [this](LayeredNode from, LayeredNode to) {
        const int id = static_cast<int>(arcs_.size());
        arcs_.push_back({from, to});
        out_[slot(from)].push_back(id);
        in_[slot(to)].push_back(id);
    };
    for (int j = 0; j < n_; ++j) add({kRoot, 0}, {j, 1});
    for (int h = 1; h < height_; ++h) {
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                if (rep[i].contains(rep[j])) add({i, h}, {j, h + 1});
            }
        }
    }
}

std::size_t LayeredDag::slot(LayeredNode node) const {
    if (node.vertex == kRoot) return 0;
    return 1 + static_cast<std::size_t>(node.vertex) * static_cast<std::size_t>(height_) +
           static_cast<std::size_t>(node.layer - 1);
}

const std::vector<int>& LayeredDag::in_arcs(LayeredNode node) const { return in_[slot(node)]; }
const std::vector<int>& LayeredDag::out_arcs(LayeredNode node) const { return out_[slot(node)]; }

Coloring StackPlan::coloring() const {
    std::vector<int> colors(stack_of.size());
    for (std::size_t v = 0; v < stack_of.size(); ++v) colors[v] = stack_of[v] + 1;
    return Coloring::from_colors(std::move(colors));
}

LpModel build_cgh(const IntervalRepresentation& rep, const LayeredDag& dag, const CliqueMatrix& cm, bool relax) {
    const int n = rep.size();
    const int height = dag.height();
    const ContainmentDag base(rep);
    LpModel m(relax ? "CGH-LR" : "CGH");
    const auto kind = relax ? VarKind::Continuous : VarKind::Binary;
    std::vector<int> var_of_arc(dag.arcs().size());
    for (std::size_t k = 0; k < dag.arcs().size(); ++k) {
        const auto& a = dag.arcs()[k];
        const int tail = ext(a.from.vertex);
        const int layer = a.from.layer;
        const int head = ext(a.to.vertex);
        var_of_arc[k] = m.add_variable(
            "x_" + std::to_string(tail) + "_" + std::to_string(layer) + "_" + std::to_string(head), 0.0, 1.0, kind,
            {"x", {tail, layer, head}});
    }
    const int c = m.add_variable("c", 0.0, kInf, relax ? VarKind::Continuous : VarKind::Integer, {"c", {}});
    m.set_objective(Sense::Minimize, {{c, 1.0}});

    auto arc_into = [&](const std::vector<int>& arc_ids, int head) {
        for (int id : arc_ids) {
            if (dag.arcs()[static_cast<std::size_t>(id)].to.vertex == head) return var_of_arc[static_cast<std::size_t>(id)];
        }
        throw Error(ErrorCode::InvalidModel, "layered arc missing");
    };

    const auto& root_out = dag.out_arcs({kRoot, 0});
    for (const auto& row : cm.maximal_rows(base.children(kRoot))) {
        std::vector<Term> terms;
        for (int j : row.vertices) terms.push_back({arc_into(root_out, j), 1.0});
        terms.push_back({c, -1.0});
        m.add_constraint("root_p" + std::to_string(row.point), std::move(terms), Relation::LessEqual, 0.0);
    }
    for (int i : base.branching()) {
        const auto rows = cm.maximal_rows(base.children(i));
        for (int h = 1; h < height; ++h) {
            const LayeredNode node{i, h};
            const auto& outs = dag.out_arcs(node);
            if (outs.empty()) continue;
            for (const auto& row : rows) {
                std::vector<Term> terms;
                for (int j : row.vertices) terms.push_back({arc_into(outs, j), 1.0});
                for (int id : dag.in_arcs(node)) terms.push_back({var_of_arc[static_cast<std::size_t>(id)], -1.0});
                m.add_constraint("chain_" + std::to_string(i + 1) + "_" + std::to_string(h) + "_p" +
                                     std::to_string(row.point),
                                 std::move(terms), Relation::LessEqual, 0.0);
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Term> terms;
        for (int h = 1; h <= height; ++h) {
            for (int id : dag.in_arcs({j, h})) terms.push_back({var_of_arc[static_cast<std::size_t>(id)], 1.0});
        }
        m.add_constraint("assign_" + std::to_string(j + 1), std::move(terms), Relation::Equal, 1.0);
    }
    return m;
}

std::vector<LayeredArc> layered_arcs_from_cgh(const LpModel& model, const std::vector<double>& values) {
    std::vector<LayeredArc> arcs;
    for (int v = 0; v < model.variable_count(); ++v) {
        const auto& tag = model.variable(v).tag;
        if (tag.role != "x" || tag.index.size() != 3 || values[static_cast<std::size_t>(v)] <= 0.5) continue;
        const int tail = tag.index[0] == 0 ? kRoot : tag.index[0] - 1;
        arcs.push_back({{tail, tag.index[1]}, {tag.index[2] - 1, tag.index[1] + 1}});
    }
    return arcs;
}

StackPlan decode_plan(const IntervalRepresentation& rep, const LayeredDag& dag, std::span<const LayeredArc> arcs,
                      int c) {
    const int n = rep.size();
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> valid;
    for (const auto& a : dag.arcs()) {
        valid.insert({{a.from.vertex, a.from.layer}, {a.to.vertex, a.to.layer}});
    }
    std::vector<int> parent(static_cast<std::size_t>(n), kRoot);
    std::vector<int> layer(static_cast<std::size_t>(n), 0);
    std::vector<int> incoming(static_cast<std::size_t>(n), 0);
    for (const auto& a : arcs) {
        if (!valid.count({{a.from.vertex, a.from.layer}, {a.to.vertex, a.to.layer}})) {
            throw Error(ErrorCode::D0Violated,
                        "arc into vertex " + std::to_string(ext(a.to.vertex)) + " is not in the layered DAG",
                        a.to.vertex >= 0 ? std::optional<int>(a.to.vertex) : std::nullopt);
        }
        const auto j = static_cast<std::size_t>(a.to.vertex);
        ++incoming[j];
        parent[j] = a.from.vertex;
        layer[j] = a.to.layer;
    }
    for (int j = 0; j < n; ++j) {
        if (incoming[static_cast<std::size_t>(j)] != 1) {
            throw Error(ErrorCode::D0Violated,
                        "vertex " + std::to_string(j + 1) + " has " + std::to_string(incoming[static_cast<std::size_t>(j)]) +
                            " incoming arcs",
                        j);
        }
    }
    // children grouped by layered tail
    std::map<std::pair<int, int>, VertexSet> kids;
    VertexSet top;
    for (const auto& a : arcs) {
        if (a.from.vertex == kRoot) {
            top.push_back(a.to.vertex);
        } else {
            kids[{a.from.vertex, a.from.layer}].push_back(a.to.vertex);
        }
    }
    for (const auto& [node, children] : kids) {
        const int i = node.first;
        if (!rep.is_chain(children)) {
            throw Error(ErrorCode::D1Violated,
                        "children of (" + std::to_string(i + 1) + "." + std::to_string(node.second) + ") are not a chain", i);
        }
        if (layer[static_cast<std::size_t>(i)] != node.second) {
            throw Error(ErrorCode::D1Violated,
                        "copy (" + std::to_string(i + 1) + "." + std::to_string(node.second) +
                            ") has children but no incoming arc",
                        i);
        }
    }
    const auto chains = chain_partition(rep, top);
    if (static_cast<int>(chains.size()) > c) {
        throw Error(ErrorCode::D2Violated,
                    "root children contain an antichain of size " + std::to_string(chains.size()) + " > " +
                        std::to_string(c),
                    chains[static_cast<std::size_t>(c)].front());
    }
    const Coloring coloring = decode_parents(rep, parent, c);

    StackPlan plan;
    plan.stacks.assign(static_cast<std::size_t>(coloring.num_colors), {});
    plan.stack_of.assign(static_cast<std::size_t>(n), 0);
    for (int v : rep.topological_order()) {
        const int s = coloring.colors[static_cast<std::size_t>(v)] - 1;
        plan.stacks[static_cast<std::size_t>(s)].push_back(v);
        plan.stack_of[static_cast<std::size_t>(v)] = s;
    }
    for (const auto& stack : plan.stacks) plan.heights.push_back(max_antichain(rep, stack));
    return plan;
}

bool check_plan(const IntervalRepresentation& rep, const CircleGraph& graph, const StackPlan& plan, int height) {
    const int n = rep.size();
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    if (plan.heights.size() != plan.stacks.size()) return false;
    for (std::size_t s = 0; s < plan.stacks.size(); ++s) {
        const auto& stack = plan.stacks[s];
        if (stack.empty()) return false;
        for (int v : stack) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]++) return false;
        }
        if (!graph.is_independent(stack)) return false;
        const int h = max_antichain(rep, stack);
        if (h != plan.heights[s] || h > height) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; });
}

StackPlan greedy_plan(const IntervalRepresentation& rep, const CircleGraph& graph, int height) {
    StackPlan plan;
    plan.stack_of.assign(static_cast<std::size_t>(rep.size()), -1);
    for (int v : rep.topological_order()) {
        std::size_t s = 0;
        for (; s < plan.stacks.size(); ++s) {
            auto& stack = plan.stacks[s];
            const bool clash = std::any_of(stack.begin(), stack.end(), [&](int u) { return graph.adjacent(u, v); });
            if (clash) continue;
            stack.push_back(v);
            if (max_antichain(rep, stack) <= height) break;
            stack.pop_back();
        }
        if (s == plan.stacks.size()) plan.stacks.push_back({v});
        plan.stack_of[static_cast<std::size_t>(v)] = static_cast<int>(s);
    }
    for (const auto& stack : plan.stacks) plan.heights.push_back(max_antichain(rep, stack));
    return plan;
}

} // namespace circol
