#include "circol/lp_models.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "circol/greedy.hpp"

namespace circol {

namespace {

int ext(int node) { return node == kRoot ? 0 : node + 1; }

std::string arc_name(int from, int to) { return "x_" + std::to_string(ext(from)) + "_" + std::to_string(ext(to)); }

VarKind binary_or(bool relax) { return relax ? VarKind::Continuous : VarKind::Binary; }

// y-variables of one DLC block, one per maximal sweep row of R_V(node).
struct DualBlock {
    std::vector<CliqueMatrix::Row> rows;
    std::vector<int> vars;
};

DualBlock add_dual_block(LpModel& m, int node, const ContainmentDag& dag, const CliqueMatrix& cm) {
    DualBlock block{cm.maximal_rows(dag.children(node)), {}};
    for (const auto& row : block.rows) {
        block.vars.push_back(m.add_variable("y_" + std::to_string(ext(node)) + "_" + std::to_string(row.point), 0.0,
                                            kInf, VarKind::Continuous, {"y", {ext(node), row.point}}));
    }
    return block;
}

// Σ_{p ∈ I(child)} y_p − ell_child ≥ 0
void add_cover_row(LpModel& m, int node, int child, const DualBlock& block, int ell_var) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < block.rows.size(); ++k) {
        const auto& verts = block.rows[k].vertices;
        if (std::binary_search(verts.begin(), verts.end(), child)) terms.push_back({block.vars[k], 1.0});
    }
    terms.push_back({ell_var, -1.0});
    m.add_constraint("cover_" + std::to_string(ext(node)) + "_" + std::to_string(ext(child)), std::move(terms),
                     Relation::GreaterEqual, 0.0);
}

void require_branching(int node, const ContainmentDag& dag) {
    if (node != kRoot && (node < 0 || node >= dag.size() || dag.children(node).empty())) {
        throw Error(ErrorCode::VertexNotBranching,
                    "vertex " + std::to_string(ext(node)) + " contains no other interval", node);
    }
}

} // namespace

LpModel build_cg(const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm, bool relax) {
    const int n = rep.size();
    LpModel m(relax ? "CG-LR" : "CG");
    std::map<std::pair<int, int>, int> var_of;
    for (const Arc& a : dag.arcs()) {
        var_of[{a.from, a.to}] = m.add_variable(arc_name(a.from, a.to), 0.0, 1.0, binary_or(relax),
                                                {"x", {ext(a.from), ext(a.to)}});
    }
    const int c = m.add_variable("c", 0.0, kInf, relax ? VarKind::Continuous : VarKind::Integer, {"c", {}});
    m.set_objective(Sense::Minimize, {{c, 1.0}});

    for (const auto& row : cm.maximal_rows(dag.children(kRoot))) {
        std::vector<Term> terms;
        for (int j : row.vertices) terms.push_back({var_of.at({kRoot, j}), 1.0});
        terms.push_back({c, -1.0});
        m.add_constraint("root_p" + std::to_string(row.point), std::move(terms), Relation::LessEqual, 0.0);
    }
    for (int i : dag.branching()) {
        for (const auto& row : cm.maximal_rows(dag.children(i))) {
            std::vector<Term> terms;
            for (int j : row.vertices) terms.push_back({var_of.at({i, j}), 1.0});
            m.add_constraint("chain_" + std::to_string(ext(i)) + "_p" + std::to_string(row.point), std::move(terms),
                             Relation::LessEqual, 1.0);
        }
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Term> terms{{var_of.at({kRoot, j}), 1.0}};
        for (int i : dag.parents(j)) terms.push_back({var_of.at({i, j}), 1.0});
        m.add_constraint("assign_" + std::to_string(ext(j)), std::move(terms), Relation::Equal, 1.0);
    }
    return m;
}

LpModel build_lc(int node, const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                 std::span<const double> values) {
    (void)rep;
    require_branching(node, dag);
    LpModel m("LC");
    const auto& kids = dag.children(node);
    std::map<int, int> var_of;
    std::vector<Term> objective;
    for (int j : kids) {
        const int v = m.add_variable(arc_name(node, j), 0.0, kInf, VarKind::Continuous, {"x", {ext(node), ext(j)}});
        var_of[j] = v;
        objective.push_back({v, values[static_cast<std::size_t>(j)]});
    }
    m.set_objective(Sense::Maximize, std::move(objective));
    for (const auto& row : cm.maximal_rows(kids)) {
        std::vector<Term> terms;
        for (int j : row.vertices) terms.push_back({var_of.at(j), 1.0});
        m.add_constraint("chain_p" + std::to_string(row.point), std::move(terms), Relation::LessEqual, 1.0);
    }
    return m;
}

LpModel build_dlc(int node, const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                  std::span<const double> values) {
    (void)rep;
    require_branching(node, dag);
    LpModel m("DLC");
    const DualBlock block = add_dual_block(m, node, dag, cm);
    std::vector<Term> objective;
    for (int v : block.vars) objective.push_back({v, 1.0});
    m.set_objective(Sense::Minimize, std::move(objective));
    for (int j : dag.children(node)) {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < block.rows.size(); ++k) {
            const auto& verts = block.rows[k].vertices;
            if (std::binary_search(verts.begin(), verts.end(), j)) terms.push_back({block.vars[k], 1.0});
        }
        m.add_constraint("cover_" + std::to_string(ext(j)), std::move(terms), Relation::GreaterEqual,
                         values[static_cast<std::size_t>(j)]);
    }
    return m;
}

LpModel build_isd(const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm,
                  std::span<const double> weights) {
    const int n = rep.size();
    LpModel m("ISD");
    std::vector<int> ell(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ell[static_cast<std::size_t>(i)] =
            m.add_variable("ell_" + std::to_string(ext(i)), -kInf, kInf, VarKind::Continuous, {"ell", {ext(i)}});
    }
    const DualBlock root = add_dual_block(m, kRoot, dag, cm);
    std::map<int, DualBlock> blocks;
    for (int i : dag.branching()) blocks.emplace(i, add_dual_block(m, i, dag, cm));

    std::vector<Term> objective;
    for (int v : root.vars) objective.push_back({v, 1.0});
    m.set_objective(Sense::Minimize, std::move(objective));

    for (int i = 0; i < n; ++i) {
        std::vector<Term> terms{{ell[static_cast<std::size_t>(i)], 1.0}};
        if (auto it = blocks.find(i); it != blocks.end()) {
            for (int v : it->second.vars) terms.push_back({v, -1.0});
        }
        m.add_constraint("def_" + std::to_string(ext(i)), std::move(terms), Relation::Equal,
                         weights[static_cast<std::size_t>(i)]);
    }
    for (const Arc& a : dag.arcs()) {
        const DualBlock& block = a.from == kRoot ? root : blocks.at(a.from);
        add_cover_row(m, a.from, a.to, block, ell[static_cast<std::size_t>(a.to)]);
    }
    return m;
}

LpModel build_fcp(const IntervalRepresentation& rep, const ContainmentDag& dag, const CliqueMatrix& cm) {
    const int n = rep.size();
    LpModel m("FCP");
    std::vector<int> ell(static_cast<std::size_t>(n));
    std::vector<Term> objective;
    for (int i = 0; i < n; ++i) {
        ell[static_cast<std::size_t>(i)] =
            m.add_variable("ell_" + std::to_string(ext(i)), -kInf, kInf, VarKind::Continuous, {"ell", {ext(i)}});
        objective.push_back({ell[static_cast<std::size_t>(i)], 1.0});
    }
    const DualBlock root = add_dual_block(m, kRoot, dag, cm);
    std::map<int, DualBlock> blocks;
    for (int i : dag.branching()) {
        auto [it, _] = blocks.emplace(i, add_dual_block(m, i, dag, cm));
        for (int v : it->second.vars) objective.push_back({v, -1.0});
    }
    m.set_objective(Sense::Maximize, std::move(objective));

    std::vector<Term> budget;
    for (int v : root.vars) budget.push_back({v, 1.0});
    m.add_constraint("root_budget", std::move(budget), Relation::LessEqual, 1.0);
    for (const Arc& a : dag.arcs()) {
        const DualBlock& block = a.from == kRoot ? root : blocks.at(a.from);
        add_cover_row(m, a.from, a.to, block, ell[static_cast<std::size_t>(a.to)]);
    }
    return m;
}

LpModel build_cl(const CircleGraph& graph, std::optional<int> colors) {
    const int n = graph.size();
    const int slots = colors ? *colors : first_fit(graph).num_colors;
    LpModel m("CL");
    auto x_name = [](int i, int c) { return "x_" + std::to_string(i + 1) + "_" + std::to_string(c); };
    std::vector<std::vector<int>> x(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(slots)));
    for (int i = 0; i < n; ++i) {
        for (int c = 1; c <= slots; ++c) {
            x[static_cast<std::size_t>(i)][static_cast<std::size_t>(c - 1)] =
                m.add_variable(x_name(i, c), 0.0, 1.0, VarKind::Binary, {"x", {i + 1, c}});
        }
    }
    std::vector<int> y;
    std::vector<Term> objective;
    for (int c = 1; c <= slots; ++c) {
        y.push_back(m.add_variable("y_" + std::to_string(c), 0.0, 1.0, VarKind::Binary, {"y", {c}}));
        objective.push_back({y.back(), 1.0});
    }
    m.set_objective(Sense::Minimize, std::move(objective));
    auto xv = [&](int i, int c) { return x[static_cast<std::size_t>(i)][static_cast<std::size_t>(c - 1)]; };
    for (int i = 0; i < n; ++i) {
        for (int c = 1; c <= slots; ++c) {
            m.add_constraint("use_" + std::to_string(i + 1) + "_" + std::to_string(c),
                             {{xv(i, c), 1.0}, {y[static_cast<std::size_t>(c - 1)], -1.0}}, Relation::LessEqual, 0.0);
        }
    }
    for (int c = 1; c <= slots; ++c) {
        for (const Edge& e : graph.edges()) {
            m.add_constraint("edge_" + std::to_string(e.u + 1) + "_" + std::to_string(e.v + 1) + "_" + std::to_string(c),
                             {{xv(e.u, c), 1.0}, {xv(e.v, c), 1.0}}, Relation::LessEqual, 1.0);
        }
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Term> terms;
        for (int c = 1; c <= slots; ++c) terms.push_back({xv(i, c), 1.0});
        m.add_constraint("cover_" + std::to_string(i + 1), std::move(terms), Relation::GreaterEqual, 1.0);
    }
    return m;
}

std::vector<int> degree_order(const CircleGraph& graph) {
    std::vector<int> order(static_cast<std::size_t>(graph.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return graph.degree(a) > graph.degree(b); });
    return order;
}

LpModel build_as(const CircleGraph& graph) {
    const int n = graph.size();
    const auto order = degree_order(graph);
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

    LpModel m("AS");
    std::vector<int> x(static_cast<std::size_t>(n * n));
    auto xv = [&](int i, int j) { return x[static_cast<std::size_t>(i * n + j)]; };
    // Variables follow the degree ranking; names keep the original IDs.
    for (int a : order) {
        for (int b : order) {
            x[static_cast<std::size_t>(a * n + b)] =
                m.add_variable("x_" + std::to_string(a + 1) + "_" + std::to_string(b + 1), 0.0, 1.0, VarKind::Binary,
                               {"x", {a + 1, b + 1}});
        }
    }
    std::vector<Term> objective;
    for (int i : order) objective.push_back({xv(i, i), 1.0});
    m.set_objective(Sense::Minimize, std::move(objective));

    auto id = [](int a, int b) { return std::to_string(a + 1) + "_" + std::to_string(b + 1); };
    for (const Edge& e : graph.edges()) {
        m.add_constraint("edge_" + id(e.u, e.v) + "_a", {{xv(e.u, e.v), 1.0}}, Relation::Equal, 0.0);
        m.add_constraint("edge_" + id(e.u, e.v) + "_b", {{xv(e.v, e.u), 1.0}}, Relation::Equal, 0.0);
    }
    // x_ji = 0 whenever i ranks before j
    for (int ri = 0; ri < n; ++ri) {
        for (int rj = ri + 1; rj < n; ++rj) {
            const int i = order[static_cast<std::size_t>(ri)];
            const int j = order[static_cast<std::size_t>(rj)];
            m.add_constraint("order_" + id(j, i), {{xv(j, i), 1.0}}, Relation::Equal, 0.0);
        }
    }
    for (int i : order) {
        for (const Edge& e : graph.edges()) {
            if (e.u == i || e.v == i) continue;
            m.add_constraint("tri_" + std::to_string(i + 1) + "_" + id(e.u, e.v),
                             {{xv(i, e.u), 1.0}, {xv(i, e.v), 1.0}, {xv(i, i), -1.0}}, Relation::LessEqual, 0.0);
        }
    }
    for (int j : order) {
        std::vector<Term> terms;
        for (int i : order) terms.push_back({xv(i, j), 1.0});
        m.add_constraint("assign_" + std::to_string(j + 1), std::move(terms), Relation::Equal, 1.0);
    }
    for (int i : order) {
        for (int j : order) {
            if (i == j) continue;
            m.add_constraint("rep_" + id(i, j), {{xv(i, j), 1.0}, {xv(i, i), -1.0}}, Relation::LessEqual, 0.0);
        }
    }
    return m;
}

std::vector<int> parents_from_cg(const LpModel& model, const std::vector<double>& values, int n) {
    std::vector<int> parent(static_cast<std::size_t>(n), kRoot - 1);
    for (int v = 0; v < model.variable_count(); ++v) {
        const auto& tag = model.variable(v).tag;
        if (tag.role != "x" || tag.index.size() != 2 || values[static_cast<std::size_t>(v)] <= 0.5) continue;
        parent[static_cast<std::size_t>(tag.index[1] - 1)] = tag.index[0] == 0 ? kRoot : tag.index[0] - 1;
    }
    for (int j = 0; j < n; ++j) {
        if (parent[static_cast<std::size_t>(j)] == kRoot - 1) {
            throw Error(ErrorCode::NotArborescence, "no selected arc enters vertex " + std::to_string(j + 1), j);
        }
    }
    return parent;
}

} // namespace circol
