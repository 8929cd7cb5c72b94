#include "circol/lp_model.hpp"

#include <algorithm>
#include <cmath>

#include "circol/error.hpp"

namespace circol {

int LpModel::add_variable(std::string name, double lower, double upper, VarKind kind, VariableTag tag) {
    if (lower > upper) {
        throw Error(ErrorCode::InvalidModel, "variable " + name + " has lower bound above upper bound");
    }
    const int id = variable_count();
    auto [it, inserted] = by_name_.emplace(name, id);
    if (!inserted) {
        throw Error(ErrorCode::InvalidModel, "duplicate variable name " + name);
    }
    variables_.push_back({std::move(name), lower, upper, kind, std::move(tag)});
    return id;
}

int LpModel::add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs) {
    for (const Term& t : terms) {
        if (t.var < 0 || t.var >= variable_count()) {
            throw Error(ErrorCode::InvalidModel, "constraint " + name + " references an undeclared variable");
        }
    }
    constraints_.push_back({std::move(name), std::move(terms), relation, rhs});
    return constraint_count() - 1;
}

void LpModel::set_objective(Sense sense, std::vector<Term> terms, double constant) {
    for (const Term& t : terms) {
        if (t.var < 0 || t.var >= variable_count()) {
            throw Error(ErrorCode::InvalidModel, "objective references an undeclared variable");
        }
    }
    sense_ = sense;
    objective_ = std::move(terms);
    objective_constant_ = constant;
}

std::optional<int> LpModel::find_variable(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

void LpModel::set_bounds(int j, double lower, double upper) {
    auto& v = variables_[static_cast<std::size_t>(j)];
    v.lower = lower;
    v.upper = upper;
}

bool LpModel::has_integers() const {
    return std::any_of(variables_.begin(), variables_.end(),
                       [](const Variable& v) { return v.kind != VarKind::Continuous; });
}

LpModel LpModel::relaxed() const {
    LpModel copy = *this;
    for (auto& v : copy.variables_) {
        if (v.kind == VarKind::Binary) {
            v.lower = std::max(v.lower, 0.0);
            v.upper = std::min(v.upper, 1.0);
        }
        v.kind = VarKind::Continuous;
    }
    return copy;
}

double LpModel::evaluate(const std::vector<double>& values) const {
    double sum = objective_constant_;
    for (const Term& t : objective_) sum += t.coef * values[static_cast<std::size_t>(t.var)];
    return sum;
}

double LpModel::max_violation(const std::vector<double>& values) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        worst = std::max(worst, variables_[j].lower - values[j]);
        worst = std::max(worst, values[j] - variables_[j].upper);
    }
    for (const auto& row : constraints_) {
        double lhs = 0.0;
        for (const Term& t : row.terms) lhs += t.coef * values[static_cast<std::size_t>(t.var)];
        switch (row.relation) {
        case Relation::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
        case Relation::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
        case Relation::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

} // namespace circol
