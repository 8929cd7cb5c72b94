#pragma once

#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace circol {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary, Integer };
enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };

// Structural role of a variable, e.g. {"x", {0, 3}} for the root arc into
// vertex 3 or {"y", {2, 7}} for dual point 7 of vertex 2. Indices use the
// external numbering: root 0, vertices 1..n, sweep points 1..2n.
struct VariableTag {
    std::string role;
    std::vector<int> index;
};

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    VarKind kind = VarKind::Continuous;
    VariableTag tag;
};

struct Term {
    int var = 0;
    double coef = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
};

class LpModel {
public:
    explicit LpModel(std::string formulation = {}) : formulation_(std::move(formulation)) {}

    // Throws Error{InvalidModel} on a duplicate name or lower > upper.
    int add_variable(std::string name, double lower, double upper, VarKind kind, VariableTag tag = {});
    // Throws Error{InvalidModel} if a term references an undeclared variable.
    int add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs);
    void set_objective(Sense sense, std::vector<Term> terms, double constant = 0.0);

    const std::string& formulation() const noexcept { return formulation_; }
    Sense sense() const noexcept { return sense_; }
    const std::vector<Term>& objective() const noexcept { return objective_; }
    double objective_constant() const noexcept { return objective_constant_; }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    int variable_count() const noexcept { return static_cast<int>(variables_.size()); }
    int constraint_count() const noexcept { return static_cast<int>(constraints_.size()); }
    const Variable& variable(int j) const { return variables_[static_cast<std::size_t>(j)]; }
    std::optional<int> find_variable(const std::string& name) const;

    void set_bounds(int j, double lower, double upper);
    bool has_integers() const;

    // Copy with every variable continuous: binaries keep [0,1], integers keep
    // their bounds.
    LpModel relaxed() const;

    // Objective value (including the constant) of a full assignment.
    double evaluate(const std::vector<double>& values) const;
    // Max violation over bounds and constraints.
    double max_violation(const std::vector<double>& values) const;

private:
    std::string formulation_;
    Sense sense_ = Sense::Minimize;
    std::vector<Term> objective_;
    double objective_constant_ = 0.0;
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, int> by_name_;
};

} // namespace circol
