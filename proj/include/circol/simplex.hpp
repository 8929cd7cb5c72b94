#pragma once

#include <cstddef>
#include <vector>

#include "circol/lp_model.hpp"

namespace circol {

struct SimplexOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double integrality_tol = 1e-6;
    double pivot_tol = 1e-10;
    // 0 picks a limit from the problem size.
    std::size_t max_iterations = 0;

    // Reads CIRCOL_TOLERANCE (feasibility and optimality) when set.
    static SimplexOptions from_environment();
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> primal; // per model variable
    // Shadow price per model constraint: d(objective)/d(rhs).
    std::vector<double> dual;
    std::size_t iterations = 0;
};

// Dense two-phase tableau simplex. Integrality markers are ignored; relax
// the model first if it has any. A solver instance solves one model once.
class SimplexSolver {
public:
    SimplexSolver(const LpModel& model, SimplexOptions options = {});
    SimplexSolver(const SimplexSolver&) = delete;
    SimplexSolver& operator=(const SimplexSolver&) = delete;

    // Throws Error{NumericalFailure} when the iteration limit is exhausted.
    LpSolution solve();

private:
    struct ColumnMap {
        int pos = -1;      // column carrying +x'
        int neg = -1;      // column carrying -x' (free variables)
        double offset = 0.0;
        double sign = 1.0;
    };

    enum class Phase { One, Two };

    void build();
    bool iterate(Phase phase, std::size_t& iterations);
    void pivot(std::size_t row, std::size_t col);
    int choose_entering(bool bland);
    void load_objective(Phase phase);
    double& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }
    double at(std::size_t r, std::size_t c) const { return tab_[r * width_ + c]; }

    const LpModel& model_;
    SimplexOptions opt_;
    bool used_ = false;

    std::vector<ColumnMap> map_;
    std::size_t structural_ = 0; // columns for model variables
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;       // all columns, rhs excluded
    std::size_t width_ = 0;      // cols_ + 1
    std::vector<double> tab_;    // (rows_ + 1) x width_, last row is the objective
    std::vector<double> cost_;   // phase-two costs per column (minimization form)
    std::vector<char> artificial_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> unit_col_;   // column that held e_r initially
    std::vector<double> row_sign_;        // -1 where the row was negated
    std::size_t model_rows_ = 0;
    double cost_offset_ = 0.0;
    std::size_t next_block_ = 0;
};

LpSolution solve_lp(const LpModel& model, const SimplexOptions& options = {});

// True when every primal value of an integer/binary model variable is within
// the integrality tolerance of an integer.
bool is_integral(const LpModel& model, const std::vector<double>& values, double tol);

} // namespace circol
