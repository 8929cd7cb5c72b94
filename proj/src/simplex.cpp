#include "circol/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "circol/error.hpp"

namespace circol {

SimplexOptions SimplexOptions::from_environment() {
    SimplexOptions opt;
    if (const char* env = std::getenv("CIRCOL_TOLERANCE")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end != env && tol > 0.0) {
            opt.feasibility_tol = tol;
            opt.optimality_tol = tol;
        }
    }
    return opt;
}

SimplexSolver::SimplexSolver(const LpModel& model, SimplexOptions options)
    : model_(model), opt_(options) {}

namespace {

struct StdRow {
    std::vector<std::pair<std::size_t, double>> coefs;
    Relation relation;
    double rhs;
};

} // namespace

void SimplexSolver::build() {
    const auto& vars = model_.variables();
    const std::size_t nv = vars.size();

    // Upper bounds implied by an equality row with positive coefficients over
    // nonnegative variables need no explicit row.
    std::vector<double> implied(nv, kInf);
    for (const auto& row : model_.constraints()) {
        if (row.relation != Relation::Equal || row.rhs < 0.0) continue;
        bool ok = !row.terms.empty();
        for (const Term& t : row.terms) {
            if (t.coef <= 0.0 || vars[static_cast<std::size_t>(t.var)].lower < 0.0) ok = false;
        }
        if (!ok) continue;
        for (const Term& t : row.terms) {
            auto& cap = implied[static_cast<std::size_t>(t.var)];
            cap = std::min(cap, row.rhs / t.coef);
        }
    }

    map_.assign(nv, {});
    std::vector<StdRow> bound_rows;
    std::size_t col = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        const Variable& v = vars[j];
        ColumnMap& m = map_[j];
        const bool lo = std::isfinite(v.lower);
        const bool up = std::isfinite(v.upper);
        if (lo && up && v.upper - v.lower <= opt_.feasibility_tol) {
            m.offset = v.lower;
            continue;
        }
        if (lo) {
            m.pos = static_cast<int>(col++);
            m.offset = v.lower;
            if (up && implied[j] > v.upper + opt_.feasibility_tol) {
                bound_rows.push_back({{{static_cast<std::size_t>(m.pos), 1.0}}, Relation::LessEqual, v.upper - v.lower});
            }
        } else if (up) {
            m.pos = static_cast<int>(col++);
            m.offset = v.upper;
            m.sign = -1.0;
        } else {
            m.pos = static_cast<int>(col++);
            m.neg = static_cast<int>(col++);
        }
    }
    structural_ = col;

    // Minimization costs on structural columns.
    const double sense = model_.sense() == Sense::Maximize ? -1.0 : 1.0;
    std::vector<double> cost(structural_, 0.0);
    cost_offset_ = sense * model_.objective_constant();
    for (const Term& t : model_.objective()) {
        const ColumnMap& m = map_[static_cast<std::size_t>(t.var)];
        const double c = sense * t.coef;
        cost_offset_ += c * m.offset;
        if (m.pos >= 0) cost[static_cast<std::size_t>(m.pos)] += c * m.sign;
        if (m.neg >= 0) cost[static_cast<std::size_t>(m.neg)] -= c;
    }

    std::vector<StdRow> rows;
    rows.reserve(model_.constraints().size() + bound_rows.size());
    for (const auto& row : model_.constraints()) {
        StdRow sr{{}, row.relation, row.rhs};
        for (const Term& t : row.terms) {
            const ColumnMap& m = map_[static_cast<std::size_t>(t.var)];
            sr.rhs -= t.coef * m.offset;
            if (m.pos >= 0) sr.coefs.emplace_back(static_cast<std::size_t>(m.pos), t.coef * m.sign);
            if (m.neg >= 0) sr.coefs.emplace_back(static_cast<std::size_t>(m.neg), -t.coef);
        }
        rows.push_back(std::move(sr));
    }
    model_rows_ = rows.size();
    for (auto& br : bound_rows) rows.push_back(std::move(br));

    rows_ = rows.size();
    row_sign_.assign(rows_, 1.0);
    std::size_t extra = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        auto& sr = rows[r];
        if (sr.rhs < 0.0) {
            row_sign_[r] = -1.0;
            sr.rhs = -sr.rhs;
            for (auto& [c, a] : sr.coefs) a = -a;
            if (sr.relation == Relation::LessEqual) {
                sr.relation = Relation::GreaterEqual;
            } else if (sr.relation == Relation::GreaterEqual) {
                sr.relation = Relation::LessEqual;
            }
        }
        extra += sr.relation == Relation::GreaterEqual ? 2 : 1;
    }
    cols_ = structural_ + extra;
    width_ = cols_ + 1;
    tab_.assign((rows_ + 1) * width_, 0.0);
    cost_.assign(cols_, 0.0);
    std::copy(cost.begin(), cost.end(), cost_.begin());
    artificial_.assign(cols_, 0);
    basis_.assign(rows_, 0);
    unit_col_.assign(rows_, 0);

    std::size_t next = structural_;
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto& sr = rows[r];
        for (const auto& [c, a] : sr.coefs) at(r, c) += a;
        at(r, cols_) = sr.rhs;
        if (sr.relation == Relation::LessEqual) {
            at(r, next) = 1.0;
            basis_[r] = unit_col_[r] = next++;
            continue;
        }
        if (sr.relation == Relation::GreaterEqual) at(r, next++) = -1.0;
        at(r, next) = 1.0;
        artificial_[next] = 1;
        basis_[r] = unit_col_[r] = next++;
    }
}

void SimplexSolver::load_objective(Phase phase) {
    const std::size_t z = rows_;
    for (std::size_t c = 0; c <= cols_; ++c) at(z, c) = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        at(z, c) = phase == Phase::One ? (artificial_[c] ? 1.0 : 0.0) : (artificial_[c] ? 0.0 : cost_[c]);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        const double cb = at(z, basis_[r]);
        if (cb == 0.0) continue;
        for (std::size_t c = 0; c <= cols_; ++c) at(z, c) -= cb * at(r, c);
    }
}

void SimplexSolver::pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / at(row, col);
    std::vector<std::size_t> nz;
    nz.reserve(width_);
    for (std::size_t c = 0; c < width_; ++c) {
        double& v = at(row, c);
        if (v == 0.0) continue;
        v *= inv;
        nz.push_back(c);
    }
    at(row, col) = 1.0;
    const double* prow = &tab_[row * width_];
    for (std::size_t r = 0; r <= rows_; ++r) {
        if (r == row) continue;
        double* target = &tab_[r * width_];
        const double factor = target[col];
        if (factor == 0.0) continue;
        for (std::size_t c : nz) target[c] -= factor * prow[c];
        target[col] = 0.0;
    }
    basis_[row] = col;
}

int SimplexSolver::choose_entering(bool bland) {
    const std::size_t z = rows_;
    const double tol = opt_.optimality_tol;
    if (bland) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (!artificial_[c] && at(z, c) < -tol) return static_cast<int>(c);
        }
        return -1;
    }
    // Partial pricing: scan blocks round-robin and take the most negative
    // reduced cost in the first block that has a candidate.
    const std::size_t block = std::max<std::size_t>(64, cols_ / 8);
    const std::size_t blocks = (cols_ + block - 1) / block;
    for (std::size_t k = 0; k < blocks; ++k) {
        const std::size_t b = (next_block_ + k) % blocks;
        const std::size_t begin = b * block;
        const std::size_t end = std::min(cols_, begin + block);
        int best = -1;
        double best_val = -tol;
        for (std::size_t c = begin; c < end; ++c) {
            if (artificial_[c]) continue;
            const double d = at(z, c);
            if (d < best_val) {
                best_val = d;
                best = static_cast<int>(c);
            }
        }
        if (best >= 0) {
            next_block_ = (b + 1) % blocks;
            return best;
        }
    }
    return -1;
}

bool SimplexSolver::iterate(Phase phase, std::size_t& iterations) {
    const std::size_t limit = opt_.max_iterations ? opt_.max_iterations : 50 * (rows_ + cols_) + 10000;
    const std::size_t degenerate_limit = 3 * (rows_ + cols_);
    std::size_t degenerate = 0;
    bool bland = false;
    next_block_ = 0;
    for (;;) {
        const int entering = choose_entering(bland);
        if (entering < 0) return true;
        const auto col = static_cast<std::size_t>(entering);

        std::size_t leave = rows_;
        double best_ratio = kInf;
        double best_pivot = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            const double a = at(r, col);
            if (a <= opt_.pivot_tol) continue;
            const double ratio = std::max(0.0, at(r, cols_)) / a;
            if (leave == rows_ || ratio < best_ratio - 1e-12) {
                leave = r;
                best_ratio = ratio;
                best_pivot = a;
            } else if (ratio <= best_ratio + 1e-12) {
                const bool better = bland ? basis_[r] < basis_[leave] : a > best_pivot;
                if (better) {
                    leave = r;
                    best_ratio = std::min(best_ratio, ratio);
                    best_pivot = a;
                }
            }
        }
        if (leave == rows_) {
            if (phase == Phase::One) {
                throw Error(ErrorCode::NumericalFailure, "phase one reported an unbounded ray");
            }
            return false;
        }
        if (best_ratio <= opt_.feasibility_tol) {
            if (++degenerate > degenerate_limit) bland = true;
        } else {
            degenerate = 0;
        }
        pivot(leave, col);
        if (++iterations > limit) {
            throw Error(ErrorCode::NumericalFailure,
                        "simplex iteration limit reached after " + std::to_string(iterations) + " pivots");
        }
    }
}

LpSolution SimplexSolver::solve() {
    if (used_) {
        throw Error(ErrorCode::InvalidModel, "a SimplexSolver instance solves exactly one model");
    }
    used_ = true;
    build();

    LpSolution sol;
    const bool needs_phase_one =
        std::any_of(basis_.begin(), basis_.end(), [this](std::size_t c) { return artificial_[c] != 0; });
    if (needs_phase_one) {
        load_objective(Phase::One);
        iterate(Phase::One, sol.iterations);
        double max_rhs = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) max_rhs = std::max(max_rhs, std::abs(at(r, cols_)));
        const double infeasibility = -at(rows_, cols_);
        if (infeasibility > std::max(1e-7, opt_.feasibility_tol) * max_rhs) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive remaining artificials out of the basis where possible.
        for (std::size_t r = 0; r < rows_; ++r) {
            if (!artificial_[basis_[r]]) continue;
            std::size_t best = cols_;
            double best_abs = opt_.pivot_tol * 100.0;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (artificial_[c]) continue;
                const double a = std::abs(at(r, c));
                if (a > best_abs) {
                    best_abs = a;
                    best = c;
                }
            }
            if (best < cols_) pivot(r, best);
        }
    }

    load_objective(Phase::Two);
    if (!iterate(Phase::Two, sol.iterations)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    std::vector<double> xs(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) xs[basis_[r]] = at(r, cols_);
    const auto& vars = model_.variables();
    sol.primal.resize(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const ColumnMap& m = map_[j];
        double value = m.offset;
        if (m.pos >= 0) value += m.sign * xs[static_cast<std::size_t>(m.pos)];
        if (m.neg >= 0) value -= xs[static_cast<std::size_t>(m.neg)];
        sol.primal[j] = value;
    }
    sol.objective = model_.evaluate(sol.primal);

    const double sense = model_.sense() == Sense::Maximize ? -1.0 : 1.0;
    sol.dual.resize(model_rows_);
    for (std::size_t r = 0; r < model_rows_; ++r) {
        const double y = -at(rows_, unit_col_[r]);
        sol.dual[r] = sense * row_sign_[r] * y;
    }
    sol.status = LpStatus::Optimal;
    return sol;
}

LpSolution solve_lp(const LpModel& model, const SimplexOptions& options) {
    SimplexSolver solver(model, options);
    return solver.solve();
}

bool is_integral(const LpModel& model, const std::vector<double>& values, double tol) {
    for (int j = 0; j < model.variable_count(); ++j) {
        if (model.variable(j).kind == VarKind::Continuous) continue;
        const double v = values[static_cast<std::size_t>(j)];
        if (std::abs(v - std::round(v)) > tol) return false;
    }
    return true;
}

} // namespace circol
