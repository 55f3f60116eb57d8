#include "srrham/lp.hpp"

#include <string>

namespace srrham {

namespace {

// Dense simplex tableau. Row i holds B^{-1}A | B^{-1}b; `cost` holds the reduced
// costs of the current phase with the negated objective value in the last slot.
class Tableau {
public:
    Tableau(const LpProblem& problem, std::uint64_t pivot_limit) : pivot_limit_(pivot_limit), num_vars_(problem.num_vars) {
        const std::size_t m = problem.constraints.size();
        std::size_t slack_count = 0;
        std::size_t artificial_count = 0;
        for (const auto& c : problem.constraints) {
            const Relation rel = normalized_relation(c);
            if (rel != Relation::equal) ++slack_count;
            if (rel != Relation::less_equal) ++artificial_count;
        }
        first_artificial_ = num_vars_ + slack_count;
        cols_ = first_artificial_ + artificial_count;
        rows_.assign(m, std::vector<Rational>(cols_ + 1));
        basis_.assign(m, 0);

        std::size_t next_slack = num_vars_;
        std::size_t next_artificial = first_artificial_;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = problem.constraints[i];
            const bool flip = c.rhs < 0;
            const Relation rel = normalized_relation(c);
            auto& row = rows_[i];
            for (std::size_t j = 0; j < num_vars_; ++j) row[j] = flip ? Rational(-c.coefficients[j]) : c.coefficients[j];
            row[cols_] = flip ? Rational(-c.rhs) : c.rhs;
            if (rel == Relation::less_equal) {
                row[next_slack] = 1;
                basis_[i] = next_slack++;
            } else {
                if (rel == Relation::greater_equal) row[next_slack++] = -1;
                row[next_artificial] = 1;
                basis_[i] = next_artificial++;
            }
        }
    }

    // Returns false when the phase-1 optimum is positive.
    bool phase_one() {
        if (first_artificial_ == cols_) return true;
        std::vector<Rational> c(cols_);
        for (std::size_t j = first_artificial_; j < cols_; ++j) c[j] = -1;
        set_cost(c);
        run(cols_, /*stop_on_unbounded=*/false);
        if (cost_[cols_] != 0) return false;  // -value
        drive_out_artificials();
        return true;
    }

    // Returns false when unbounded.
    bool phase_two(const std::vector<Rational>& objective) {
        std::vector<Rational> c(cols_);
        for (std::size_t j = 0; j < num_vars_; ++j) c[j] = objective[j];
        set_cost(c);
        return run(first_artificial_, /*stop_on_unbounded=*/true);
    }

    Rational objective_value() const { return -cost_[cols_]; }

    std::vector<Rational> point() const {
        std::vector<Rational> x(num_vars_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < num_vars_) x[basis_[i]] = rows_[i][cols_];
        }
        return x;
    }

    std::uint64_t pivots() const { return pivots_; }

private:
    static Relation normalized_relation(const LpConstraint& c) {
        if (c.rhs >= 0 || c.relation == Relation::equal) return c.relation;
        return c.relation == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
    }

    void set_cost(const std::vector<Rational>& c) {
        cost_.assign(cols_ + 1, Rational(0));
        for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (rows_[i][j] != 0) cost_[j] -= cb * rows_[i][j];
            }
        }
    }

    // Bland's rule: lowest-index improving column, ties in the ratio test go to
    // the lowest-index basic variable. Columns >= allowed_cols never enter.
    bool run(std::size_t allowed_cols, bool stop_on_unbounded) {
        while (true) {
            std::size_t entering = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (cost_[j] > 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == allowed_cols) return true;

            std::size_t leaving = rows_.size();
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][entering];
                if (a <= 0) continue;
                Rational ratio = rows_[i][cols_] / a;
                if (leaving == rows_.size() || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leaving == rows_.size()) {
                if (stop_on_unbounded) return false;
                throw Error("phase one reported an unbounded ray");
            }
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        if (++pivots_ > pivot_limit_) {
            throw ResourceLimitError("LP pivot limit of " + std::to_string(pivot_limit_) + " exceeded");
        }
        auto& prow = rows_[r];
        const Rational inv = 1 / prow[c];
        std::vector<std::size_t> nonzero;
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (prow[j] != 0) {
                prow[j] *= inv;
                nonzero.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c] == 0) return;
            const Rational factor = row[c];
            for (std::size_t j : nonzero) row[j] -= factor * prow[j];
        };
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i != r) eliminate(rows_[i]);
        }
        eliminate(cost_);
        basis_[r] = c;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            std::size_t j = 0;
            while (j < first_artificial_ && rows_[i][j] == 0) ++j;
            if (j < first_artificial_) {
                pivot(i, j);
                ++i;
            } else {
                // redundant equality row
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::uint64_t pivot_limit_;
    std::uint64_t pivots_ = 0;
    std::size_t num_vars_;
    std::size_t first_artificial_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> cost_;
};

}  // namespace

void LpProblem::validate() const {
    if (objective.size() != num_vars) throw Error("objective has wrong length");
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].coefficients.size() != num_vars) {
            throw Error("constraint " + std::to_string(i + 1) + " has wrong length");
        }
    }
}

LpOutcome solve(const LpProblem& problem, const SolveOptions& options) {
    problem.validate();
    Tableau t(problem, options.pivot_limit);
    LpOutcome out;
    if (!t.phase_one()) {
        out.status = LpStatus::infeasible;
    } else if (!t.phase_two(problem.objective)) {
        out.status = LpStatus::unbounded;
    } else {
        out.status = LpStatus::optimal;
        out.value = t.objective_value();
        out.solution = t.point();
    }
    out.pivots = t.pivots();
    return out;
}

Feasibility check_feasible(const LpProblem& problem, const SolveOptions& options) {
    problem.validate();
    Tableau t(problem, options.pivot_limit);
    if (!t.phase_one()) return {false, std::nullopt};
    return {true, t.point()};
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw Error("dot product of vectors with different lengths");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
    }
    return acc;
}

bool satisfies_constraints(const LpProblem& problem, const std::vector<Rational>& x) {
    if (x.size() != problem.num_vars) return false;
    for (const auto& v : x) {
        if (v < 0) return false;
    }
    for (const auto& c : problem.constraints) {
        const Rational lhs = dot(c.coefficients, x);
        switch (c.relation) {
            case Relation::less_equal: if (lhs > c.rhs) return false; break;
            case Relation::equal: if (lhs != c.rhs) return false; break;
            case Relation::greater_equal: if (lhs < c.rhs) return false; break;
        }
    }
    return true;
}

}  // namespace srrham
