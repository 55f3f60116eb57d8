#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "srrham/exactmath.hpp"

namespace srrham {

enum class Relation { less_equal, equal, greater_equal };

struct LpConstraint {
    std::vector<Rational> coefficients;
    Relation relation = Relation::less_equal;
    Rational rhs;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<LpConstraint> constraints;

    /// Throws Error if any coefficient list has the wrong length.
    void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    Rational value;                 // when optimal
    std::vector<Rational> solution;  // when optimal
    std::uint64_t pivots = 0;
};

inline constexpr std::uint64_t kDefaultPivotLimit = 1'000'000;

struct SolveOptions {
    std::uint64_t pivot_limit = kDefaultPivotLimit;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
/// Throws ResourceLimitError when the pivot limit is exceeded.
LpOutcome solve(const LpProblem& problem, const SolveOptions& options = {});

struct Feasibility {
    bool feasible = false;
    std::optional<std::vector<Rational>> point;
};

/// Phase 1 only.
Feasibility check_feasible(const LpProblem& problem, const SolveOptions& options = {});

/// Exact check that x >= 0 satisfies every constraint.
bool satisfies_constraints(const LpProblem& problem, const std::vector<Rational>& x);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace srrham
