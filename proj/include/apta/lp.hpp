// ============================================================================
// lp.hpp — exact rational linear programming (two-phase simplex, Bland's rule)
// ============================================================================
//
// All variables are implicitly constrained to be nonnegative, which matches
// every use in this project: probabilities, transportation weights and
// correspondence entries. Bland's rule guarantees termination; everything is
// exact, so feasibility answers are decisions, not approximations.

#pragma once

#include <optional>
#include <vector>

#include "apta/linalg.hpp"

namespace apta::lp {

enum class Rel { Le, Ge, Eq };

struct Row {
    QVector coefs;
    Rel rel;
    Rational rhs;
};

struct Problem {
    int num_vars = 0;       // x_0..x_{n-1}, all >= 0
    std::vector<Row> rows;
    QVector objective;      // maximized; empty means feasibility only

    void add_row(QVector coefs, Rel rel, Rational rhs) {
        rows.push_back(Row{std::move(coefs), rel, std::move(rhs)});
    }
};

enum class Status { Infeasible, Optimal, Unbounded };

struct Solution {
    Status status;
    QVector point;   // structural variables, valid unless Infeasible
    Rational value;  // objective value, valid when Optimal
};

Solution solve(const Problem& p);

// Feasibility shortcut; fills *point with a witness when given.
bool feasible(const Problem& p, QVector* point = nullptr);

}  // namespace apta::lp
