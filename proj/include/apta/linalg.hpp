// ============================================================================
// linalg.hpp — exact rational linear algebra helpers
// ============================================================================

#pragma once

#include <optional>
#include <vector>

#include "apta/rational.hpp"

namespace apta {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row major

Rational dot(const QVector& a, const QVector& b);

// Rank of the matrix (destroys nothing; works on a copy).
int rank(QMatrix m);

// Solves A x = b when the solution is unique; nullopt if the system is
// inconsistent or underdetermined.
std::optional<QVector> solve_unique(QMatrix a, QVector b);

// Basis of the right null space { x : A x = 0 }.
std::vector<QVector> null_space(QMatrix a);

}  // namespace apta
