#include "apta/linalg.hpp"

#include <cassert>

namespace apta {

Rational dot(const QVector& a, const QVector& b) {
    assert(a.size() == b.size());
    Rational s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

namespace {

// Reduces m to row echelon form in place; returns pivot columns.
std::vector<int> echelon(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i != r && !m[i][c].is_zero()) {
                Rational f = m[i][c];
                for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            }
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(QMatrix m) { return static_cast<int>(echelon(m).size()); }

std::optional<QVector> solve_unique(QMatrix a, QVector b) {
    if (a.empty()) return std::nullopt;
    size_t rows = a.size(), cols = a[0].size();
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = echelon(a);
    // Inconsistent if a pivot lands in the augmented column.
    for (size_t i = 0; i < rows; ++i) {
        bool all_zero = true;
        for (size_t j = 0; j < cols; ++j)
            if (!a[i][j].is_zero()) {
                all_zero = false;
                break;
            }
        if (all_zero && !a[i][cols].is_zero()) return std::nullopt;
    }
    if (pivots.size() != cols) return std::nullopt;  // underdetermined
    QVector x(cols);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

std::vector<QVector> null_space(QMatrix a) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    std::vector<int> pivots = echelon(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        QVector v(cols);
        v[free_c] = Rational(1);
        for (size_t i = 0; i < pivots.size(); ++i) {
            size_t pc = pivots[i];
            if (free_c < a[i].size()) v[pc] = -a[i][free_c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace apta
