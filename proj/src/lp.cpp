#include "apta/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace apta::lp {

namespace {

class Simplex {
public:
    explicit Simplex(const Problem& p) : nstruct_(p.num_vars) {
        // Normalize rows to rhs >= 0, add slack/artificial columns.
        size_t m = p.rows.size();
        std::vector<Row> rows = p.rows;
        for (Row& r : rows) {
            r.coefs.resize(nstruct_);
            if (r.rhs.is_negative()) {
                for (Rational& c : r.coefs) c = -c;
                r.rhs = -r.rhs;
                if (r.rel == Rel::Le)
                    r.rel = Rel::Ge;
                else if (r.rel == Rel::Ge)
                    r.rel = Rel::Le;
            }
        }
        int nslack = 0;
        for (const Row& r : rows)
            if (r.rel != Rel::Eq) ++nslack;
        ncols_ = nstruct_ + nslack;
        int first_art = ncols_;
        // Artificials: for Ge and Eq rows.
        for (const Row& r : rows)
            if (r.rel != Rel::Le) ++ncols_;
        nart_begin_ = first_art;

        T_.assign(m, QVector(ncols_ + 1));
        basis_.assign(m, -1);
        int slack_at = nstruct_;
        int art_at = first_art;
        for (size_t i = 0; i < m; ++i) {
            for (int j = 0; j < nstruct_; ++j) T_[i][j] = rows[i].coefs[j];
            T_[i][ncols_] = rows[i].rhs;
            switch (rows[i].rel) {
                case Rel::Le:
                    T_[i][slack_at] = Rational(1);
                    basis_[i] = slack_at++;
                    break;
                case Rel::Ge:
                    T_[i][slack_at] = Rational(-1);
                    ++slack_at;
                    T_[i][art_at] = Rational(1);
                    basis_[i] = art_at++;
                    break;
                case Rel::Eq:
                    T_[i][art_at] = Rational(1);
                    basis_[i] = art_at++;
                    break;
            }
        }
    }

    Solution run(const QVector& objective) {
        // Phase 1: maximize -(sum of artificials).
        if (nart_begin_ < ncols_) {
            QVector c1(ncols_);
            for (int j = nart_begin_; j < ncols_; ++j) c1[j] = Rational(-1);
            Status st = optimize(c1);
            assert(st == Status::Optimal);
            (void)st;
            if (!objective_value(c1).is_zero()) return Solution{Status::Infeasible, {}, {}};
            expel_artificials();
        }
        if (objective.empty()) return Solution{Status::Optimal, extract(), Rational(0)};
        QVector c2(ncols_);
        for (int j = 0; j < nstruct_ && j < static_cast<int>(objective.size()); ++j) c2[j] = objective[j];
        Status st = optimize(c2);
        if (st == Status::Unbounded) return Solution{Status::Unbounded, extract(), {}};
        return Solution{Status::Optimal, extract(), objective_value(c2)};
    }

private:
    int nstruct_;
    int ncols_;
    int nart_begin_;
    QMatrix T_;
    std::vector<int> basis_;
    std::vector<bool> dead_;  // columns removed from consideration

    Rational objective_value(const QVector& c) const {
        Rational v;
        for (size_t i = 0; i < T_.size(); ++i) {
            if (!c[basis_[i]].is_zero()) v += c[basis_[i]] * T_[i][ncols_];
        }
        return v;
    }

    bool column_dead(int j) const { return !dead_.empty() && dead_[j]; }

    // zrow[j] = sum_i c[basis_i] T[i][j] - c[j]; optimal when >= 0 everywhere.
    Status optimize(const QVector& c) {
        for (;;) {
            QVector zrow(ncols_);
            for (int j = 0; j < ncols_; ++j) zrow[j] = c[j].is_zero() ? Rational(0) : -c[j];
            for (size_t i = 0; i < T_.size(); ++i) {
                const Rational& cb = c[basis_[i]];
                if (cb.is_zero()) continue;
                for (int j = 0; j < ncols_; ++j)
                    if (!T_[i][j].is_zero()) zrow[j] += cb * T_[i][j];
            }
            int enter = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (column_dead(j)) continue;
                if (zrow[j].is_negative()) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            }
            if (enter < 0) return Status::Optimal;
            int leave = -1;
            Rational best;
            for (size_t i = 0; i < T_.size(); ++i) {
                if (!T_[i][enter].is_zero() && !T_[i][enter].is_negative()) {
                    Rational ratio = T_[i][ncols_] / T_[i][enter];
                    if (leave < 0 || ratio < best ||
                        (ratio == best && basis_[i] < basis_[leave])) {
                        leave = static_cast<int>(i);
                        best = ratio;
                    }
                }
            }
            if (leave < 0) return Status::Unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(int r, int j) {
        Rational inv = Rational(1) / T_[r][j];
        for (int k = 0; k <= ncols_; ++k)
            if (!T_[r][k].is_zero()) T_[r][k] *= inv;
        for (size_t i = 0; i < T_.size(); ++i) {
            if (static_cast<int>(i) == r || T_[i][j].is_zero()) continue;
            Rational f = T_[i][j];
            for (int k = 0; k <= ncols_; ++k)
                if (!T_[r][k].is_zero()) T_[i][k] -= f * T_[r][k];
        }
        basis_[r] = j;
    }

    // After phase 1, remove artificials from the basis (they all carry 0).
    void expel_artificials() {
        dead_.assign(ncols_, false);
        for (int j = nart_begin_; j < ncols_; ++j) dead_[j] = true;
        for (size_t i = 0; i < T_.size(); ++i) {
            if (basis_[i] < nart_begin_) continue;
            int col = -1;
            for (int j = 0; j < nart_begin_; ++j) {
                if (!T_[i][j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                pivot(static_cast<int>(i), col);
            }
            // Otherwise the row is redundant (all structural coefficients are
            // zero and so is its rhs); the basic artificial stays at zero and
            // the dead-column mask keeps it out of later pivots.
        }
    }

    QVector extract() const {
        QVector x(nstruct_);
        for (size_t i = 0; i < T_.size(); ++i) {
            if (basis_[i] < nstruct_) x[basis_[i]] = T_[i][ncols_];
        }
        return x;
    }
};

}  // namespace

Solution solve(const Problem& p) {
    for (const Row& r : p.rows) {
        if (static_cast<int>(r.coefs.size()) > p.num_vars)
            throw std::invalid_argument("lp: row wider than variable count");
    }
    if (p.num_vars == 0) {
        // Degenerate: feasibility of constant relations.
        for (const Row& r : p.rows) {
            bool ok = true;
            switch (r.rel) {
                case Rel::Le: ok = !r.rhs.is_negative(); break;
                case Rel::Ge: ok = r.rhs <= Rational(0); break;
                case Rel::Eq: ok = r.rhs.is_zero(); break;
            }
            if (!ok) return Solution{Status::Infeasible, {}, {}};
        }
        return Solution{Status::Optimal, {}, Rational(0)};
    }
    Simplex s(p);
    return s.run(p.objective);
}

bool feasible(const Problem& p, QVector* point) {
    Problem q = p;
    q.objective.clear();
    Solution s = solve(q);
    if (s.status != Status::Optimal) return false;
    if (point) *point = s.point;
    return true;
}

}  // namespace apta::lp
