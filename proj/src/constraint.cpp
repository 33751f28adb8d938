#include "apta/constraint.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace apta {

namespace {

lp::Problem base_problem(int dim, const Polytope& p) {
    lp::Problem prob;
    prob.num_vars = dim;
    QVector ones(dim, Rational(1));
    prob.add_row(ones, lp::Rel::Eq, Rational(1));
    for (const LinConstraint& r : p.rows) {
        prob.add_row(r.coefs, r.rel == LinRel::Eq ? lp::Rel::Eq : lp::Rel::Le, r.bound);
    }
    return prob;
}

}  // namespace

bool polytope_feasible(int dim, const Polytope& p, QVector* point) {
    return lp::feasible(base_problem(dim, p), point);
}

bool polytope_member(int dim, const Polytope& p, const QVector& x) {
    assert(static_cast<int>(x.size()) == dim);
    Rational sum;
    for (const Rational& v : x) {
        if (v.is_negative()) return false;
        sum += v;
    }
    if (sum != Rational(1)) return false;
    for (const LinConstraint& r : p.rows) {
        Rational lhs = dot(r.coefs, x);
        if (r.rel == LinRel::Eq ? lhs != r.bound : lhs > r.bound) return false;
    }
    return true;
}

std::vector<QVector> polytope_vertices(int dim, const Polytope& p) {
    // Constraint pool: equalities always active; vertices need dim active
    // independent constraints in total.
    QMatrix eq_rows;
    QVector eq_rhs;
    eq_rows.push_back(QVector(dim, Rational(1)));
    eq_rhs.push_back(Rational(1));
    struct Ineq {
        QVector coefs;
        Rational bound;
    };
    std::vector<Ineq> ineqs;
    for (const LinConstraint& r : p.rows) {
        QVector c = r.coefs;
        c.resize(dim);
        if (r.rel == LinRel::Eq) {
            eq_rows.push_back(c);
            eq_rhs.push_back(r.bound);
        } else {
            ineqs.push_back(Ineq{c, r.bound});
        }
    }
    for (int i = 0; i < dim; ++i) {
        QVector c(dim);
        c[i] = Rational(-1);
        ineqs.push_back(Ineq{c, Rational(0)});  // -x_i <= 0
    }
    int rank_eq = rank(eq_rows);
    int need = dim - rank_eq;
    std::vector<QVector> found;
    auto try_subset = [&](const std::vector<int>& subset) {
        QMatrix a = eq_rows;
        QVector b = eq_rhs;
        for (int idx : subset) {
            a.push_back(ineqs[idx].coefs);
            b.push_back(ineqs[idx].bound);
        }
        auto x = solve_unique(a, b);
        if (!x) return;
        if (!polytope_member(dim, p, *x)) return;
        if (std::find(found.begin(), found.end(), *x) == found.end()) found.push_back(*x);
    };
    if (need <= 0) {
        try_subset({});
        return found;
    }
    if (need > static_cast<int>(ineqs.size())) return found;
    std::vector<int> subset(need);
    // Enumerate all need-subsets of the inequality pool.
    std::vector<int> idx(need);
    for (int i = 0; i < need; ++i) idx[i] = i;
    for (;;) {
        try_subset(idx);
        int i = need - 1;
        while (i >= 0 && idx[i] == static_cast<int>(ineqs.size()) - need + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }
    return found;
}

void canonicalize_row(LinConstraint& row) {
    std::vector<Rational> all = row.coefs;
    all.push_back(row.bound);
    BigInt lcm = common_denominator(all);
    BigInt g(0);
    auto scaled = [&](const Rational& q) { return q.num() * (lcm / q.den()); };
    for (const Rational& q : all) {
        BigInt v = scaled(q);
        g = BigInt::gcd(g, v);
    }
    if (g.is_zero()) g = BigInt(1);
    for (Rational& c : row.coefs) c = Rational(scaled(c) / g, BigInt(1));
    row.bound = Rational(scaled(row.bound) / g, BigInt(1));
}

Polytope hull_to_polytope(int dim, std::vector<QVector> points) {
    std::sort(points.begin(), points.end(), [](const QVector& a, const QVector& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Polytope out;
    if (points.empty()) {
        // Empty set: encode an unsatisfiable row.
        LinConstraint bad;
        bad.coefs.assign(dim, Rational(0));
        bad.rel = LinRel::Eq;
        bad.bound = Rational(1);
        out.rows.push_back(std::move(bad));
        return out;
    }
    const QVector& p0 = points[0];
    if (points.size() == 1) {
        for (int i = 0; i < dim; ++i) {
            LinConstraint r;
            r.coefs.assign(dim, Rational(0));
            r.coefs[i] = Rational(1);
            r.rel = LinRel::Eq;
            r.bound = p0[i];
            out.rows.push_back(std::move(r));
        }
        return out;
    }
    // Differences span the direction space.
    QMatrix diffs;
    for (size_t t = 1; t < points.size(); ++t) {
        QVector d(dim);
        for (int i = 0; i < dim; ++i) d[i] = points[t][i] - p0[i];
        diffs.push_back(std::move(d));
    }
    // Independent basis U (subset of diffs).
    QMatrix basis;
    for (const QVector& d : diffs) {
        QMatrix test = basis;
        test.push_back(d);
        if (rank(test) > static_cast<int>(basis.size())) basis.push_back(d);
    }
    int k = static_cast<int>(basis.size());
    // Affine-hull equalities: w . (x - p0) = 0 for w in null(diffs).
    for (const QVector& w : null_space(diffs)) {
        LinConstraint r;
        r.coefs = w;
        r.rel = LinRel::Eq;
        r.bound = dot(w, p0);
        canonicalize_row(r);
        out.rows.push_back(std::move(r));
    }
    // Pick k independent columns J of the basis (as a k x dim matrix).
    std::vector<int> J;
    {
        QMatrix cols;  // transposed selection
        for (int c = 0; c < dim && static_cast<int>(J.size()) < k; ++c) {
            QVector col(k);
            for (int r = 0; r < k; ++r) col[r] = basis[r][c];
            QMatrix test = cols;
            test.push_back(col);
            if (rank(test) > static_cast<int>(cols.size())) {
                cols.push_back(col);
                J.push_back(c);
            }
        }
    }
    // y-coordinates of each point: solve M y = (p - p0)[J], M[r][c] = basis[c][J[r]].
    QMatrix M(k, QVector(k));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) M[r][c] = basis[c][J[r]];
    auto coords = [&](const QVector& p) {
        QVector rhs(k);
        for (int r = 0; r < k; ++r) rhs[r] = p[J[r]] - p0[J[r]];
        auto y = solve_unique(M, rhs);
        assert(y);
        return *y;
    };
    QMatrix ys;
    for (const QVector& p : points) ys.push_back(coords(p));
    // Facets: hyperplanes through k affinely independent points with all
    // points on one side. Enumerate k-subsets.
    size_t n = points.size();
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::set<std::vector<std::string>> seen;
    auto emit_facet = [&](const QVector& c, const Rational& e) {
        // Ambient form: a . x <= b with a[J[t]] = (M^-T c)[t].
        QMatrix Mt(k, QVector(k));
        for (int r = 0; r < k; ++r)
            for (int cc = 0; cc < k; ++cc) Mt[r][cc] = M[cc][r];
        auto alpha = solve_unique(Mt, c);
        assert(alpha);
        LinConstraint row;
        row.coefs.assign(dim, Rational(0));
        Rational shift;
        for (int t = 0; t < k; ++t) {
            row.coefs[J[t]] = (*alpha)[t];
            shift += (*alpha)[t] * p0[J[t]];
        }
        row.rel = LinRel::Le;
        row.bound = e + shift;
        canonicalize_row(row);
        std::vector<std::string> key;
        for (const Rational& q : row.coefs) key.push_back(q.to_string());
        key.push_back(row.bound.to_string());
        if (seen.insert(key).second) out.rows.push_back(std::move(row));
    };
    for (;;) {
        // Hyperplane c . y = e through the chosen subset.
        QMatrix sys;
        for (int i = 0; i < k; ++i) {
            QVector row = ys[idx[i]];
            row.push_back(Rational(-1));
            sys.push_back(std::move(row));
        }
        auto null = null_space(sys);
        if (null.size() == 1) {
            QVector c(null[0].begin(), null[0].end() - 1);
            Rational e = null[0].back();
            bool nonzero = false;
            for (const Rational& q : c) nonzero = nonzero || !q.is_zero();
            if (nonzero) {
                bool has_pos = false, has_neg = false;
                for (const QVector& y : ys) {
                    Rational v = dot(c, y) - e;
                    if (v.is_negative())
                        has_neg = true;
                    else if (!v.is_zero())
                        has_pos = true;
                }
                if (!has_pos) {
                    emit_facet(c, e);
                } else if (!has_neg) {
                    QVector nc(c.size());
                    for (size_t t = 0; t < c.size(); ++t) nc[t] = -c[t];
                    emit_facet(nc, -e);
                }
            }
        }
        int i = k - 1;
        while (i >= 0 && idx[i] == static_cast<int>(n) - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// ProbConstraint
// ---------------------------------------------------------------------------

ProbConstraint ProbConstraint::truth(int dim) {
    ProbConstraint c;
    c.dim_ = dim;
    c.disjuncts_.push_back(Polytope{});
    return c;
}

ProbConstraint ProbConstraint::falsity(int dim) {
    ProbConstraint c;
    c.dim_ = dim;
    return c;
}

ProbConstraint ProbConstraint::point(const QVector& p) {
    ProbConstraint c;
    c.dim_ = static_cast<int>(p.size());
    Polytope poly;
    for (int i = 0; i < c.dim_; ++i) {
        LinConstraint r;
        r.coefs.assign(c.dim_, Rational(0));
        r.coefs[i] = Rational(1);
        r.rel = LinRel::Eq;
        r.bound = p[i];
        poly.rows.push_back(std::move(r));
    }
    c.disjuncts_.push_back(std::move(poly));
    return c;
}

ProbConstraint ProbConstraint::from_polytopes(int dim, std::vector<Polytope> disjuncts) {
    ProbConstraint c;
    c.dim_ = dim;
    for (Polytope& p : disjuncts)
        for (LinConstraint& r : p.rows) r.coefs.resize(dim);
    c.disjuncts_ = std::move(disjuncts);
    return c;
}

ProbConstraint ProbConstraint::product(ProbConstraint left, ProbConstraint right) {
    ProbConstraint c;
    c.dim_ = left.dim() * right.dim();
    c.hull_approx_ = left.hull_approx_ || right.hull_approx_;
    c.prod_left_ = std::make_shared<ProbConstraint>(std::move(left));
    c.prod_right_ = std::make_shared<ProbConstraint>(std::move(right));
    return c;
}

std::optional<QVector> ProbConstraint::as_point() const {
    const std::vector<QVector>& v = vertices();
    if (v.size() != 1) return std::nullopt;
    if (is_product()) {
        // A product is a single point iff both factors are.
        if (left().vertices().size() != 1 || right().vertices().size() != 1) return std::nullopt;
    }
    return v[0];
}

bool ProbConstraint::sat_nonempty() const {
    if (is_product()) return left().sat_nonempty() && right().sat_nonempty();
    for (const Polytope& p : disjuncts_) {
        if (polytope_feasible(dim_, p)) return true;
    }
    return false;
}

bool ProbConstraint::member(const QVector& mu) const {
    if (static_cast<int>(mu.size()) != dim_)
        throw std::invalid_argument("ProbConstraint::member: SUPPORT_MISMATCH");
    if (is_product()) {
        int nl = left().dim(), nr = right().dim();
        QVector ml(nl), mr(nr);
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j) ml[i] += mu[i * nr + j];
        for (int j = 0; j < nr; ++j)
            for (int i = 0; i < nl; ++i) mr[j] += mu[i * nr + j];
        if (!left().member(ml) || !right().member(mr)) return false;
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j)
                if (mu[i * nr + j] != ml[i] * mr[j]) return false;
        return true;
    }
    for (const Polytope& p : disjuncts_) {
        if (polytope_member(dim_, p, mu)) return true;
    }
    return false;
}

const std::vector<QVector>& ProbConstraint::vertices() const {
    if (vertex_cache_) return *vertex_cache_;
    auto out = std::make_shared<std::vector<QVector>>();
    if (is_product()) {
        int nr = right().dim();
        for (const QVector& vl : left().vertices()) {
            for (const QVector& vr : right().vertices()) {
                QVector t(dim_);
                for (int i = 0; i < left().dim(); ++i)
                    for (int j = 0; j < nr; ++j) t[i * nr + j] = vl[i] * vr[j];
                if (std::find(out->begin(), out->end(), t) == out->end()) out->push_back(std::move(t));
            }
        }
    } else {
        for (const Polytope& p : disjuncts_) {
            for (QVector& v : polytope_vertices(dim_, p)) {
                if (std::find(out->begin(), out->end(), v) == out->end()) out->push_back(std::move(v));
            }
        }
    }
    vertex_cache_ = out;
    return *vertex_cache_;
}

ProbConstraint ProbConstraint::substituted(const std::vector<int>& owner, int new_dim) const {
    if (is_product())
        throw std::runtime_error("ProbConstraint: marginal substitution over a product constraint is unsupported");
    ProbConstraint out;
    out.dim_ = new_dim;
    out.hull_approx_ = hull_approx_;
    for (const Polytope& p : disjuncts_) {
        Polytope q;
        for (const LinConstraint& r : p.rows) {
            LinConstraint nr;
            nr.coefs.assign(new_dim, Rational(0));
            for (int j = 0; j < new_dim; ++j) nr.coefs[j] = r.coefs[owner[j]];
            nr.rel = r.rel;
            nr.bound = r.bound;
            q.rows.push_back(std::move(nr));
        }
        out.disjuncts_.push_back(std::move(q));
    }
    return out;
}

ProbConstraint ProbConstraint::image(const std::vector<int>& f, int new_dim) const {
    assert(static_cast<int>(f.size()) == dim_);
    if (is_product()) {
        // Factorized maps keep the product form exact: the image of a tensor
        // set under f_L x f_R is the tensor of the factor images.
        int nl = left().dim(), nr = right().dim();
        std::vector<int> fl(nl, -1), fr(nr, -1);
        bool factors = true;
        std::map<std::pair<int, int>, int> seen_pairs;
        // Try to decompose f(i,j) = (fl(i), fr(j)) against a product layout of
        // new_dim = nl' * nr'. Infer the factor images from consistency.
        // First infer fr from row 0, fl from column 0, then verify.
        std::vector<int> r0(nr), c0(nl);
        for (int j = 0; j < nr; ++j) r0[j] = f[0 * nr + j];
        for (int i = 0; i < nl; ++i) c0[i] = f[i * nr + 0];
        // Candidate codomain layout: distinct values per row/column.
        std::vector<int> rvals = r0, cvals = c0;
        std::sort(rvals.begin(), rvals.end());
        rvals.erase(std::unique(rvals.begin(), rvals.end()), rvals.end());
        std::sort(cvals.begin(), cvals.end());
        cvals.erase(std::unique(cvals.begin(), cvals.end()), cvals.end());
        int nrp = static_cast<int>(rvals.size());
        int nlp = static_cast<int>(cvals.size());
        if (nlp * nrp == new_dim) {
            for (int j = 0; j < nr; ++j)
                fr[j] = static_cast<int>(std::lower_bound(rvals.begin(), rvals.end(), r0[j]) - rvals.begin());
            for (int i = 0; i < nl; ++i)
                fl[i] = static_cast<int>(std::lower_bound(cvals.begin(), cvals.end(), c0[i]) - cvals.begin());
            for (int i = 0; i < nl && factors; ++i)
                for (int j = 0; j < nr && factors; ++j)
                    if (f[i * nr + j] != fl[i] * nrp + fr[j]) factors = false;
        } else {
            factors = false;
        }
        if (factors) {
            return product(left().image(fl, nlp), right().image(fr, nrp));
        }
        // Non-factorizing map: image of the hull, flagged approximate.
        std::vector<Polytope> polys;
        std::vector<QVector> mapped;
        for (const QVector& v : vertices()) {
            QVector w(new_dim, Rational(0));
            for (int i = 0; i < dim_; ++i) w[f[i]] += v[i];
            mapped.push_back(std::move(w));
        }
        polys.push_back(hull_to_polytope(new_dim, std::move(mapped)));
        ProbConstraint out = from_polytopes(new_dim, std::move(polys));
        out.mark_hull_approximation();
        return out;
    }
    // Bijective fast path: a pure reindexing.
    if (new_dim == dim_) {
        std::vector<int> inv(new_dim, -1);
        bool bijective = true;
        for (int i = 0; i < dim_ && bijective; ++i) {
            if (inv[f[i]] != -1)
                bijective = false;
            else
                inv[f[i]] = i;
        }
        if (bijective) return permuted(inv);
    }
    ProbConstraint out;
    out.dim_ = new_dim;
    out.hull_approx_ = hull_approx_;
    for (const Polytope& p : disjuncts_) {
        std::vector<QVector> mapped;
        for (const QVector& v : polytope_vertices(dim_, p)) {
            QVector w(new_dim, Rational(0));
            for (int i = 0; i < dim_; ++i) w[f[i]] += v[i];
            if (std::find(mapped.begin(), mapped.end(), w) == mapped.end()) mapped.push_back(std::move(w));
        }
        if (mapped.empty()) continue;  // empty disjunct vanishes
        out.disjuncts_.push_back(hull_to_polytope(new_dim, std::move(mapped)));
    }
    return out;
}

ProbConstraint ProbConstraint::unioned(const ProbConstraint& other) const {
    if (dim_ != other.dim_)
        throw std::invalid_argument("ProbConstraint::unioned: SUPPORT_MISMATCH");
    if (is_product() || other.is_product()) {
        if (syntactically_false()) return other;
        if (other.syntactically_false()) return *this;
        throw std::runtime_error("ProbConstraint: union with a product constraint is unsupported");
    }
    ProbConstraint out = *this;
    out.vertex_cache_.reset();
    out.hull_approx_ = hull_approx_ || other.hull_approx_;
    for (const Polytope& p : other.disjuncts_) out.disjuncts_.push_back(p);
    return out;
}

ProbConstraint ProbConstraint::intersected(const ProbConstraint& other) const {
    if (dim_ != other.dim_)
        throw std::invalid_argument("ProbConstraint::intersected: SUPPORT_MISMATCH");
    if (is_product() || other.is_product())
        throw std::runtime_error("ProbConstraint: intersection with a product constraint is unsupported");
    ProbConstraint out;
    out.dim_ = dim_;
    out.hull_approx_ = hull_approx_ || other.hull_approx_;
    for (const Polytope& p : disjuncts_) {
        for (const Polytope& q : other.disjuncts_) {
            Polytope r = p;
            for (const LinConstraint& row : q.rows) r.rows.push_back(row);
            out.disjuncts_.push_back(std::move(r));
        }
    }
    return out;
}

ProbConstraint ProbConstraint::restrict_zero(const std::vector<int>& dead) const {
    if (dead.empty()) return *this;
    if (is_product()) {
        int nl = left().dim(), nr = right().dim();
        std::vector<bool> isdead(dim_, false);
        for (int d : dead) isdead[d] = true;
        std::vector<bool> rowdead(nl, true), coldead(nr, true);
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j)
                if (!isdead[i * nr + j]) rowdead[i] = false;
        for (int j = 0; j < nr; ++j)
            for (int i = 0; i < nl; ++i)
                if (!isdead[i * nr + j]) coldead[j] = false;
        // Only row/column-shaped zero sets keep the product structure.
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j)
                if (isdead[i * nr + j] && !rowdead[i] && !coldead[j])
                    throw std::runtime_error(
                        "ProbConstraint: zero-restriction of a product constraint with a "
                        "non-rectangular dead set is unsupported");
        std::vector<int> dl, dr;
        for (int i = 0; i < nl; ++i)
            if (rowdead[i]) dl.push_back(i);
        for (int j = 0; j < nr; ++j)
            if (coldead[j]) dr.push_back(j);
        return product(left().restrict_zero(dl), right().restrict_zero(dr));
    }
    ProbConstraint out = *this;
    out.vertex_cache_.reset();
    for (Polytope& p : out.disjuncts_) {
        for (int d : dead) {
            LinConstraint r;
            r.coefs.assign(dim_, Rational(0));
            r.coefs[d] = Rational(1);
            r.rel = LinRel::Eq;
            r.bound = Rational(0);
            p.rows.push_back(std::move(r));
        }
    }
    return out;
}

ProbConstraint ProbConstraint::project_out(const std::vector<int>& dead) const {
    if (dead.empty()) return *this;
    std::vector<bool> isdead(dim_, false);
    for (int d : dead) isdead[d] = true;
    std::vector<int> keep;
    for (int i = 0; i < dim_; ++i)
        if (!isdead[i]) keep.push_back(i);
    if (is_product()) {
        int nl = left().dim(), nr = right().dim();
        std::vector<bool> rowdead(nl, true), coldead(nr, true);
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j)
                if (!isdead[i * nr + j]) rowdead[i] = false;
        for (int j = 0; j < nr; ++j)
            for (int i = 0; i < nl; ++i)
                if (!isdead[i * nr + j]) coldead[j] = false;
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j)
                if (isdead[i * nr + j] != (rowdead[i] || coldead[j]))
                    throw std::runtime_error(
                        "ProbConstraint: projection of a product constraint with a "
                        "non-rectangular dead set is unsupported");
        std::vector<int> dl, dr;
        for (int i = 0; i < nl; ++i)
            if (rowdead[i]) dl.push_back(i);
        for (int j = 0; j < nr; ++j)
            if (coldead[j]) dr.push_back(j);
        return product(left().project_out(dl), right().project_out(dr));
    }
    ProbConstraint out;
    out.dim_ = static_cast<int>(keep.size());
    out.hull_approx_ = hull_approx_;
    for (const Polytope& p : disjuncts_) {
        Polytope q;
        for (const LinConstraint& r : p.rows) {
            LinConstraint nr;
            nr.rel = r.rel;
            nr.bound = r.bound;
            for (int i : keep) nr.coefs.push_back(r.coefs[i]);
            q.rows.push_back(std::move(nr));
        }
        out.disjuncts_.push_back(std::move(q));
    }
    return out;
}

ProbConstraint ProbConstraint::permuted(const std::vector<int>& perm) const {
    assert(static_cast<int>(perm.size()) == dim_);
    if (is_product())
        throw std::runtime_error("ProbConstraint: free permutation of a product constraint is unsupported");
    ProbConstraint out;
    out.dim_ = dim_;
    out.hull_approx_ = hull_approx_;
    for (const Polytope& p : disjuncts_) {
        Polytope q;
        for (const LinConstraint& r : p.rows) {
            LinConstraint nr;
            nr.coefs.assign(dim_, Rational(0));
            for (int j = 0; j < dim_; ++j) nr.coefs[j] = r.coefs[perm[j]];
            nr.rel = r.rel;
            nr.bound = r.bound;
            q.rows.push_back(std::move(nr));
        }
        out.disjuncts_.push_back(std::move(q));
    }
    return out;
}

std::vector<bool> ProbConstraint::possible_support() const {
    std::vector<bool> out(dim_, false);
    if (is_product()) {
        std::vector<bool> l = left().possible_support();
        std::vector<bool> r = right().possible_support();
        int nr = right().dim();
        for (int i = 0; i < left().dim(); ++i)
            for (int j = 0; j < nr; ++j) out[i * nr + j] = l[i] && r[j];
        return out;
    }
    for (const Polytope& p : disjuncts_) {
        for (int i = 0; i < dim_; ++i) {
            if (out[i]) continue;
            lp::Problem prob = base_problem(dim_, p);
            prob.objective.assign(dim_, Rational(0));
            prob.objective[i] = Rational(1);
            lp::Solution s = lp::solve(prob);
            if (s.status == lp::Status::Optimal && s.value > Rational(0)) out[i] = true;
        }
    }
    return out;
}

bool ProbConstraint::sat_subset_of(const ProbConstraint& other) const {
    if (dim_ != other.dim_) return false;
    if (is_product() && other.is_product()) {
        if (!sat_nonempty()) return true;
        if (left().dim() != other.left().dim()) return false;
        return left().sat_subset_of(other.left()) && right().sat_subset_of(other.right());
    }
    if (is_product() || other.is_product()) {
        // Mixed comparisons are only decided in the empty cases.
        if (!sat_nonempty()) return true;
        return false;
    }
    for (const Polytope& d : disjuncts_) {
        std::vector<QVector> vs = polytope_vertices(dim_, d);
        if (vs.empty()) continue;  // empty disjunct
        bool contained = false;
        for (const Polytope& e : other.disjuncts_) {
            bool all_in = true;
            for (const QVector& v : vs)
                if (!polytope_member(dim_, e, v)) {
                    all_in = false;
                    break;
                }
            if (all_in) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

bool ProbConstraint::sat_equal(const ProbConstraint& other) const {
    return sat_subset_of(other) && other.sat_subset_of(*this);
}

}  // namespace apta
