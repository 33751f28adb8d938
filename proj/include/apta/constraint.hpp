// ============================================================================
// constraint.hpp — probability constraints as finite unions of rational
// polytopes inside the probability simplex
// ============================================================================
//
// A ProbConstraint describes a set Sat(phi) of probability distributions over
// an ordered support of size dim(). The representation is a disjunction of
// convex polytopes, each given by linear rows; the simplex conditions
// (x_i >= 0, sum x_i = 1) are implicit in every disjunct.
//
//   - no disjuncts        -> "false"  (Sat empty)
//   - one row-free disjunct-> "true"  (Sat = whole simplex)
//
// Constraints produced by parallel composition carry a product tag instead:
// Sat(phi) = { mu_L (x) mu_R } for factor members. Product constraints keep
// their factors symbolically; their convex hull is used where a convex
// over-approximation is sound, exact factorization where membership is needed.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apta/lp.hpp"

namespace apta {

enum class LinRel { Le, Eq };

struct LinConstraint {
    QVector coefs;
    LinRel rel = LinRel::Le;
    Rational bound;
};

struct Polytope {
    std::vector<LinConstraint> rows;
};

bool polytope_feasible(int dim, const Polytope& p, QVector* point = nullptr);
bool polytope_member(int dim, const Polytope& p, const QVector& x);
// Exact extreme points, by exhaustive active-set enumeration.
std::vector<QVector> polytope_vertices(int dim, const Polytope& p);
// Half-space form of the convex hull of the given points (all of dimension
// dim, all on the simplex).
Polytope hull_to_polytope(int dim, std::vector<QVector> points);

class ProbConstraint {
public:
    ProbConstraint() : dim_(0) {}

    static ProbConstraint truth(int dim);
    static ProbConstraint falsity(int dim);
    static ProbConstraint point(const QVector& p);
    static ProbConstraint from_polytopes(int dim, std::vector<Polytope> disjuncts);
    static ProbConstraint product(ProbConstraint left, ProbConstraint right);

    int dim() const { return dim_; }
    bool is_product() const { return static_cast<bool>(prod_left_); }
    const ProbConstraint& left() const { return *prod_left_; }
    const ProbConstraint& right() const { return *prod_right_; }
    const std::vector<Polytope>& disjuncts() const { return disjuncts_; }

    // Syntactic shapes (used by the serializer).
    bool syntactically_false() const { return !is_product() && disjuncts_.empty(); }
    bool syntactically_true() const {
        return !is_product() && disjuncts_.size() == 1 && disjuncts_[0].rows.empty();
    }
    // The single satisfying distribution, if the constraint pins one down.
    std::optional<QVector> as_point() const;

    bool sat_nonempty() const;
    bool member(const QVector& mu) const;

    // Extreme points of Sat (for products: of its convex hull). Cached.
    const std::vector<QVector>& vertices() const;

    // Marginal substitution: each variable of this constraint is replaced by
    // the sum of its block in a finer support. owner[j] = index of the block
    // that new variable j belongs to (total map, every block nonempty).
    ProbConstraint substituted(const std::vector<int>& owner, int new_dim) const;

    // Exact image under the coordinate-summing map f (total, onto new_dim).
    ProbConstraint image(const std::vector<int>& f, int new_dim) const;

    ProbConstraint unioned(const ProbConstraint& other) const;
    // Conjunction of the row systems (disjunct lists cross-multiplied).
    ProbConstraint intersected(const ProbConstraint& other) const;
    ProbConstraint restrict_zero(const std::vector<int>& dead) const;
    // Drops coordinates whose mass is forced to zero (callers must have
    // established that) and reindexes the rest.
    ProbConstraint project_out(const std::vector<int>& dead) const;
    // Column permutation: new coordinate j corresponds to old perm[j].
    ProbConstraint permuted(const std::vector<int>& perm) const;

    // Indices i admitting some mu in Sat with mu(i) > 0.
    std::vector<bool> possible_support() const;

    bool sat_subset_of(const ProbConstraint& other) const;
    bool sat_equal(const ProbConstraint& other) const;

    // True when some operation had to fall back to a convex hull of a product
    // constraint; results stay sound for refinement upper bounds but are no
    // longer exact descriptions of Sat.
    bool hull_approximation() const { return hull_approx_; }
    void mark_hull_approximation() { hull_approx_ = true; }

private:
    int dim_;
    std::vector<Polytope> disjuncts_;
    std::shared_ptr<const ProbConstraint> prod_left_, prod_right_;
    bool hull_approx_ = false;
    mutable std::shared_ptr<std::vector<QVector>> vertex_cache_;
};

// Canonical integral scaling of a row (positive factor only), used for
// deduplication.
void canonicalize_row(LinConstraint& row);

}  // namespace apta
