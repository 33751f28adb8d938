#include "apta/refinement.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace apta {

std::optional<QMatrix> lift_check(const QVector& mu1, const QVector& mu2,
                                  const std::vector<std::vector<bool>>& allowed) {
    int n = static_cast<int>(mu1.size()), m = static_cast<int>(mu2.size());
    std::vector<std::pair<int, int>> vars;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (allowed[i][j]) vars.emplace_back(i, j);
    lp::Problem p;
    p.num_vars = static_cast<int>(vars.size());
    for (int i = 0; i < n; ++i) {
        QVector row(p.num_vars);
        for (size_t v = 0; v < vars.size(); ++v)
            if (vars[v].first == i) row[v] = Rational(1);
        p.add_row(std::move(row), lp::Rel::Eq, mu1[i]);
    }
    for (int j = 0; j < m; ++j) {
        QVector row(p.num_vars);
        for (size_t v = 0; v < vars.size(); ++v)
            if (vars[v].second == j) row[v] = Rational(1);
        p.add_row(std::move(row), lp::Rel::Eq, mu2[j]);
    }
    QVector point;
    if (!lp::feasible(p, &point)) return std::nullopt;
    QMatrix w(n, QVector(m, Rational(0)));
    for (size_t v = 0; v < vars.size(); ++v) w[vars[v].first][vars[v].second] = point[v];
    return w;
}

namespace {

// LP for: exists w (supported on allowed) and mu2 in the given polytope with
// row sums mu1 and column sums mu2. Fills used with the support of w.
bool lift_into_polytope(const QVector& mu1, int m, const Polytope& poly,
                        const std::vector<std::vector<bool>>& allowed, QVector* witness,
                        std::vector<std::pair<int, int>>* used = nullptr) {
    int n = static_cast<int>(mu1.size());
    std::vector<std::pair<int, int>> vars;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (allowed[i][j]) vars.emplace_back(i, j);
    int wn = static_cast<int>(vars.size());
    lp::Problem p;
    p.num_vars = wn + m;  // weights then mu2
    for (int i = 0; i < n; ++i) {
        QVector row(p.num_vars);
        for (int v = 0; v < wn; ++v)
            if (vars[v].first == i) row[v] = Rational(1);
        p.add_row(std::move(row), lp::Rel::Eq, mu1[i]);
    }
    for (int j = 0; j < m; ++j) {
        QVector row(p.num_vars);
        for (int v = 0; v < wn; ++v)
            if (vars[v].second == j) row[v] = Rational(1);
        row[wn + j] = Rational(-1);
        p.add_row(std::move(row), lp::Rel::Eq, Rational(0));
    }
    for (const LinConstraint& r : poly.rows) {
        QVector row(p.num_vars);
        for (int j = 0; j < m; ++j) row[wn + j] = r.coefs[j];
        p.add_row(std::move(row), r.rel == LinRel::Eq ? lp::Rel::Eq : lp::Rel::Le, r.bound);
    }
    QVector point;
    if (!lp::feasible(p, &point)) return false;
    if (witness) witness->assign(point.begin() + wn, point.end());
    if (used) {
        for (int v = 0; v < wn; ++v)
            if (!point[v].is_zero()) used->push_back(vars[v]);
    }
    return true;
}

// Product constraints: exact witness search with one factor pinned to a
// candidate distribution; the other factor and the weights stay free.
bool lift_into_product_side(const QVector& mu1, const ProbConstraint& phi, bool fix_right,
                            const QVector& fixed, const std::vector<std::vector<bool>>& allowed,
                            QVector* witness) {
    const ProbConstraint& freec = fix_right ? phi.left() : phi.right();
    int nl = phi.left().dim(), nr = phi.right().dim();
    int fdim = freec.dim();
    int n = static_cast<int>(mu1.size());
    std::vector<std::pair<int, int>> vars;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < phi.dim(); ++j)
            if (allowed[i][j]) vars.emplace_back(i, j);
    int wn = static_cast<int>(vars.size());
    for (const Polytope& poly : freec.disjuncts()) {
        lp::Problem p;
        p.num_vars = wn + fdim;
        for (int i = 0; i < n; ++i) {
            QVector row(p.num_vars);
            for (int v = 0; v < wn; ++v)
                if (vars[v].first == i) row[v] = Rational(1);
            p.add_row(std::move(row), lp::Rel::Eq, mu1[i]);
        }
        // Column sums: w(., (a,b)) = free(a) * fixed(b)   (fix_right)
        //              w(., (a,b)) = fixed(a) * free(b)   (otherwise)
        for (int a = 0; a < nl; ++a) {
            for (int b = 0; b < nr; ++b) {
                int col = a * nr + b;
                QVector row(p.num_vars);
                for (int v = 0; v < wn; ++v)
                    if (vars[v].second == col) row[v] = Rational(1);
                if (fix_right)
                    row[wn + a] = -fixed[b];
                else
                    row[wn + b] = -fixed[a];
                p.add_row(std::move(row), lp::Rel::Eq, Rational(0));
            }
        }
        QVector ones(p.num_vars);
        for (int k = 0; k < fdim; ++k) ones[wn + k] = Rational(1);
        p.add_row(std::move(ones), lp::Rel::Eq, Rational(1));
        for (const LinConstraint& r : poly.rows) {
            QVector row(p.num_vars);
            for (int k = 0; k < fdim; ++k) row[wn + k] = r.coefs[k];
            p.add_row(std::move(row), r.rel == LinRel::Eq ? lp::Rel::Eq : lp::Rel::Le, r.bound);
        }
        QVector point;
        if (lp::feasible(p, &point)) {
            if (witness) {
                witness->assign(phi.dim(), Rational(0));
                for (int a = 0; a < nl; ++a)
                    for (int b = 0; b < nr; ++b)
                        (*witness)[a * nr + b] =
                            fix_right ? point[wn + a] * fixed[b] : fixed[a] * point[wn + b];
            }
            return true;
        }
    }
    return false;
}

}  // namespace

Tri lift_into_constraint_used(const QVector& mu1, const ProbConstraint& phi,
                              const std::vector<std::vector<bool>>& allowed, QVector* witness,
                              std::vector<std::pair<int, int>>* used) {
    if (!phi.is_product()) {
        // Vertex targets first: a fixed-marginal transportation problem is far
        // cheaper than the joint LP and usually suffices.
        size_t budget = 16;
        for (const QVector& target : phi.vertices()) {
            if (budget-- == 0) break;
            if (auto w = lift_check(mu1, target, allowed)) {
                if (witness) *witness = target;
                if (used) {
                    for (size_t i = 0; i < w->size(); ++i)
                        for (size_t j = 0; j < (*w)[i].size(); ++j)
                            if (!(*w)[i][j].is_zero())
                                used->emplace_back(static_cast<int>(i), static_cast<int>(j));
                }
                return Tri::Yes;
            }
        }
        for (const Polytope& poly : phi.disjuncts()) {
            if (lift_into_polytope(mu1, phi.dim(), poly, allowed, witness, used)) return Tri::Yes;
        }
        return Tri::No;
    }
    // Cheap sufficient check first: a plain transportation problem against
    // each extreme point of the product set. This hits immediately whenever
    // the witness is a tensor of factor vertices, the common case when both
    // sides stem from one parallel composition.
    {
        size_t budget = 64;
        for (const QVector& target : phi.vertices()) {
            if (budget-- == 0) break;
            if (auto w = lift_check(mu1, target, allowed)) {
                if (witness) *witness = target;
                if (used) {
                    for (size_t i = 0; i < w->size(); ++i)
                        for (size_t j = 0; j < (*w)[i].size(); ++j)
                            if (!(*w)[i][j].is_zero()) used->emplace_back(static_cast<int>(i),
                                                                          static_cast<int>(j));
                }
                return Tri::Yes;
            }
        }
    }
    // Necessary condition: lifting into the convex hull (tensor products of
    // factor vertices span it). Infeasibility here is a definite no.
    {
        const std::vector<QVector>& hull = phi.vertices();
        int n = static_cast<int>(mu1.size());
        std::vector<std::pair<int, int>> vars;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < phi.dim(); ++j)
                if (allowed[i][j]) vars.emplace_back(i, j);
        int wn = static_cast<int>(vars.size());
        lp::Problem p;
        p.num_vars = wn + static_cast<int>(hull.size());
        for (int i = 0; i < n; ++i) {
            QVector row(p.num_vars);
            for (int v = 0; v < wn; ++v)
                if (vars[v].first == i) row[v] = Rational(1);
            p.add_row(std::move(row), lp::Rel::Eq, mu1[i]);
        }
        for (int j = 0; j < phi.dim(); ++j) {
            QVector row(p.num_vars);
            for (int v = 0; v < wn; ++v)
                if (vars[v].second == j) row[v] = Rational(1);
            for (size_t t = 0; t < hull.size(); ++t) row[wn + t] = -hull[t][j];
            p.add_row(std::move(row), lp::Rel::Eq, Rational(0));
        }
        QVector lam(p.num_vars);
        for (size_t t = 0; t < hull.size(); ++t) lam[wn + t] = Rational(1);
        p.add_row(std::move(lam), lp::Rel::Eq, Rational(1));
        if (!lp::feasible(p)) return Tri::No;
    }
    // Exact search from vertex starts, each factor side in turn.
    auto conservative_used = [&]() {
        if (!used) return;
        for (size_t i = 0; i < allowed.size(); ++i)
            for (size_t j = 0; j < allowed[i].size(); ++j)
                if (allowed[i][j]) used->emplace_back(static_cast<int>(i), static_cast<int>(j));
    };
    size_t budget = 32;
    for (const QVector& vr : phi.right().vertices()) {
        if (budget-- == 0) break;
        if (lift_into_product_side(mu1, phi, true, vr, allowed, witness)) {
            conservative_used();
            return Tri::Yes;
        }
    }
    budget = 32;
    for (const QVector& vl : phi.left().vertices()) {
        if (budget-- == 0) break;
        if (lift_into_product_side(mu1, phi, false, vl, allowed, witness)) {
            conservative_used();
            return Tri::Yes;
        }
    }
    return Tri::Unknown;
}

Tri lift_into_constraint(const QVector& mu1, const ProbConstraint& phi,
                         const std::vector<std::vector<bool>>& allowed, QVector* witness) {
    return lift_into_constraint_used(mu1, phi, allowed, witness, nullptr);
}

namespace {

// Interned transition labels (time region + action name) shared across both
// automata, so candidate scans avoid repeated structural comparisons.
struct LabelTable {
    std::map<std::pair<Region, std::string>, int> ids;
    int get(const Region& r, const std::string& a) {
        auto key = std::make_pair(r, a);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(ids.size());
        ids.emplace(std::move(key), id);
        return id;
    }
};

class Checker {
public:
    Checker(const RegionAutomaton& l, const RegionAutomaton& r, bool strong)
        : L(l), R(r), strong_(strong) {
        nl_ = static_cast<int>(L.states.size());
        nr_ = static_cast<int>(R.states.size());
        rel_.assign(static_cast<size_t>(nl_) * nr_, false);
        pred_l_.assign(nl_, {});
        pred_r_.assign(nr_, {});
        for (const RegionTransition& t : L.transitions)
            for (int tgt : t.targets) pred_l_[tgt].push_back(t.source);
        for (const RegionTransition& t : R.transitions)
            for (int tgt : t.targets) pred_r_[tgt].push_back(t.source);
        for (auto& v : pred_l_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        for (auto& v : pred_r_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        LabelTable table;
        label_l_.resize(L.transitions.size());
        label_r_.resize(R.transitions.size());
        out_l_.assign(nl_, {});
        out_r_.assign(nr_, {});
        for (size_t t = 0; t < L.transitions.size(); ++t) {
            label_l_[t] = table.get(L.transitions[t].time_region,
                                    L.action_names[L.transitions[t].action]);
            out_l_[L.transitions[t].source].emplace_back(label_l_[t], static_cast<int>(t));
        }
        for (size_t t = 0; t < R.transitions.size(); ++t) {
            label_r_[t] = table.get(R.transitions[t].time_region,
                                    R.action_names[R.transitions[t].action]);
            out_r_[R.transitions[t].source].emplace_back(label_r_[t], static_cast<int>(t));
        }
        auto label_sets = [](const std::vector<std::vector<std::pair<int, int>>>& out,
                             const std::vector<RegionTransition>& ts, std::vector<std::vector<int>>& all,
                             std::vector<std::vector<int>>& must) {
            all.assign(out.size(), {});
            must.assign(out.size(), {});
            for (size_t s = 0; s < out.size(); ++s) {
                for (auto& [lbl, tid] : out[s]) {
                    all[s].push_back(lbl);
                    if (ts[tid].modality == Modality::Must) must[s].push_back(lbl);
                }
                std::sort(all[s].begin(), all[s].end());
                all[s].erase(std::unique(all[s].begin(), all[s].end()), all[s].end());
                std::sort(must[s].begin(), must[s].end());
                must[s].erase(std::unique(must[s].begin(), must[s].end()), must[s].end());
            }
        };
        label_sets(out_l_, L.transitions, labels_l_, must_labels_l_);
        label_sets(out_r_, R.transitions, labels_r_, must_labels_r_);
    }

    RefinementResult run(bool optimistic) {
        saw_unknown_ = false;
        deletions_.clear();
        yes_cache_.clear();
        deps_.clear();
        // Condition 3 plus two label-shape conditions that full checks would
        // establish anyway: every left label needs a same-label right
        // transition, every right must label a same-label left must.
        for (int i = 0; i < nl_; ++i) {
            for (int j = 0; j < nr_; ++j) {
                bool ok = std::includes(R.valuations[j].begin(), R.valuations[j].end(),
                                        L.valuations[i].begin(), L.valuations[i].end());
                int cond = ok ? 0 : 3;
                if (!cond && !std::includes(labels_r_[j].begin(), labels_r_[j].end(),
                                            labels_l_[i].begin(), labels_l_[i].end()))
                    cond = 2;
                if (!cond && !std::includes(must_labels_l_[i].begin(), must_labels_l_[i].end(),
                                            must_labels_r_[j].begin(), must_labels_r_[j].end()))
                    cond = 1;
                rel_[idx(i, j)] = cond == 0;
                if (cond != 0) deletions_.push_back({i, j, cond, "labels"});
            }
        }
        std::vector<std::pair<int, int>> work;
        for (int i = 0; i < nl_; ++i)
            for (int j = 0; j < nr_; ++j)
                if (rel_[idx(i, j)]) work.emplace_back(i, j);
        size_t head = 0;
        while (head < work.size()) {
            auto [i, j] = work[head++];
            if (!rel_[idx(i, j)]) continue;
            std::string label;
            int cond = check_pair(i, j, optimistic, label);
            if (cond == 0) continue;
            erase_pair(i, j, cond, label, work);
        }
        RefinementResult res;
        res.saw_inconclusive = saw_unknown_;
        bool init_ok = rel_[idx(L.initial, R.initial)];
        res.outcome = init_ok ? Outcome::Holds : Outcome::Fails;
        if (init_ok) {
            for (int i = 0; i < nl_; ++i)
                for (int j = 0; j < nr_; ++j)
                    if (rel_[idx(i, j)]) res.relation.emplace_back(i, j);
            for (auto& [i, j] : res.relation) res.certificates.push_back(certificate(i, j));
        } else {
            res.chain = deletions_;
        }
        return res;
    }

private:
    const RegionAutomaton& L;
    const RegionAutomaton& R;
    bool strong_;
    int nl_ = 0, nr_ = 0;
    std::vector<bool> rel_;
    std::vector<std::vector<int>> pred_l_, pred_r_;
    std::vector<int> label_l_, label_r_;
    std::vector<std::vector<std::pair<int, int>>> out_l_, out_r_;  // (label, tid)
    std::vector<std::vector<int>> labels_l_, labels_r_, must_labels_l_, must_labels_r_;
    bool saw_unknown_ = false;
    std::vector<RefinementResult::Deletion> deletions_;
    // Definite failures stay failures when the relation shrinks; positive
    // matches stay valid until a state pair used by their witness dies.
    std::set<std::pair<int, int>> no_cache_;
    std::map<std::pair<int, int>, std::vector<size_t>> yes_cache_;  // witness pair keys
    std::map<size_t, std::vector<std::pair<int, int>>> deps_;       // pair key -> match keys

    size_t idx(int i, int j) const { return static_cast<size_t>(i) * nr_ + j; }

    void erase_pair(int i, int j, int cond, const std::string& label,
                    std::vector<std::pair<int, int>>& work) {
        rel_[idx(i, j)] = false;
        deletions_.push_back({i, j, cond, label});
        auto dep = deps_.find(idx(i, j));
        if (dep != deps_.end()) {
            for (auto& key : dep->second) yes_cache_.erase(key);
            deps_.erase(dep);
        }
        for (int pi : pred_l_[i])
            for (int pj : pred_r_[j])
                if (rel_[idx(pi, pj)]) work.emplace_back(pi, pj);
    }

    std::vector<std::vector<bool>> allowed_pairs(const RegionTransition& t1,
                                                 const RegionTransition& t2) const {
        std::vector<std::vector<bool>> a(t1.targets.size(),
                                         std::vector<bool>(t2.targets.size(), false));
        for (size_t i = 0; i < t1.targets.size(); ++i)
            for (size_t j = 0; j < t2.targets.size(); ++j)
                a[i][j] = rel_[idx(t1.targets[i], t2.targets[j])];
        return a;
    }

    Tri weak_match(const RegionTransition& t1, const RegionTransition& t2,
                   std::vector<std::pair<int, int>>* used) {
        auto allowed = allowed_pairs(t1, t2);
        bool unknown = false;
        for (const QVector& v : t1.constraint.vertices()) {
            Tri r = lift_into_constraint_used(v, t2.constraint, allowed, nullptr, used);
            if (r == Tri::No) return Tri::No;
            if (r == Tri::Unknown) unknown = true;
        }
        return unknown ? Tri::Unknown : Tri::Yes;
    }

    Tri strong_match(const RegionTransition& t1, const RegionTransition& t2,
                     std::vector<std::pair<int, int>>* used) {
        auto allowed = allowed_pairs(t1, t2);
        if (used) {
            for (size_t i = 0; i < allowed.size(); ++i)
                for (size_t j = 0; j < allowed[i].size(); ++j)
                    if (allowed[i][j]) used->emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
        int n = static_cast<int>(t1.targets.size());
        int m = static_cast<int>(t2.targets.size());
        const std::vector<QVector>& verts = t1.constraint.vertices();
        if (verts.empty()) return Tri::Yes;  // unsatisfiable left constraint
        std::vector<std::pair<int, int>> vars;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                if (allowed[i][j]) vars.emplace_back(i, j);
        int dn = static_cast<int>(vars.size());
        for (int i = 0; i < n; ++i) {
            bool any = false;
            for (int j = 0; j < m; ++j) any = any || allowed[i][j];
            if (!any) return Tri::No;  // row distribution impossible
        }
        auto base = [&]() {
            lp::Problem p;
            p.num_vars = dn + static_cast<int>(verts.size()) * m;  // delta, then mu2 per vertex
            for (int i = 0; i < n; ++i) {
                QVector row(p.num_vars);
                for (int v = 0; v < dn; ++v)
                    if (vars[v].first == i) row[v] = Rational(1);
                p.add_row(std::move(row), lp::Rel::Eq, Rational(1));
            }
            for (size_t k = 0; k < verts.size(); ++k) {
                for (int j = 0; j < m; ++j) {
                    QVector row(p.num_vars);
                    for (int v = 0; v < dn; ++v)
                        if (vars[v].second == j) row[v] = verts[k][vars[v].first];
                    row[dn + k * m + j] = Rational(-1);
                    p.add_row(std::move(row), lp::Rel::Eq, Rational(0));
                }
            }
            return p;
        };
        if (!t2.constraint.is_product()) {
            // All vertex images inside one disjunct.
            for (const Polytope& poly : t2.constraint.disjuncts()) {
                lp::Problem p = base();
                for (size_t k = 0; k < verts.size(); ++k) {
                    for (const LinConstraint& r : poly.rows) {
                        QVector row(p.num_vars);
                        for (int j = 0; j < m; ++j) row[dn + k * m + j] = r.coefs[j];
                        p.add_row(std::move(row), r.rel == LinRel::Eq ? lp::Rel::Eq : lp::Rel::Le,
                                  r.bound);
                    }
                }
                if (lp::feasible(p)) return Tri::Yes;
            }
            return Tri::No;
        }
        // Product right side: pin one factor to a vertex, leave the other free
        // per left-constraint vertex. A failed search is inconclusive.
        const ProbConstraint& phi = t2.constraint;
        int nlf = phi.left().dim(), nrf = phi.right().dim();
        auto try_fixed = [&](bool fix_right, const QVector& fixed) {
            int fdim = fix_right ? nlf : nrf;
            const ProbConstraint& freec = fix_right ? phi.left() : phi.right();
            for (const Polytope& poly : freec.disjuncts()) {
                lp::Problem p = base();
                int extra = static_cast<int>(verts.size()) * fdim;
                int off = p.num_vars;
                p.num_vars += extra;
                for (size_t k = 0; k < verts.size(); ++k) {
                    for (int a = 0; a < nlf; ++a) {
                        for (int b = 0; b < nrf; ++b) {
                            QVector row(p.num_vars);
                            row[dn + k * m + (a * nrf + b)] = Rational(1);
                            if (fix_right)
                                row[off + k * fdim + a] = -fixed[b];
                            else
                                row[off + k * fdim + b] = -fixed[a];
                            p.add_row(std::move(row), lp::Rel::Eq, Rational(0));
                        }
                    }
                    QVector ones(p.num_vars);
                    for (int q = 0; q < fdim; ++q) ones[off + k * fdim + q] = Rational(1);
                    p.add_row(std::move(ones), lp::Rel::Eq, Rational(1));
                    for (const LinConstraint& r : poly.rows) {
                        QVector row(p.num_vars);
                        for (int q = 0; q < fdim; ++q) row[off + k * fdim + q] = r.coefs[q];
                        p.add_row(std::move(row), r.rel == LinRel::Eq ? lp::Rel::Eq : lp::Rel::Le,
                                  r.bound);
                    }
                }
                if (lp::feasible(p)) return true;
            }
            return false;
        };
        size_t budget = 16;
        for (const QVector& vr : phi.right().vertices()) {
            if (budget-- == 0) break;
            if (try_fixed(true, vr)) return Tri::Yes;
        }
        budget = 16;
        for (const QVector& vl : phi.left().vertices()) {
            if (budget-- == 0) break;
            if (try_fixed(false, vl)) return Tri::Yes;
        }
        return Tri::Unknown;
    }

    Tri match(int t1_id, int t2_id) {
        auto key = std::make_pair(t1_id, t2_id);
        if (no_cache_.count(key)) return Tri::No;
        if (yes_cache_.count(key)) return Tri::Yes;
        const RegionTransition& t1 = L.transitions[t1_id];
        const RegionTransition& t2 = R.transitions[t2_id];
        std::vector<std::pair<int, int>> used;
        Tri r = strong_ ? strong_match(t1, t2, &used) : weak_match(t1, t2, &used);
        if (r == Tri::No) no_cache_.insert(key);
        if (r == Tri::Yes) {
            std::vector<size_t> pair_keys;
            for (auto& [i, j] : used) pair_keys.push_back(idx(t1.targets[i], t2.targets[j]));
            std::sort(pair_keys.begin(), pair_keys.end());
            pair_keys.erase(std::unique(pair_keys.begin(), pair_keys.end()), pair_keys.end());
            for (size_t pk : pair_keys) deps_[pk].push_back(key);
            yes_cache_.emplace(key, std::move(pair_keys));
        }
        if (r == Tri::Unknown) saw_unknown_ = true;
        return r;
    }

    // 0 = pair fine; otherwise the violated condition.
    int check_pair(int i, int j, bool optimistic, std::string& label) {
        // Condition 1: right musts realized on the left.
        for (auto& [lbl2, t2_id] : out_r_[j]) {
            const RegionTransition& t2 = R.transitions[t2_id];
            if (t2.modality != Modality::Must) continue;
            bool ok = false, unknown = false;
            for (auto& [lbl1, t1_id] : out_l_[i]) {
                if (lbl1 != lbl2) continue;
                if (L.transitions[t1_id].modality != Modality::Must) continue;
                Tri r = match(t1_id, t2_id);
                if (r == Tri::Yes) {
                    ok = true;
                    break;
                }
                if (r == Tri::Unknown) unknown = true;
            }
            if (!ok && !(optimistic && unknown)) {
                label = R.label_text(t2);
                return 1;
            }
        }
        // Condition 2: left transitions allowed on the right.
        for (auto& [lbl1, t1_id] : out_l_[i]) {
            bool ok = false, unknown = false;
            for (auto& [lbl2, t2_id] : out_r_[j]) {
                if (lbl1 != lbl2) continue;
                Tri r = match(t1_id, t2_id);
                if (r == Tri::Yes) {
                    ok = true;
                    break;
                }
                if (r == Tri::Unknown) unknown = true;
            }
            if (!ok && !(optimistic && unknown)) {
                label = L.label_text(L.transitions[t1_id]);
                return 2;
            }
        }
        return 0;
    }

    PairCertificate certificate(int i, int j) {
        PairCertificate c;
        c.left_state = i;
        c.right_state = j;
        for (auto& [lbl1, t1_id] : out_l_[i]) {
            for (auto& [lbl2, t2_id] : out_r_[j]) {
                if (lbl1 != lbl2) continue;
                if (match(t1_id, t2_id) != Tri::No) {
                    c.matches.emplace_back(L.label_text(L.transitions[t1_id]),
                                           R.label_text(R.transitions[t2_id]));
                    break;
                }
            }
        }
        return c;
    }
};

RefinementResult refine(const RegionAutomaton& left, const RegionAutomaton& right, bool strong) {
    if (!(left.ctx == right.ctx))
        throw Error("CONTEXT_MISMATCH", "refinement needs a shared region context");
    if (left.empty()) {
        RefinementResult r;
        r.outcome = Outcome::Holds;
        r.notes.push_back("left model is empty; refinement holds vacuously");
        return r;
    }
    if (right.empty()) {
        RefinementResult r;
        r.outcome = Outcome::Fails;
        r.notes.push_back("right model is empty but the left one is not");
        return r;
    }
    Checker pess(left, right, strong);
    RefinementResult r = pess.run(false);
    if (r.outcome == Outcome::Holds) return r;
    if (!r.saw_inconclusive) return r;
    Checker opt(left, right, strong);
    RefinementResult o = opt.run(true);
    if (o.outcome == Outcome::Fails) return o;
    o.outcome = Outcome::Inconclusive;
    o.notes.push_back("product-form constraint defeated the existential witness search");
    return o;
}

}  // namespace

RefinementResult weak_refine(const RegionAutomaton& left, const RegionAutomaton& right) {
    return refine(left, right, false);
}

RefinementResult strong_refine(const RegionAutomaton& left, const RegionAutomaton& right) {
    return refine(left, right, true);
}

SatisfactionResult satisfies(const Model& impl, const Model& spec) {
    if (!kind_is_implementation(impl.kind))
        throw Error("NOT_IMPLEMENTATION", "satisfaction checks a pta/peca against a specification");
    SatisfactionResult out;
    if (spec.is_empty()) {
        out.refinement.outcome = Outcome::Fails;
        out.refinement.notes.push_back("empty specification admits no implementations");
        return out;
    }
    RegionContext ctx = make_context({&impl, &spec});
    RegionAutomaton ri = build_region(impl, ctx);
    RegionAutomaton rs = build_region(spec, ctx);
    // The fixpoint below works on the implementation's region automaton, which
    // is exactly the region automaton of its normal form; report the split.
    std::map<std::string, std::vector<std::string>> split;
    for (const RegionState& s : ri.states)
        split[impl.locations[s.loc]].push_back(s.region.text(ctx));
    for (auto& [loc, regions] : split) out.normalization.push_back({loc, regions});
    out.refinement = weak_refine(ri, rs);
    return out;
}

RefinementResult apta_weak_refine(const Model& a1, const Model& a2) {
    if (a1.is_empty() || a2.is_empty()) {
        RegionAutomaton e1, e2;
        if (!a1.is_empty()) {
            e1 = build_region(a1);
            e2.ctx = e1.ctx;
        } else if (!a2.is_empty()) {
            e2 = build_region(a2);
            e1.ctx = e2.ctx;
        }
        return weak_refine(e1, e2);
    }
    RegionContext ctx = make_context({&a1, &a2});
    RegionAutomaton r1 = build_region(a1, ctx);
    RegionAutomaton r2 = build_region(a2, ctx);
    return weak_refine(r1, r2);
}

RefinementResult apta_strong_refine(const Model& a1, const Model& a2) {
    if (a1.is_empty() || a2.is_empty()) {
        RegionAutomaton e1, e2;
        if (!a1.is_empty()) {
            e1 = build_region(a1);
            e2.ctx = e1.ctx;
        } else if (!a2.is_empty()) {
            e2 = build_region(a2);
            e1.ctx = e2.ctx;
        }
        return strong_refine(e1, e2);
    }
    RegionContext ctx = make_context({&a1, &a2});
    RegionAutomaton r1 = build_region(a1, ctx);
    RegionAutomaton r2 = build_region(a2, ctx);
    return strong_refine(r1, r2);
}

bool is_action_deterministic(const Model& m) {
    if (m.is_empty()) return true;
    RegionAutomaton ra = build_region(m);
    // Transitions with empty satisfaction sets carry the completeness
    // convention and admit no behavior; they cannot clash with anything.
    std::vector<bool> vacuous(ra.transitions.size());
    for (size_t t = 0; t < ra.transitions.size(); ++t)
        vacuous[t] = !ra.transitions[t].constraint.sat_nonempty();
    for (size_t s = 0; s < ra.states.size(); ++s) {
        const auto& ts = ra.out[s];
        for (size_t a = 0; a < ts.size(); ++a) {
            if (vacuous[ts[a]]) continue;
            for (size_t b = a + 1; b < ts.size(); ++b) {
                if (vacuous[ts[b]]) continue;
                const RegionTransition& t1 = ra.transitions[ts[a]];
                const RegionTransition& t2 = ra.transitions[ts[b]];
                if (t1.action != t2.action) continue;
                if (t1.time_region != t2.time_region) continue;  // disjoint regions
                // Same time window and action: the constraints must agree.
                if (t1.targets != t2.targets || t1.resets != t2.resets) return false;
                if (!t1.constraint.sat_equal(t2.constraint)) return false;
            }
        }
    }
    return true;
}

bool is_ap_deterministic(const Model& m) {
    if (m.is_empty()) return true;
    RegionAutomaton ra = build_region(m);
    for (const RegionTransition& t : ra.transitions) {
        std::vector<bool> possible = t.constraint.possible_support();
        for (size_t i = 0; i < t.targets.size(); ++i) {
            if (!possible[i]) continue;
            for (size_t j = i + 1; j < t.targets.size(); ++j) {
                if (!possible[j]) continue;
                if (t.targets[i] == t.targets[j]) continue;
                const auto& vi = ra.valuations[t.targets[i]];
                const auto& vj = ra.valuations[t.targets[j]];
                for (const auto& s : vi)
                    if (vj.count(s)) return false;
            }
        }
    }
    return true;
}

}  // namespace apta
