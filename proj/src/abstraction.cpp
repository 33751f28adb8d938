#include "apta/abstraction.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace apta {

AbstractionMap AbstractionMap::identity(const Model& m) {
    AbstractionMap a;
    for (size_t l = 0; l < m.locations.size(); ++l) {
        a.forward.push_back(static_cast<int>(l));
        a.block_names.push_back(m.locations[l]);
        a.backward.push_back({static_cast<int>(l)});
    }
    return a;
}

AbstractionMap AbstractionMap::from_pairs(
    const Model& m, const std::vector<std::pair<std::string, std::string>>& pairs) {
    AbstractionMap a;
    a.forward.assign(m.locations.size(), -1);
    auto block_of = [&](const std::string& name) {
        for (size_t b = 0; b < a.block_names.size(); ++b)
            if (a.block_names[b] == name) return static_cast<int>(b);
        a.block_names.push_back(name);
        a.backward.emplace_back();
        return static_cast<int>(a.block_names.size() - 1);
    };
    for (const auto& [from, to] : pairs) {
        int l = m.find_location(from);
        if (l < 0) throw Error("MAP", "unknown location " + from);
        if (a.forward[l] >= 0) throw Error("MAP", "location mapped twice: " + from);
        int b = block_of(to);
        a.forward[l] = b;
        a.backward[b].push_back(l);
    }
    for (size_t l = 0; l < m.locations.size(); ++l) {
        if (a.forward[l] >= 0) continue;
        int b = block_of(m.locations[l]);
        a.forward[l] = b;
        a.backward[b].push_back(static_cast<int>(l));
    }
    for (const auto& blk : a.backward)
        if (blk.empty()) throw Error("MAP", "abstract location without concrete members");
    return a;
}

void AbstractionMap::check(const Model& m) const {
    if (forward.size() != m.locations.size())
        throw Error("MAP", "abstraction map size mismatch");
}

std::optional<Guard> common_guard(const Model& m, const AbstractionMap& a, int block, ActionId act) {
    std::vector<std::vector<const Edge*>> musts;
    for (int l : a.backward[block]) {
        std::vector<const Edge*> own;
        for (const Edge& e : m.edges)
            if (e.source == l && e.action == act && e.modality == Modality::Must) own.push_back(&e);
        if (own.empty()) return std::nullopt;
        musts.push_back(std::move(own));
    }
    // First satisfiable combination in edge order; if none is satisfiable the
    // first combination stands (an unsatisfiable common guard).
    std::optional<Guard> first;
    std::optional<Guard> found;
    std::vector<size_t> pick(musts.size(), 0);
    std::function<void(size_t, const Guard&)> rec = [&](size_t i, const Guard& acc) {
        if (found) return;
        if (i == musts.size()) {
            if (!first) first = acc;
            if (acc.satisfiable()) found = acc;
            return;
        }
        for (const Edge* e : musts[i]) {
            rec(i + 1, acc.conjoin(e->guard));
            if (found) return;
        }
    };
    rec(0, Guard::always());
    return found ? found : first;
}

std::vector<Guard> negate_guard(const Guard& g) {
    std::vector<Guard> out;
    for (const GuardAtom& a : g.atoms()) {
        GuardAtom inv{a.clock, cmp_invert(a.cmp), a.bound};
        Guard piece;
        bool ok = true;
        try {
            piece.add(inv);
        } catch (const Error&) {
            ok = false;
        }
        if (ok && piece.satisfiable()) out.push_back(std::move(piece));
    }
    return out;
}

Model preprocess(const Model& m, const AbstractionMap& a) {
    a.check(m);
    Model out = m;
    out.edges.clear();
    for (const Edge& e : m.edges) {
        if (e.modality != Modality::Must) {
            out.edges.push_back(e);
            continue;
        }
        std::optional<Guard> cg = common_guard(m, a, a.forward[e.source], e.action);
        if (!cg) {
            // No common must family for this block and action; the edge is
            // left alone and surfaces as may behavior in the quotient.
            out.edges.push_back(e);
            continue;
        }
        std::vector<Guard> pieces;
        Guard inside = e.guard.conjoin(*cg);
        if (inside.satisfiable()) pieces.push_back(std::move(inside));
        for (const Guard& neg : negate_guard(*cg)) {
            Guard part = e.guard.conjoin(neg);
            if (part.satisfiable() &&
                std::find(pieces.begin(), pieces.end(), part) == pieces.end())
                pieces.push_back(std::move(part));
        }
        for (Guard& g : pieces) {
            Edge ne = e;
            ne.guard = std::move(g);
            out.edges.push_back(std::move(ne));
        }
    }
    return out;
}

namespace {

struct AbstractSupportElem {
    std::set<ClockId> resets;
    int block;
    bool operator<(const AbstractSupportElem& o) const {
        if (block != o.block) return block < o.block;
        return resets < o.resets;
    }
    bool operator==(const AbstractSupportElem& o) const {
        return block == o.block && resets == o.resets;
    }
};

// Collapses a product constraint to the half-space form of its hull.
ProbConstraint flatten_to_hull(const ProbConstraint& c) {
    if (!c.is_product()) return c;
    std::vector<QVector> pts = c.vertices();
    std::vector<Polytope> polys;
    polys.push_back(hull_to_polytope(c.dim(), std::move(pts)));
    ProbConstraint out = ProbConstraint::from_polytopes(c.dim(), std::move(polys));
    out.mark_hull_approximation();
    return out;
}

// Image of the union of a family's constraints over the joint abstract support.
//
// Families of product constraints over a product map are united factor-wise:
// the abstraction of a tensor constraint is the tensor of the factor
// abstractions, so the union becomes a product of factor unions. Without such
// structure, product members degrade to their hulls (flagged approximate).
ProbConstraint family_union_image(const std::vector<const Edge*>& family, const AbstractionMap& a,
                                  std::vector<AbstractSupportElem>& joint) {
    joint.clear();
    bool all_product = a.product_right_blocks > 0;
    for (const Edge* e : family) all_product = all_product && e->constraint.is_product();
    if (all_product && !family.empty()) {
        int nrb = a.product_right_blocks;
        // Joint factor supports (abstract block halves), then their rectangle.
        std::vector<int> jl, jr;
        for (const Edge* e : family) {
            int nr = e->constraint.right().dim();
            (void)nr;
            for (size_t k = 0; k < e->support.size(); ++k) {
                int b = a.forward[e->support[k].target];
                int bl = b / nrb, br = b % nrb;
                if (std::find(jl.begin(), jl.end(), bl) == jl.end()) jl.push_back(bl);
                if (std::find(jr.begin(), jr.end(), br) == jr.end()) jr.push_back(br);
            }
        }
        std::sort(jl.begin(), jl.end());
        std::sort(jr.begin(), jr.end());
        ProbConstraint accl = ProbConstraint::falsity(static_cast<int>(jl.size()));
        ProbConstraint accr = ProbConstraint::falsity(static_cast<int>(jr.size()));
        const std::set<ClockId>* resets = nullptr;
        for (const Edge* e : family) {
            int nr = e->constraint.right().dim();
            int nl = e->constraint.left().dim();
            std::vector<int> fl(nl), fr(nr);
            for (int i = 0; i < nl; ++i) {
                int b = a.forward[e->support[static_cast<size_t>(i) * nr].target];
                fl[i] = static_cast<int>(std::lower_bound(jl.begin(), jl.end(), b / nrb) - jl.begin());
            }
            for (int j = 0; j < nr; ++j) {
                int b = a.forward[e->support[j].target];
                fr[j] = static_cast<int>(std::lower_bound(jr.begin(), jr.end(), b % nrb) - jr.begin());
            }
            accl = accl.unioned(e->constraint.left().image(fl, static_cast<int>(jl.size())));
            accr = accr.unioned(e->constraint.right().image(fr, static_cast<int>(jr.size())));
            if (!e->support.empty()) resets = &e->support[0].resets;
        }
        for (int bl : jl)
            for (int br : jr)
                joint.push_back(AbstractSupportElem{resets ? *resets : std::set<ClockId>{},
                                                    bl * nrb + br});
        return ProbConstraint::product(std::move(accl), std::move(accr));
    }
    for (const Edge* e : family) {
        for (const SupportElem& s : e->support) {
            AbstractSupportElem ae{s.resets, a.forward[s.target]};
            if (std::find(joint.begin(), joint.end(), ae) == joint.end()) joint.push_back(ae);
        }
    }
    std::sort(joint.begin(), joint.end());
    ProbConstraint acc = ProbConstraint::falsity(static_cast<int>(joint.size()));
    for (const Edge* e : family) {
        std::vector<int> f(e->support.size());
        for (size_t i = 0; i < e->support.size(); ++i) {
            AbstractSupportElem ae{e->support[i].resets, a.forward[e->support[i].target]};
            f[i] = static_cast<int>(std::lower_bound(joint.begin(), joint.end(), ae) - joint.begin());
        }
        ProbConstraint img = e->constraint.image(f, static_cast<int>(joint.size()));
        if (img.is_product()) img = flatten_to_hull(img);
        acc = acc.unioned(img);
    }
    return acc;
}

}  // namespace

Model abstract_model(const Model& pre, const AbstractionMap& a) {
    a.check(pre);
    Model out;
    out.kind = pre.kind == ModelKind::Apeca ? ModelKind::Apeca : ModelKind::Apta;
    out.name = pre.name + ".abs";
    out.actions = pre.actions;
    out.clocks = pre.clocks;
    out.props = pre.props;
    for (int b = 0; b < a.num_blocks(); ++b) {
        std::set<std::set<PropId>> val;
        for (int l : a.backward[b])
            for (const auto& s : pre.valuation[l]) val.insert(s);
        out.add_location(a.block_names[b], std::move(val));
    }
    out.initial = a.forward[pre.initial];
    for (int b = 0; b < a.num_blocks(); ++b) {
        for (ActionId act = 0; act < static_cast<int>(pre.actions.size()); ++act) {
            // Guards carried by the block members for this action.
            std::vector<Guard> guards;
            for (int l : a.backward[b])
                for (const Edge& e : pre.edges)
                    if (e.source == l && e.action == act &&
                        std::find(guards.begin(), guards.end(), e.guard) == guards.end())
                        guards.push_back(e.guard);
            std::sort(guards.begin(), guards.end());
            for (const Guard& g : guards) {
                if (!g.satisfiable()) continue;
                // Must when every member offers a must edge at exactly this
                // guard; the leftover may family keeps the rest.
                bool all_must = true;
                std::vector<const Edge*> must_family, may_family;
                for (int l : a.backward[b]) {
                    bool has = false;
                    for (const Edge& e : pre.edges) {
                        if (e.source != l || e.action != act || !(e.guard == g)) continue;
                        if (e.modality == Modality::Must) {
                            has = true;
                            must_family.push_back(&e);
                        } else {
                            may_family.push_back(&e);
                        }
                    }
                    all_must = all_must && has;
                }
                std::vector<AbstractSupportElem> joint;
                if (all_must) {
                    ProbConstraint phi = family_union_image(must_family, a, joint);
                    Edge ne;
                    ne.source = b;
                    ne.guard = g;
                    ne.action = act;
                    ne.modality = Modality::Must;
                    for (const AbstractSupportElem& ae : joint) {
                        ne.support.push_back(SupportElem{ae.resets, ae.block});
                        ne.var_names.push_back("");
                    }
                    ne.constraint = std::move(phi);
                    out.edges.push_back(std::move(ne));
                } else {
                    // Remaining musts degrade to may behavior of the block.
                    for (const Edge* e : must_family) may_family.push_back(e);
                }
                if (!may_family.empty()) {
                    ProbConstraint phi = family_union_image(may_family, a, joint);
                    Edge ne;
                    ne.source = b;
                    ne.guard = g;
                    ne.action = act;
                    ne.modality = Modality::May;
                    for (const AbstractSupportElem& ae : joint) {
                        ne.support.push_back(SupportElem{ae.resets, ae.block});
                        ne.var_names.push_back("");
                    }
                    ne.constraint = std::move(phi);
                    out.edges.push_back(std::move(ne));
                }
            }
        }
    }
    return out;
}

Model abstraction_of(const Model& m, const AbstractionMap& a) {
    return abstract_model(preprocess(m, a), a);
}

RegionAutomaton abstract_region(const RegionAutomaton& ra, const std::vector<int>& loc_block,
                                const std::vector<std::string>& block_names) {
    RegionAutomaton out;
    out.ctx = ra.ctx;
    out.model_name = ra.model_name + ".abs";
    out.action_names = ra.action_names;
    out.prop_names = ra.prop_names;
    if (ra.empty()) return out;
    // Abstract states = (block, region) classes of the original states.
    std::map<std::pair<int, Region>, int> index;
    std::vector<std::vector<int>> members;
    std::vector<int> state_map(ra.states.size());
    for (size_t s = 0; s < ra.states.size(); ++s) {
        auto key = std::make_pair(loc_block[ra.states[s].loc], ra.states[s].region);
        auto it = index.find(key);
        int id;
        if (it == index.end()) {
            id = static_cast<int>(out.states.size());
            index.emplace(key, id);
            out.states.push_back(RegionState{key.first, key.second});
            out.state_names.push_back(block_names[key.first] + "@" + key.second.text(ra.ctx));
            out.valuations.emplace_back();
            out.out.emplace_back();
            members.emplace_back();
        } else {
            id = it->second;
        }
        state_map[s] = id;
        members[id].push_back(static_cast<int>(s));
        for (const auto& v : ra.valuations[s]) out.valuations[id].insert(v);
    }
    out.initial = state_map[ra.initial];
    struct Label {
        Region region;
        int action;
        bool operator<(const Label& o) const {
            if (!(region == o.region)) return region < o.region;
            return action < o.action;
        }
    };
    for (size_t as = 0; as < out.states.size(); ++as) {
        // Group member transitions by label.
        std::map<Label, std::vector<const RegionTransition*>> fam;
        for (int s : members[as])
            for (int t : ra.out[s])
                fam[Label{ra.transitions[t].time_region, ra.transitions[t].action}].push_back(
                    &ra.transitions[t]);
        for (auto& [label, ts] : fam) {
            // Must iff every member state has a must transition at the label.
            bool all_must = true;
            for (int s : members[as]) {
                bool has = false;
                for (int t : ra.out[s]) {
                    const RegionTransition& tr = ra.transitions[t];
                    if (tr.time_region == label.region && tr.action == label.action &&
                        tr.modality == Modality::Must)
                        has = true;
                }
                all_must = all_must && has;
            }
            auto emit = [&](Modality mod, const std::vector<const RegionTransition*>& family) {
                if (family.empty()) return;
                // Joint support keyed by abstract target state, mirroring the
                // collision rule of the region construction; colliding reset
                // sets keep the inclusion-least representative.
                std::vector<int> joint;
                std::map<int, std::set<int>> resets_of;
                for (const RegionTransition* t : family)
                    for (size_t i = 0; i < t->targets.size(); ++i) {
                        int tgt = state_map[t->targets[i]];
                        auto it = resets_of.find(tgt);
                        if (it == resets_of.end()) {
                            joint.push_back(tgt);
                            resets_of.emplace(tgt, t->resets[i]);
                        } else if (std::includes(it->second.begin(), it->second.end(),
                                                 t->resets[i].begin(), t->resets[i].end())) {
                            it->second = t->resets[i];
                        }
                    }
                std::sort(joint.begin(), joint.end());
                ProbConstraint acc = ProbConstraint::falsity(static_cast<int>(joint.size()));
                for (const RegionTransition* t : family) {
                    std::vector<int> f(t->targets.size());
                    for (size_t i = 0; i < t->targets.size(); ++i) {
                        int tgt = state_map[t->targets[i]];
                        f[i] = static_cast<int>(std::lower_bound(joint.begin(), joint.end(), tgt) -
                                                joint.begin());
                    }
                    acc = acc.unioned(t->constraint.image(f, static_cast<int>(joint.size())));
                }
                RegionTransition nt;
                nt.source = static_cast<int>(as);
                nt.time_region = label.region;
                nt.action = label.action;
                nt.modality = mod;
                for (int tgt : joint) {
                    nt.resets.push_back(resets_of[tgt]);
                    nt.targets.push_back(tgt);
                }
                nt.constraint = std::move(acc);
                out.out[as].push_back(static_cast<int>(out.transitions.size()));
                out.transitions.push_back(std::move(nt));
            };
            std::vector<const RegionTransition*> musts, mays;
            for (const RegionTransition* t : ts)
                (t->modality == Modality::Must ? musts : mays).push_back(t);
            if (all_must && !musts.empty()) {
                emit(Modality::Must, musts);
                emit(Modality::May, mays);
            } else {
                for (const RegionTransition* t : musts) mays.push_back(t);
                emit(Modality::May, mays);
            }
        }
    }
    return out;
}

AbstractionMap product_abstraction(const std::vector<std::pair<int, int>>& provenance,
                                   const AbstractionMap& a1, const AbstractionMap& a2) {
    AbstractionMap a;
    a.product_right_blocks = a2.num_blocks();
    // Row-major block layout so that product constraints can be united
    // factor-wise (block = b1 * |B2| + b2).
    for (int b1 = 0; b1 < a1.num_blocks(); ++b1)
        for (int b2 = 0; b2 < a2.num_blocks(); ++b2) {
            a.block_names.push_back(a1.block_names[b1] + "|" + a2.block_names[b2]);
            a.backward.emplace_back();
        }
    a.forward.assign(provenance.size(), -1);
    for (size_t l = 0; l < provenance.size(); ++l) {
        int b = a1.forward[provenance[l].first] * a2.num_blocks() +
                a2.forward[provenance[l].second];
        a.forward[l] = b;
        a.backward[b].push_back(static_cast<int>(l));
    }
    return a;
}

}  // namespace apta
