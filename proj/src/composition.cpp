#include "apta/composition.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

#include "apta/refinement.hpp"

namespace apta {

namespace {

std::set<std::set<std::string>> val_names(const Model& m, LocationId l) {
    std::set<std::set<std::string>> out;
    for (const auto& s : m.valuation[l]) {
        std::set<std::string> names;
        for (PropId p : s) names.insert(m.props[p]);
        out.insert(names);
    }
    return out;
}

std::set<std::set<PropId>> val_to_ids(Model& m, const std::set<std::set<std::string>>& val) {
    std::set<std::set<PropId>> out;
    for (const auto& s : val) {
        std::set<PropId> ids;
        for (const std::string& n : s) {
            int p = m.find_prop(n);
            ids.insert(p >= 0 ? p : m.add_prop(n));
        }
        out.insert(ids);
    }
    return out;
}

}  // namespace

std::pair<Model, Model> equalize_for_conjunction(const Model& e1, const Model& e2) {
    std::vector<std::string> all = union_names(e1.actions, e2.actions);
    return {complete_edges(e1, all), complete_edges(e2, all)};
}

std::pair<Model, Model> equalize_for_parallel(const Model& e1, const Model& e2) {
    std::vector<std::string> all = union_names(e1.actions, e2.actions);
    auto extend = [&](const Model& m) {
        Model out = m;
        for (const std::string& an : all) {
            if (out.find_action(an) >= 0) continue;
            ActionId a = out.add_action(an);
            ClockId xc = -1;
            if (kind_is_event_clock(out.kind)) xc = out.add_clock("x_" + an);
            for (LocationId l = 0; l < static_cast<int>(out.locations.size()); ++l) {
                Edge e;
                e.source = l;
                e.action = a;
                e.guard = Guard::always();
                e.modality = Modality::Must;
                SupportElem s;
                s.target = l;
                if (xc >= 0) s.resets.insert(xc);
                e.support.push_back(std::move(s));
                e.constraint = ProbConstraint::point({Rational(1)});
                e.var_names.push_back("");
                out.edges.push_back(std::move(e));
            }
        }
        return out;
    };
    return {extend(e1), extend(e2)};
}

namespace {

struct ProductShell {
    Model model;
    std::vector<std::pair<int, int>> provenance;
    std::vector<std::vector<int>> id;  // [l1][l2] -> product location
};

ProductShell product_locations(Model& a, Model& b, const std::string& name, ModelKind kind,
                               bool intersect_valuations) {
    ProductShell out;
    out.model.kind = kind;
    out.model.name = name;
    out.model.actions = a.actions;
    out.model.clocks = a.clocks;
    out.id.assign(a.locations.size(), std::vector<int>(b.locations.size(), -1));
    for (LocationId l1 = 0; l1 < static_cast<int>(a.locations.size()); ++l1) {
        for (LocationId l2 = 0; l2 < static_cast<int>(b.locations.size()); ++l2) {
            std::set<std::set<std::string>> val;
            auto v1 = val_names(a, l1);
            auto v2 = val_names(b, l2);
            if (intersect_valuations) {
                for (const auto& s : v1)
                    if (v2.count(s)) val.insert(s);
            } else {
                for (const auto& s1 : v1)
                    for (const auto& s2 : v2) {
                        std::set<std::string> u = s1;
                        u.insert(s2.begin(), s2.end());
                        val.insert(std::move(u));
                    }
            }
            int id = out.model.add_location(a.locations[l1] + "|" + b.locations[l2],
                                            val_to_ids(out.model, val));
            out.id[l1][l2] = id;
            out.provenance.emplace_back(l1, l2);
        }
    }
    out.model.initial = out.id[a.initial][b.initial];
    return out;
}

}  // namespace

ComposeResult conjoin(const Model& e1_in, const Model& e2_in) {
    auto [e1, e2] = equalize_for_conjunction(e1_in, e2_in);
    e1 = as_apeca(e1);
    e2 = as_apeca(e2);
    if (!is_action_deterministic(e1) || !is_action_deterministic(e2))
        throw Error("NOT_ACTION_DETERMINISTIC", "conjunction needs action-deterministic operands");
    ProductShell shell =
        product_locations(e1, e2, e1.name + "^" + e2.name, ModelKind::Apeca, true);
    Model& out = shell.model;
    for (const Edge& f1 : e1.edges) {
        for (const Edge& f2 : e2.edges) {
            if (f1.action != f2.action) continue;
            Guard g = f1.guard.conjoin(f2.guard);
            if (!g.satisfiable()) continue;
            Edge ne;
            ne.source = shell.id[f1.source][f2.source];
            ne.guard = std::move(g);
            ne.action = f1.action;
            ne.modality = modality_join(f1.modality, f2.modality);
            int n1 = static_cast<int>(f1.support.size());
            int n2 = static_cast<int>(f2.support.size());
            std::vector<int> row_owner(n1 * n2), col_owner(n1 * n2);
            for (int i = 0; i < n1; ++i) {
                for (int j = 0; j < n2; ++j) {
                    SupportElem s;
                    s.resets = f1.support[i].resets;  // both reset exactly x_a
                    s.target = shell.id[f1.support[i].target][f2.support[j].target];
                    ne.support.push_back(std::move(s));
                    ne.var_names.push_back("");
                    row_owner[i * n2 + j] = i;
                    col_owner[i * n2 + j] = j;
                }
            }
            ne.constraint = f1.constraint.substituted(row_owner, n1 * n2)
                                .intersected(f2.constraint.substituted(col_owner, n1 * n2));
            out.edges.push_back(std::move(ne));
        }
    }
    return ComposeResult{std::move(out), std::move(shell.provenance)};
}

ComposeResult compose_parallel(const Model& e1_in, const Model& e2_in) {
    for (const std::string& p : e1_in.props)
        if (std::find(e2_in.props.begin(), e2_in.props.end(), p) != e2_in.props.end())
            throw Error("AP_OVERLAP", "parallel composition needs disjoint proposition sets");
    Model e1 = as_apeca(complete_edges(e1_in));
    Model e2 = as_apeca(complete_edges(e2_in));
    std::tie(e1, e2) = equalize_for_parallel(e1, e2);
    ProductShell shell =
        product_locations(e1, e2, e1.name + "||" + e2.name, ModelKind::Apeca, false);
    Model& out = shell.model;
    for (const Edge& f1 : e1.edges) {
        for (const Edge& f2 : e2.edges) {
            if (f1.action != f2.action) continue;
            Guard g = f1.guard.conjoin(f2.guard);
            if (!g.satisfiable()) continue;
            Edge ne;
            ne.source = shell.id[f1.source][f2.source];
            ne.guard = std::move(g);
            ne.action = f1.action;
            ne.modality = modality_meet(f1.modality, f2.modality);
            int n2 = static_cast<int>(f2.support.size());
            for (size_t i = 0; i < f1.support.size(); ++i) {
                for (int j = 0; j < n2; ++j) {
                    SupportElem s;
                    s.resets = f1.support[i].resets;
                    s.target = shell.id[f1.support[i].target][f2.support[j].target];
                    ne.support.push_back(std::move(s));
                    ne.var_names.push_back("");
                }
            }
            ne.constraint = ProbConstraint::product(f1.constraint, f2.constraint);
            out.edges.push_back(std::move(ne));
        }
    }
    return ComposeResult{std::move(out), std::move(shell.provenance)};
}

// ---------------------------------------------------------------------------
// Region-level operators
// ---------------------------------------------------------------------------

namespace {

RegionAutomaton region_product(const RegionAutomaton& r1, const RegionAutomaton& r2, bool conj) {
    if (!(r1.ctx == r2.ctx))
        throw Error("CONTEXT_MISMATCH", "region composition needs a shared context");
    RegionAutomaton out;
    out.ctx = r1.ctx;
    out.model_name = r1.model_name + (conj ? "^" : "||") + r2.model_name;
    out.action_names = r1.action_names;
    for (const std::string& a : r2.action_names)
        if (std::find(out.action_names.begin(), out.action_names.end(), a) == out.action_names.end())
            out.action_names.push_back(a);
    out.prop_names = r1.prop_names;
    for (const std::string& p : r2.prop_names)
        if (std::find(out.prop_names.begin(), out.prop_names.end(), p) == out.prop_names.end())
            out.prop_names.push_back(p);
    if (r1.empty() || r2.empty()) return out;

    std::map<std::pair<int, int>, int> index;
    std::deque<std::pair<int, int>> queue;
    auto intern = [&](int s1, int s2) {
        auto key = std::make_pair(s1, s2);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(out.states.size());
        index.emplace(key, id);
        out.states.push_back(RegionState{id, r1.states[s1].region});
        out.state_names.push_back(r1.state_names[s1] + "|" + r2.state_names[s2]);
        std::set<std::set<std::string>> val;
        if (conj) {
            for (const auto& s : r1.valuations[s1])
                if (r2.valuations[s2].count(s)) val.insert(s);
        } else {
            for (const auto& a : r1.valuations[s1])
                for (const auto& b : r2.valuations[s2]) {
                    std::set<std::string> u = a;
                    u.insert(b.begin(), b.end());
                    val.insert(std::move(u));
                }
        }
        out.valuations.push_back(std::move(val));
        out.out.emplace_back();
        queue.emplace_back(s1, s2);
        return id;
    };
    intern(r1.initial, r2.initial);
    out.initial = 0;
    while (!queue.empty()) {
        auto [s1, s2] = queue.front();
        queue.pop_front();
        int sid = index[{s1, s2}];
        for (int t1 : r1.out[s1]) {
            const RegionTransition& a = r1.transitions[t1];
            for (int t2 : r2.out[s2]) {
                const RegionTransition& b = r2.transitions[t2];
                if (!(a.time_region == b.time_region)) continue;
                if (r1.action_names[a.action] != r2.action_names[b.action]) continue;
                RegionTransition nt;
                nt.source = sid;
                nt.time_region = a.time_region;
                nt.action = static_cast<int>(
                    std::find(out.action_names.begin(), out.action_names.end(),
                              r1.action_names[a.action]) -
                    out.action_names.begin());
                nt.modality = conj ? modality_join(a.modality, b.modality)
                                   : modality_meet(a.modality, b.modality);
                int n1 = static_cast<int>(a.targets.size());
                int n2 = static_cast<int>(b.targets.size());
                ProbConstraint phi;
                if (conj) {
                    std::vector<int> row_owner(n1 * n2), col_owner(n1 * n2);
                    for (int i = 0; i < n1; ++i)
                        for (int j = 0; j < n2; ++j) {
                            row_owner[i * n2 + j] = i;
                            col_owner[i * n2 + j] = j;
                        }
                    phi = a.constraint.substituted(row_owner, n1 * n2)
                              .intersected(b.constraint.substituted(col_owner, n1 * n2));
                } else {
                    phi = ProbConstraint::product(a.constraint, b.constraint);
                }
                // Zero-mass pairs are projected away so that the result lines
                // up with the region construction of the timed product.
                std::vector<bool> possible = phi.possible_support();
                std::vector<int> dead;
                for (int i = 0; i < n1; ++i)
                    for (int j = 0; j < n2; ++j) {
                        int k = i * n2 + j;
                        if (!possible[k]) {
                            dead.push_back(k);
                            continue;
                        }
                        std::set<int> resets = a.resets[i];
                        resets.insert(b.resets[j].begin(), b.resets[j].end());
                        nt.targets.push_back(intern(a.targets[i], b.targets[j]));
                        nt.resets.push_back(std::move(resets));
                    }
                nt.constraint = phi.project_out(dead);
                out.out[sid].push_back(static_cast<int>(out.transitions.size()));
                out.transitions.push_back(std::move(nt));
            }
        }
    }
    // States keep only an opaque loc id; re-number for cleanliness.
    for (size_t s = 0; s < out.states.size(); ++s) out.states[s].loc = static_cast<int>(s);
    return out;
}

}  // namespace

RegionAutomaton conjoin_region(const RegionAutomaton& r1, const RegionAutomaton& r2) {
    return region_product(r1, r2, true);
}

RegionAutomaton compose_region(const RegionAutomaton& r1, const RegionAutomaton& r2) {
    return region_product(r1, r2, false);
}

}  // namespace apta
