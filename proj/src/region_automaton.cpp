#include "apta/region_automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "apta/isomorphism.hpp"

namespace apta {

std::string RegionAutomaton::label_text(const RegionTransition& t) const {
    std::string out = t.time_region.text(ctx) + " / " + action_names[t.action] + " /";
    for (size_t i = 0; i < t.targets.size(); ++i) {
        out += i ? " " : " ";
        out += "{";
        bool first = true;
        for (int c : t.resets[i]) {
            if (!first) out += ",";
            first = false;
            out += ctx.clock_names[c];
        }
        out += "}";
    }
    return out;
}

namespace {

struct PreparedEdge {
    const Edge* edge;
    int edge_index = -1;
    std::vector<GuardAtom> guard_atoms;     // context clock ids
    std::vector<SupportElem> support;       // context clock ids in resets
    ProbConstraint constraint;              // zero-mass support projected out
};

std::set<std::set<std::string>> valuation_names(const Model& m, LocationId l) {
    std::set<std::set<std::string>> out;
    for (const auto& s : m.valuation[l]) {
        std::set<std::string> names;
        for (PropId p : s) names.insert(m.props[p]);
        out.insert(names);
    }
    return out;
}

}  // namespace

RegionAutomaton build_region(const Model& m, const RegionContext& ctx, bool full) {
    RegionAutomaton ra;
    ra.ctx = ctx;
    ra.model_name = m.name;
    ra.implementation = kind_is_implementation(m.kind);
    ra.action_names = m.actions;
    ra.prop_names = m.props;
    if (m.is_empty()) return ra;

    std::vector<int> clock_map(m.clocks.size());
    for (size_t c = 0; c < m.clocks.size(); ++c) {
        auto it = std::find(ctx.clock_names.begin(), ctx.clock_names.end(), m.clocks[c]);
        if (it == ctx.clock_names.end()) throw Error("CLOCK_MISMATCH", "clock missing from context");
        clock_map[c] = static_cast<int>(it - ctx.clock_names.begin());
    }

    // Support elements that can never carry mass are dropped up front; the
    // remaining reindexing per region is then total.
    std::vector<std::vector<PreparedEdge>> by_loc(m.locations.size());
    for (size_t ei = 0; ei < m.edges.size(); ++ei) {
        const Edge& e = m.edges[ei];
        PreparedEdge pe;
        pe.edge_index = static_cast<int>(ei);
        pe.edge = &e;
        for (const GuardAtom& a : e.guard.atoms())
            pe.guard_atoms.push_back(GuardAtom{clock_map[a.clock], a.cmp, a.bound});
        std::vector<bool> possible = e.constraint.possible_support();
        std::vector<int> dead;
        for (size_t i = 0; i < e.support.size(); ++i) {
            if (!possible[i]) {
                dead.push_back(static_cast<int>(i));
                continue;
            }
            SupportElem s;
            s.target = e.support[i].target;
            for (ClockId c : e.support[i].resets) s.resets.insert(clock_map[c]);
            pe.support.push_back(std::move(s));
        }
        pe.constraint = e.constraint.project_out(dead);
        by_loc[e.source].push_back(std::move(pe));
    }

    std::map<std::pair<LocationId, Region>, int> index;
    auto intern = [&](LocationId l, const Region& r) {
        auto key = std::make_pair(l, r);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(ra.states.size());
        index.emplace(key, id);
        ra.states.push_back(RegionState{l, r});
        ra.state_names.push_back(m.locations[l] + "@" + r.text(ctx));
        ra.valuations.push_back(valuation_names(m, l));
        ra.out.emplace_back();
        return id;
    };

    ra.initial = intern(m.initial, Region::zero(ctx));
    std::deque<int> queue{ra.initial};
    if (full) {
        for (LocationId l = 0; l < static_cast<int>(m.locations.size()); ++l)
            for (const Region& r : all_regions(ctx)) queue.push_back(intern(l, r));
    }
    std::vector<bool> expanded;
    while (!queue.empty()) {
        int sid = queue.front();
        queue.pop_front();
        if (static_cast<size_t>(sid) < expanded.size() && expanded[sid]) continue;
        if (expanded.size() < ra.states.size()) expanded.resize(ra.states.size(), false);
        if (expanded[sid]) continue;
        expanded[sid] = true;
        LocationId l = ra.states[sid].loc;
        Region theta = ra.states[sid].region;
        for (const PreparedEdge& pe : by_loc[l]) {
            for (const Region& theta2 : theta.successors(ctx)) {
                if (!theta2.entails(ctx, pe.guard_atoms)) continue;
                // Reindex support onto target states; colliding reset sets
                // land on one state and their probabilities are summed.
                std::vector<std::pair<int, std::set<int>>> tgt;  // (state, resets)
                std::vector<int> fmap(pe.support.size());
                for (size_t i = 0; i < pe.support.size(); ++i) {
                    Region tr = theta2.reset(ctx, pe.support[i].resets);
                    int tid = intern(pe.support[i].target, tr);
                    if (static_cast<size_t>(tid) >= expanded.size() || !expanded[tid]) queue.push_back(tid);
                    int pos = -1;
                    for (size_t j = 0; j < tgt.size(); ++j)
                        if (tgt[j].first == tid) pos = static_cast<int>(j);
                    if (pos < 0) {
                        pos = static_cast<int>(tgt.size());
                        tgt.emplace_back(tid, pe.support[i].resets);
                    } else {
                        // Keep the inclusion-least reset set of the collision.
                        const std::set<int>& cur = tgt[pos].second;
                        const std::set<int>& cand = pe.support[i].resets;
                        bool cand_sub = std::includes(cur.begin(), cur.end(), cand.begin(), cand.end());
                        if (cand_sub) tgt[pos].second = cand;
                        ra.notes.push_back("reset collision at " + ra.state_names[sid] + " on " +
                                           m.actions[pe.edge->action] + ": probabilities summed");
                    }
                    fmap[i] = pos;
                }
                RegionTransition t;
                t.source = sid;
                t.time_region = theta2;
                t.action = pe.edge->action;
                t.modality = pe.edge->modality;
                t.source_edge = pe.edge_index;
                for (auto& [tid, rs] : tgt) {
                    t.targets.push_back(tid);
                    t.resets.push_back(rs);
                }
                t.constraint = pe.constraint.image(fmap, static_cast<int>(tgt.size()));
                ra.transitions.push_back(std::move(t));
            }
        }
    }
    for (size_t i = 0; i < ra.transitions.size(); ++i)
        ra.out[ra.transitions[i].source].push_back(static_cast<int>(i));
    return ra;
}

RegionAutomaton build_region(const Model& m) {
    return build_region(m, make_context({&m}));
}

Model translate_back(const RegionAutomaton& ra) {
    Model out;
    out.kind = ra.implementation ? ModelKind::Pta : ModelKind::Apta;
    out.name = ra.model_name.empty() ? "region" : ra.model_name + ".region";
    out.actions = ra.action_names;
    out.clocks = ra.ctx.clock_names;
    out.props = ra.prop_names;
    out.notes = ra.notes;
    if (ra.empty()) return Model::empty_spec(out.name);
    for (size_t s = 0; s < ra.states.size(); ++s) {
        std::set<std::set<PropId>> val;
        for (const auto& names : ra.valuations[s]) {
            std::set<PropId> ids;
            for (const std::string& n : names) {
                int p = out.find_prop(n);
                ids.insert(p >= 0 ? p : out.add_prop(n));
            }
            val.insert(ids);
        }
        std::string name = ra.state_names[s];
        while (out.find_location(name) >= 0) name += "'";
        out.add_location(name, std::move(val));
    }
    out.initial = ra.initial;
    for (const RegionTransition& t : ra.transitions) {
        Edge e;
        e.source = t.source;
        e.action = t.action;
        e.modality = t.modality;
        Guard g;
        for (const GuardAtom& a : t.time_region.box_atoms(ra.ctx)) g.add(a);
        e.guard = std::move(g);
        for (size_t i = 0; i < t.targets.size(); ++i) {
            SupportElem s;
            s.target = t.targets[i];
            for (int c : t.resets[i]) s.resets.insert(c);
            e.support.push_back(std::move(s));
            e.var_names.push_back("");
        }
        e.constraint = t.constraint;
        out.edges.push_back(std::move(e));
    }
    return out;
}

Model normalize(const Model& m) { return translate_back(build_region(m)); }

bool is_normal(const Model& m) {
    if (m.is_empty()) return true;
    return isomorphic(reachable_part(m), normalize(m)).holds;
}

std::string region_automaton_dot(const RegionAutomaton& ra) {
    std::string out = "digraph region {\n  rankdir=LR;\n  node [shape=box];\n";
    for (size_t s = 0; s < ra.states.size(); ++s) {
        std::string loc = ra.state_names[s];
        size_t at = loc.find('@');
        std::string lbl = loc.substr(0, at) + " | " + (at == std::string::npos ? "" : loc.substr(at + 1));
        out += "  s" + std::to_string(s) + " [label=\"" + lbl + "\"";
        if (static_cast<int>(s) == ra.initial) out += ", penwidth=2";
        out += "];\n";
    }
    for (const RegionTransition& t : ra.transitions) {
        for (size_t i = 0; i < t.targets.size(); ++i) {
            out += "  s" + std::to_string(t.source) + " -> s" + std::to_string(t.targets[i]);
            out += " [label=\"" + ra.label_text(t) + "\"";
            if (t.modality == Modality::May) out += ", style=dashed";
            out += "];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace apta
