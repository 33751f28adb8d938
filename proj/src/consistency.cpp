#include "apta/consistency.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace apta {

bool location_consistent(const Model& m, LocationId l) {
    if (m.valuation[l].empty()) return false;
    for (const Edge& e : m.edges) {
        if (e.source != l || e.modality != Modality::Must) continue;
        if (!e.constraint.sat_nonempty()) return false;
    }
    return true;
}

Model prune(const Model& m) {
    if (m.is_empty()) return m;
    std::vector<bool> bad(m.locations.size(), false);
    bool any = false;
    for (LocationId l = 0; l < static_cast<int>(m.locations.size()); ++l) {
        bad[l] = !location_consistent(m, l);
        any = any || bad[l];
    }
    if (!any) return m;
    if (bad[m.initial]) return Model::empty_spec(m.name);
    Model out = m;
    out.locations.clear();
    out.valuation.clear();
    out.edges.clear();
    std::vector<int> remap(m.locations.size(), -1);
    for (size_t l = 0; l < m.locations.size(); ++l)
        if (!bad[l]) remap[l] = out.add_location(m.locations[l], m.valuation[l]);
    out.initial = remap[m.initial];
    for (const Edge& e : m.edges) {
        if (bad[e.source]) continue;
        std::vector<int> dead;
        for (size_t i = 0; i < e.support.size(); ++i)
            if (bad[e.support[i].target]) dead.push_back(static_cast<int>(i));
        Edge ne;
        ne.source = remap[e.source];
        ne.guard = e.guard;
        ne.action = e.action;
        ne.modality = e.modality;
        // Dropping the dead coordinates forces their mass to zero exactly.
        ne.constraint = e.constraint.project_out(dead);
        for (size_t i = 0; i < e.support.size(); ++i) {
            if (bad[e.support[i].target]) continue;
            SupportElem s = e.support[i];
            s.target = remap[s.target];
            ne.support.push_back(std::move(s));
            ne.var_names.push_back(i < e.var_names.size() ? e.var_names[i] : "");
        }
        if (e.modality == Modality::May && !dead.empty() && !ne.constraint.sat_nonempty() &&
            e.constraint.sat_nonempty()) {
            // A may edge whose admissible set was emptied by the restriction
            // disappears; may edges that were empty to begin with stay (they
            // carry the event-clock completeness convention).
            continue;
        }
        out.edges.push_back(std::move(ne));
    }
    return out;
}

Model prune_star(const Model& m) {
    Model cur = m;
    for (;;) {
        bool all_ok = true;
        if (cur.is_empty()) return cur;
        for (LocationId l = 0; l < static_cast<int>(cur.locations.size()) && all_ok; ++l)
            all_ok = location_consistent(cur, l);
        if (all_ok) return cur;
        cur = prune(cur);
    }
}

std::optional<Model> extract_implementation(const Model& m) {
    Model pruned = prune_star(m);
    if (pruned.is_empty()) return std::nullopt;
    RegionAutomaton ra = build_region(pruned);
    RegionAutomaton impl = ra;
    impl.implementation = true;
    impl.transitions.clear();
    impl.out.assign(ra.states.size(), {});
    for (size_t s = 0; s < ra.states.size(); ++s) {
        // Lexicographically least admissible valuation.
        assert(!ra.valuations[s].empty());
        impl.valuations[s] = {*ra.valuations[s].begin()};
    }
    for (const RegionTransition& t : ra.transitions) {
        if (t.modality != Modality::Must) continue;
        std::vector<QVector> verts = t.constraint.vertices();
        assert(!verts.empty());
        std::sort(verts.begin(), verts.end(), [](const QVector& a, const QVector& b) {
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i];
            return false;
        });
        const QVector& v = verts.front();
        RegionTransition nt;
        nt.source = t.source;
        nt.time_region = t.time_region;
        nt.action = t.action;
        nt.modality = Modality::Must;
        nt.source_edge = t.source_edge;
        QVector probs;
        for (size_t i = 0; i < t.targets.size(); ++i) {
            if (v[i].is_zero()) continue;
            nt.targets.push_back(t.targets[i]);
            nt.resets.push_back(t.resets[i]);
            probs.push_back(v[i]);
        }
        nt.constraint = ProbConstraint::point(probs);
        impl.out[nt.source].push_back(static_cast<int>(impl.transitions.size()));
        impl.transitions.push_back(std::move(nt));
    }
    Model out = reachable_part(translate_back(impl));
    out.name = m.name + ".impl";
    return out;
}

// ---------------------------------------------------------------------------
// Divergence game
// ---------------------------------------------------------------------------

DivergenceGame build_divergence_game(const Model& m) {
    Model pruned = prune_star(m);
    if (pruned.is_empty())
        throw Error("INCONSISTENT_INPUT", "specification has no implementations");
    RegionAutomaton ra = build_region(pruned);
    DivergenceGame g;
    // Player nodes mirror the region states.
    for (size_t s = 0; s < ra.states.size(); ++s) {
        DivergenceGame::Node n;
        n.owner = DivergenceGame::Owner::Player;
        n.label = ra.state_names[s];
        g.nodes.push_back(std::move(n));
    }
    g.initial = ra.initial;
    struct Pick {
        int transition;
        QVector vertex;
    };
    for (size_t s = 0; s < ra.states.size(); ++s) {
        // Group the state's transitions by originating timed edge.
        std::map<int, std::vector<int>> groups;
        for (int t : ra.out[s]) groups[ra.transitions[t].source_edge].push_back(t);
        std::vector<std::vector<std::optional<Pick>>> options;  // per group
        for (const auto& [edge_idx, ts] : groups) {
            bool is_must = pruned.edges[edge_idx].modality == Modality::Must;
            std::vector<std::optional<Pick>> opts;
            if (!is_must) opts.push_back(std::nullopt);  // may edges can stay unrealized
            for (int t : ts) {
                std::vector<QVector> verts = ra.transitions[t].constraint.vertices();
                std::sort(verts.begin(), verts.end(), [](const QVector& a, const QVector& b) {
                    for (size_t i = 0; i < a.size(); ++i)
                        if (a[i] != b[i]) return a[i] < b[i];
                    return false;
                });
                for (const QVector& v : verts) opts.push_back(Pick{t, v});
            }
            if (opts.empty()) continue;  // must edge with no enabled instance
            options.push_back(std::move(opts));
        }
        // Cartesian product of the per-edge options = player realizations.
        size_t count = 1;
        for (const auto& o : options) {
            count *= o.size();
            if (count > 20000) throw Error("GAME_SIZE", "realization space too large");
        }
        std::vector<std::optional<Pick>> current(options.size());
        std::function<void(size_t)> rec = [&](size_t gi) {
            if (gi == options.size()) {
                DivergenceGame::Node adv;
                adv.owner = DivergenceGame::Owner::Adversary;
                adv.label = g.nodes[s].label + "/real";
                std::vector<DivergenceGame::Node> chances;
                for (const auto& pick : current) {
                    if (!pick) continue;
                    const RegionTransition& t = ra.transitions[pick->transition];
                    bool tick = t.time_region != ra.states[s].region || t.time_region.absorbing();
                    DivergenceGame::Node chance;
                    chance.owner = DivergenceGame::Owner::Chance;
                    chance.label = ra.label_text(t);
                    for (size_t i = 0; i < t.targets.size(); ++i) {
                        if (pick->vertex[i].is_zero()) continue;
                        DivergenceGame::Move cm;
                        cm.target = t.targets[i];
                        cm.tick = false;
                        cm.prob = pick->vertex[i];
                        cm.label = ra.state_names[t.targets[i]];
                        chance.moves.push_back(std::move(cm));
                    }
                    DivergenceGame::Move am;
                    am.tick = tick;
                    am.label = ra.label_text(t);
                    adv.moves.push_back(std::move(am));
                    chances.push_back(std::move(chance));
                }
                int adv_id = static_cast<int>(g.nodes.size());
                for (size_t k = 0; k < adv.moves.size(); ++k)
                    adv.moves[k].target = adv_id + 1 + static_cast<int>(k);
                if (adv.moves.empty()) {
                    DivergenceGame::Move self;
                    self.target = adv_id;
                    self.tick = false;
                    self.label = "idle";
                    adv.moves.push_back(std::move(self));
                }
                g.nodes.push_back(std::move(adv));
                for (auto& c : chances) g.nodes.push_back(std::move(c));
                DivergenceGame::Move pm;
                pm.target = adv_id;
                pm.tick = false;
                pm.label = "realize";
                g.nodes[s].moves.push_back(std::move(pm));
                return;
            }
            for (const auto& opt : options[gi]) {
                current[gi] = opt;
                rec(gi + 1);
            }
        };
        rec(0);
        if (g.nodes[s].moves.empty()) {
            // No realization at all (cannot happen: the empty set is one).
            DivergenceGame::Move self;
            self.target = static_cast<int>(s);
            self.tick = false;
            self.label = "stuck";
            g.nodes[s].moves.push_back(std::move(self));
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Game solvers
// ---------------------------------------------------------------------------

namespace {

using Owner = DivergenceGame::Owner;

// Attractor computation generic over which owners act existentially. Only
// moves between alive nodes count; "good" moves (ticks into alive nodes) are
// targets themselves.
std::vector<bool> attractor(const DivergenceGame& g, const std::vector<bool>& alive,
                            const std::vector<bool>& base, bool exist_player, bool exist_chance,
                            bool ticks_are_base, std::vector<int>* choice = nullptr) {
    size_t n = g.nodes.size();
    std::vector<bool> in(base);
    if (choice) choice->assign(n, -1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t u = 0; u < n; ++u) {
            if (!alive[u] || in[u]) continue;
            bool exist;
            switch (g.nodes[u].owner) {
                case Owner::Player: exist = exist_player; break;
                case Owner::Adversary: exist = !exist_player; break;
                default: exist = exist_chance; break;
            }
            bool any = false, all = true, has_move = false;
            int pick = -1;
            for (size_t mi = 0; mi < g.nodes[u].moves.size(); ++mi) {
                const auto& mv = g.nodes[u].moves[mi];
                if (!alive[mv.target]) {
                    // Moves out of the subgame: unusable for the existential
                    // side, already excluded for the universal side by the
                    // attractor invariant.
                    continue;
                }
                has_move = true;
                bool good = in[mv.target] || (ticks_are_base && mv.tick);
                if (good && pick < 0) pick = static_cast<int>(mi);
                any = any || good;
                all = all && good;
            }
            bool now = exist ? any : (has_move && all);
            if (now) {
                in[u] = true;
                if (choice && pick >= 0) (*choice)[u] = pick;
                changed = true;
            }
        }
    }
    return in;
}

std::vector<bool> solve_buchi(const DivergenceGame& g, bool almost_sure,
                              std::vector<int>* strategy = nullptr) {
    size_t n = g.nodes.size();
    std::vector<bool> alive(n, true);
    for (;;) {
        std::vector<bool> none(n, false);
        // From where can the player (with chance helping only in the
        // almost-sure reading) force one more tick inside the subgame?
        std::vector<int> choice;
        std::vector<bool> reach =
            attractor(g, alive, none, true, almost_sure, true, strategy ? &choice : nullptr);
        std::vector<bool> stuck(n, false);
        bool any_stuck = false;
        for (size_t u = 0; u < n; ++u) {
            if (alive[u] && !reach[u]) {
                stuck[u] = true;
                any_stuck = true;
            }
        }
        if (!any_stuck) {
            if (strategy) *strategy = choice;
            return alive;
        }
        // The adversary (with chance) drags the play toward the stuck set.
        std::vector<bool> drag = attractor(g, alive, stuck, false, true, false);
        for (size_t u = 0; u < n; ++u)
            if (drag[u]) alive[u] = false;
    }
}

}  // namespace

std::vector<bool> solve_buchi_sure(const DivergenceGame& g) { return solve_buchi(g, false); }

std::vector<bool> solve_buchi_almost_sure(const DivergenceGame& g) { return solve_buchi(g, true); }

std::vector<int> buchi_strategy(const DivergenceGame& g, const std::vector<bool>& winning,
                                bool almost_sure) {
    std::vector<bool> none(g.nodes.size(), false);
    std::vector<int> choice;
    attractor(g, winning, none, true, almost_sure, true, &choice);
    for (size_t u = 0; u < g.nodes.size(); ++u)
        if (!winning[u] || g.nodes[u].owner != DivergenceGame::Owner::Player) choice[u] = -1;
    return choice;
}

bool sd_consistent(const Model& m) {
    Model pruned = prune_star(m);
    if (pruned.is_empty()) return false;
    DivergenceGame g = build_divergence_game(pruned);
    return solve_buchi_sure(g)[g.initial];
}

bool pd_consistent(const Model& m) {
    Model pruned = prune_star(m);
    if (pruned.is_empty()) return false;
    DivergenceGame g = build_divergence_game(pruned);
    return solve_buchi_almost_sure(g)[g.initial];
}

}  // namespace apta
