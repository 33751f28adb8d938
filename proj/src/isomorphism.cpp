#include "apta/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace apta {

namespace {

// Permutation-aware semantic equality; factorizes over product constraints.
bool constraint_equal_perm(const ProbConstraint& a, const ProbConstraint& b,
                           const std::vector<int>& perm) {
    if (a.dim() != b.dim()) return false;
    if (a.is_product() || b.is_product()) {
        if (!a.is_product() || !b.is_product()) return false;
        int nl = a.left().dim(), nr = a.right().dim();
        if (b.left().dim() != nl || b.right().dim() != nr) return false;
        // perm must factor as (pl, pr): perm(i*nr+j) = pl(i)*nr + pr(j).
        std::vector<int> pl(nl, -1), pr(nr, -1);
        for (int j = 0; j < nr; ++j) pr[j] = perm[j] % nr;
        for (int i = 0; i < nl; ++i) pl[i] = perm[i * nr] / nr;
        for (int i = 0; i < nl; ++i)
            for (int j = 0; j < nr; ++j)
                if (perm[i * nr + j] != pl[i] * nr + pr[j]) return false;
        return constraint_equal_perm(a.left(), b.left(), pl) &&
               constraint_equal_perm(a.right(), b.right(), pr);
    }
    return a.sat_equal(b.permuted(perm));
}

struct Matcher {
    const Model& a;
    const Model& b;
    std::vector<int> act_map;    // a action -> b action
    std::vector<int> clock_map;  // a clock -> b clock
    std::vector<int> loc_map;    // a location -> b location (-1 open)
    std::vector<bool> used;      // b locations already taken
    std::vector<std::vector<int>> a_out, b_out;  // edge indices per location

    bool name_maps() {
        if (a.actions.size() != b.actions.size() || a.clocks.size() != b.clocks.size()) return false;
        act_map.assign(a.actions.size(), -1);
        clock_map.assign(a.clocks.size(), -1);
        for (size_t i = 0; i < a.actions.size(); ++i) {
            int j = b.find_action(a.actions[i]);
            if (j < 0) return false;
            act_map[i] = j;
        }
        for (size_t i = 0; i < a.clocks.size(); ++i) {
            int j = b.find_clock(a.clocks[i]);
            if (j < 0) return false;
            clock_map[i] = j;
        }
        return true;
    }

    std::set<std::set<std::string>> val_names(const Model& m, LocationId l) const {
        std::set<std::set<std::string>> out;
        for (const auto& s : m.valuation[l]) {
            std::set<std::string> names;
            for (PropId p : s) names.insert(m.props[p]);
            out.insert(names);
        }
        return out;
    }

    Guard remap_guard(const Guard& g) const {
        Guard out;
        for (const GuardAtom& at : g.atoms())
            out.add(GuardAtom{clock_map[at.clock], at.cmp, at.bound});
        return out;
    }

    // Does edge ea (of a) match edge eb (of b) under the current location map?
    // Every target of ea must already be mapped.
    bool edges_match(const Edge& ea, const Edge& eb) const {
        if (act_map[ea.action] != eb.action) return false;
        if (ea.modality != eb.modality) return false;
        if (ea.support.size() != eb.support.size()) return false;
        if (remap_guard(ea.guard) != eb.guard) return false;
        std::vector<int> perm(ea.support.size());
        for (size_t i = 0; i < ea.support.size(); ++i) {
            std::set<ClockId> resets;
            for (ClockId c : ea.support[i].resets) resets.insert(clock_map[c]);
            int want_target = loc_map[ea.support[i].target];
            int pos = -1;
            for (size_t j = 0; j < eb.support.size(); ++j) {
                if (eb.support[j].target == want_target && eb.support[j].resets == resets) {
                    pos = static_cast<int>(j);
                    break;
                }
            }
            if (pos < 0) return false;
            perm[i] = pos;
        }
        return constraint_equal_perm(ea.constraint, eb.constraint, perm);
    }

    // All targets of the location's edges that are not yet mapped.
    bool try_map(LocationId la, LocationId lb, std::vector<std::pair<LocationId, LocationId>>& order);

    bool check_edges(LocationId la, LocationId lb) {
        const auto& ea = a_out[la];
        const auto& eb = b_out[lb];
        if (ea.size() != eb.size()) return false;
        // Bijection between the two edge families, by backtracking.
        std::vector<bool> taken(eb.size(), false);
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
            if (i == ea.size()) return true;
            for (size_t j = 0; j < eb.size(); ++j) {
                if (taken[j]) continue;
                if (!edges_match(a.edges[ea[i]], b.edges[eb[j]])) continue;
                taken[j] = true;
                if (rec(i + 1)) return true;
                taken[j] = false;
            }
            return false;
        };
        return rec(0);
    }

    bool extend(size_t frontier, std::vector<std::pair<LocationId, LocationId>>& pairs) {
        if (frontier == pairs.size()) {
            // Frontier exhausted; continue with any unreached location (the
            // conjunction and composition operators keep unreachable product
            // locations around, so they must be matched too).
            int la = -1;
            for (size_t i = 0; i < loc_map.size(); ++i)
                if (loc_map[i] < 0) {
                    la = static_cast<int>(i);
                    break;
                }
            if (la < 0) return true;
            for (LocationId lb = 0; lb < static_cast<int>(b.locations.size()); ++lb) {
                if (used[lb]) continue;
                if (val_names(a, la) != val_names(b, lb)) continue;
                if (a_out[la].size() != b_out[lb].size()) continue;
                loc_map[la] = lb;
                used[lb] = true;
                pairs.emplace_back(la, lb);
                if (extend(frontier, pairs)) return true;
                pairs.pop_back();
                loc_map[la] = -1;
                used[lb] = false;
            }
            return false;
        }
        auto [la, lb] = pairs[frontier];
        // Map the still-unmapped targets of la's edges, in order.
        std::vector<LocationId> todo;
        for (int ei : a_out[la])
            for (const SupportElem& s : a.edges[ei].support)
                if (loc_map[s.target] < 0 &&
                    std::find(todo.begin(), todo.end(), s.target) == todo.end())
                    todo.push_back(s.target);
        std::function<bool(size_t)> assign = [&](size_t k) -> bool {
            if (k == todo.size()) {
                if (!check_edges(la, lb)) return false;
                return extend(frontier + 1, pairs);
            }
            LocationId ta = todo[k];
            for (LocationId tb = 0; tb < static_cast<int>(b.locations.size()); ++tb) {
                if (used[tb]) continue;
                if (val_names(a, ta) != val_names(b, tb)) continue;
                if (a_out[ta].size() != b_out[tb].size()) continue;
                loc_map[ta] = tb;
                used[tb] = true;
                pairs.emplace_back(ta, tb);
                if (assign(k + 1)) return true;
                pairs.pop_back();
                loc_map[ta] = -1;
                used[tb] = false;
            }
            return false;
        };
        return assign(0);
    }

    IsoResult run() {
        IsoResult res;
        if (a.is_empty() && b.is_empty()) {
            res.holds = true;
            return res;
        }
        if (a.is_empty() || b.is_empty()) return res;
        if (a.locations.size() != b.locations.size()) return res;
        if (!name_maps()) return res;
        // Proposition universes may differ in unused names; valuations decide.
        a_out.assign(a.locations.size(), {});
        for (size_t i = 0; i < a.edges.size(); ++i) a_out[a.edges[i].source].push_back(static_cast<int>(i));
        b_out.assign(b.locations.size(), {});
        for (size_t i = 0; i < b.edges.size(); ++i) b_out[b.edges[i].source].push_back(static_cast<int>(i));
        loc_map.assign(a.locations.size(), -1);
        used.assign(b.locations.size(), false);
        if (val_names(a, a.initial) != val_names(b, b.initial)) return res;
        loc_map[a.initial] = b.initial;
        used[b.initial] = true;
        std::vector<std::pair<LocationId, LocationId>> pairs{{a.initial, b.initial}};
        if (extend(0, pairs)) {
            res.holds = true;
            res.mapping = loc_map;
        }
        return res;
    }
};

}  // namespace

IsoResult isomorphic(const Model& a, const Model& b) {
    Matcher m{a, b, {}, {}, {}, {}, {}, {}};
    return m.run();
}

}  // namespace apta
