#include "apta/model.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace apta {

bool cmp_is_upper(Cmp c) { return c == Cmp::Lt || c == Cmp::Le; }

std::string cmp_text(Cmp c) {
    switch (c) {
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
        case Cmp::Gt: return ">";
        default: return ">=";
    }
}

Cmp cmp_invert(Cmp c) {
    switch (c) {
        case Cmp::Lt: return Cmp::Ge;
        case Cmp::Le: return Cmp::Gt;
        case Cmp::Gt: return Cmp::Le;
        default: return Cmp::Lt;
    }
}

void Guard::add(GuardAtom a) {
    if (a.bound.is_negative())
        throw Error("NEGATIVE_BOUND", "guard bounds must be nonnegative");
    // x >= 0 is trivially true for clock valuations.
    if (a.cmp == Cmp::Ge && a.bound.is_zero()) return;
    bool upper = cmp_is_upper(a.cmp);
    for (GuardAtom& e : atoms_) {
        if (e.clock != a.clock || cmp_is_upper(e.cmp) != upper) continue;
        // Keep the tightest bound of this direction.
        if (upper) {
            bool tighter = a.bound < e.bound || (a.bound == e.bound && a.cmp == Cmp::Lt);
            if (tighter) e = a;
        } else {
            bool tighter = a.bound > e.bound || (a.bound == e.bound && a.cmp == Cmp::Gt);
            if (tighter) e = a;
        }
        return;
    }
    atoms_.push_back(std::move(a));
    std::sort(atoms_.begin(), atoms_.end(), [](const GuardAtom& x, const GuardAtom& y) {
        if (x.clock != y.clock) return x.clock < y.clock;
        return !cmp_is_upper(x.cmp) && cmp_is_upper(y.cmp);
    });
}

Guard Guard::conjoin(const Guard& other) const {
    Guard g = *this;
    for (const GuardAtom& a : other.atoms_) g.add(a);
    return g;
}

bool Guard::satisfiable() const {
    for (const GuardAtom& a : atoms_) {
        if (cmp_is_upper(a.cmp)) {
            if (a.cmp == Cmp::Lt && a.bound.is_zero()) return false;  // x < 0
            // lower bound of the same clock?
            for (const GuardAtom& b : atoms_) {
                if (b.clock != a.clock || cmp_is_upper(b.cmp)) continue;
                if (b.bound > a.bound) return false;
                if (b.bound == a.bound && (b.cmp == Cmp::Gt || a.cmp == Cmp::Lt)) return false;
            }
        }
    }
    return true;
}

bool Guard::satisfied_by(const std::vector<Rational>& valuation) const {
    for (const GuardAtom& a : atoms_) {
        const Rational& v = valuation[a.clock];
        switch (a.cmp) {
            case Cmp::Lt:
                if (!(v < a.bound)) return false;
                break;
            case Cmp::Le:
                if (!(v <= a.bound)) return false;
                break;
            case Cmp::Gt:
                if (!(v > a.bound)) return false;
                break;
            case Cmp::Ge:
                if (!(v >= a.bound)) return false;
                break;
        }
    }
    return true;
}

Rational Guard::max_constant(ClockId clock) const {
    Rational m(0);
    for (const GuardAtom& a : atoms_)
        if (a.clock == clock) m = Rational::max(m, a.bound);
    return m;
}

bool Guard::operator<(const Guard& o) const {
    if (atoms_.size() != o.atoms_.size()) return atoms_.size() < o.atoms_.size();
    for (size_t i = 0; i < atoms_.size(); ++i) {
        const GuardAtom &a = atoms_[i], &b = o.atoms_[i];
        if (a.clock != b.clock) return a.clock < b.clock;
        if (a.cmp != b.cmp) return static_cast<int>(a.cmp) < static_cast<int>(b.cmp);
        if (a.bound != b.bound) return a.bound < b.bound;
    }
    return false;
}

std::string Guard::text(const std::vector<std::string>& clock_names) const {
    if (atoms_.empty()) return "true";
    std::string out;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += " && ";
        out += clock_names[atoms_[i].clock] + " " + cmp_text(atoms_[i].cmp) + " " +
               atoms_[i].bound.to_string();
    }
    return out;
}

bool Distribution::normalized() const {
    Rational s;
    for (const auto& [e, p] : entries) {
        (void)e;
        if (p.is_zero() || p.is_negative()) return false;
        s += p;
    }
    return s == Rational(1);
}

std::optional<Distribution> Edge::point_distribution() const {
    auto p = constraint.as_point();
    if (!p) return std::nullopt;
    Distribution d;
    for (size_t i = 0; i < support.size(); ++i) {
        if (!(*p)[i].is_zero()) d.entries.emplace_back(support[i], (*p)[i]);
    }
    return d;
}

const char* kind_text(ModelKind k) {
    switch (k) {
        case ModelKind::Pta: return "pta";
        case ModelKind::Apta: return "apta";
        case ModelKind::Peca: return "peca";
        default: return "apeca";
    }
}

bool kind_is_event_clock(ModelKind k) { return k == ModelKind::Peca || k == ModelKind::Apeca; }
bool kind_is_implementation(ModelKind k) { return k == ModelKind::Pta || k == ModelKind::Peca; }

Model Model::empty_spec(std::string name) {
    Model m;
    m.kind = ModelKind::Apta;
    m.name = std::move(name);
    m.initial = -1;
    return m;
}

namespace {
int find_name(const std::vector<std::string>& v, const std::string& n) {
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] == n) return static_cast<int>(i);
    return -1;
}
}  // namespace

int Model::find_location(const std::string& n) const { return find_name(locations, n); }
int Model::find_action(const std::string& n) const { return find_name(actions, n); }
int Model::find_clock(const std::string& n) const { return find_name(clocks, n); }
int Model::find_prop(const std::string& n) const { return find_name(props, n); }

LocationId Model::add_location(const std::string& n, std::set<std::set<PropId>> val) {
    locations.push_back(n);
    valuation.push_back(std::move(val));
    return static_cast<LocationId>(locations.size() - 1);
}

ActionId Model::add_action(const std::string& n) {
    int i = find_action(n);
    if (i >= 0) return i;
    actions.push_back(n);
    return static_cast<ActionId>(actions.size() - 1);
}

ClockId Model::add_clock(const std::string& n) {
    int i = find_clock(n);
    if (i >= 0) return i;
    clocks.push_back(n);
    return static_cast<ClockId>(clocks.size() - 1);
}

PropId Model::add_prop(const std::string& n) {
    int i = find_prop(n);
    if (i >= 0) return i;
    props.push_back(n);
    return static_cast<PropId>(props.size() - 1);
}

std::vector<Edge> Model::edges_from(LocationId l) const {
    std::vector<Edge> out;
    for (const Edge& e : edges)
        if (e.source == l) out.push_back(e);
    return out;
}

ClockId Model::event_clock(ActionId a) const {
    return find_clock("x_" + actions[a]);
}

std::vector<Diagnostic> validate(const Model& m) {
    std::vector<Diagnostic> out;
    auto bad = [&](std::string where, std::string msg) {
        out.push_back(Diagnostic{std::move(where), std::move(msg)});
    };
    if (m.is_empty()) {
        if (!m.edges.empty()) bad("model", "empty specification with edges");
        return out;
    }
    if (m.initial < 0 || m.initial >= static_cast<int>(m.locations.size()))
        bad("model", "initial location missing");
    if (m.valuation.size() != m.locations.size()) bad("model", "valuation size mismatch");
    for (const std::string& n : m.locations)
        if (n.empty()) bad("model", "empty location name");
    for (size_t l = 0; l < m.valuation.size(); ++l) {
        for (const auto& s : m.valuation[l])
            for (PropId p : s)
                if (p < 0 || p >= static_cast<int>(m.props.size()))
                    bad("location " + m.locations[l], "valuation uses unknown proposition");
        if (kind_is_implementation(m.kind) && m.valuation[l].size() != 1)
            bad("location " + m.locations[l], "implementation needs exactly one proposition set");
    }
    for (size_t i = 0; i < m.edges.size(); ++i) {
        const Edge& e = m.edges[i];
        std::string where = "edge #" + std::to_string(i);
        if (e.source >= 0 && e.source < static_cast<int>(m.locations.size()))
            where += " (" + m.locations[e.source] + ", " +
                     (e.action >= 0 && e.action < static_cast<int>(m.actions.size()) ? m.actions[e.action] : "?") + ")";
        if (e.source < 0 || e.source >= static_cast<int>(m.locations.size())) {
            bad(where, "dangling source");
            continue;
        }
        if (e.action < 0 || e.action >= static_cast<int>(m.actions.size())) bad(where, "unknown action");
        if (e.modality == Modality::Bot) bad(where, "stored edge with bot modality");
        if (!e.guard.atoms().empty())
            for (const GuardAtom& a : e.guard.atoms())
                if (a.clock < 0 || a.clock >= static_cast<int>(m.clocks.size()))
                    bad(where, "guard over unknown clock");
        if (static_cast<int>(e.support.size()) != e.constraint.dim())
            bad(where, "constraint dimension differs from support size");
        std::set<SupportElem> seen;
        for (const SupportElem& s : e.support) {
            if (s.target < 0 || s.target >= static_cast<int>(m.locations.size()))
                bad(where, "dangling target");
            for (ClockId c : s.resets)
                if (c < 0 || c >= static_cast<int>(m.clocks.size())) bad(where, "reset of unknown clock");
            if (!seen.insert(s).second) bad(where, "duplicate support element");
        }
        if (e.raw_point) {
            Rational s;
            for (const Rational& q : *e.raw_point) {
                if (q.is_negative()) bad(where, "negative probability");
                if (q.is_zero()) bad(where, "zero-probability branch");
                s += q;
            }
            if (s != Rational(1)) bad(where, "distribution not normalized");
        }
        if (kind_is_implementation(m.kind)) {
            if (e.modality != Modality::Must) bad(where, "implementation edge must be a must edge");
            if (!e.raw_point && !e.constraint.as_point())
                bad(where, "implementation edge needs a point distribution");
        }
    }
    return out;
}

Model complete_edges(const Model& m, const std::vector<std::string>& extra_actions) {
    Model out = m;
    for (const std::string& a : extra_actions) {
        ActionId id = out.add_action(a);
        if (kind_is_event_clock(out.kind)) out.add_clock("x_" + out.actions[id]);
    }
    if (out.is_empty()) return out;
    for (LocationId l = 0; l < static_cast<int>(out.locations.size()); ++l) {
        for (ActionId a = 0; a < static_cast<int>(out.actions.size()); ++a) {
            bool has = false;
            for (const Edge& e : out.edges)
                if (e.source == l && e.action == a) {
                    has = true;
                    break;
                }
            if (has) continue;
            Edge e;
            e.source = l;
            e.action = a;
            e.guard = Guard::always();
            e.modality = Modality::May;
            SupportElem s;
            s.target = l;
            if (kind_is_event_clock(out.kind)) {
                ClockId xc = out.event_clock(a);
                if (xc >= 0) s.resets.insert(xc);
            }
            e.support.push_back(std::move(s));
            e.constraint = ProbConstraint::falsity(1);
            e.var_names.push_back("");
            out.edges.push_back(std::move(e));
        }
    }
    return out;
}

Model as_apeca(const Model& m) {
    std::vector<Diagnostic> diags = validate(m);
    if (!diags.empty())
        throw Error("INVALID_MODEL", diags[0].where + ": " + diags[0].message);
    Model out = m;
    out.kind = kind_is_implementation(m.kind) ? ModelKind::Peca : ModelKind::Apeca;
    // Clock set must be exactly the event clocks of the actions.
    std::set<ClockId> event_clocks;
    for (ActionId a = 0; a < static_cast<int>(out.actions.size()); ++a) {
        ClockId c = out.event_clock(a);
        if (c < 0)
            throw Error("RESET_DISCIPLINE",
                        "missing event clock x_" + out.actions[a]);
        event_clocks.insert(c);
    }
    if (event_clocks.size() != out.clocks.size())
        throw Error("RESET_DISCIPLINE", "clock set is not { x_a : a in actions }");
    // Every a-branch resets exactly { x_a }.
    for (const Edge& e : out.edges) {
        ClockId xa = out.event_clock(e.action);
        for (const SupportElem& s : e.support) {
            if (s.resets != std::set<ClockId>{xa})
                throw Error("RESET_DISCIPLINE",
                            "edge from " + out.locations[e.source] + " on " + out.actions[e.action] +
                                " does not reset exactly x_" + out.actions[e.action]);
        }
    }
    // Guard completeness, region-wise.
    std::string witness = incomplete_witness(out);
    if (!witness.empty()) throw Error("INCOMPLETE", witness);
    return out;
}

std::string incomplete_witness(const Model& m) {
    for (LocationId l = 0; l < static_cast<int>(m.locations.size()); ++l) {
        for (ActionId a = 0; a < static_cast<int>(m.actions.size()); ++a) {
            std::vector<const Edge*> fam;
            for (const Edge& e : m.edges)
                if (e.source == l && e.action == a) fam.push_back(&e);
            if (fam.empty())
                return "no " + m.actions[a] + "-edge at " + m.locations[l];
            // Uncovered valuations = intersection over edges of the guards'
            // complements; each complement is a union of inverted atoms, so
            // distribute and test each combination for satisfiability.
            bool covered_everywhere = true;
            std::function<bool(size_t, const Guard&)> uncovered = [&](size_t i, const Guard& acc) -> bool {
                if (!acc.satisfiable()) return false;
                if (i == fam.size()) return true;
                const Guard& g = fam[i]->guard;
                if (g.is_true()) return false;  // complement empty
                for (const GuardAtom& at : g.atoms()) {
                    Guard next = acc;
                    GuardAtom inv{at.clock, cmp_invert(at.cmp), at.bound};
                    bool bad = false;
                    try {
                        next.add(inv);
                    } catch (const Error&) {
                        bad = true;  // x < 0 style piece, empty
                    }
                    if (!bad && uncovered(i + 1, next)) return true;
                }
                return false;
            };
            if (uncovered(0, Guard::always())) covered_everywhere = false;
            if (!covered_everywhere)
                return "guards for (" + m.locations[l] + ", " + m.actions[a] +
                       ") do not cover the clock space";
        }
    }
    return "";
}

Model reachable_part(const Model& m) {
    if (m.is_empty()) return m;
    std::vector<bool> seen(m.locations.size(), false);
    std::vector<LocationId> queue{m.initial};
    seen[m.initial] = true;
    while (!queue.empty()) {
        LocationId l = queue.back();
        queue.pop_back();
        for (const Edge& e : m.edges) {
            if (e.source != l) continue;
            std::vector<bool> possible = e.constraint.possible_support();
            for (size_t i = 0; i < e.support.size(); ++i) {
                if (!possible[i]) continue;
                LocationId t = e.support[i].target;
                if (!seen[t]) {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    Model out = m;
    out.locations.clear();
    out.valuation.clear();
    out.edges.clear();
    std::vector<int> remap(m.locations.size(), -1);
    for (size_t l = 0; l < m.locations.size(); ++l) {
        if (!seen[l]) continue;
        remap[l] = out.add_location(m.locations[l], m.valuation[l]);
    }
    out.initial = remap[m.initial];
    for (const Edge& e : m.edges) {
        if (e.source < 0 || !seen[e.source]) continue;
        Edge ne = e;
        ne.source = remap[e.source];
        bool targets_ok = true;
        std::vector<int> dead;
        std::vector<bool> possible = e.constraint.possible_support();
        std::vector<SupportElem> support;
        std::vector<std::string> vars;
        for (size_t i = 0; i < e.support.size(); ++i) {
            if (possible[i] && seen[e.support[i].target]) {
                SupportElem s = e.support[i];
                s.target = remap[s.target];
                support.push_back(std::move(s));
                vars.push_back(i < e.var_names.size() ? e.var_names[i] : "");
            } else {
                dead.push_back(static_cast<int>(i));
            }
        }
        (void)targets_ok;
        ne.support = std::move(support);
        ne.var_names = std::move(vars);
        ne.constraint = e.constraint.project_out(dead);
        out.edges.push_back(std::move(ne));
    }
    return out;
}

std::vector<std::string> union_names(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const std::string& n : b)
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    return out;
}

}  // namespace apta
