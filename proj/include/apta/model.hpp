// ============================================================================
// model.hpp — probabilistic timed automata and their modal specifications
// ============================================================================
//
// One Model type covers the four document kinds:
//
//   pta    concrete implementation: every edge must, point distributions,
//          one admissible proposition set per location
//   apta   modal specification: may/must edges, probability constraints,
//          sets of admissible proposition sets
//   peca / apeca  the event-clock subclasses: one clock per action, every
//          a-labelled branch resets exactly that action's clock, and the
//          guards of each (location, action) family cover the clock space
//
// Kind-specific invariants are enforced by validate() / check_apeca(), not by
// the type system; all construction operators work on the general shape.

#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "apta/constraint.hpp"

namespace apta {

using ClockId = int;
using ActionId = int;
using PropId = int;
using LocationId = int;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg) : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// ---------------------------------------------------------------------------
// Guards
// ---------------------------------------------------------------------------

enum class Cmp { Lt, Le, Gt, Ge };

bool cmp_is_upper(Cmp c);
std::string cmp_text(Cmp c);
Cmp cmp_invert(Cmp c);  // logical negation: < -> >=, etc.

struct GuardAtom {
    ClockId clock;
    Cmp cmp;
    Rational bound;  // nonnegative

    bool operator==(const GuardAtom& o) const {
        return clock == o.clock && cmp == o.cmp && bound == o.bound;
    }
};

// Normalized conjunction of atoms: per clock at most one lower and one upper
// bound (the tightest seen), trivial atoms (x >= 0) dropped, atoms ordered by
// (clock, lower-before-upper). An unsatisfiable conjunction stays
// representable and is detected by satisfiable().
class Guard {
public:
    Guard() = default;
    static Guard always() { return Guard(); }

    void add(GuardAtom a);
    Guard conjoin(const Guard& other) const;

    const std::vector<GuardAtom>& atoms() const { return atoms_; }
    bool is_true() const { return atoms_.empty(); }
    bool satisfiable() const;
    bool satisfied_by(const std::vector<Rational>& valuation) const;

    Rational max_constant(ClockId clock) const;  // 0 when unconstrained

    bool operator==(const Guard& o) const { return atoms_ == o.atoms_; }
    bool operator!=(const Guard& o) const { return !(*this == o); }
    bool operator<(const Guard& o) const;

    std::string text(const std::vector<std::string>& clock_names) const;

private:
    std::vector<GuardAtom> atoms_;
};

// ---------------------------------------------------------------------------
// Modalities
// ---------------------------------------------------------------------------

enum class Modality { Bot = 0, May = 1, Must = 2 };

inline Modality modality_meet(Modality a, Modality b) { return a < b ? a : b; }
inline Modality modality_join(Modality a, Modality b) { return a < b ? b : a; }
inline const char* modality_text(Modality m) {
    switch (m) {
        case Modality::Bot: return "bot";
        case Modality::May: return "may";
        default: return "must";
    }
}

// ---------------------------------------------------------------------------
// Distributions and edges
// ---------------------------------------------------------------------------

struct SupportElem {
    std::set<ClockId> resets;
    LocationId target;

    bool operator==(const SupportElem& o) const { return resets == o.resets && target == o.target; }
    bool operator<(const SupportElem& o) const {
        if (target != o.target) return target < o.target;
        return resets < o.resets;
    }
};

struct Distribution {
    // Sorted by support element; values positive, summing to one.
    std::vector<std::pair<SupportElem, Rational>> entries;

    static Distribution point(SupportElem e) {
        Distribution d;
        d.entries.emplace_back(std::move(e), Rational(1));
        return d;
    }
    bool normalized() const;
};

struct Edge {
    LocationId source = -1;
    Guard guard;
    ActionId action = -1;
    Modality modality = Modality::Must;
    std::vector<SupportElem> support;  // ordered; constraint dimension
    ProbConstraint constraint;
    std::vector<std::string> var_names;  // branch variable names; empty entries allowed
    // Literal branch probabilities as written in the source, kept for
    // diagnostics and serialization (the constraint of an unnormalized
    // literal distribution is simply empty).
    std::optional<QVector> raw_point;

    // The concrete distribution when the constraint pins one down.
    std::optional<Distribution> point_distribution() const;
};

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

enum class ModelKind { Pta, Apta, Peca, Apeca };

const char* kind_text(ModelKind k);
bool kind_is_event_clock(ModelKind k);
bool kind_is_implementation(ModelKind k);

struct Model {
    ModelKind kind = ModelKind::Apta;
    std::string name;
    std::vector<std::string> locations;
    std::vector<std::string> actions;
    std::vector<std::string> clocks;
    std::vector<std::string> props;
    LocationId initial = -1;
    std::vector<std::set<std::set<PropId>>> valuation;  // per location
    std::vector<Edge> edges;
    std::vector<std::string> notes;  // construction remarks (reset collisions etc.)

    bool is_empty() const { return locations.empty(); }
    static Model empty_spec(std::string name = "empty");

    int find_location(const std::string& n) const;
    int find_action(const std::string& n) const;
    int find_clock(const std::string& n) const;
    int find_prop(const std::string& n) const;
    LocationId add_location(const std::string& n, std::set<std::set<PropId>> val);
    ActionId add_action(const std::string& n);
    ClockId add_clock(const std::string& n);
    PropId add_prop(const std::string& n);

    std::vector<Edge> edges_from(LocationId l) const;
    // The event clock belonging to an action ("x_" + action name); -1 when absent.
    ClockId event_clock(ActionId a) const;
};

struct Diagnostic {
    std::string where;
    std::string message;
};

// Structural validation; empty result means all invariants hold.
std::vector<Diagnostic> validate(const Model& m);

// Event-clock view: verifies the reset discipline and (region-wise) guard
// completeness. Throws Error("RESET_DISCIPLINE") / Error("INCOMPLETE").
// Returns the model with kind adjusted.
Model as_apeca(const Model& m);

// Adds a (true, a, false) may edge for every (location, action) without an
// outgoing a-edge; extends the action set (and event clocks, for event-clock
// kinds) with the given extra actions.
Model complete_edges(const Model& m, const std::vector<std::string>& extra_actions = {});

// Nonempty description of some (location, action) whose guards do not cover
// the clock space; empty string when the edge function is complete. Decided
// exactly: the uncovered set is an intersection of inverted guard atoms.
std::string incomplete_witness(const Model& m);

// Restriction to the part reachable from the initial location through support
// elements that can carry positive mass.
Model reachable_part(const Model& m);

// Same-name lookups across two models; throws on mismatched clock sets.
std::vector<std::string> union_names(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace apta
