// ============================================================================
// region_automaton.hpp — the region construction and its inverse
// ============================================================================
//
// build_region unfolds a timed model into an untimed automaton over the
// alphabet (time region, action, per-target resets). States are (location,
// region) pairs reachable from (initial, 0); constraints are reindexed onto
// target states, with probabilities of colliding reset sets summed.
//
// translate_back reads such an automaton as a timed model again: states turn
// into locations and each transition into an edge guarded by the box of its
// time region. normalize = translate_back . build_region.

#pragma once

#include <map>

#include "apta/region.hpp"

namespace apta {

struct RegionState {
    LocationId loc;  // location of the source model
    Region region;
};

struct RegionTransition {
    int source = -1;
    Region time_region;
    ActionId action = -1;
    Modality modality = Modality::Must;
    std::vector<int> targets;             // state indices; constraint support order
    std::vector<std::set<int>> resets;    // context clock ids, per target
    ProbConstraint constraint;
    int source_edge = -1;                 // index into the model's edge list
};

struct RegionAutomaton {
    RegionContext ctx;
    std::string model_name;
    bool implementation = false;  // built from a pta/peca
    std::vector<std::string> action_names;
    std::vector<std::string> prop_names;
    std::vector<RegionState> states;
    std::vector<std::string> state_names;
    // Admissible proposition sets per state, by name so that automata of
    // different models compare directly.
    std::vector<std::set<std::set<std::string>>> valuations;
    int initial = -1;
    std::vector<RegionTransition> transitions;
    std::vector<std::vector<int>> out;  // per state
    std::vector<std::string> notes;

    bool empty() const { return states.empty(); }
    std::string label_text(const RegionTransition& t) const;
};

// full = false keeps only states reachable from (initial, 0); full = true
// enumerates every (location, region) pair, which some structural
// comparisons of quotients need.
RegionAutomaton build_region(const Model& m, const RegionContext& ctx, bool full = false);
RegionAutomaton build_region(const Model& m);

Model translate_back(const RegionAutomaton& ra);

// translate_back . build_region; the result is in normal form.
Model normalize(const Model& m);
// Isomorphism of the reachable part against its own normal form.
bool is_normal(const Model& m);

std::string region_automaton_dot(const RegionAutomaton& ra);

}  // namespace apta
