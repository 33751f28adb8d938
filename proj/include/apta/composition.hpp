// ============================================================================
// composition.hpp — conjunction and parallel composition of event-clock models
// ============================================================================
//
// Both operators work on complete event-clock specifications over a shared
// action set; the two equalize steps establish that. Conjunction pairs edges
// of the same action with guard conjunction, modality join and a constraint
// whose marginals must satisfy both factors; parallel composition uses
// modality meet and tensor-product constraints. Product locations are all
// pairs; unreachable ones stay in the structure (the region construction
// prunes on its own).

#pragma once

#include "apta/region_automaton.hpp"

namespace apta {

struct ComposeResult {
    Model model;
    // product location -> (left factor location, right factor location)
    std::vector<std::pair<int, int>> provenance;
};

// Shared action alphabet with (true, a, false) may completion.
std::pair<Model, Model> equalize_for_conjunction(const Model& e1, const Model& e2);
// Shared action alphabet with must point self-loops for foreign actions.
std::pair<Model, Model> equalize_for_parallel(const Model& e1, const Model& e2);

// Conjunction of action-deterministic complete APECAs. Equalizes internally.
// Throws Error("NOT_ACTION_DETERMINISTIC") / as_apeca errors.
ComposeResult conjoin(const Model& e1, const Model& e2);

// Parallel composition; requires disjoint proposition sets
// (Error("AP_OVERLAP")). Equalizes internally.
ComposeResult compose_parallel(const Model& e1, const Model& e2);

// The same two operators on region automata over one shared context,
// used to check that composition commutes with the region construction.
RegionAutomaton conjoin_region(const RegionAutomaton& r1, const RegionAutomaton& r2);
RegionAutomaton compose_region(const RegionAutomaton& r1, const RegionAutomaton& r2);

}  // namespace apta
