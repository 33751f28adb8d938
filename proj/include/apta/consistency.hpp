// ============================================================================
// consistency.hpp — pruning, implementation extraction, divergence games
// ============================================================================
//
// Location consistency asks for a nonempty admissible valuation and nonempty
// must constraints. Pruning forces zero mass toward inconsistent locations and
// removes them; iterated to a fixpoint it decides plain consistency without
// changing the implementation set.
//
// Time-divergence-sensitive consistency reduces to a stochastic game over the
// pruned region automaton. The game shape used here is a reconstruction:
//
//   - player nodes: region-automaton states. The player owns the freedom an
//     implementation has — for every must edge enabled at the state it picks
//     one time instance and one extreme point of the constraint, and it may
//     realize any may edges the same way.
//   - adversary nodes: one per realization; the adversary schedules which of
//     the realized moves fires.
//   - chance nodes resolve the chosen distribution.
//
// A move ticks when its time region differs from the source region or is the
// absorbing one (all clocks past their maxima). Strict divergence = the player
// wins (interpret chance adversarially) for "infinitely many ticks";
// probabilistic divergence = the player wins the same objective almost surely.

#pragma once

#include <optional>

#include "apta/region_automaton.hpp"

namespace apta {

bool location_consistent(const Model& m, LocationId l);

// One pruning step; identity when every location is consistent.
Model prune(const Model& m);
// Pruning fixpoint; the canonical empty specification when the initial
// location falls.
Model prune_star(const Model& m);

// A concrete implementation of the specification, or nullopt when pruning
// empties it. Must transitions realize the lexicographically least vertex of
// their constraints; may transitions are not realized.
std::optional<Model> extract_implementation(const Model& m);

struct DivergenceGame {
    enum class Owner { Player, Adversary, Chance };
    struct Move {
        int target = -1;
        bool tick = false;
        Rational prob;  // meaningful for chance nodes
        std::string label;
    };
    struct Node {
        Owner owner;
        std::string label;
        std::vector<Move> moves;
    };
    std::vector<Node> nodes;
    int initial = -1;
};

DivergenceGame build_divergence_game(const Model& m);

// Winning player-objective node sets for "infinitely many tick moves".
std::vector<bool> solve_buchi_sure(const DivergenceGame& g);
std::vector<bool> solve_buchi_almost_sure(const DivergenceGame& g);

// One memoryless choice per winning player node (-1 elsewhere).
std::vector<int> buchi_strategy(const DivergenceGame& g, const std::vector<bool>& winning,
                                bool almost_sure);

bool sd_consistent(const Model& m);
bool pd_consistent(const Model& m);

}  // namespace apta
