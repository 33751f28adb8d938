// ============================================================================
// abstraction.hpp — location-partition abstraction with guard splitting
// ============================================================================
//
// An abstraction function maps concrete locations onto abstract ones
// (surjectively); its inverse partitions the concrete space into blocks.
// Guards force a pre-processing step before the quotient is taken:
//
//   - the common guard of a block and an action is the conjunction of one
//     must-edge guard per block member (the first satisfiable combination in
//     edge order), or absent when some member has no such must edge;
//   - pre-processing splits every must edge into its part inside the common
//     guard and the parts inside the inverted atoms of the common guard, so
//     that afterwards must guards either equal the common guard or avoid it.
//
// The abstraction itself makes an edge must at every guard carried by a must
// edge of every block member (constraint: image of the union of their
// satisfaction sets), and may at every other guard a member shows.

#pragma once

#include "apta/region_automaton.hpp"

namespace apta {

struct AbstractionMap {
    std::vector<int> forward;                  // concrete location -> block
    std::vector<std::string> block_names;      // per block
    std::vector<std::vector<int>> backward;    // per block: concrete locations
    // For maps over product models (built by product_abstraction): block ids
    // factor as b_left * product_right_blocks + b_right. Abstraction then
    // unites product constraints factor-wise.
    int product_right_blocks = 0;

    int num_blocks() const { return static_cast<int>(block_names.size()); }
    static AbstractionMap identity(const Model& m);
    // From (concrete name, abstract name) pairs; unmapped locations become
    // singleton blocks under their own names.
    static AbstractionMap from_pairs(const Model& m,
                                     const std::vector<std::pair<std::string, std::string>>& pairs);
    void check(const Model& m) const;
};

// Conjunction of one must-guard per block member; nullopt when some member
// lacks an a-must edge ("false" in the quotient rules).
std::optional<Guard> common_guard(const Model& m, const AbstractionMap& a, int block, ActionId act);

// Guards covering exactly the complement: a valuation satisfies g iff it
// satisfies no member of the result. Computed by inverting the atoms;
// members may overlap; unsatisfiable members are dropped.
std::vector<Guard> negate_guard(const Guard& g);

Model preprocess(const Model& m, const AbstractionMap& a);

// Quotient of a pre-processed model. Pass the preprocess() output.
Model abstract_model(const Model& pre, const AbstractionMap& a);

// Convenience: abstract_model(preprocess(m, a), a).
Model abstraction_of(const Model& m, const AbstractionMap& a);

// The induced abstraction on a region automaton: blocks of states are
// (location block, region) pairs. Mirrors the model-level rules, with
// transition labels in place of guards.
RegionAutomaton abstract_region(const RegionAutomaton& ra, const std::vector<int>& loc_block,
                                const std::vector<std::string>& block_names);

// Block map of a product model from its provenance and the factor maps.
AbstractionMap product_abstraction(const std::vector<std::pair<int, int>>& provenance,
                                   const AbstractionMap& a1, const AbstractionMap& a2);

}  // namespace apta
