// ============================================================================
// isomorphism.hpp — exact structural isomorphism of models
// ============================================================================
//
// Two models are isomorphic when a bijection of locations (fixing initial
// locations, matching admissible valuations) extends to a bijection of edges
// that preserves actions, normalized guards, modalities, reset sets and the
// satisfaction sets of the probability constraints. Actions, clocks and
// propositions are matched by name; locations are the only renamable part.

#pragma once

#include "apta/model.hpp"

namespace apta {

struct IsoResult {
    bool holds = false;
    // location of the left model -> location of the right model
    std::vector<int> mapping;
};

IsoResult isomorphic(const Model& a, const Model& b);

}  // namespace apta
