// ============================================================================
// refinement.hpp — satisfaction and modal refinement on region automata
// ============================================================================
//
// Weak refinement: greatest fixpoint over state pairs. A pair survives when
//   (1) every must transition on the right is matched by a must transition on
//       the left with the same (time region, action) label such that every
//       extreme point of the left constraint lifts into the right constraint,
//   (2) every transition on the left is matched by some right transition the
//       same way, and
//   (3) the left admissible valuations are contained in the right ones.
// Liftings are weight functions supported on related, reset-compatible target
// pairs; each check is one exact LP per left-constraint vertex.
//
// Strong refinement synthesizes, per transition pair, a single correspondence
// that must work for every vertex simultaneously.
//
// Satisfaction of a concrete model is the same fixpoint run against the
// implementation's region automaton (whose constraints are points); the
// required normal form is implicit in the region construction.
//
// Existential sides over product-form constraints are searched by alternating
// LPs from vertex-pair starts; a failed search degrades the verdict to
// "inconclusive", never to a definite "fails".

#pragma once

#include <optional>

#include "apta/region_automaton.hpp"

namespace apta {

enum class Outcome { Holds, Fails, Inconclusive };

inline const char* outcome_text(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        default: return "inconclusive";
    }
}

struct PairCertificate {
    int left_state = -1, right_state = -1;
    // (left transition label, matched right transition label)
    std::vector<std::pair<std::string, std::string>> matches;
};

struct RefinementResult {
    Outcome outcome = Outcome::Fails;
    std::vector<std::pair<int, int>> relation;  // witness when holds
    std::vector<PairCertificate> certificates;
    struct Deletion {
        int left, right;
        int condition;  // 1, 2 or 3
        std::string label;
    };
    std::vector<Deletion> chain;  // deletions leading to the verdict
    bool saw_inconclusive = false;
    std::vector<std::string> notes;
};

RefinementResult weak_refine(const RegionAutomaton& left, const RegionAutomaton& right);
RefinementResult strong_refine(const RegionAutomaton& left, const RegionAutomaton& right);

struct NormalizationEntry {
    std::string location;
    std::vector<std::string> regions;
};

struct SatisfactionResult {
    RefinementResult refinement;
    std::vector<NormalizationEntry> normalization;  // implementation split report
};

// impl must be of an implementation kind (pta / peca).
SatisfactionResult satisfies(const Model& impl, const Model& spec);

// Wrappers building both region automata over a shared context.
RefinementResult apta_weak_refine(const Model& a1, const Model& a2);
RefinementResult apta_strong_refine(const Model& a1, const Model& a2);

bool is_action_deterministic(const Model& m);
bool is_ap_deterministic(const Model& m);
inline bool is_deterministic(const Model& m) {
    return is_action_deterministic(m) && is_ap_deterministic(m);
}

// Exact lifting check: a nonnegative weight matrix with row sums mu1, column
// sums mu2 and support inside `allowed`. Returns the weights or nullopt.
std::optional<QMatrix> lift_check(const QVector& mu1, const QVector& mu2,
                                  const std::vector<std::vector<bool>>& allowed);

// Joint version: exists mu2 in Sat(phi) together with a lifting of mu1.
enum class Tri { No, Yes, Unknown };
Tri lift_into_constraint(const QVector& mu1, const ProbConstraint& phi,
                         const std::vector<std::vector<bool>>& allowed,
                         QVector* witness = nullptr);

}  // namespace apta
