// ============================================================================
// region.hpp — canonical clock regions and their time dynamics
// ============================================================================
//
// A region fixes, per clock, either "above its maximal constant" or an
// integer part plus a fractional class, together with a weak total order over
// the positive fractional parts of the bounded clocks. Two clock valuations
// satisfy the same guards (with constants up to the per-clock maxima) exactly
// when they encode to the same region.
//
// Guard bounds are rational in models; a RegionContext carries the common
// integer scale (least common denominator) and the per-clock maximal scaled
// constants. Cross-model operations must share one context so that both
// automata speak the same region alphabet.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "apta/model.hpp"

namespace apta {

struct RegionContext {
    std::vector<std::string> clock_names;
    BigInt scale;                    // multiply model-level bounds by this
    std::vector<long long> bound;    // per clock, in scaled units

    bool operator==(const RegionContext& o) const {
        return clock_names == o.clock_names && scale == o.scale && bound == o.bound;
    }
};

// Builds the shared context of several models: equal clock-name sets required,
// scale = lcd of every guard bound, per-clock bound = max scaled constant.
RegionContext make_context(const std::vector<const Model*>& models);
// Uniform context (every clock bounded by n), for the enumeration API.
RegionContext uniform_context(int num_clocks, long long n);

class Region {
public:
    static Region zero(const RegionContext& ctx);
    static Region of_valuation(const RegionContext& ctx, const std::vector<Rational>& v);

    int num_clocks() const { return static_cast<int>(ipart_.size()); }
    bool unbounded(int clock) const { return ipart_[clock] < 0; }
    long long int_part(int clock) const { return ipart_[clock]; }
    bool frac_zero(int clock) const { return group_[clock] == 0; }
    int frac_group(int clock) const { return group_[clock]; }

    // All clocks above their maxima (vacuously true without clocks); time can
    // dwell here forever.
    bool absorbing() const;

    // Immediate time successor (self when absorbing).
    Region successor_step(const RegionContext& ctx) const;
    // Succ(theta): the full elapse chain, beginning with *this.
    std::vector<Region> successors(const RegionContext& ctx) const;

    Region reset(const RegionContext& ctx, const std::set<int>& clocks) const;

    // theta |= (clock cmp bound) for every valuation in theta; the bound is in
    // scaled units and must not exceed the clock's maximal constant.
    bool entails_atom(const RegionContext& ctx, int clock, Cmp cmp, long long scaled_bound) const;
    // Guard given over context clock ids, bounds still model-level rationals.
    bool entails(const RegionContext& ctx, const std::vector<GuardAtom>& atoms) const;

    // Smallest guard containing the region: per-clock box constraints
    // (fractional-order information is not expressible as a guard). Bounds are
    // de-scaled back to model-level rationals.
    std::vector<GuardAtom> box_atoms(const RegionContext& ctx) const;

    bool operator==(const Region& o) const { return ipart_ == o.ipart_ && group_ == o.group_; }
    bool operator!=(const Region& o) const { return !(*this == o); }
    bool operator<(const Region& o) const {
        if (ipart_ != o.ipart_) return ipart_ < o.ipart_;
        return group_ < o.group_;
    }

    std::string text(const RegionContext& ctx) const;

private:
    // ipart_[c] = -1 when the clock exceeds its maximum, else its integer part.
    // group_[c] = -1 for unbounded clocks, 0 for fractional part zero, else the
    // 1-based rank of the clock's fractional part among the positive ones.
    std::vector<long long> ipart_;
    std::vector<int> group_;

    void canonicalize();
    friend std::vector<Region> all_regions(const RegionContext&);
};

// Exhaustive, duplicate-free enumeration of the region space.
std::vector<Region> all_regions(const RegionContext& ctx);
std::vector<Region> all_regions(int num_clocks, long long n);

// Scales a rational bound into context units; exact by construction.
long long scaled_bound(const RegionContext& ctx, const Rational& bound);

}  // namespace apta
