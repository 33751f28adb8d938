#include "apta/region.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace apta {

RegionContext make_context(const std::vector<const Model*>& models) {
    if (models.empty()) throw Error("CONTEXT", "no models");
    RegionContext ctx;
    ctx.clock_names = models[0]->clocks;
    std::set<std::string> base(ctx.clock_names.begin(), ctx.clock_names.end());
    for (const Model* m : models) {
        std::set<std::string> s(m->clocks.begin(), m->clocks.end());
        if (s != base)
            throw Error("CLOCK_MISMATCH", "models do not share one clock set");
    }
    std::vector<Rational> bounds;
    for (const Model* m : models)
        for (const Edge& e : m->edges)
            for (const GuardAtom& a : e.guard.atoms()) bounds.push_back(a.bound);
    ctx.scale = common_denominator(bounds);
    ctx.bound.assign(ctx.clock_names.size(), 0);
    for (const Model* m : models) {
        std::vector<int> map(m->clocks.size());
        for (size_t c = 0; c < m->clocks.size(); ++c) {
            auto it = std::find(ctx.clock_names.begin(), ctx.clock_names.end(), m->clocks[c]);
            map[c] = static_cast<int>(it - ctx.clock_names.begin());
        }
        for (const Edge& e : m->edges) {
            for (const GuardAtom& a : e.guard.atoms()) {
                Rational scaled = a.bound * Rational(ctx.scale, BigInt(1));
                long long v = scaled.num().to_ll();
                ctx.bound[map[a.clock]] = std::max(ctx.bound[map[a.clock]], v);
            }
        }
    }
    return ctx;
}

RegionContext uniform_context(int num_clocks, long long n) {
    RegionContext ctx;
    for (int i = 0; i < num_clocks; ++i) ctx.clock_names.push_back("x" + std::to_string(i));
    ctx.scale = BigInt(1);
    ctx.bound.assign(num_clocks, n);
    return ctx;
}

long long scaled_bound(const RegionContext& ctx, const Rational& bound) {
    Rational s = bound * Rational(ctx.scale, BigInt(1));
    if (!s.is_integer()) throw Error("SCALE", "bound does not scale to an integer");
    return s.num().to_ll();
}

Region Region::zero(const RegionContext& ctx) {
    Region r;
    r.ipart_.assign(ctx.clock_names.size(), 0);
    r.group_.assign(ctx.clock_names.size(), 0);
    return r;
}

Region Region::of_valuation(const RegionContext& ctx, const std::vector<Rational>& v) {
    assert(v.size() == ctx.clock_names.size());
    Region r;
    int n = static_cast<int>(v.size());
    r.ipart_.assign(n, 0);
    r.group_.assign(n, 0);
    std::vector<Rational> frac(n);
    for (int c = 0; c < n; ++c) {
        Rational sv = v[c] * Rational(ctx.scale, BigInt(1));
        if (sv > Rational(ctx.bound[c])) {
            r.ipart_[c] = -1;
            r.group_[c] = -1;
            continue;
        }
        BigInt q = sv.num() / sv.den();  // floor for nonnegative values
        r.ipart_[c] = q.to_ll();
        frac[c] = sv - Rational(q, BigInt(1));
        r.group_[c] = frac[c].is_zero() ? 0 : 1;  // placeholder, ranked below
    }
    // Rank positive fractional parts.
    std::vector<Rational> positives;
    for (int c = 0; c < n; ++c)
        if (r.group_[c] == 1) positives.push_back(frac[c]);
    std::sort(positives.begin(), positives.end());
    positives.erase(std::unique(positives.begin(), positives.end()), positives.end());
    for (int c = 0; c < n; ++c) {
        if (r.group_[c] == 1) {
            auto it = std::lower_bound(positives.begin(), positives.end(), frac[c]);
            r.group_[c] = static_cast<int>(it - positives.begin()) + 1;
        }
    }
    return r;
}

void Region::canonicalize() {
    // Compress positive group numbers to 1..G keeping their order.
    std::vector<int> used;
    for (int g : group_)
        if (g > 0) used.push_back(g);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (int& g : group_) {
        if (g > 0) {
            auto it = std::lower_bound(used.begin(), used.end(), g);
            g = static_cast<int>(it - used.begin()) + 1;
        }
    }
}

bool Region::absorbing() const {
    for (long long i : ipart_)
        if (i >= 0) return false;
    return true;
}

Region Region::successor_step(const RegionContext& ctx) const {
    if (absorbing()) return *this;
    Region r = *this;
    bool has_zero = false;
    for (size_t c = 0; c < group_.size(); ++c) has_zero = has_zero || group_[c] == 0;
    if (has_zero) {
        // Zero-fraction clocks start aging: below their maximum they become
        // the smallest positive class, at it they leave the bounded range.
        bool moved = false;
        for (size_t c = 0; c < r.group_.size(); ++c) {
            if (group_[c] != 0) continue;
            if (ipart_[c] >= ctx.bound[c]) {
                r.ipart_[c] = -1;
                r.group_[c] = -1;
            } else {
                moved = true;
            }
        }
        if (moved) {
            for (size_t c = 0; c < r.group_.size(); ++c)
                if (r.group_[c] > 0) ++r.group_[c];
            for (size_t c = 0; c < r.group_.size(); ++c)
                if (group_[c] == 0 && r.group_[c] == 0) r.group_[c] = 1;
        }
        r.canonicalize();
        return r;
    }
    // No zero class: the largest fractional class reaches the next integer.
    int g_max = 0;
    for (int g : group_) g_max = std::max(g_max, g);
    for (size_t c = 0; c < r.group_.size(); ++c) {
        if (group_[c] == g_max) {
            r.ipart_[c] += 1;
            r.group_[c] = 0;
        }
    }
    r.canonicalize();
    return r;
}

std::vector<Region> Region::successors(const RegionContext& ctx) const {
    std::vector<Region> chain{*this};
    Region cur = *this;
    while (!cur.absorbing()) {
        Region next = cur.successor_step(ctx);
        if (next == cur) break;
        chain.push_back(next);
        cur = next;
    }
    return chain;
}

Region Region::reset(const RegionContext& ctx, const std::set<int>& clocks) const {
    (void)ctx;
    Region r = *this;
    for (int c : clocks) {
        r.ipart_[c] = 0;
        r.group_[c] = 0;
    }
    r.canonicalize();
    return r;
}

bool Region::entails_atom(const RegionContext& ctx, int clock, Cmp cmp, long long k) const {
    assert(k <= ctx.bound[clock]);
    (void)ctx;
    if (unbounded(clock)) return cmp == Cmp::Gt || cmp == Cmp::Ge;
    long long i = ipart_[clock];
    bool z = frac_zero(clock);
    switch (cmp) {
        case Cmp::Lt: return i < k;
        case Cmp::Le: return z ? i <= k : i < k;
        case Cmp::Gt: return z ? i > k : i >= k;
        default: return i >= k;
    }
}

bool Region::entails(const RegionContext& ctx, const std::vector<GuardAtom>& atoms) const {
    for (const GuardAtom& a : atoms) {
        if (!entails_atom(ctx, a.clock, a.cmp, scaled_bound(ctx, a.bound))) return false;
    }
    return true;
}

std::vector<GuardAtom> Region::box_atoms(const RegionContext& ctx) const {
    std::vector<GuardAtom> out;
    Rational scale(ctx.scale, BigInt(1));
    for (int c = 0; c < num_clocks(); ++c) {
        if (unbounded(c)) {
            out.push_back(GuardAtom{c, Cmp::Gt, Rational(ctx.bound[c]) / scale});
        } else if (frac_zero(c)) {
            Rational v = Rational(ipart_[c]) / scale;
            out.push_back(GuardAtom{c, Cmp::Ge, v});
            out.push_back(GuardAtom{c, Cmp::Le, v});
        } else {
            out.push_back(GuardAtom{c, Cmp::Gt, Rational(ipart_[c]) / scale});
            out.push_back(GuardAtom{c, Cmp::Lt, Rational(ipart_[c] + 1) / scale});
        }
    }
    return out;
}

std::string Region::text(const RegionContext& ctx) const {
    std::string out;
    for (int c = 0; c < num_clocks(); ++c) {
        if (c) out += ",";
        const std::string& x = ctx.clock_names[c];
        if (unbounded(c)) {
            out += x + ">" + std::to_string(ctx.bound[c]);
        } else if (frac_zero(c)) {
            out += x + "=" + std::to_string(ipart_[c]);
        } else {
            out += std::to_string(ipart_[c]) + "<" + x + "<" + std::to_string(ipart_[c] + 1);
        }
    }
    // Fractional order among positive classes, when informative.
    std::map<int, std::vector<std::string>> groups;
    for (int c = 0; c < num_clocks(); ++c)
        if (group_[c] > 0) groups[group_[c]].push_back(ctx.clock_names[c]);
    if (groups.size() > 1 || (groups.size() == 1 && groups.begin()->second.size() > 1)) {
        out += ";";
        bool first_g = true;
        for (const auto& [g, clocks] : groups) {
            (void)g;
            if (!first_g) out += "<";
            first_g = false;
            for (size_t i = 0; i < clocks.size(); ++i) {
                if (i) out += "=";
                out += "fr(" + clocks[i] + ")";
            }
        }
    }
    return out;
}

std::vector<Region> all_regions(const RegionContext& ctx) {
    int n = static_cast<int>(ctx.clock_names.size());
    std::vector<Region> out;
    // Per-clock class choices: -2 encodes "unbounded"; (i, zero) as 2*i;
    // (i, positive) as 2*i+1 for i < bound.
    std::vector<std::vector<long long>> choices(n);
    for (int c = 0; c < n; ++c) {
        choices[c].push_back(-2);
        for (long long i = 0; i <= ctx.bound[c]; ++i) {
            choices[c].push_back(2 * i);
            if (i < ctx.bound[c]) choices[c].push_back(2 * i + 1);
        }
    }
    std::vector<long long> pick(n);
    std::function<void(int)> rec = [&](int c) {
        if (c == n) {
            Region base;
            base.ipart_.assign(n, 0);
            base.group_.assign(n, 0);
            std::vector<int> pos_clocks;
            for (int i = 0; i < n; ++i) {
                if (pick[i] == -2) {
                    base.ipart_[i] = -1;
                    base.group_[i] = -1;
                } else {
                    base.ipart_[i] = pick[i] / 2;
                    if (pick[i] % 2 == 1) pos_clocks.push_back(i);
                }
            }
            if (pos_clocks.empty()) {
                out.push_back(base);
                return;
            }
            // Weak orders over the positive-fraction clocks: assign group
            // numbers 1..k and keep the canonical (contiguous) ones.
            int k = static_cast<int>(pos_clocks.size());
            std::vector<int> assign(k, 1);
            std::function<void(int)> rec2 = [&](int j) {
                if (j == k) {
                    int g_max = *std::max_element(assign.begin(), assign.end());
                    std::vector<bool> used(g_max + 1, false);
                    for (int g : assign) used[g] = true;
                    for (int g = 1; g <= g_max; ++g)
                        if (!used[g]) return;
                    Region r = base;
                    for (int t = 0; t < k; ++t) r.group_[pos_clocks[t]] = assign[t];
                    out.push_back(r);
                    return;
                }
                for (int g = 1; g <= k; ++g) {
                    assign[j] = g;
                    rec2(j + 1);
                }
            };
            rec2(0);
            return;
        }
        for (long long ch : choices[c]) {
            pick[c] = ch;
            rec(c + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Region> all_regions(int num_clocks, long long n) {
    return all_regions(uniform_context(num_clocks, n));
}

}  // namespace apta
