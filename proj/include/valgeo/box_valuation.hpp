#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "valgeo/box.hpp"
#include "valgeo/rng.hpp"

namespace valgeo {

/// Exact valuation oracle on boxes. eval(emptyset) = 0 is a convention the
/// callers observe by never passing an empty intersection (Box cannot be
/// empty); helpers below take that into account.
struct BoxValuation {
    std::function<Rat(const Box&)> eval;
    bool translation_invariant = true;
};

inline BoxValuation volume_valuation() {
    return {[](const Box& b) { return b.volume(); }, true};
}

inline BoxValuation euler_valuation() {
    return {[](const Box&) { return Rat(1); }, true};
}

struct PairViolation {
    Box k, l;
    Rat defect; // V(K)+V(L) - V(K u L) - V(K n L)
};

struct AffineViolation {
    int axis;
    std::vector<Rat> base; // fixed side lengths
    Rat x, y;
    Rat defect; // f(x+y) - f(x) - f(y) + f(0)
};

struct ValuationCheckReport {
    std::vector<PairViolation> pair_violations;
    std::vector<AffineViolation> affine_violations;
    long pairs_checked = 0;
    long affine_checked = 0;
    bool ok() const { return pair_violations.empty() && affine_violations.empty(); }
};

/// Random pair of boxes that differ on exactly one axis, with overlapping
/// non-nested intervals there. Union and intersection of such a pair are
/// boxes, so the valuation identity applies.
inline std::pair<Box, Box> random_one_axis_pair(Rng& rng, int n) {
    std::vector<std::pair<Rat, Rat>> a, b;
    a.reserve(n);
    const int k = static_cast<int>(rng.uniform_int(0, n - 1));
    for (int i = 0; i < n; ++i) {
        if (i == k) {
            // lo1 < lo2 <= hi1 < hi2: overlap, no containment either way
            Rat lo1 = rng.rational(-4, 4);
            Rat lo2 = lo1 + rng.rational(0, 2) + Rat(1, 8);
            Rat hi1 = lo2 + rng.rational_nonneg(2);
            Rat hi2 = hi1 + rng.rational(0, 2) + Rat(1, 8);
            a.emplace_back(lo1, hi1);
            b.emplace_back(lo2, hi2);
        } else {
            Rat lo = rng.rational(-4, 4);
            Rat hi = lo + rng.rational_nonneg(3);
            a.emplace_back(lo, hi);
            b.emplace_back(lo, hi);
        }
    }
    if (rng.coin()) return {Box(std::move(b)), Box(std::move(a))};
    return {Box(std::move(a)), Box(std::move(b))};
}

/// Verifies the valuation identity on random OneAxis pairs (by Lemma-level
/// reduction those are the only nontrivial unions in Pa) and, when the oracle
/// claims translation invariance, affine additivity of the support function
/// per axis. Violations are data, not errors.
inline ValuationCheckReport check_valuation(const BoxValuation& v, int n, int samples,
                                            std::uint64_t seed) {
    ValuationCheckReport report;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        auto [k, l] = random_one_axis_pair(rng, n);
        const Box u = box_union(k, l);
        const auto inter = box_intersection(k, l);
        const Rat vi = inter ? v.eval(*inter) : Rat(0);
        const Rat defect = v.eval(k) + v.eval(l) - v.eval(u) - vi;
        ++report.pairs_checked;
        if (defect != 0) report.pair_violations.push_back({k, l, defect});
    }
    if (v.translation_invariant) {
        const int per_axis = std::max(1, samples / (4 * n));
        for (int axis = 0; axis < n; ++axis) {
            for (int s = 0; s < per_axis; ++s) {
                std::vector<Rat> base(n);
                for (int i = 0; i < n; ++i) base[i] = rng.rational_nonneg(3);
                const Rat x = rng.rational_nonneg(3);
                const Rat y = rng.rational_nonneg(3);
                auto f = [&](const Rat& t) {
                    std::vector<Rat> a = base;
                    a[axis] = t;
                    return v.eval(corner_box(a));
                };
                const Rat defect = f(x + y) - f(x) - f(y) + f(Rat(0));
                ++report.affine_checked;
                if (defect != 0) report.affine_violations.push_back({axis, base, x, y, defect});
            }
        }
    }
    return report;
}

} // namespace valgeo
