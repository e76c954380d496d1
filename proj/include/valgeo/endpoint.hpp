#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "valgeo/box_valuation.hpp"

namespace valgeo {

/// Valuation on 1-dimensional intervals, not necessarily translation
/// invariant; called with a <= b (a == b is the singleton {a}).
using IntervalValuation = std::function<Rat(const Rat& a, const Rat& b)>;

struct EndpointPair {
    std::function<Rat(const Rat&)> f, g;
};

/// Endpoint decomposition of a 1D valuation: V([a,b]) = f(a) + g(b) for all
/// a <= b. Uses the piecewise working definitions with the constant V({0})
/// folded into g; the pair is one valid representative (f - c, g + c works
/// for any constant c).
inline EndpointPair endpoint_decompose_1d(const IntervalValuation& v) {
    auto state = std::make_shared<Rat>(v(Rat(0), Rat(0)));
    auto f = [v](const Rat& a) -> Rat {
        if (a < 0) return v(a, Rat(0)) - v(Rat(0), Rat(0));
        if (a == 0) return Rat(0);
        return v(a, a) - v(Rat(0), a);
    };
    auto g = [v, state](const Rat& b) -> Rat {
        if (b < 0) return v(b, b) - v(b, Rat(0)) + *state;
        if (b == 0) return *state;
        return v(Rat(0), b) - v(Rat(0), Rat(0)) + *state;
    };
    return {std::move(f), std::move(g)};
}

/// Endpoint family F_{i_1..i_n} of an n-dimensional box valuation with all
/// coordinates bounded by M. Members are defined through differences against
/// a finite cutoff interval at m = M + 1; the valuation identity makes those
/// differences independent of the cutoff once it exceeds every coordinate
/// magnitude, so the finite cutoff is exact.
class EndpointFamily {
  public:
    EndpointFamily(BoxValuation v, int n, Rat coordinate_bound)
        : v_(std::move(v)), n_(n), bound_(std::move(coordinate_bound)), cutoff_(bound_ + 1) {}

    int n() const { return n_; }
    const Rat& coordinate_bound() const { return bound_; }

    /// Value of the member indexed by idx (entries 1 = lower endpoint slot,
    /// 2 = upper endpoint slot) at the point x.
    Rat member(const std::vector<int>& idx, const std::vector<Rat>& x) const {
        check_arity(idx, x);
        for (const Rat& c : x) check_coord(c);
        std::vector<std::pair<Rat, Rat>> suffix;
        return eval(n_, idx, x, suffix);
    }

    /// Sum over all 2^n members at the box's endpoint tuples; equals V(box)
    /// exactly for every box within the coordinate bound.
    Rat reconstruct(const Box& b) const {
        if (b.ambient_dim() != n_) throw DimensionMismatch("endpoint family dimension differs");
        for (int i = 0; i < n_; ++i) {
            check_coord(b.lo(i));
            check_coord(b.hi(i));
        }
        Rat total(0);
        std::vector<int> idx(n_, 1);
        std::vector<Rat> x(n_);
        for (unsigned mask = 0; mask < (1u << n_); ++mask) {
            for (int i = 0; i < n_; ++i) {
                const bool upper = (mask >> i & 1u) != 0;
                idx[i] = upper ? 2 : 1;
                x[i] = upper ? b.hi(i) : b.lo(i);
            }
            std::vector<std::pair<Rat, Rat>> suffix;
            total += eval(n_, idx, x, suffix);
        }
        return total;
    }

  private:
    void check_arity(const std::vector<int>& idx, const std::vector<Rat>& x) const {
        if (static_cast<int>(idx.size()) != n_ || static_cast<int>(x.size()) != n_)
            throw DimensionMismatch("endpoint member arity differs");
        for (int i : idx)
            if (i != 1 && i != 2) throw Error("endpoint member index entries must be 1 or 2");
    }

    void check_coord(const Rat& c) const {
        if (rat_abs(c) > bound_)
            throw CoordinateOutOfRange("coordinate exceeds the declared bound M");
    }

    // Peels the last remaining axis with the 1D working identities at cutoff
    // m, recursing on the first k-1 axes. Branch 1 absorbs the V(P_{n-1})
    // term, branch 2 is the pure upper-endpoint difference.
    Rat eval(int k, const std::vector<int>& idx, const std::vector<Rat>& x,
             std::vector<std::pair<Rat, Rat>>& suffix) const {
        if (k == 0) {
            std::vector<std::pair<Rat, Rat>> ivals(suffix.rbegin(), suffix.rend());
            return memo_eval(Box(std::move(ivals)));
        }
        const Rat& s = x[k - 1];
        Rat result(0);
        if (idx[k - 1] == 1) {
            suffix.emplace_back(s, cutoff_);
            result += eval(k - 1, idx, x, suffix);
            suffix.pop_back();
            suffix.emplace_back(Rat(0), cutoff_);
            result -= eval(k - 1, idx, x, suffix);
            suffix.pop_back();
            suffix.emplace_back(Rat(0), Rat(0));
            result += eval(k - 1, idx, x, suffix);
            suffix.pop_back();
        } else {
            suffix.emplace_back(-cutoff_, s);
            result += eval(k - 1, idx, x, suffix);
            suffix.pop_back();
            suffix.emplace_back(-cutoff_, Rat(0));
            result -= eval(k - 1, idx, x, suffix);
            suffix.pop_back();
        }
        return result;
    }

    Rat memo_eval(const Box& b) const {
        std::vector<Rat> key;
        key.reserve(2 * n_);
        for (const auto& [lo, hi] : b.intervals()) {
            key.push_back(lo);
            key.push_back(hi);
        }
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rat val = v_.eval(b);
        memo_.emplace(std::move(key), val);
        return val;
    }

    BoxValuation v_;
    int n_;
    Rat bound_;
    Rat cutoff_;
    mutable std::map<std::vector<Rat>, Rat> memo_;
};

inline EndpointFamily endpoint_decompose_nd(const BoxValuation& v, int n, const Rat& coordinate_bound) {
    return EndpointFamily(v, n, coordinate_bound);
}

} // namespace valgeo
