#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "valgeo/rational.hpp"

namespace valgeo {

/// Axis-parallel parallelotope with exact rational endpoints. Degenerate
/// sides (lo == hi) are first class; the empty set is *not* a Box, callers
/// use std::optional<Box> where emptiness can occur.
class Box {
  public:
    explicit Box(std::vector<std::pair<Rat, Rat>> intervals) : ivals_(std::move(intervals)) {
        if (ivals_.empty()) throw MalformedInterval("box needs at least one interval");
        for (std::size_t i = 0; i < ivals_.size(); ++i)
            if (ivals_[i].first > ivals_[i].second)
                throw MalformedInterval("lo > hi at axis " + std::to_string(i));
    }

    int ambient_dim() const { return static_cast<int>(ivals_.size()); }

    /// Affine dimension: number of strict sides.
    int dim() const {
        int d = 0;
        for (const auto& [lo, hi] : ivals_)
            if (lo < hi) ++d;
        return d;
    }

    const Rat& lo(int i) const { return ivals_[i].first; }
    const Rat& hi(int i) const { return ivals_[i].second; }
    Rat side(int i) const { return ivals_[i].second - ivals_[i].first; }
    const std::vector<std::pair<Rat, Rat>>& intervals() const { return ivals_; }

    Rat volume() const {
        Rat v(1);
        for (const auto& [lo, hi] : ivals_) v *= hi - lo;
        return v;
    }

    bool contains(const Box& other) const {
        require_same_dim(other);
        for (int i = 0; i < ambient_dim(); ++i)
            if (other.lo(i) < lo(i) || other.hi(i) > hi(i)) return false;
        return true;
    }

    bool operator==(const Box& other) const { return ivals_ == other.ivals_; }

    void require_same_dim(const Box& other) const {
        if (other.ambient_dim() != ambient_dim()) throw DimensionMismatch("box dimensions differ");
    }

  private:
    std::vector<std::pair<Rat, Rat>> ivals_;
};

inline Box make_box(std::vector<std::pair<Rat, Rat>> intervals) { return Box(std::move(intervals)); }

/// Box spanned by [0, a_i] on the axes of `a` (used throughout the
/// decomposition theory: the support point of a translation invariant
/// valuation).
inline Box corner_box(const std::vector<Rat>& a) {
    std::vector<std::pair<Rat, Rat>> iv;
    iv.reserve(a.size());
    for (const Rat& x : a) {
        if (x < 0) throw MalformedInterval("corner_box needs nonnegative lengths");
        iv.emplace_back(Rat(0), x);
    }
    return Box(std::move(iv));
}

struct CompatibilityVerdict {
    enum class Kind { Nested, OneAxis, Incompatible };
    Kind kind = Kind::Incompatible;
    int axis = -1; // set when kind == OneAxis

    bool operator==(const CompatibilityVerdict&) const = default;
};

/// Classifies a pair of boxes by whether their union is again a box:
/// Nested, OneAxis(k) (equal on every axis but k, with overlapping
/// non-nested k-intervals), or Incompatible.
inline CompatibilityVerdict union_compatible(const Box& k, const Box& l) {
    k.require_same_dim(l);
    if (k.contains(l) || l.contains(k)) return {CompatibilityVerdict::Kind::Nested, -1};

    int differing = -1;
    for (int i = 0; i < k.ambient_dim(); ++i) {
        if (k.lo(i) == l.lo(i) && k.hi(i) == l.hi(i)) continue;
        if (differing >= 0) return {CompatibilityVerdict::Kind::Incompatible, -1};
        differing = i;
    }
    // differing == -1 cannot happen: equal boxes are Nested.
    const int i = differing;
    const bool overlap = k.hi(i) >= l.lo(i) && l.hi(i) >= k.lo(i);
    const bool k_in_l = l.lo(i) <= k.lo(i) && k.hi(i) <= l.hi(i);
    const bool l_in_k = k.lo(i) <= l.lo(i) && l.hi(i) <= k.hi(i);
    if (overlap && !k_in_l && !l_in_k) return {CompatibilityVerdict::Kind::OneAxis, i};
    return {CompatibilityVerdict::Kind::Incompatible, -1};
}

inline Box box_union(const Box& k, const Box& l) {
    if (union_compatible(k, l).kind == CompatibilityVerdict::Kind::Incompatible)
        throw NotABox("union of boxes is not convex");
    std::vector<std::pair<Rat, Rat>> iv;
    iv.reserve(k.ambient_dim());
    for (int i = 0; i < k.ambient_dim(); ++i)
        iv.emplace_back(std::min(k.lo(i), l.lo(i)), std::max(k.hi(i), l.hi(i)));
    return Box(std::move(iv));
}

inline std::optional<Box> box_intersection(const Box& k, const Box& l) {
    k.require_same_dim(l);
    std::vector<std::pair<Rat, Rat>> iv;
    iv.reserve(k.ambient_dim());
    for (int i = 0; i < k.ambient_dim(); ++i) {
        Rat lo = std::max(k.lo(i), l.lo(i));
        Rat hi = std::min(k.hi(i), l.hi(i));
        if (lo > hi) return std::nullopt;
        iv.emplace_back(std::move(lo), std::move(hi));
    }
    return Box(std::move(iv));
}

inline Box scale_translate(const Box& k, const Rat& lambda, const std::vector<Rat>& x) {
    if (lambda < 0) throw NegativeScale("scale factor must be nonnegative");
    if (static_cast<int>(x.size()) != k.ambient_dim())
        throw DimensionMismatch("translation vector dimension differs");
    std::vector<std::pair<Rat, Rat>> iv;
    iv.reserve(k.ambient_dim());
    for (int i = 0; i < k.ambient_dim(); ++i)
        iv.emplace_back(lambda * k.lo(i) + x[i], lambda * k.hi(i) + x[i]);
    return Box(std::move(iv));
}

inline Box scale_box(const Box& k, const Rat& lambda) {
    return scale_translate(k, lambda, std::vector<Rat>(k.ambient_dim(), Rat(0)));
}

namespace detail {

/// Squared Euclidean distance from a rational point to a box, exact.
inline Rat dist_sq_point_box(const std::vector<Rat>& p, const Box& b) {
    Rat s(0);
    for (int i = 0; i < b.ambient_dim(); ++i) {
        Rat d(0);
        if (p[i] < b.lo(i)) d = b.lo(i) - p[i];
        else if (p[i] > b.hi(i)) d = p[i] - b.hi(i);
        s += d * d;
    }
    return s;
}

/// Max over the 2^n corners of `a` of the squared distance to `b`.
inline Rat max_corner_dist_sq(const Box& a, const Box& b) {
    const int n = a.ambient_dim();
    Rat best(0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Rat> corner(n);
        for (int i = 0; i < n; ++i) corner[i] = (mask >> i & 1u) ? a.hi(i) : a.lo(i);
        best = std::max(best, dist_sq_point_box(corner, b));
    }
    return best;
}

} // namespace detail

/// Hausdorff distance between two boxes. The directed distance from a box is
/// attained at a corner (point-to-convex distance is convex), so the max over
/// all corners of both boxes is exact; only the final square root is floating
/// point.
inline double hausdorff_box(const Box& k, const Box& l) {
    k.require_same_dim(l);
    const Rat m = std::max(detail::max_corner_dist_sq(k, l), detail::max_corner_dist_sq(l, k));
    return std::sqrt(to_double(m));
}

} // namespace valgeo
