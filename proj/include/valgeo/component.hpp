#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "valgeo/box_valuation.hpp"

namespace valgeo {

/// One separately additive component G_I of a translation invariant
/// valuation on Pa. Stored as sampled values plus an optional certified
/// closed form c * prod_{i in I} a_i. Components of a pathological valuation
/// have no closed form, so certification is opt-in and exact.
struct Component {
    std::vector<int> axes;                   // ascending, 0-based
    std::map<std::vector<Rat>, Rat> samples; // |axes|-tuples -> value
    std::optional<Rat> certified;            // G(a) = c * prod a_i

    Rat eval(const std::vector<Rat>& at) const {
        if (certified) {
            Rat v = *certified;
            for (const Rat& x : at) v *= x;
            return v;
        }
        auto it = samples.find(at);
        if (it == samples.end()) throw ComponentUndefinedAt("component not sampled at requested point");
        return it->second;
    }

    bool defined_at(const std::vector<Rat>& at) const {
        return certified.has_value() || samples.count(at) > 0;
    }
};

/// The family {G_I : I subset of {1..n}} indexed by bitmask. G_emptyset is
/// the constant component comp(0).
class ComponentFamily {
  public:
    explicit ComponentFamily(int n) : n_(n), comps_(std::size_t(1) << n) {
        for (unsigned mask = 0; mask < comps_.size(); ++mask)
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1u) comps_[mask].axes.push_back(i);
    }

    int n() const { return n_; }
    Component& comp(unsigned mask) { return comps_[mask]; }
    const Component& comp(unsigned mask) const { return comps_[mask]; }
    unsigned subset_count() const { return static_cast<unsigned>(comps_.size()); }

    Rat constant() const { return comps_[0].eval({}); }

    /// F(a) = sum_I G_I((a_i)_{i in I}) for a >= 0; the valuation of the
    /// corner box with side lengths a.
    Rat eval_corner(const std::vector<Rat>& a) const {
        Rat total(0);
        for (unsigned mask = 0; mask < comps_.size(); ++mask) total += eval_component(mask, a);
        return total;
    }

    /// G_I evaluated on the restriction of the full tuple a.
    Rat eval_component(unsigned mask, const std::vector<Rat>& a) const {
        return comps_[mask].eval(restrict(mask, a));
    }

    std::vector<Rat> restrict(unsigned mask, const std::vector<Rat>& a) const {
        std::vector<Rat> r;
        r.reserve(comps_[mask].axes.size());
        for (int i : comps_[mask].axes) r.push_back(a[i]);
        return r;
    }

    void set_constant(Rat c) { comps_[0].samples[{}] = std::move(c); }

  private:
    int n_;
    std::vector<Component> comps_;
};

/// Alternating-sign extraction of the top separately additive component:
/// sum over I of (-1)^{n-|I|} F(a^I) with a^I zeroing the coordinates
/// outside I. The sign is fixed so the map is a projection: applied to a
/// separately additive F it returns F itself.
inline Rat alternating_top(const std::function<Rat(const std::vector<Rat>&)>& f,
                           const std::vector<Rat>& a) {
    const int n = static_cast<int>(a.size());
    Rat total(0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Rat> point(n, Rat(0));
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) point[i] = a[i];
        const int missing = n - std::popcount(mask);
        const Rat term = f(point);
        total += (missing % 2 == 0) ? term : -term;
    }
    return total;
}

struct LinearityFit {
    Rat coefficient{0};
    Rat max_defect{0};
    bool certified = false;
    long probes_used = 0;
};

/// Exact least-max-defect fit of c * prod a_i against the sampled values of
/// a component. With rational samples of a genuinely additive bounded
/// component this certifies with defect exactly 0; a nonzero defect flags an
/// upstream bug (or a non-additive input).
inline LinearityFit certify_linearity(const Component& g, long probe_count = 64) {
    std::vector<std::pair<Rat, Rat>> probes; // (prod a_i, value)
    {
        const long total = static_cast<long>(g.samples.size());
        const long stride = std::max<long>(1, total / std::max<long>(1, probe_count));
        long idx = 0;
        for (const auto& [pt, val] : g.samples) {
            if (idx++ % stride != 0) continue;
            Rat p(1);
            for (const Rat& x : pt) p *= x;
            probes.emplace_back(std::move(p), val);
            if (static_cast<long>(probes.size()) >= probe_count) break;
        }
    }
    LinearityFit fit;
    fit.probes_used = static_cast<long>(probes.size());
    if (probes.empty()) return fit;

    auto defect_for = [&](const Rat& c) {
        Rat worst(0);
        for (const auto& [p, v] : probes) worst = std::max(worst, rat_abs(v - c * p));
        return worst;
    };

    std::set<Rat> candidates;
    for (const auto& [p, v] : probes)
        if (p != 0) candidates.insert(v / p);
    for (std::size_t i = 0; i < probes.size(); ++i)
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
            const auto& [pi, vi] = probes[i];
            const auto& [pj, vj] = probes[j];
            if (pi != pj) candidates.insert((vi - vj) / (pi - pj));
            if (pi + pj != 0) candidates.insert((vi + vj) / (pi + pj));
        }
    if (candidates.empty()) candidates.insert(Rat(0));

    bool first = true;
    for (const Rat& c : candidates) {
        const Rat d = defect_for(c);
        if (first || d < fit.max_defect) {
            fit.coefficient = c;
            fit.max_defect = d;
            first = false;
        }
    }
    fit.certified = (fit.max_defect == 0);
    return fit;
}

/// Default decomposition sample grid {k/8 : 0 <= k <= 32}.
inline std::vector<Rat> default_axis_grid() {
    std::vector<Rat> g;
    g.reserve(33);
    for (int k = 0; k <= 32; ++k) g.emplace_back(k, 8);
    return g;
}

namespace detail {

inline void for_each_tuple(const std::vector<Rat>& axis_grid, int arity,
                           const std::function<void(const std::vector<Rat>&)>& fn) {
    std::vector<Rat> tuple(arity);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == arity) {
            fn(tuple);
            return;
        }
        for (const Rat& x : axis_grid) {
            tuple[depth] = x;
            rec(depth + 1);
        }
    };
    rec(0);
}

} // namespace detail

/// Extracts the unique component family of a translation invariant valuation
/// by recursion on |I|: G_emptyset = V({0}) and
/// G_I(a) = V(sum_{i in I}[0,a_i]e_i) - sum_{J proper subset} G_J(a|_J).
/// Components are sampled on axis_grid^{|I|} and closed forms are certified
/// where the samples admit one exactly.
inline ComponentFamily extract_components(const BoxValuation& v, int n,
                                          const std::vector<Rat>& axis_grid = default_axis_grid(),
                                          bool certify = true) {
    ComponentFamily family(n);
    family.set_constant(v.eval(corner_box(std::vector<Rat>(n, Rat(0)))));

    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < family.subset_count(); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    for (unsigned mask : masks) {
        Component& g = family.comp(mask);
        const int arity = static_cast<int>(g.axes.size());
        detail::for_each_tuple(axis_grid, arity, [&](const std::vector<Rat>& tuple) {
            std::vector<Rat> full(n, Rat(0));
            for (int j = 0; j < arity; ++j) full[g.axes[j]] = tuple[j];
            Rat value = v.eval(corner_box(full));
            for (unsigned sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
                value -= family.eval_component(sub, full);
                if (sub == 0) break;
            }
            g.samples[tuple] = std::move(value);
        });
        if (certify) {
            const LinearityFit fit = certify_linearity(g);
            if (fit.certified) g.certified = fit.coefficient;
        }
    }
    return family;
}

/// The translation invariant valuation rebuilt from a component family:
/// V(sum [a_i,b_i]e_i) = sum_I G_I((b_i - a_i)_{i in I}).
inline BoxValuation reconstruct(const ComponentFamily& family) {
    auto fam = std::make_shared<ComponentFamily>(family);
    return {[fam](const Box& b) {
                if (b.ambient_dim() != fam->n()) throw DimensionMismatch("family dimension differs");
                std::vector<Rat> sides(fam->n());
                for (int i = 0; i < fam->n(); ++i) sides[i] = b.side(i);
                return fam->eval_corner(sides);
            },
            true};
}

struct HomogeneityFit {
    std::vector<Rat> coefficients; // c_0 .. c_n
    Rat residual{0};               // max defect on held-out lambdas
};

namespace detail {

/// Exact Gaussian elimination solve, square system.
inline std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw Error("singular system");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rat f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

} // namespace detail

/// Fits lambda -> V(lambda K) with a polynomial of degree n by an exact
/// Vandermonde solve on the first n+1 sample values; the remaining lambdas
/// are held out and the max defect on them is the residual. residual == 0
/// certifies that only degrees {0..n} occur on the sample.
inline HomogeneityFit homogeneity_fit(const BoxValuation& v, const Box& k,
                                      const std::vector<Rat>& lambdas) {
    const int n = k.ambient_dim();
    std::vector<Rat> distinct;
    for (const Rat& l : lambdas) {
        if (l <= 0) throw InsufficientSamples("lambda values must be positive");
        if (std::find(distinct.begin(), distinct.end(), l) == distinct.end()) distinct.push_back(l);
    }
    if (static_cast<int>(distinct.size()) < n + 2)
        throw InsufficientSamples("need at least n+2 distinct lambda values");

    std::vector<std::vector<Rat>> m(n + 1, std::vector<Rat>(n + 1));
    std::vector<Rat> rhs(n + 1);
    for (int r = 0; r <= n; ++r) {
        for (int c = 0; c <= n; ++c) m[r][c] = rat_pow(distinct[r], c);
        rhs[r] = v.eval(scale_box(k, distinct[r]));
    }
    HomogeneityFit fit;
    fit.coefficients = detail::solve_linear(std::move(m), std::move(rhs));
    for (std::size_t i = n + 1; i < distinct.size(); ++i) {
        Rat predicted(0);
        for (int c = 0; c <= n; ++c) predicted += fit.coefficients[c] * rat_pow(distinct[i], c);
        fit.residual = std::max(fit.residual, rat_abs(predicted - v.eval(scale_box(k, distinct[i]))));
    }
    return fit;
}

} // namespace valgeo
