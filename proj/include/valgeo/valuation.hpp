#pragma once

#include <memory>
#include <string>
#include <vector>

#include "valgeo/arcgon.hpp"
#include "valgeo/component.hpp"
#include "valgeo/sphere.hpp"

namespace valgeo {

/// A concrete valuation on planar bodies (and on boxes where meaningful):
/// Vol, Euler, Perimeter, the curvature-power phi_l, the surface-measure
/// integral phi_f, the singular-part total mass phi_sing, a Composite box
/// valuation backed by a component family, or a rational linear combination.
class ValuationSpec {
  public:
    enum class Kind { Vol, Euler, Perimeter, PhiL, PhiF, PhiSing, Composite, LinComb };

    static ValuationSpec vol() { return ValuationSpec(Kind::Vol); }
    static ValuationSpec euler() { return ValuationSpec(Kind::Euler); }
    static ValuationSpec perimeter() { return ValuationSpec(Kind::Perimeter); }
    static ValuationSpec phi_sing() { return ValuationSpec(Kind::PhiSing); }

    /// phi_l = integral of kappa^l over the boundary; bounded regime is
    /// l in [0,1], other exponents are accepted but flagged.
    static ValuationSpec phi_l(double l) {
        ValuationSpec v(Kind::PhiL);
        v.l_ = l;
        return v;
    }

    static ValuationSpec phi_f(SphereFunction f) {
        ValuationSpec v(Kind::PhiF);
        v.f_ = std::make_shared<SphereFunction>(std::move(f));
        return v;
    }

    static ValuationSpec composite(ComponentFamily family) {
        ValuationSpec v(Kind::Composite);
        v.family_ = std::make_shared<ComponentFamily>(std::move(family));
        return v;
    }

    static ValuationSpec lincomb(std::vector<std::pair<Rat, ValuationSpec>> terms) {
        ValuationSpec v(Kind::LinComb);
        v.terms_ = std::move(terms);
        return v;
    }

    Kind kind() const { return kind_; }
    double exponent() const { return l_; }
    bool bounded_regime() const { return kind_ != Kind::PhiL || (l_ >= 0.0 && l_ <= 1.0); }
    const SphereFunction& sphere_function() const { return *f_; }
    const ComponentFamily& family() const { return *family_; }
    const std::vector<std::pair<Rat, ValuationSpec>>& terms() const { return terms_; }

    std::string name() const {
        switch (kind_) {
            case Kind::Vol: return "vol";
            case Kind::Euler: return "euler";
            case Kind::Perimeter: return "perimeter";
            case Kind::PhiL: {
                char buf[48];
                std::snprintf(buf, sizeof buf, "phi_l(%g)", l_);
                return buf;
            }
            case Kind::PhiF: return "phi_f";
            case Kind::PhiSing: return "phi_sing";
            case Kind::Composite: return "composite";
            case Kind::LinComb: {
                std::string s = "lincomb(";
                for (std::size_t i = 0; i < terms_.size(); ++i) {
                    if (i) s += " + ";
                    s += rat_str(terms_[i].first) + "*" + terms_[i].second.name();
                }
                return s + ")";
            }
        }
        return "?";
    }

  private:
    explicit ValuationSpec(Kind k) : kind_(k) {}

    Kind kind_;
    double l_ = 0;
    std::shared_ptr<const SphereFunction> f_;
    std::shared_ptr<const ComponentFamily> family_;
    std::vector<std::pair<Rat, ValuationSpec>> terms_;
};

/// Evaluates a valuation on a planar body. Degenerate conventions: the empty
/// set maps to 0 for everything; Vol and PhiL vanish on lower-dimensional
/// bodies; Euler is 1 on any nonempty body; Perimeter of a Segment is twice
/// its length (the boundary traverses it twice), and PhiSing likewise counts
/// both normal atoms.
inline double evaluate(const ValuationSpec& v, const ArcGon& k) {
    if (k.is_empty()) return 0.0;
    switch (v.kind()) {
        case ValuationSpec::Kind::Vol:
            return k.kind() == BodyKind::Full ? k.area() : 0.0;
        case ValuationSpec::Kind::Euler:
            return 1.0;
        case ValuationSpec::Kind::Perimeter:
            return k.perimeter();
        case ValuationSpec::Kind::PhiL: {
            if (k.kind() != BodyKind::Full) return 0.0;
            // kappa = 1/r on arcs: integral of kappa^l over an arc of length
            // r*dtheta is r^(1-l)*dtheta; edges have kappa = 0 and contribute
            // nothing for l > 0 and, by the 0^0 = 0 convention, for l = 0 too.
            double s = 0;
            for (const Feature& f : k.features())
                if (!f.is_vertex()) s += std::pow(f.radius, 1.0 - v.exponent()) * f.width;
            return s;
        }
        case ValuationSpec::Kind::PhiF: {
            if (k.kind() == BodyKind::Point) return 0.0;
            const SphereMeasure s = surface_measure(k);
            const SphereFunction& f = v.sphere_function();
            double total = 0;
            for (const auto& atom : s.atoms) total += atom.mass * f(atom.angle);
            for (const auto& piece : s.density)
                total += piece.value * f.integral(piece.start, piece.start + piece.width);
            return total;
        }
        case ValuationSpec::Kind::PhiSing: {
            if (k.kind() == BodyKind::Point) return 0.0;
            return surface_measure(k).atom_total();
        }
        case ValuationSpec::Kind::Composite:
            throw UnsupportedBody("composite valuations evaluate boxes, not planar bodies");
        case ValuationSpec::Kind::LinComb: {
            double total = 0;
            for (const auto& [c, term] : v.terms()) total += to_double(c) * evaluate(term, k);
            return total;
        }
    }
    throw Error("unreachable");
}

/// Conversion of a planar Box to the ArcGon kernel (degenerate boxes become
/// Segment/Point).
inline ArcGon box_to_arcgon(const Box& b) {
    if (b.ambient_dim() != 2) throw UnsupportedBody("only planar boxes convert to ArcGon");
    const double x0 = to_double(b.lo(0)), x1 = to_double(b.hi(0));
    const double y0 = to_double(b.lo(1)), y1 = to_double(b.hi(1));
    const bool w = x1 > x0, h = y1 > y0;
    if (w && h) return ArcGon::from_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    if (w) return ArcGon::segment({x0, y0}, {x1, y0});
    if (h) return ArcGon::segment({x0, y0}, {x0, y1});
    return ArcGon::point({x0, y0});
}

/// Whether the valuation has an exact rational restriction to boxes.
inline bool exact_on_boxes(const ValuationSpec& v) {
    switch (v.kind()) {
        case ValuationSpec::Kind::Vol:
        case ValuationSpec::Kind::Euler:
        case ValuationSpec::Kind::Perimeter:
        case ValuationSpec::Kind::PhiL:
        case ValuationSpec::Kind::PhiSing:
        case ValuationSpec::Kind::Composite:
            return true;
        case ValuationSpec::Kind::PhiF:
            return false;
        case ValuationSpec::Kind::LinComb:
            for (const auto& [c, term] : v.terms())
                if (!exact_on_boxes(term)) return false;
            return true;
    }
    return false;
}

/// Exact rational value on a box. PhiL of a planar box is 0 (flat boundary,
/// 0^0 = 0); PhiSing and Perimeter are the perimeter 2(w+h). Curvature-based
/// valuations on boxes of dimension >= 3 are out of scope.
inline Rat evaluate_box_exact(const ValuationSpec& v, const Box& b) {
    switch (v.kind()) {
        case ValuationSpec::Kind::Vol:
            return b.volume();
        case ValuationSpec::Kind::Euler:
            return Rat(1);
        case ValuationSpec::Kind::Composite: {
            const ComponentFamily& fam = v.family();
            if (b.ambient_dim() != fam.n()) throw DimensionMismatch("family dimension differs");
            std::vector<Rat> sides(fam.n());
            for (int i = 0; i < fam.n(); ++i) sides[i] = b.side(i);
            return fam.eval_corner(sides);
        }
        case ValuationSpec::Kind::Perimeter:
        case ValuationSpec::Kind::PhiSing: {
            if (b.ambient_dim() != 2)
                throw UnsupportedBody("perimeter-type valuations need planar boxes");
            if (b.dim() == 0) return Rat(0);
            return 2 * (b.side(0) + b.side(1)); // for a segment this doubles its length
        }
        case ValuationSpec::Kind::PhiL:
            if (b.ambient_dim() != 2) throw UnsupportedBody("phi_l needs planar bodies");
            return Rat(0);
        case ValuationSpec::Kind::PhiF:
            throw UnsupportedBody("phi_f has no exact box restriction");
        case ValuationSpec::Kind::LinComb: {
            Rat total(0);
            for (const auto& [c, term] : v.terms()) total += c * evaluate_box_exact(term, b);
            return total;
        }
    }
    throw Error("unreachable");
}

/// The exact box-restricted oracle of a valuation, for the decomposition
/// machinery.
inline BoxValuation box_restriction(const ValuationSpec& v) {
    if (!exact_on_boxes(v)) throw UnsupportedBody("valuation has no exact box restriction");
    return {[v](const Box& b) { return evaluate_box_exact(v, b); }, true};
}

/// Defect of the weak additivity identity for the cut {<x,u> = t}:
/// |V(K) + V(K n H) - V(K n H+) - V(K n H-)|.
inline double weak_additivity_defect(const ValuationSpec& v, const ArcGon& k, Vec2 u, double t) {
    if (k.is_empty()) throw EmptyBody("weak additivity needs a nonempty body");
    const double un = norm(u);
    u = u * (1.0 / un);
    t /= un;
    const ArcGon below = clip_halfplane(k, u, t);
    const ArcGon above = clip_halfplane(k, -u, -t);
    ArcGon section = ArcGon::empty();
    if (!below.is_empty() && !above.is_empty()) {
        const double theta_u = angle_of(u);
        const double tol = kSnapTol * std::max(k.scale_hint(), std::abs(t));
        if (std::abs(k.support(theta_u) - t) <= tol) section = face(k, theta_u);
        else if (std::abs(-k.support(normalize_angle(theta_u + kPi)) - t) <= tol)
            section = face(k, normalize_angle(theta_u + kPi));
        else section = face(below, theta_u);
    }
    const double lhs = evaluate(v, k) + evaluate(v, section);
    const double rhs = evaluate(v, below) + evaluate(v, above);
    return std::abs(lhs - rhs);
}

struct HomogeneityProbe {
    double degree = 0;
    double max_defect = 0; // max |V(lambda K)/V(K) - lambda^degree|
};

/// Estimates the homogeneity degree from V(lambda K)/V(K) ratios: the degree
/// is the median of log-ratios, the defect the worst deviation of the ratio
/// from lambda^degree.
inline HomogeneityProbe homogeneity_probe(const ValuationSpec& v, const ArcGon& k,
                                          const std::vector<double>& lambdas) {
    const double base = evaluate(v, k);
    if (std::abs(base) < 1e-12) throw ZeroBaseValue("V(K) is zero, cannot probe homogeneity");
    std::vector<double> degrees;
    for (double l : lambdas) {
        if (l <= 0 || l == 1.0) continue;
        const double ratio = evaluate(v, k.scaled(l)) / base;
        if (ratio > 0) degrees.push_back(std::log(ratio) / std::log(l));
    }
    HomogeneityProbe probe;
    if (degrees.empty()) {
        probe.degree = 0;
    } else {
        std::sort(degrees.begin(), degrees.end());
        probe.degree = degrees[degrees.size() / 2];
    }
    for (double l : lambdas) {
        if (l <= 0) continue;
        const double ratio = evaluate(v, k.scaled(l)) / base;
        probe.max_defect = std::max(probe.max_defect, std::abs(ratio - std::pow(l, probe.degree)));
    }
    return probe;
}

/// sup |V(K)| over a sample of bodies.
inline double boundedness_probe(const ValuationSpec& v, const std::vector<ArcGon>& bodies) {
    double sup = 0;
    for (const ArcGon& k : bodies) sup = std::max(sup, std::abs(evaluate(v, k)));
    return sup;
}

} // namespace valgeo
