#pragma once

#include <algorithm>
#include <vector>

#include "valgeo/angle.hpp"
#include "valgeo/errors.hpp"

namespace valgeo {

/// Measure on the unit circle: finitely many atoms plus a piecewise density.
/// For a planar convex body this is the surface area measure S_1: one atom
/// per edge (mass = edge length) and density r(theta) over each arc's normal
/// interval. The atoms are exactly the singular part.
struct SphereMeasure {
    struct Atom {
        double angle; // in [0, 2pi)
        double mass;  // > 0
    };
    struct DensityPiece {
        double start, width; // normal interval, width > 0
        double value;        // density (the arc radius)
    };

    std::vector<Atom> atoms;
    std::vector<DensityPiece> density;

    double atom_total() const {
        double s = 0;
        for (const auto& a : atoms) s += a.mass;
        return s;
    }
    double density_total() const {
        double s = 0;
        for (const auto& p : density) s += p.value * p.width;
        return s;
    }
    double total_mass() const { return atom_total() + density_total(); }
};

/// Function on the unit circle, either piecewise constant on angle intervals
/// (left-closed; deterministic at breakpoints) or a trigonometric polynomial.
class SphereFunction {
  public:
    /// pieces: (breakpoint, value) pairs; piece i holds value_i on
    /// [theta_i, theta_{i+1}), cyclically. Breakpoints strictly increasing
    /// in [0, 2pi).
    static SphereFunction piecewise(std::vector<std::pair<double, double>> pieces) {
        if (pieces.empty()) throw Error("piecewise SphereFunction needs at least one piece");
        std::sort(pieces.begin(), pieces.end());
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
            if (pieces[i + 1].first - pieces[i].first <= 0)
                throw Error("piecewise breakpoints must be strictly increasing");
        if (pieces.front().first < 0 || pieces.back().first >= kTwoPi)
            throw Error("piecewise breakpoints must lie in [0, 2pi)");
        SphereFunction f;
        f.pieces_ = std::move(pieces);
        return f;
    }

    /// cos_coeffs[k] multiplies cos(k theta) (k = 0 is the constant term);
    /// sin_coeffs[k] multiplies sin((k+1) theta).
    static SphereFunction trig(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
        SphereFunction f;
        f.cos_ = std::move(cos_coeffs);
        f.sin_ = std::move(sin_coeffs);
        if (f.cos_.empty()) f.cos_.push_back(0.0);
        return f;
    }

    static SphereFunction constant(double c) { return trig({c}, {}); }

    bool is_trig() const { return pieces_.empty(); }

    /// Piecewise-constant functions are continuous only when constant.
    bool continuous() const {
        if (is_trig()) return true;
        for (const auto& [b, v] : pieces_)
            if (v != pieces_.front().second) return false;
        return true;
    }

    double operator()(double theta) const {
        if (is_trig()) {
            double s = 0;
            for (std::size_t k = 0; k < cos_.size(); ++k) s += cos_[k] * std::cos(double(k) * theta);
            for (std::size_t k = 0; k < sin_.size(); ++k) s += sin_[k] * std::sin(double(k + 1) * theta);
            return s;
        }
        double t = normalize_angle(theta);
        // snap to a breakpoint slightly above t: left-closed convention
        for (const auto& [b, v] : pieces_)
            if (b - t > 0 && b - t <= kSnapTol) t = b;
        if (t < pieces_.front().first) return pieces_.back().second; // wrapped last piece
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), std::make_pair(t, 1e308));
        return std::prev(it)->second;
    }

    /// Exact integral over [lo, hi], lo <= hi (any number of wraps).
    double integral(double lo, double hi) const {
        if (hi < lo) throw Error("integral needs lo <= hi");
        if (is_trig()) {
            auto antiderivative = [&](double t) {
                double s = cos_.empty() ? 0.0 : cos_[0] * t;
                for (std::size_t k = 1; k < cos_.size(); ++k)
                    s += cos_[k] * std::sin(double(k) * t) / double(k);
                for (std::size_t k = 0; k < sin_.size(); ++k)
                    s -= sin_[k] * std::cos(double(k + 1) * t) / double(k + 1);
                return s;
            };
            return antiderivative(hi) - antiderivative(lo);
        }
        const double full = full_integral();
        double result = 0;
        // whole periods
        const double wraps = std::floor((hi - lo) / kTwoPi);
        result += wraps * full;
        double a = lo + wraps * kTwoPi; // [a, hi] within one period
        double start = normalize_angle(a);
        double len = hi - a;
        // walk pieces from `start`
        while (len > 0) {
            const std::size_t i = piece_index(start);
            double piece_end;
            if (start < pieces_.front().first) piece_end = pieces_.front().first; // wrapped tail
            else if (i + 1 < pieces_.size()) piece_end = pieces_[i + 1].first;
            else piece_end = pieces_.front().first + kTwoPi;
            const double step = std::min(len, piece_end - start);
            result += pieces_[i].second * step;
            len -= step;
            start = normalize_angle(start + step);
        }
        return result;
    }

    const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

  private:
    double full_integral() const {
        double s = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const double end =
                (i + 1 < pieces_.size()) ? pieces_[i + 1].first : pieces_.front().first + kTwoPi;
            s += pieces_[i].second * (end - pieces_[i].first);
        }
        return s;
    }

    std::size_t piece_index(double t) const {
        if (t < pieces_.front().first) return pieces_.size() - 1;
        std::size_t i = 0;
        while (i + 1 < pieces_.size() && pieces_[i + 1].first <= t) ++i;
        return i;
    }

    std::vector<std::pair<double, double>> pieces_;
    std::vector<double> cos_, sin_;
};

} // namespace valgeo
