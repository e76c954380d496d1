#pragma once

#include <algorithm>
#include <cmath>

namespace valgeo {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Snapping tolerance for angle bookkeeping and on-line classification.
inline constexpr double kSnapTol = 1e-12;
/// Geometric tolerance for derived quantities (closure, Hausdorff accuracy).
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Outward unit vector at normal angle theta.
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }
/// CCW boundary tangent at normal angle theta (unit(theta) rotated +90 deg).
inline Vec2 tangent(double theta) { return {-std::sin(theta), std::cos(theta)}; }

/// Angle of a nonzero vector, in [0, 2pi).
inline double angle_of(Vec2 v) {
    const double a = std::atan2(v.y, v.x);
    return a < 0 ? a + kTwoPi : a;
}

/// Reduction to [0, 2pi).
inline double normalize_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t == kTwoPi) t = 0; // fmod may return the modulus itself after rounding
    return t;
}

/// Signed cyclic difference a - b wrapped into (-pi, pi].
inline double angle_diff(double a, double b) {
    double d = std::fmod(a - b, kTwoPi);
    if (d > kPi) d -= kTwoPi;
    if (d <= -kPi) d += kTwoPi;
    return d;
}

inline bool angle_close(double a, double b, double tol = kSnapTol) {
    return std::abs(angle_diff(a, b)) <= tol;
}

/// Max of A cos(theta) + B sin(theta) + C over [lo, hi] (hi may exceed 2pi;
/// hi - lo <= 2pi). Closed form: endpoints plus the interior critical angles.
inline double sinusoid_max(double A, double B, double C, double lo, double hi) {
    double best = std::max(A * std::cos(lo) + B * std::sin(lo), A * std::cos(hi) + B * std::sin(hi));
    const double amp = std::hypot(A, B);
    if (amp > 0) {
        const double peak = std::atan2(B, A);
        for (int k = -1; k <= 2; ++k) {
            const double t = peak + k * kTwoPi;
            if (t >= lo && t <= hi) best = std::max(best, amp);
        }
    }
    return best + C;
}

} // namespace valgeo
