#pragma once

#include <vector>

#include "valgeo/arcgon.hpp"
#include "valgeo/rng.hpp"

namespace valgeo {

/// Random strictly convex polygon with vertices on a circle.
inline ArcGon random_polygon_body(Rng& rng, int min_v = 3, int max_v = 10, double radius = 1.0,
                                  Vec2 center = {0, 0}) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        const int m = static_cast<int>(rng.uniform_int(min_v, max_v));
        std::vector<double> angles;
        for (int i = 0; i < m; ++i) angles.push_back(rng.uniform(0, kTwoPi));
        std::sort(angles.begin(), angles.end());
        bool spaced = true;
        for (int i = 0; i < m; ++i) {
            const double next = angles[(i + 1) % m] + (i + 1 == m ? kTwoPi : 0);
            if (next - angles[i] < 0.1 || next - angles[i] > kPi - 0.1) spaced = false;
        }
        if (!spaced) continue;
        std::vector<Vec2> pts;
        for (double a : angles) pts.push_back(center + radius * unit(a));
        return ArcGon::from_polygon(pts);
    }
    return ArcGon::from_polygon({{center.x - radius, center.y - radius},
                                 {center.x + radius, center.y - radius},
                                 {center.x, center.y + radius}});
}

/// Random full-dimensional convex body inside the disk of radius R around
/// the origin: polygons, disks, rounded polygons (Minkowski sums) and
/// half-plane clippings of larger disks, rescaled to fit.
inline ArcGon random_body_in_disk(Rng& rng, double R = 1.0) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        ArcGon k = ArcGon::empty();
        switch (rng.uniform_int(0, 3)) {
            case 0:
                k = random_polygon_body(rng, 3, 10, rng.uniform(0.2, 1.0),
                                        {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)});
                break;
            case 1: {
                const double r = rng.uniform(0.05, 0.9);
                const double c = rng.uniform(0.0, 1.0 - r);
                const double a = rng.uniform(0, kTwoPi);
                k = ArcGon::disk(c * unit(a), r);
                break;
            }
            case 2:
                k = minkowski_sum(random_polygon_body(rng, 3, 8, rng.uniform(0.2, 0.7)),
                                  ArcGon::disk({0, 0}, rng.uniform(0.05, 0.5)));
                break;
            case 3: {
                // clipped big disk: boundary arcs of radius possibly > R
                k = ArcGon::disk({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)},
                                 rng.uniform(0.5, 3.0));
                const int cuts = static_cast<int>(rng.uniform_int(2, 4));
                for (int c = 0; c < cuts && !k.is_empty(); ++c)
                    k = clip_halfplane(k, unit(rng.uniform(0, kTwoPi)), rng.uniform(0.1, 0.8));
                break;
            }
        }
        if (k.is_empty() || k.kind() != BodyKind::Full) continue;
        if (k.area() < 1e-4) continue;
        const double rad = circumradius(k);
        if (rad > R) k = k.scaled(0.999 * R / rad);
        return k;
    }
    return ArcGon::disk({0, 0}, 0.5 * R);
}

inline std::vector<ArcGon> sample_bodies_in_disk(Rng& rng, int count, double R = 1.0) {
    std::vector<ArcGon> bodies;
    bodies.reserve(count);
    for (int i = 0; i < count; ++i) bodies.push_back(random_body_in_disk(rng, R));
    return bodies;
}

/// Regular 2^j-gon inscribed in the unit circle: the discontinuity witness
/// sequence converging to the disk in Hausdorff distance.
inline ArcGon inscribed_power_ngon(int j) {
    const int m = 1 << j;
    std::vector<Vec2> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i) pts.push_back(unit(kTwoPi * i / m));
    return ArcGon::from_polygon(pts);
}

/// Triangle tangent to the unit circle with the given outer facet normals
/// (vertices solve adjacent pairs of support lines <x, u_i> = 1).
inline ArcGon tangent_triangle(double n0, double n1, double n2) {
    std::vector<double> n{n0, n1, n2};
    std::vector<Vec2> verts;
    for (int i = 0; i < 3; ++i) {
        const Vec2 a = unit(n[i]), b = unit(n[(i + 1) % 3]);
        const double det = cross(a, b);
        if (std::abs(det) < 1e-12) throw NotConvex("degenerate tangent triangle normals");
        verts.push_back({(b.y - a.y) / det, (a.x - b.x) / det});
    }
    std::sort(verts.begin(), verts.end(),
              [](Vec2 p, Vec2 q) { return angle_of(p) < angle_of(q); });
    return ArcGon::from_polygon(verts);
}

} // namespace valgeo
