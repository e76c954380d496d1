#include <catch2/catch_amalgamated.hpp>

#include <valgeo/arcgon.hpp>
#include <valgeo/rng.hpp>

using namespace valgeo;
using Catch::Approx;

namespace {

ArcGon unit_square() { return ArcGon::from_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

ArcGon random_polygon(Rng& rng, int min_v = 3, int max_v = 9, double radius = 1.0,
                      Vec2 center = {0, 0}) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        const int m = static_cast<int>(rng.uniform_int(min_v, max_v));
        std::vector<double> angles;
        for (int i = 0; i < m; ++i) angles.push_back(rng.uniform(0, kTwoPi));
        std::sort(angles.begin(), angles.end());
        bool spaced = true;
        for (int i = 0; i < m; ++i) {
            const double next = angles[(i + 1) % m] + (i + 1 == m ? kTwoPi : 0);
            if (next - angles[i] < 0.15 || next - angles[i] > kPi - 0.15) spaced = false;
        }
        if (!spaced) continue;
        std::vector<Vec2> pts;
        for (double a : angles) pts.push_back(center + radius * unit(a));
        return ArcGon::from_polygon(pts);
    }
    return unit_square();
}

/// Dense-sampling Hausdorff estimate: samples sup |h_K - h_L| on a fine
/// angle grid with a refinement pass around the coarse peak (the sup can sit
/// on a kink of the support difference). Independent of the closed-form
/// per-interval extremization.
double hausdorff_sampling_oracle(const ArcGon& k, const ArcGon& l) {
    auto gap = [&](double theta) { return std::abs(k.support(theta) - l.support(theta)); };
    const int coarse = 100000;
    double worst = 0, arg = 0;
    for (int i = 0; i < coarse; ++i) {
        const double theta = kTwoPi * i / coarse;
        const double g = gap(theta);
        if (g > worst) {
            worst = g;
            arg = theta;
        }
    }
    const double step = kTwoPi / coarse;
    for (int i = 0; i <= 40000; ++i)
        worst = std::max(worst, gap(arg - 2 * step + i * (4 * step / 40000)));
    return worst;
}

} // namespace

TEST_CASE("from_polygon constructs the expected normal fans") {
    const ArcGon sq = unit_square();
    sq.validate();
    REQUIRE(sq.kind() == BodyKind::Full);
    REQUIRE(sq.features().size() == 4);
    std::vector<double> transitions;
    for (const Feature& f : sq.features()) {
        CHECK(f.is_vertex());
        transitions.push_back(f.start);
    }
    CHECK(transitions[0] == Approx(0.0).margin(1e-15));
    CHECK(transitions[1] == Approx(kPi / 2));
    CHECK(transitions[2] == Approx(kPi));
    CHECK(transitions[3] == Approx(3 * kPi / 2));

    const ArcGon tri = ArcGon::from_polygon({{0, 0}, {1, 0}, {0, 1}});
    tri.validate();
    REQUIRE(tri.features().size() == 3);
    std::vector<double> tn;
    for (const Feature& f : tri.features()) tn.push_back(f.start);
    CHECK(tn[0] == Approx(kPi / 4));
    CHECK(tn[1] == Approx(kPi));
    CHECK(tn[2] == Approx(3 * kPi / 2));

    CHECK_THROWS_AS(ArcGon::from_polygon({{0, 0}, {1, 0}, {2, 0}, {0, 1}}), NotConvex);
    CHECK_THROWS_AS(ArcGon::from_polygon({{0, 0}, {0, 0}, {1, 0}, {0, 1}}), DuplicatePoint);
}

TEST_CASE("disk basics") {
    const ArcGon d = ArcGon::disk({0, 0}, 1);
    d.validate();
    CHECK(d.area() == Approx(kPi).epsilon(1e-12));
    CHECK(d.perimeter() == Approx(kTwoPi).epsilon(1e-12));
    CHECK(ArcGon::disk({0, 0}, 2).support(1.234) == Approx(2.0));
    const Vec2 p{3, -2};
    const ArcGon moved = ArcGon::disk(p, 1);
    for (double theta : {0.0, 0.7, 2.9, 4.4})
        CHECK(moved.support(theta) == Approx(dot(p, unit(theta)) + 1.0));
    CHECK_THROWS_AS(ArcGon::disk({0, 0}, 0), NonpositiveRadius);
    CHECK(unit_square().support(kPi / 4) == Approx(std::sqrt(2.0))); // corner (1,1)
}

TEST_CASE("minkowski sums") {
    SECTION("square plus disk has the Steiner area") {
        for (double r : {0.25, 1.0, 2.0}) {
            const ArcGon s = minkowski_sum(unit_square(), ArcGon::disk({0, 0}, r));
            s.validate();
            CHECK(s.area() == Approx(1 + 4 * r + kPi * r * r).epsilon(1e-12));
            CHECK(s.perimeter() == Approx(4 + kTwoPi * r).epsilon(1e-12));
        }
    }
    SECTION("disk radii add") {
        const ArcGon s = minkowski_sum(ArcGon::disk({0, 0}, 1), ArcGon::disk({0, 0}, 2));
        REQUIRE(s.kind() == BodyKind::Full);
        REQUIRE(s.features().size() == 1);
        CHECK(s.features()[0].radius == Approx(3.0));
    }
    SECTION("adding a point translates") {
        const ArcGon t = minkowski_sum(unit_square(), ArcGon::point({2, 5}));
        t.validate();
        CHECK(t.area() == Approx(1.0));
        CHECK(t.support(0) == Approx(3.0));
        CHECK(t.support(kPi / 2) == Approx(6.0));
    }
    SECTION("support additivity on random pairs") {
        Rng rng(101);
        for (int t = 0; t < 100; ++t) {
            ArcGon a = random_polygon(rng);
            ArcGon b = rng.coin() ? random_polygon(rng)
                                  : ArcGon::disk({rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                                 rng.uniform(0.1, 2.0));
            if (rng.coin()) a = minkowski_sum(a, ArcGon::disk({0, 0}, rng.uniform(0.1, 1.0)));
            const ArcGon s = minkowski_sum(a, b);
            s.validate();
            for (int i = 0; i < 1000; ++i) {
                const double theta = kTwoPi * i / 1000.0;
                REQUIRE(s.support(theta) ==
                        Approx(a.support(theta) + b.support(theta)).margin(1e-12));
            }
        }
    }
}

TEST_CASE("clip_halfplane") {
    SECTION("half-disk") {
        const ArcGon h = clip_halfplane(ArcGon::disk({0, 0}, 1), {1, 0}, 0);
        h.validate();
        CHECK(h.area() == Approx(kPi / 2).epsilon(1e-12));
        CHECK(h.perimeter() == Approx(kPi + 2).epsilon(1e-12));
    }
    SECTION("square to box") {
        const ArcGon b = clip_halfplane(unit_square(), {1, 0}, 0.5);
        b.validate();
        CHECK(b.area() == Approx(0.5));
        CHECK(b.perimeter() == Approx(3.0));
        CHECK(b.support(0) == Approx(0.5));
    }
    SECTION("supporting line gives the face") {
        const ArcGon p = clip_halfplane(ArcGon::disk({0, 0}, 1), {1, 0}, -1);
        REQUIRE(p.kind() == BodyKind::Point);
        CHECK(p.endpoint_a().x == Approx(-1.0));
        CHECK(p.endpoint_a().y == Approx(0.0).margin(1e-12));

        const ArcGon e = clip_halfplane(unit_square(), {1, 0}, 0);
        REQUIRE(e.kind() == BodyKind::Segment);
        CHECK(norm(e.endpoint_a() - e.endpoint_b()) == Approx(1.0));
    }
    SECTION("misses and no-ops") {
        CHECK(clip_halfplane(ArcGon::disk({0, 0}, 1), {1, 0}, -2).is_empty());
        const ArcGon same = clip_halfplane(unit_square(), {1, 0}, 7);
        CHECK(same.area() == Approx(1.0));
    }
    SECTION("clip area never exceeds the input and support shrinks") {
        Rng rng(131);
        for (int t = 0; t < 200; ++t) {
            ArcGon k = rng.coin() ? random_polygon(rng)
                                  : minkowski_sum(random_polygon(rng),
                                                  ArcGon::disk({0, 0}, rng.uniform(0.05, 0.8)));
            const double a0 = k.area();
            const double theta = rng.uniform(0, kTwoPi);
            const ArcGon c = clip_halfplane(k, unit(theta), rng.uniform(-1.2, 1.2));
            if (c.is_empty()) continue;
            c.validate();
            CHECK(c.area() <= a0 + 1e-9);
            for (int i = 0; i < 64; ++i) {
                const double phi = kTwoPi * i / 64;
                CHECK(c.support(phi) <= k.support(phi) + 1e-9);
            }
        }
    }
    SECTION("repeated clipping keeps the boundary closed") {
        Rng rng(137);
        for (int t = 0; t < 50; ++t) {
            ArcGon k = minkowski_sum(random_polygon(rng), ArcGon::disk({0, 0}, 0.3));
            for (int c = 0; c < 6 && !k.is_empty(); ++c) {
                k = clip_halfplane(k, unit(rng.uniform(0, kTwoPi)), rng.uniform(-0.8, 0.9));
                k.validate(1e-9);
            }
        }
    }
}

TEST_CASE("face and line_section") {
    const ArcGon sq = unit_square();
    const ArcGon right = face(sq, 0);
    REQUIRE(right.kind() == BodyKind::Segment);
    CHECK(right.endpoint_a().x == Approx(1.0));
    CHECK(right.endpoint_b().x == Approx(1.0));

    const ArcGon corner = face(sq, kPi / 4);
    REQUIRE(corner.kind() == BodyKind::Point);
    CHECK(corner.endpoint_a().x == Approx(1.0));
    CHECK(corner.endpoint_a().y == Approx(1.0));

    const ArcGon chord = line_section(ArcGon::disk({0, 0}, 1), 0, 0.5);
    REQUIRE(chord.kind() == BodyKind::Segment);
    CHECK(norm(chord.endpoint_a() - chord.endpoint_b()) == Approx(std::sqrt(3.0)));

    CHECK(line_section(sq, 1, 2.0).is_empty());
    const ArcGon edge = line_section(sq, 0, 1.0); // tangent at the right edge
    REQUIRE(edge.kind() == BodyKind::Segment);
    CHECK(norm(edge.endpoint_a() - edge.endpoint_b()) == Approx(1.0));
    const ArcGon pt = line_section(ArcGon::disk({0, 0}, 1), 0, -1.0);
    REQUIRE(pt.kind() == BodyKind::Point);
}

TEST_CASE("degenerate bodies") {
    const ArcGon seg = ArcGon::segment({0, 0}, {3, 4});
    seg.validate();
    CHECK(seg.area() == Approx(0.0).margin(1e-15));
    CHECK(seg.perimeter() == Approx(10.0));
    const ArcGon pt = ArcGon::point({2, 2});
    pt.validate();
    CHECK(pt.area() == 0.0);
    CHECK(pt.perimeter() == 0.0);
    CHECK(ArcGon::segment({1, 1}, {1, 1}).kind() == BodyKind::Point);

    const ArcGon sub = clip_halfplane(seg, {3.0 / 5, 4.0 / 5}, 2.5);
    REQUIRE(sub.kind() == BodyKind::Segment);
    CHECK(sub.perimeter() == Approx(5.0));

    CHECK(minkowski_sum(seg, ArcGon::point({1, 1})).perimeter() == Approx(10.0));
    const ArcGon parallelogram = minkowski_sum(seg, ArcGon::segment({0, 0}, {1, 0}));
    CHECK(parallelogram.kind() == BodyKind::Full);
    CHECK(parallelogram.area() == Approx(4.0)); // base 1, height 4
    const ArcGon thick = minkowski_sum(seg, ArcGon::disk({0, 0}, 0.5));
    CHECK(thick.area() == Approx(5.0 * 1.0 + kPi * 0.25).epsilon(1e-12));
}

TEST_CASE("containment") {
    const ArcGon rounded = minkowski_sum(unit_square(), ArcGon::disk({0, 0}, 0.5));
    CHECK(rounded.contains({0.5, 0.5}));
    CHECK(rounded.contains({1.45, 0.5}));
    CHECK(rounded.contains({-0.5, 0.5})); // boundary point
    CHECK_FALSE(rounded.contains({1.4, 1.4}));
    CHECK_FALSE(rounded.contains({2.01, 0.5}));
    const ArcGon sq = unit_square();
    CHECK(sq.contains({1.0, 1.0}));
    CHECK_FALSE(sq.contains({1.0 + 1e-9, 1.0}));
}

TEST_CASE("surface measure") {
    SECTION("unit square: four unit atoms") {
        const SphereMeasure s = surface_measure(unit_square());
        REQUIRE(s.atoms.size() == 4);
        for (const auto& a : s.atoms) CHECK(a.mass == Approx(1.0));
        CHECK(s.density.empty());
        CHECK(s.total_mass() == Approx(4.0));
    }
    SECTION("disk: pure density") {
        const SphereMeasure s = surface_measure(ArcGon::disk({0, 0}, 1));
        CHECK(s.atoms.empty());
        REQUIRE(s.density.size() == 1);
        CHECK(s.density[0].value == Approx(1.0));
        CHECK(s.total_mass() == Approx(kTwoPi));
    }
    SECTION("half-disk: chord atom of mass 2 at theta = 0") {
        const SphereMeasure s = surface_measure(clip_halfplane(ArcGon::disk({0, 0}, 1), {1, 0}, 0));
        REQUIRE(s.atoms.size() == 1);
        CHECK(s.atoms[0].angle == Approx(0.0).margin(1e-12));
        CHECK(s.atoms[0].mass == Approx(2.0));
        REQUIRE(s.density.size() == 1);
        CHECK(s.density[0].start == Approx(kPi / 2));
        CHECK(s.density[0].width == Approx(kPi));
    }
    SECTION("segment: two atoms at opposite normals") {
        const SphereMeasure s = surface_measure(ArcGon::segment({0, 0}, {0, 2}));
        REQUIRE(s.atoms.size() == 2);
        CHECK(s.atoms[0].mass == Approx(2.0));
        CHECK(s.atoms[1].mass == Approx(2.0));
        CHECK(std::abs(angle_diff(s.atoms[0].angle + kPi, s.atoms[1].angle)) < 1e-12);
    }
    SECTION("total mass equals perimeter") {
        Rng rng(149);
        for (int t = 0; t < 100; ++t) {
            ArcGon k = random_polygon(rng);
            if (rng.coin()) k = minkowski_sum(k, ArcGon::disk({0, 0}, rng.uniform(0.1, 1.0)));
            if (rng.coin()) k = clip_halfplane(k, unit(rng.uniform(0, kTwoPi)), rng.uniform(0.0, 0.9));
            if (k.is_empty() || k.kind() == BodyKind::Point) continue;
            CHECK(surface_measure(k).total_mass() == Approx(k.perimeter()).margin(1e-12));
        }
    }
    SECTION("point is rejected") {
        CHECK_THROWS_AS(surface_measure(ArcGon::point({0, 0})), DegeneratePoint);
    }
}

TEST_CASE("hausdorff distance") {
    CHECK(hausdorff(ArcGon::disk({0, 0}, 1), ArcGon::disk({0, 0}, 2)) == Approx(1.0));
    const ArcGon centered_square =
        ArcGon::from_polygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    CHECK(hausdorff(centered_square, ArcGon::disk({0, 0}, 0.5)) ==
          Approx(std::sqrt(2.0) / 2 - 0.5));

    Rng rng(151);
    for (int t = 0; t < 40; ++t) {
        ArcGon a = random_polygon(rng);
        ArcGon b = rng.coin() ? minkowski_sum(random_polygon(rng), ArcGon::disk({0, 0}, 0.4))
                              : ArcGon::disk({rng.uniform(-1, 1), rng.uniform(-1, 1)}, 0.7);
        const double exact = hausdorff(a, b);
        CHECK(exact == Approx(hausdorff_sampling_oracle(a, b)).margin(1e-6));
    }
}

TEST_CASE("scaling and translating") {
    const ArcGon d = ArcGon::disk({1, 0}, 1);
    const ArcGon s = d.scaled(2.5);
    CHECK(s.area() == Approx(kPi * 6.25).epsilon(1e-12));
    CHECK(s.features()[0].center.x == Approx(2.5));
    CHECK(d.scaled(0).kind() == BodyKind::Point);
    CHECK_THROWS_AS(d.scaled(-1), NegativeScale);
    const ArcGon t = d.translated({-1, 3});
    CHECK(t.features()[0].center.x == Approx(0.0).margin(1e-15));
    CHECK(t.features()[0].center.y == Approx(3.0));
    CHECK(t.area() == Approx(kPi).epsilon(1e-12));
}
