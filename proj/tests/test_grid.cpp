#include <catch2/catch_amalgamated.hpp>

#include <valgeo/grid.hpp>

using namespace valgeo;
using Catch::Approx;

namespace {

ArcGon unit_square() { return ArcGon::from_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
ArcGon unit_disk() { return ArcGon::disk({0, 0}, 1); }

SphereFunction upper_half_indicator() {
    return SphereFunction::piecewise({{0.0, 1.0}, {kPi, 0.0}});
}

std::vector<ValuationSpec> six_valuations() {
    return {ValuationSpec::vol(),
            ValuationSpec::euler(),
            ValuationSpec::perimeter(),
            ValuationSpec::phi_l(0.5),
            ValuationSpec::phi_f(SphereFunction::trig({1.0, 0.6}, {0.25, -0.4})),
            ValuationSpec::phi_sing()};
}

} // namespace

TEST_CASE("grid decomposition telescopes exactly on documented examples") {
    SECTION("unit square, eps = 1/2: signed volume sum is 1") {
        const SignedPieces p = grid_decompose(unit_square(), 0.5, 2.0);
        CHECK(signed_sum(p, ValuationSpec::vol()) == Approx(1.0).margin(1e-12));
        for (const SignedPiece& piece : p.pieces) {
            CHECK((piece.sign == 1 || piece.sign == -1));
            if (piece.dim_tag == 1) CHECK(piece.sign == -1);
        }
    }
    SECTION("disk, eps = 1/4: perimeter chords cancel") {
        const SignedPieces p = grid_decompose(unit_disk(), 0.25, 2.0);
        CHECK(signed_sum(p, ValuationSpec::perimeter()) == Approx(kTwoPi).margin(1e-6));
    }
    SECTION("disk, eps = 1/4: euler counts balance to 1") {
        const SignedPieces p = grid_decompose(unit_disk(), 0.25, 2.0);
        CHECK(signed_sum(p, ValuationSpec::euler()) == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("grid exactness across valuations and bodies") {
    const std::vector<ArcGon> bodies{
        unit_square(), unit_disk(),
        minkowski_sum(ArcGon::from_polygon({{-0.8, -0.6}, {0.7, -0.5}, {0.5, 0.9}, {-0.6, 0.7}}),
                      ArcGon::disk({0, 0}, 0.3))};
    for (const ArcGon& k : bodies) {
        for (double eps : {0.5, 0.25}) {
            const SignedPieces p = grid_decompose(k, eps, 2.0);
            for (const ValuationSpec& v : six_valuations()) {
                const double direct = evaluate(v, k);
                CHECK(std::abs(signed_sum(p, v) - direct) < 1e-6);
            }
            // the volume identity is tighter than the generic tolerance
            CHECK(std::abs(signed_sum(p, ValuationSpec::vol()) - evaluate(ValuationSpec::vol(), k)) <
                  1e-9);
        }
    }
}

TEST_CASE("grid exactness with chord atoms landing on function breakpoints") {
    // the upper-half indicator jumps exactly at the grid chord normals 0 and
    // pi; the left-closed convention must make the cancellation exact
    const ValuationSpec v = ValuationSpec::phi_f(upper_half_indicator());
    for (const ArcGon& k : {unit_disk(), unit_square()}) {
        for (double eps : {0.5, 0.25}) {
            const SignedPieces p = grid_decompose(k, eps, 2.0);
            CHECK(std::abs(signed_sum(p, v) - evaluate(v, k)) < 1e-9);
        }
    }
}

TEST_CASE("grid exactness on random bodies") {
    Rng rng(907);
    const auto vals = six_valuations();
    for (int t = 0; t < 30; ++t) {
        const ArcGon k = random_body_in_disk(rng, 1.5);
        for (double eps : {0.5, 0.25}) {
            const SignedPieces p = grid_decompose(k, eps, 2.0);
            for (const ValuationSpec& v : vals)
                REQUIRE(std::abs(signed_sum(p, v) - evaluate(v, k)) < 1e-6);
        }
    }
}

TEST_CASE("census is independent of the worker count") {
    const GridReport a = boundary_census(unit_disk(), 0.05, 1.0, 1);
    const GridReport b = boundary_census(unit_disk(), 0.05, 1.0, 3);
    CHECK(a.boundary_cells == b.boundary_cells);
    CHECK(a.contained_cells == b.contained_cells);
}

TEST_CASE("grid preconditions") {
    CHECK_THROWS_AS(grid_decompose(ArcGon::disk({0, 0}, 3), 0.5, 2.0), BodyExceedsM);
    CHECK_THROWS_AS(grid_decompose(unit_disk(), 2.5, 2.0), EpsilonTooLarge);
    CHECK_THROWS_AS(grid_decompose(ArcGon::empty(), 0.5, 2.0), EmptyBody);
}

TEST_CASE("boundary census") {
    SECTION("aligned unit square has no boundary cells") {
        const GridReport r = boundary_census(unit_square(), 0.5, 2.0);
        CHECK(r.boundary_cells == 0);
        CHECK(r.contained_cells == 4);
        CHECK(r.counting_bound_holds());
    }
    SECTION("disk at eps = 1/4: |J| under the annulus quota of 71") {
        const GridReport r = boundary_census(unit_disk(), 0.25, 1.0);
        CHECK(r.boundary_cells <= 71);
        CHECK(r.boundary_cells > 0);
        CHECK(r.counting_bound_holds());
        // disk erosion is closed-form: annulus area is exactly 4 sqrt(2) pi eps
        CHECK(r.erosion_exact);
        CHECK(r.annulus_bound == Approx(4 * std::sqrt(2.0) * kPi * 0.25).epsilon(1e-12));
    }
    SECTION("counting bound across the documented eps ladder") {
        for (double eps : {0.1, 0.05, 0.02}) {
            const GridReport r = boundary_census(unit_disk(), eps, 1.0);
            CHECK(static_cast<double>(r.boundary_cells) * eps * eps <=
                  4 * std::sqrt(2.0) * kPi * eps + 1e-6);
            // |J| * eps stays bounded by the same constant
            CHECK(static_cast<double>(r.boundary_cells) * eps <= 4 * std::sqrt(2.0) * kPi + 1e-6);
        }
    }
    SECTION("polygon erosion is exact") {
        const GridReport r = boundary_census(unit_square(), 0.25, 2.0);
        CHECK(r.erosion_exact);
        const double rho = std::sqrt(2.0) * 0.25;
        // inner square has side 1 - 2 rho
        const double inner = (1 - 2 * rho) > 0 ? (1 - 2 * rho) * (1 - 2 * rho) : 0.0;
        CHECK(r.annulus_bound == Approx(1 + 4 * rho + kPi * rho * rho - inner).epsilon(1e-12));
    }
}

TEST_CASE("cell classification agrees with a subsampled membership oracle") {
    struct Case {
        ArcGon body;
        double eps, m;
    };
    const std::vector<Case> cases{
        {unit_disk(), 0.25, 1.0},
        {unit_square(), 0.5, 2.0},
        {minkowski_sum(ArcGon::from_polygon({{-0.5, -0.4}, {0.5, -0.3}, {0.3, 0.6}}),
                       ArcGon::disk({0, 0}, 0.2)),
         0.25, 1.0}};
    for (const Case& c : cases) {
        const auto cells = classify_cells(c.body, c.eps, c.m);
        const int n = static_cast<int>(std::lround(std::ceil(2 * c.m / c.eps - 1e-9)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const CellClass cls = cells[static_cast<std::size_t>(i) * n + j];
                int in = 0, out = 0;
                for (int a = 0; a < 10; ++a)
                    for (int b = 0; b < 10; ++b) {
                        const Vec2 p{-c.m + (i + (a + 0.5) / 10.0) * c.eps,
                                     -c.m + (j + (b + 0.5) / 10.0) * c.eps};
                        (c.body.contains(p) ? in : out)++;
                    }
                if (in > 0 && out > 0) REQUIRE(cls == CellClass::Partial);
                if (cls == CellClass::Outside) REQUIRE(in == 0);
                if (cls == CellClass::Contained) REQUIRE(out == 0);
            }
        }
    }
}

TEST_CASE("phi_0 grid sums are constant in eps: sharpness at degree n-1") {
    const ValuationSpec phi0 = ValuationSpec::phi_l(0.0);
    for (double eps : {0.5, 0.25, 0.125}) {
        const SignedPieces p = grid_decompose(unit_disk(), eps, 2.0);
        CHECK(signed_sum(p, phi0) == Approx(kTwoPi).margin(1e-6));
    }
}

TEST_CASE("decay reports") {
    const std::vector<double> eps_list{0.5, 0.25, 0.125, 0.0625};
    SECTION("phi_0 (degree 1): apriori bound does not decay") {
        const auto reports = decay_report(ValuationSpec::phi_l(0.0), 1.0, unit_disk(), eps_list);
        for (const GridReport& r : reports) {
            CHECK(r.signed_sum == Approx(kTwoPi).margin(1e-6));
            CHECK(r.counting_bound_holds());
        }
        // |J| ~ 1/eps exactly cancels the per-cell eps: Theta(1), no decay
        CHECK(reports.back().apriori > 0.5 * reports.front().apriori);
    }
    SECTION("phi_1/2 (degree 1/2): bound diverges") {
        const auto reports = decay_report(ValuationSpec::phi_l(0.5), 0.5, unit_disk(), eps_list);
        for (std::size_t i = 0; i + 1 < reports.size(); ++i)
            CHECK(reports[i + 1].apriori > reports[i].apriori);
        for (const GridReport& r : reports) CHECK(r.signed_sum == Approx(kTwoPi).margin(1e-6));
    }
    SECTION("synthetic degree 3/2: bound decays like sqrt(eps)") {
        const auto reports = decay_report(std::nullopt, 1.5, unit_disk(), eps_list);
        for (std::size_t i = 0; i + 1 < reports.size(); ++i) {
            CHECK(reports[i + 1].apriori < reports[i].apriori);
            const double ratio = reports[i + 1].apriori / reports[i].apriori;
            CHECK(ratio == Approx(std::sqrt(0.5)).margin(0.25));
        }
    }
    SECTION("non-simple valuations are rejected") {
        CHECK_THROWS_AS(decay_report(ValuationSpec::vol(), 2.0, unit_disk(), {0.25}),
                        NotVanishingOnBoxes);
        CHECK_THROWS_AS(decay_report(ValuationSpec::euler(), 0.0, unit_disk(), {0.25}),
                        NotVanishingOnBoxes);
    }
}

TEST_CASE("volume characterization") {
    const std::vector<std::pair<std::string, ArcGon>> bodies{{"disk", unit_disk()},
                                                             {"square", unit_square()}};
    SECTION("multiples of volume are recovered exactly") {
        const ValuationSpec v = ValuationSpec::lincomb({{Rat(3), ValuationSpec::vol()}});
        const auto r = volume_characterization(v, bodies);
        CHECK(r.certified);
        CHECK(r.c == 3);
        CHECK(r.probes.translation_pass);
        CHECK(r.probes.homogeneity_pass);
        CHECK(r.probes.box_violations == 0);
        for (const auto& b : r.residuals) CHECK(b.residual < 1e-9);
    }
    SECTION("vol + perimeter: mixed degrees flagged, residual equals the perimeter") {
        const ValuationSpec v = ValuationSpec::lincomb(
            {{Rat(1), ValuationSpec::vol()}, {Rat(1), ValuationSpec::perimeter()}});
        const auto r = volume_characterization(v, bodies);
        CHECK_FALSE(r.probes.homogeneity_pass);
        CHECK(r.c == 1);
        CHECK(r.residuals[0].residual == Approx(kTwoPi).margin(1e-9)); // disk perimeter
        CHECK(r.residuals[1].residual == Approx(4.0).margin(1e-9));    // square perimeter
    }
    SECTION("vol + phi_0: bounded and invariant but inhomogeneous; disk residual 2 pi") {
        const ValuationSpec v = ValuationSpec::lincomb(
            {{Rat(1), ValuationSpec::vol()}, {Rat(1), ValuationSpec::phi_l(0.0)}});
        const auto r = volume_characterization(v, bodies);
        CHECK(r.probes.translation_pass);
        CHECK_FALSE(r.probes.homogeneity_pass);
        CHECK(r.c == 1);
        CHECK(r.residuals[0].residual == Approx(kTwoPi).margin(1e-9));
        CHECK(r.residuals[1].residual < 1e-9);
    }
}

TEST_CASE("continuity probes") {
    std::vector<ArcGon> ngons;
    for (int j = 3; j <= 9; ++j) ngons.push_back(inscribed_power_ngon(j));
    SECTION("phi_sing along inscribed 2^j-gons: discontinuous at the disk") {
        const auto r = continuity_probe(ValuationSpec::phi_sing(), ngons, unit_disk(), 6.0, 1e-3);
        CHECK(r.discontinuous);
        for (std::size_t i = 0; i < ngons.size(); ++i) {
            const int j = 3 + static_cast<int>(i);
            const double m = std::pow(2.0, j);
            CHECK(r.rows[i].value_gap == Approx(2 * m * std::sin(kPi / m)).epsilon(1e-9));
            CHECK(r.rows[i].dh == Approx(1 - std::cos(kPi / m)).margin(1e-9));
        }
        CHECK(r.rows.back().dh <= 1e-3);
    }
    SECTION("volume along the same sequence: continuous control") {
        const auto r = continuity_probe(ValuationSpec::vol(), ngons, unit_disk(), 0.1, 1e-3);
        CHECK_FALSE(r.discontinuous);
        CHECK(r.rows.back().value_gap < 0.01);
    }
    SECTION("phi_f with the half-circle indicator along rotating-normal triangles") {
        const ValuationSpec v = ValuationSpec::phi_f(upper_half_indicator());
        std::vector<ArcGon> tris;
        for (int j = 4; j <= 14; ++j)
            tris.push_back(tangent_triangle(kTwoPi - kPi / std::pow(2.0, j), kTwoPi / 3, 2 * kTwoPi / 3));
        const ArcGon limit = tangent_triangle(0.0, kTwoPi / 3, 2 * kTwoPi / 3);
        const double jump_bound = std::sqrt(3.0); // (edge length) * (jump of f) / 2
        const auto r = continuity_probe(v, tris, limit, jump_bound, 1e-3);
        CHECK(r.discontinuous);
        for (const auto& row : r.rows) CHECK(row.value_gap >= jump_bound);
        CHECK(r.rows.back().dh < 1e-3);
    }
    SECTION("non-converging sequences are rejected") {
        std::vector<ArcGon> bad{inscribed_power_ngon(3), inscribed_power_ngon(5),
                                inscribed_power_ngon(4)};
        CHECK_THROWS_AS(continuity_probe(ValuationSpec::vol(), bad, unit_disk(), 0.1, 1e-3),
                        SequenceNotConverging);
    }
}

TEST_CASE("reports are deterministic and thread-count independent") {
    const auto a = decay_report(ValuationSpec::phi_l(0.0), 1.0, unit_disk(), {0.5, 0.25});
    const auto b = decay_report(ValuationSpec::phi_l(0.0), 1.0, unit_disk(), {0.5, 0.25});
    CHECK(grid_reports_csv(a) == grid_reports_csv(b));

    const SignedPieces p = grid_decompose(unit_disk(), 0.125, 2.0);
    const ValuationSpec v = ValuationSpec::phi_f(upper_half_indicator());
    const double s1 = signed_sum(p, v, 1);
    const double s4 = signed_sum(p, v, 4);
    CHECK(s1 == s4); // bitwise: fixed-order compensated reduction
}
