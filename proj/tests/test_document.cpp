#include <catch2/catch_amalgamated.hpp>

#include <valgeo/document.hpp>

using namespace valgeo;
using Catch::Approx;

TEST_CASE("box documents") {
    const Json doc = Json::parse(R"({"box": [["0","1"], ["-1/2","3/4"]]})");
    const Box b = box_from_json(doc);
    CHECK(b.lo(1) == Rat(-1, 2));
    CHECK(b.hi(1) == Rat(3, 4));
    CHECK(box_from_json(box_to_json(b)) == b);

    CHECK_THROWS_AS(box_from_json(Json::parse(R"({"box": [["1","0"]]})")), MalformedDocument);
    CHECK_THROWS_AS(box_from_json(Json::parse(R"({"box": [["x","0"]]})")), MalformedDocument);
    CHECK_THROWS_AS(box_from_json(Json::parse(R"({"nope": 1})")), MalformedDocument);
    CHECK_THROWS_AS(box_from_json(Json::parse(R"({"box": [[0.5, 1]]})")), MalformedDocument);
}

TEST_CASE("body documents compose") {
    const Json doc = Json::parse(R"({
      "clip": {
        "body": {"sum": [{"polygon": [[0,0],[1,0],[1,1],[0,1]]},
                          {"disk": {"c": [0,0], "r": 0.5}}]},
        "u": [1, 0], "t": 1.0
      }})");
    const ArcGon k = body_from_json(doc);
    k.validate();
    CHECK(k.kind() == BodyKind::Full);
    CHECK(k.support(0) == Approx(1.0));
    CHECK(k.support(kPi) == Approx(0.5));

    const ArcGon from_box = body_from_json(Json::parse(R"({"box": [["0","2"],["0","1"]]})"));
    CHECK(from_box.area() == Approx(2.0));

    CHECK_THROWS_AS(body_from_json(Json::parse(R"({"polygon": [[0,0],[1,0],[2,0]]})")),
                    MalformedDocument);
    CHECK_THROWS_AS(body_from_json(Json::parse(R"({"blob": 3})")), MalformedDocument);
    CHECK_THROWS_AS(body_from_json(Json::parse(R"({"disk": {"c": [0,0], "r": -1}})")),
                    MalformedDocument);
}

TEST_CASE("component family roundtrip") {
    Rng rng(301);
    ComponentFamily fam(3);
    fam.set_constant(Rat(7, 3));
    for (unsigned mask = 1; mask < fam.subset_count(); ++mask) {
        if (mask % 2 == 0) {
            fam.comp(mask).certified = rng.rational(-4, 4);
        } else {
            for (int t = 0; t < 4; ++t) {
                std::vector<Rat> pt;
                for (std::size_t i = 0; i < fam.comp(mask).axes.size(); ++i)
                    pt.push_back(rng.rational_nonneg(4));
                fam.comp(mask).samples[pt] = rng.rational(-9, 9);
            }
        }
    }
    const Json doc = family_to_json(fam);
    const ComponentFamily back = family_from_json(doc);
    CHECK(back.n() == 3);
    CHECK(back.constant() == Rat(7, 3));
    for (unsigned mask = 1; mask < fam.subset_count(); ++mask) {
        CHECK(back.comp(mask).certified == fam.comp(mask).certified);
        CHECK(back.comp(mask).samples == fam.comp(mask).samples);
    }

    // the documented surface: {"components": {"{1,2}": {"certified": "c*a1*a2"}}}
    const std::string key = "{1,2}";
    REQUIRE(doc["components"].contains(key));
    CHECK_THROWS_AS(family_from_json(Json::parse(R"({"n": 2, "components": {"{9}": {}}})")),
                    MalformedDocument);
    CHECK_THROWS_AS(
        family_from_json(Json::parse(R"({"n": 2, "components": {"{1}": {"certified": "1*a2"}}})")),
        MalformedDocument);
}

TEST_CASE("valuation documents") {
    CHECK(valuation_from_json(Json::parse(R"({"vol": {}})")).kind() == ValuationSpec::Kind::Vol);
    CHECK(valuation_from_json(Json::parse(R"({"phi_l": 0.5})")).exponent() == 0.5);
    const ValuationSpec pf = valuation_from_json(
        Json::parse(R"({"phi_f": {"piecewise": [[0, 3.141592653589793, 1], [3.141592653589793, 6.283185307179586, 0]]}})"));
    CHECK(pf.kind() == ValuationSpec::Kind::PhiF);
    CHECK(pf.sphere_function()(1.0) == 1.0);
    CHECK(pf.sphere_function()(4.0) == 0.0);

    const ValuationSpec trig =
        valuation_from_json(Json::parse(R"({"phi_f": {"trig": {"a": [1.0, 0.5], "b": [0.25]}}})"));
    CHECK(trig.sphere_function()(0.0) == Approx(1.5));

    const ValuationSpec combo = valuation_from_json(
        Json::parse(R"({"lincomb": [["3", {"vol": {}}], ["1/2", {"perimeter": {}}]]})"));
    CHECK(evaluate(combo, ArcGon::disk({0, 0}, 1)) == Approx(3 * kPi + kPi));

    CHECK_THROWS_AS(valuation_from_json(Json::parse(R"({"wat": {}})")), MalformedDocument);
    CHECK_THROWS_AS(valuation_from_json(Json::parse(
                        R"({"phi_f": {"piecewise": [[0, 1, 1], [2, 6.283185307179586, 0]]}})")),
                    MalformedDocument);

    // sphere function roundtrip
    const SphereFunction f = SphereFunction::piecewise({{0.5, 2.0}, {2.5, -1.0}, {4.0, 0.25}});
    const SphereFunction g = sphere_function_from_json(sphere_function_to_json(f));
    for (double t : {0.0, 0.6, 2.4, 3.0, 5.5}) CHECK(f(t) == Approx(g(t)));
}

TEST_CASE("box oracle documents") {
    SECTION("polynomials in the side lengths") {
        const Json doc = Json::parse(R"({"box_poly": {"n": 2, "monomials": [
            {"c": "3", "powers": [1, 1]}, {"c": "7", "powers": [0, 0]}]}})");
        const BoxOracleDoc v = box_oracle_from_json(doc);
        CHECK(v.n == 2);
        CHECK(v.oracle.eval(Box({{Rat(0), Rat(2)}, {Rat(1), Rat(4)}})) == 3 * 2 * 3 + 7);
        CHECK(check_valuation(v.oracle, 2, 300, 5).ok());
    }
    SECTION("a non-valuation polynomial is expressible and detected") {
        const Json doc = Json::parse(
            R"({"box_poly": {"n": 1, "monomials": [{"c": "1", "powers": [2]}]}})");
        const BoxOracleDoc v = box_oracle_from_json(doc);
        CHECK_FALSE(check_valuation(v.oracle, 1, 300, 5).ok());
    }
    SECTION("builtins and families") {
        CHECK(box_oracle_from_json(Json::parse(R"({"box_builtin": "vol", "n": 3})"))
                  .oracle.eval(Box({{Rat(0), Rat(2)}, {Rat(0), Rat(1)}, {Rat(0), Rat(3)}})) == 6);
        ComponentFamily fam(2);
        fam.set_constant(Rat(3));
        fam.comp(3).certified = Rat(1);
        fam.comp(1).certified = Rat(0);
        fam.comp(2).certified = Rat(0);
        const BoxOracleDoc v = box_oracle_from_json(family_to_json(fam));
        CHECK(v.oracle.eval(Box({{Rat(1), Rat(2)}, {Rat(0), Rat(5)}})) == 8);
    }
    CHECK_THROWS_AS(box_oracle_from_json(Json::parse(R"({"box_builtin": "nope"})")),
                    MalformedDocument);
}

TEST_CASE("endpoint family export/import roundtrip") {
    Rng rng(311);
    const EndpointFamily fam = endpoint_decompose_nd(volume_valuation(), 2, Rat(4));
    const std::vector<Rat> grid{Rat(-3), Rat(-1), Rat(0), Rat(1, 2), Rat(2), Rat(7, 2)};
    const SampledEndpointFamily back = endpoint_family_from_json(endpoint_family_to_json(fam, grid));
    CHECK(back.n == 2);
    CHECK(back.bound == 4);
    for (int t = 0; t < 50; ++t) {
        Rat a0 = grid[rng.uniform_int(0, 5)], b0 = grid[rng.uniform_int(0, 5)];
        Rat a1 = grid[rng.uniform_int(0, 5)], b1 = grid[rng.uniform_int(0, 5)];
        if (a0 > b0) std::swap(a0, b0);
        if (a1 > b1) std::swap(a1, b1);
        const Box box({{a0, b0}, {a1, b1}});
        CHECK(back.reconstruct(box) == box.volume());
    }
    std::vector<Rat> off_grid{Rat(1, 3), Rat(1, 3)};
    CHECK_THROWS_AS(back.member({1, 1}, off_grid), ComponentUndefinedAt);
    CHECK_THROWS_AS(endpoint_family_from_json(Json::parse(R"({"endpoints": {"n": 2}})")),
                    MalformedDocument);
}

TEST_CASE("endpoint family export reconstructs") {
    const EndpointFamily fam = endpoint_decompose_nd(volume_valuation(), 2, Rat(4));
    const std::vector<Rat> grid{Rat(-2), Rat(0), Rat(1), Rat(3)};
    const Json doc = endpoint_family_to_json(fam, grid);
    REQUIRE(doc.contains("endpoints"));
    CHECK(doc["endpoints"]["n"] == 2);
    CHECK(doc["endpoints"]["members"].size() == 4);
    // reconstruction from exported samples: sum the four members at the
    // endpoint tuples of [0,1] x [1,3] and compare with the volume 2
    Rat total(0);
    for (const auto& [key, samples] : doc["endpoints"]["members"].items()) {
        const bool upper0 = key[1] == '2';
        const bool upper1 = key[3] == '2';
        const std::string x0 = upper0 ? "1" : "0";
        const std::string x1 = upper1 ? "3" : "1";
        bool found = false;
        for (const Json& s : samples) {
            if (s[0][0] == x0 && s[0][1] == x1) {
                total += rat_parse(s[1].get<std::string>());
                found = true;
                break;
            }
        }
        REQUIRE(found);
    }
    CHECK(total == 2);
}
