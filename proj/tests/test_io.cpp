#include "conelab/constructions.hpp"
#include "conelab/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace conelab;

TEST_CASE("scalar json") {
    CHECK(scalar_to_json(Scalar::exact(3, 10)) == Json("3/10"));
    CHECK(scalar_to_json(Scalar::exact(4)) == Json("4"));
    CHECK(scalar_to_json(Scalar::real(0.5)) == Json(0.5));
    CHECK(scalar_from_json(Json("3/10"), ScalarMode::Exact) == Scalar::exact(3, 10));
    CHECK(scalar_from_json(Json(2), ScalarMode::Exact) == Scalar::exact(2));
    CHECK(scalar_from_json(Json(0.25), ScalarMode::Float) == Scalar::real(0.25));
}

TEST_CASE("cone json round trip") {
    ConeMap map = minimal_cone_family(4, MinimalVariant::Rel3Eq4);
    Json j = cone_to_json(map.cone(), "eq4");
    CHECK(j["name"] == "eq4");
    CHECK(j["dim"] == 4);
    CHECK(j["scalar"] == "rational");
    CHECK(j["derived"]["num_rays"] == 5);
    PolyhedralCone k = cone_from_json(j);
    CHECK(k.rays() == map.cone().rays());
    CHECK(k.facets().size() == map.cone().facets().size());

    Json bad = j;
    bad["dim"] = 3;
    CHECK_THROWS_AS(cone_from_json(bad), std::invalid_argument);
    CHECK_THROWS_AS(cone_from_json(Json{{"dim", 2}}), std::invalid_argument);
}

TEST_CASE("float cone round trip is exact") {
    ConeMap map = ktheta(6, 1.1);
    PolyhedralCone k = cone_from_json(Json::parse(cone_to_json(map.cone()).dump()));
    CHECK(k.rays() == map.cone().rays());
    CHECK(k.mode() == ScalarMode::Float);
}

TEST_CASE("map json with a cone file reference") {
    const auto dir = std::filesystem::temp_directory_path() / "conelab_io_test";
    std::filesystem::create_directories(dir);
    ConeMap map = simplicial_wielandt(3, Scalar::exact(1, 2));
    {
        std::ofstream(dir / "orthant.json") << cone_to_json(map.cone()).dump(2);
    }
    Json j = map_to_json(map);
    j["cone"] = "orthant.json";
    ConeMap back = map_from_json(j, dir);
    CHECK(back.matrix() == map.matrix());
    CHECK(back.digraph() == map.digraph());
    CHECK_THROWS_AS(read_json_file(dir / "missing.json"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("family json") {
    Json j = Json::parse(R"({"family": "minimal", "n": 4, "variant": "rel3eq4", "beta": 0.3})");
    FamilySpec s = family_from_json(j);
    REQUIRE(s.beta);
    CHECK(*s.beta == "0.3");
    CHECK(family_to_json(s)["beta"] == "0.3");
    Json nested = Json::parse(R"({"family": "figure2_from_figure1", "base": {"family": "ktheta", "m": 5, "theta": 1.35}})");
    FamilySpec f = family_from_json(nested);
    REQUIRE(f.base);
    CHECK(f.base->m == 5);
    CHECK(family_from_json(family_to_json(f)).base->theta == 1.35);
    CHECK_THROWS_AS(family_from_json(Json{{"m", 3}}), std::invalid_argument);
}

TEST_CASE("report json") {
    Json r = report_to_json(exponent_report(regular_polygon(5)));
    CHECK(r["primitive"] == false);
    CHECK(r["gamma"].is_null());
    CHECK(r["local_exponents"][0].is_null());
    Json q = report_to_json(exponent_report(simplicial_wielandt(3, Scalar::exact(1, 2))));
    CHECK(q["gamma"] == 5);
    CHECK(q["figure_match"] == 1);
}

TEST_CASE("round12") {
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(round12(123456789.123456789) == 123456789.123);
    CHECK(round12(0.0) == 0.0);
}
