#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbh/sampling.hpp"
#include "fbh/serialize.hpp"

using namespace fbh;

TEST_CASE("complex numbers serialize as [re, im]") {
    const Json j = to_json(Complex(1.5, -2.25));
    CHECK(j.dump() == "[1.5,-2.25]");
    CHECK(complex_from_json(j) == Complex(1.5, -2.25));
}

TEST_CASE("points round-trip exactly") {
    Rng rng(90);
    const FBHDomain d(2, 3, 1.0);
    for (int i = 0; i < 20; ++i) {
        const Point p = draw_interior_point(d, rng, 1.0);
        const Point back = point_from_json(Json::parse(to_json(p).dump()));
        CHECK((p.z - back.z).cwiseAbs().maxCoeff() == 0.0);
        CHECK((p.w - back.w).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("matrices are row-major arrays of rows") {
    Matrix m(2, 3);
    m << Complex(1, 0), Complex(2, 0), Complex(3, 0),
         Complex(4, 0), Complex(5, 0), Complex(6, 0);
    const Json j = to_json(m);
    REQUIRE(j.size() == 2);
    CHECK(j[0][2][0].get<double>() == 3.0);
    CHECK(j[1][0][0].get<double>() == 4.0);
    const Matrix back = matrix_from_json(j);
    CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("automorphisms round-trip through JSON") {
    Rng rng(91);
    const FBHDomain d(2, 1, 0.5);
    const Automorphism g = random_automorphism_word(d, rng, 3, 0.5);
    const Automorphism back = automorphism_from_json(Json::parse(to_json(g).dump()));
    CHECK((g.U - back.U).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.Uw - back.Uw).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.v - back.v).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.mu == g.mu);
}

TEST_CASE("kernel values and reports carry their fields") {
    const KernelValue kv{Complex(0.25, -0.5), 1e-13, 17};
    const Json j = to_json(kv);
    CHECK(j["value"][0].get<double>() == 0.25);
    CHECK(j["tail_bound"].get<double>() == 1e-13);
    CHECK(j["terms_used"].get<long>() == 17);

    const BranchReport rep{"w1 = 0", 0.5, false};
    const Json jr = to_json(rep);
    CHECK(jr["locus_description"] == "w1 = 0");
    CHECK(jr["closure_meets_boundary"] == false);

    const McEstimate e{Complex(1.0, 0.0), 0.01, 1000, 7};
    const Json je = to_json(e);
    CHECK(je["samples"].get<long>() == 1000);
    CHECK(je["seed"].get<std::uint64_t>() == 7);
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(complex_from_json(Json::parse("[1]")), Error);
    CHECK_THROWS_AS(point_from_json(Json::parse("{\"z\": []}")), Error);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[[1,0]],[[1,0],[2,0]]]")), Error);
}
