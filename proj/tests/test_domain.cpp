#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbh/automorphism.hpp"
#include "fbh/domain.hpp"
#include "fbh/sampling.hpp"

using namespace fbh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("domain construction rejects degenerate parameters") {
    CHECK_THROWS_AS(FBHDomain(0, 1, 1.0), PreconditionError);
    CHECK_THROWS_AS(FBHDomain(1, 0, 1.0), PreconditionError);
    CHECK_THROWS_AS(FBHDomain(1, 1, 0.0), PreconditionError);
    CHECK_THROWS_AS(FBHDomain(1, 1, -2.0), PreconditionError);
    CHECK_NOTHROW(FBHDomain(3, 2, 0.25));
}

TEST_CASE("defining function at pinned points") {
    const FBHDomain d111(1, 1, 1.0);
    CHECK(defining_function(d111, {cvec({0.0}), cvec({0.0})}) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(defining_function(d111, {cvec({0.0}), cvec({1.0})}) == doctest::Approx(0.0).epsilon(1e-15));

    const FBHDomain d112(1, 1, 2.0);
    // 0.25 - e^{-2}
    CHECK(defining_function(d112, {cvec({1.0}), cvec({0.5})}) ==
          doctest::Approx(0.11466471676338731).epsilon(1e-14));

    CHECK_THROWS_AS(defining_function(d111, Point{cvec({0.0, 0.0}), cvec({0.0})}), DimensionError);
}

TEST_CASE("classification with tolerance band") {
    const FBHDomain d(1, 1, 1.0);
    const PointClass inside = classify_point(d, {cvec({0.0}), cvec({0.5})}, 1e-12);
    CHECK(inside.tag == Region::Interior);
    CHECK(inside.rho == doctest::Approx(-0.75).epsilon(1e-15));

    CHECK(classify_point(d, {cvec({0.0}), cvec({1.0})}, 1e-12).tag == Region::Boundary);

    const FBHDomain d2(2, 1, 1.0);
    const PointClass outside = classify_point(d2, {cvec({1.0, 0.0}), cvec({1.0})}, 1e-12);
    CHECK(outside.tag == Region::Exterior);
    CHECK(outside.rho == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(classify_point(d, {cvec({0.0}), cvec({0.5})}, -1.0), PreconditionError);
}

TEST_CASE("boundary parametrization") {
    const FBHDomain d(1, 1, 1.0);
    const Point b0 = boundary_point(d, cvec({0.0}), cvec({1.0}));
    CHECK(b0.w[0] == Complex(1.0, 0.0));

    const Point b1 = boundary_point(d, cvec({1.0}), cvec({1.0}));
    CHECK(b1.w[0].real() == doctest::Approx(0.60653065971263342).epsilon(1e-15));

    const FBHDomain d12(1, 2, 1.0);
    const Point b2 = boundary_point(d12, cvec({0.0}), cvec({0.0, Complex(0.0, 1.0)}));
    CHECK(b2.w[0] == Complex(0.0, 0.0));
    CHECK(b2.w[1] == Complex(0.0, 1.0));

    CHECK_THROWS_AS(boundary_point(d, cvec({0.0}), cvec({0.5})), PreconditionError);
}

TEST_CASE("boundary points sit on rho = 0 for ||z|| <= 5") {
    Rng rng(2024);
    for (const FBHDomain& d : {FBHDomain(1, 1, 1.0), FBHDomain(2, 2, 0.5), FBHDomain(1, 2, 2.0)}) {
        for (int i = 0; i < 50; ++i) {
            const Point b = random_boundary_point(d, rng, 5.0);
            CHECK(std::abs(defining_function(d, b)) <= 1e-12);
        }
    }
}

TEST_CASE("restricted Levi form at pinned boundary points") {
    const FBHDomain d(1, 1, 1.0);

    const LeviForm at_pole = levi_form_restricted(d, {cvec({0.0}), cvec({1.0})}, 1e-10);
    REQUIRE(at_pole.restricted.rows() == 1);
    CHECK(at_pole.restricted(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at_pole.positive_definite);

    // |z0| = 1: the single tangent eigenvalue collapses to 1/(e+1).
    const Point b = boundary_point(d, cvec({std::polar(1.0, 0.37)}), cvec({1.0}));
    const LeviForm lf = levi_form_restricted(d, b, 1e-10);
    CHECK(lf.eigenvalues[0] == doctest::Approx(0.26894142136999512).epsilon(1e-12));
    CHECK(lf.positive_definite);

    const FBHDomain d2(2, 1, 1.0);
    const LeviForm flat = levi_form_restricted(d2, {cvec({0.0, 0.0}), cvec({1.0})}, 1e-10);
    REQUIRE(flat.restricted.rows() == 2);
    CHECK((flat.restricted - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(flat.positive_definite);

    CHECK_THROWS_AS(levi_form_restricted(d, Point{cvec({0.0}), cvec({0.5})}, 1e-10),
                    PreconditionError);
}

TEST_CASE("Levi form is positive definite across the parameter grid") {
    Rng rng(99);
    for (const FBHDomain& base :
         {FBHDomain(1, 1, 1.0), FBHDomain(2, 1, 1.0), FBHDomain(1, 2, 1.0), FBHDomain(2, 2, 1.0)}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            const FBHDomain d(base.n, base.m, mu);
            for (int i = 0; i < 10; ++i) {
                const LeviForm lf =
                    levi_form_restricted(d, random_boundary_point(d, rng, 2.0), 1e-10);
                CHECK(lf.positive_definite);
                CHECK(lf.restricted.rows() == d.n + d.m - 1);
            }
        }
    }
}

TEST_CASE("closed-form volume") {
    CHECK(volume_closed_form(FBHDomain(1, 1, 1.0)) == doctest::Approx(kPi * kPi).epsilon(1e-15));
    CHECK(volume_closed_form(FBHDomain(1, 2, 1.0)) ==
          doctest::Approx(kPi * kPi * kPi / 4.0).epsilon(1e-15));
    CHECK(volume_closed_form(FBHDomain(1, 1, 2.0)) ==
          doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
}

TEST_CASE("interior sampler: interiority, determinism, volume") {
    const FBHDomain d(2, 1, 1.0);

    const InteriorSample s = sample_interior(d, 7, 5000);
    REQUIRE(s.points.size() == 5000);
    for (const Point& p : s.points) CHECK(classify_point(d, p, 0.0).tag == Region::Interior);

    // weights integrate the constant 1 to the exact volume
    double total = 0.0;
    for (double w : s.weights) total += w;
    CHECK(total == doctest::Approx(volume_closed_form(d)).epsilon(1e-12));

    const InteriorSample s2 = sample_interior(d, 7, 5000);
    bool identical = true;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if ((s.points[i].z - s2.points[i].z).cwiseAbs().maxCoeff() != 0.0) identical = false;
        if ((s.points[i].w - s2.points[i].w).cwiseAbs().maxCoeff() != 0.0) identical = false;
    }
    CHECK(identical);

    const InteriorSample s3 = sample_interior(d, 8, 100);
    CHECK((s.points[0].z - s3.points[0].z).cwiseAbs().maxCoeff() != 0.0);

    CHECK_THROWS_AS(sample_interior(d, 0, 0), PreconditionError);
}

TEST_CASE("classification is rotation invariant") {
    Rng rng(512);
    const FBHDomain d(2, 2, 1.0);
    for (int i = 0; i < 40; ++i) {
        const Automorphism g =
            compose(rotate_w(random_unitary(d.m, rng), d), rotate_z(random_unitary(d.n, rng), d));
        Point p;
        const double which = rng.uniform();
        if (which < 0.4)
            p = draw_interior_point(d, rng, 0.9);
        else if (which < 0.7)
            p = random_boundary_point(d, rng, 1.5);
        else {
            p = random_boundary_point(d, rng, 1.5);
            p.w *= 1.3;
        }
        CHECK(classify_point(d, apply(g, p), 1e-10).tag == classify_point(d, p, 1e-10).tag);
    }
}
