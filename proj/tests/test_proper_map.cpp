#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbh/proper_map.hpp"
#include "fbh/sampling.hpp"

using namespace fbh;

TEST_CASE("construction") {
    CHECK_NOTHROW(PowerProperMap(1, 1.0, 2));
    CHECK_THROWS_AS(PowerProperMap(1, 1.0, 1), PreconditionError);
    CHECK_THROWS_AS(PowerProperMap(0, 1.0, 2), PreconditionError);
    CHECK_THROWS_AS(PowerProperMap(1, -1.0, 2), PreconditionError);
}

TEST_CASE("forward map") {
    const PowerProperMap f(1, 1.0, 2);
    const FBHDomain d = f.domain();

    const Point o = apply_proper(f, {cvec({0.0}), cvec({0.0})});
    CHECK(o.z[0] == Complex(0.0, 0.0));
    CHECK(o.w[0] == Complex(0.0, 0.0));

    // boundary (1, e^{-1/2}) -> (sqrt 2, e^{-1}), still on the boundary
    const Point b{cvec({1.0}), cvec({std::exp(-0.5)})};
    CHECK(std::abs(defining_function(d, b)) <= 1e-15);
    const Point fb = apply_proper(f, b);
    CHECK(fb.z[0].real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
    CHECK(fb.w[0].real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(std::abs(defining_function(d, fb)) <= 1e-15);

    const PowerProperMap f3(1, 1.0, 3);
    const Point c = apply_proper(f3, {cvec({0.0}), cvec({0.5})});
    CHECK(c.w[0] == Complex(0.125, 0.0));
    CHECK(classify_point(f3.domain(), c, 0.0).tag == Region::Interior);

    CHECK_THROWS_AS(apply_proper(f, Point{cvec({0.0}), cvec({0.0, 0.0})}), DimensionError);
}

TEST_CASE("interior and boundary are preserved along approaching rays") {
    Rng rng(71);
    const PowerProperMap f(2, 0.7, 2);
    const FBHDomain d = f.domain();
    for (int ray = 0; ray < 20; ++ray) {
        const Point b = random_boundary_point(d, rng, 1.5);
        double prev = -1.0;
        for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
            const Point p{b.z, (1.0 - eps) * b.w};
            const double rho = defining_function(d, apply_proper(f, p));
            CHECK(rho < 0.0);
            CHECK(rho > prev);  // approaches 0 from below
            prev = rho;
        }
        CHECK(std::abs(prev) <= 1e-6);
    }
}

TEST_CASE("forward Jacobian determinant") {
    const PowerProperMap f(1, 1.0, 2);
    CHECK(proper_jacobian_det(f, {cvec({0.0}), cvec({0.0})}) == Complex(0.0, 0.0));
    CHECK(proper_jacobian_det(f, {cvec({0.0}), cvec({0.5})}).real() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const PowerProperMap f2(2, 1.0, 2);
    CHECK(proper_jacobian_det(f2, {cvec({0.0, 0.0}), cvec({1.0 - 1e-12})}).real() ==
          doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("local inverses") {
    const PowerProperMap f(1, 1.0, 2);
    const Point q{cvec({0.0}), cvec({0.25})};
    const auto branches = local_inverses(f, q);
    REQUIRE(branches.size() == 2);

    CHECK(branches[0].preimage.w[0] == Complex(0.5, 0.0));
    CHECK(branches[1].preimage.w[0] == Complex(-0.5, 0.0));
    CHECK(branches[0].jacobian.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(branches[1].jacobian.real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));

    // root-of-unity symmetry: U_+ + U_- = 0 exactly
    CHECK(branches[0].jacobian + branches[1].jacobian == Complex(0.0, 0.0));

    CHECK_THROWS_AS(local_inverses(f, Point{cvec({0.0}), cvec({0.0})}), PreconditionError);
    CHECK_THROWS_AS(local_inverses(f, Point{cvec({0.0}), cvec({1.5})}), PreconditionError);
}

TEST_CASE("local inverse identities across branching orders") {
    Rng rng(72);
    for (int dd : {2, 3, 4, 5}) {
        const PowerProperMap f(1, 1.0, dd);
        const FBHDomain dom = f.domain();
        for (int i = 0; i < 20; ++i) {
            Point q = draw_interior_point(dom, rng, 0.8);
            while (std::abs(q.w[0]) <= 1e-6) q = draw_interior_point(dom, rng, 0.8);
            const auto branches = local_inverses(f, q);
            REQUIRE(static_cast<int>(branches.size()) == dd);
            for (const LocalInverse& br : branches) {
                CHECK(defining_function(dom, br.preimage) < 0.0);
                const Point back = apply_proper(f, br.preimage);
                CHECK((back.z - q.z).cwiseAbs().maxCoeff() <= 1e-12);
                CHECK(std::abs(back.w[0] - q.w[0]) <= 1e-12);
                // inverse function theorem, branch by branch
                CHECK(std::abs(br.jacobian * proper_jacobian_det(f, br.preimage) - Complex(1.0)) <=
                      1e-12);
            }
            for (std::size_t a = 0; a < branches.size(); ++a)
                for (std::size_t b = a + 1; b < branches.size(); ++b)
                    CHECK(std::abs(branches[a].preimage.w[0] - branches[b].preimage.w[0]) > 0.0);
        }
    }
}

TEST_CASE("kernel transformation rule for the square-power map") {
    const PowerProperMap f(1, 1.0, 2);
    const FBHDomain dom = f.domain();

    SUBCASE("pinned pair") {
        const Point p{cvec({0.0}), cvec({0.3})};
        const Point q{cvec({0.0}), cvec({0.25})};
        CHECK(transformation_rule_residual(f, p, q) <= 1e-9);
    }

    SUBCASE("random pairs off the branch locus") {
        Rng rng(73);
        for (int i = 0; i < 50; ++i) {
            const Point p = draw_interior_point(dom, rng, 0.75);
            Point q = draw_interior_point(dom, rng, 0.75);
            while (std::abs(q.w[0]) <= 0.05) q = draw_interior_point(dom, rng, 0.75);
            CHECK(transformation_rule_residual(f, p, q) <= 1e-11);
        }
    }

    SUBCASE("u(p) = 0 cancels the branch sum exactly") {
        Rng rng(74);
        for (int i = 0; i < 10; ++i) {
            Point p = draw_interior_point(dom, rng, 0.75);
            p.w[0] = 0.0;
            Point q = draw_interior_point(dom, rng, 0.75);
            while (std::abs(q.w[0]) <= 0.05) q = draw_interior_point(dom, rng, 0.75);
            CHECK(transformation_rule_residual(f, p, q) <= 1e-9);
        }
    }

    SUBCASE("residual stays controlled near the branch locus") {
        Rng rng(75);
        for (int i = 0; i < 10; ++i) {
            const Point p = draw_interior_point(dom, rng, 0.75);
            Point q = draw_interior_point(dom, rng, 0.75);
            q.w[0] = std::polar(1e-3, 2.0 * std::numbers::pi * rng.uniform());
            CHECK(transformation_rule_residual(f, p, q) <= 1e-6);
        }
    }

    SUBCASE("branch values are rejected") {
        const Point p{cvec({0.0}), cvec({0.3})};
        CHECK_THROWS_AS(transformation_rule_residual(f, p, Point{cvec({0.0}), cvec({0.0})}),
                        PreconditionError);
    }
}

TEST_CASE("transformation rule for a cubic branching order") {
    const PowerProperMap f(1, 0.5, 3);
    const FBHDomain dom = f.domain();
    Rng rng(76);
    for (int i = 0; i < 20; ++i) {
        const Point p = draw_interior_point(dom, rng, 0.75);
        Point q = draw_interior_point(dom, rng, 0.75);
        while (std::abs(q.w[0]) <= 0.05) q = draw_interior_point(dom, rng, 0.75);
        CHECK(transformation_rule_residual(f, p, q) <= 1e-11);
    }
}

TEST_CASE("branch locus report") {
    const PowerProperMap f(1, 1.0, 2);

    const BranchReport rep = branch_locus_report(f, 200, 42);
    CHECK(rep.locus_description == "w1 = 0");
    CHECK_FALSE(rep.closure_meets_boundary);
    CHECK(rep.min_boundary_gap > 0.0);
    // probes stay inside ||z|| <= 3, so the gap is at least e^{-9}
    CHECK(rep.min_boundary_gap >= std::exp(-9.0) * (1.0 - 1e-12));
    CHECK(rep.min_boundary_gap <= 1.0);

    // a single probe sits at the origin: gap exactly 1
    const BranchReport origin_only = branch_locus_report(f, 1, 42);
    CHECK(origin_only.min_boundary_gap == 1.0);

    // the gap e^{-mu t} decreases in ||z||: more probes can only shrink it
    const BranchReport more = branch_locus_report(f, 500, 42);
    CHECK(more.min_boundary_gap <= rep.min_boundary_gap);

    CHECK_THROWS_AS(branch_locus_report(f, 0, 1), PreconditionError);
}
