#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbh/quadrature.hpp"
#include "fbh/sampling.hpp"

using namespace fbh;

namespace {
constexpr double kPi = std::numbers::pi;

// Direct 1-D radial quadrature of the unit-ball moment for m = 1:
// int_{|w|<1} |w|^{2a} dA = 2 pi int_0^1 t^{2a+1} dt, by composite Simpson.
double ball_moment_m1_direct(int a) {
    const int N = 2000;
    double s = 0.0;
    const double h = 1.0 / N;
    auto f = [&](double t) { return std::pow(t, 2 * a + 1); };
    for (int i = 0; i < N; ++i) {
        const double x0 = i * h, x1 = x0 + h;
        s += h / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    return 2.0 * kPi * s;
}

// m = 2 unit-ball moment by iterated 1-D integrals:
// int_{|w1|^2+|w2|^2<1} |w1|^{2a} |w2|^{2b} dV
//   = pi^2 int_0^1 u^a (int_0^{1-u} v^b dv) du  (u = |w1|^2, v = |w2|^2).
double ball_moment_m2_direct(int a, int b) {
    const int N = 4000;
    double s = 0.0;
    const double h = 1.0 / N;
    auto inner = [&](double u) { return std::pow(1.0 - u, b + 1) / (b + 1.0); };
    auto f = [&](double u) { return std::pow(u, a) * inner(u); };
    for (int i = 0; i < N; ++i) {
        const double x0 = i * h, x1 = x0 + h;
        s += h / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    return kPi * kPi * s;
}

}  // namespace

TEST_CASE("monomial evaluation") {
    const MonomialSum f = {{MultiIndex{1}, MultiIndex{2}, Complex(2.0, 0.0)},
                           {MultiIndex{0}, MultiIndex{0}, Complex(0.0, 1.0)}};
    const Point p{cvec({Complex(1.0, 1.0)}), cvec({0.5})};
    // 2 z^2 w + i at z = 1+i, w = 0.5: z^2 = 2i, so 2*2i*0.5 + i = 3i
    CHECK(evaluate(f, p) == Complex(0.0, 3.0));
    CHECK(total_degree(f) == 3);
}

TEST_CASE("monomial norms from radial quadrature") {
    const FBHDomain d(1, 1, 1.0);
    CHECK(monomial_norm(d, MultiIndex{0}, MultiIndex{0}, 32) ==
          doctest::Approx(kPi * kPi).epsilon(1e-11));  // the volume
    CHECK(monomial_norm(d, MultiIndex{1}, MultiIndex{0}, 32) ==
          doctest::Approx(kPi * kPi / 4.0).epsilon(1e-11));
    CHECK(monomial_norm(d, MultiIndex{0}, MultiIndex{1}, 32) ==
          doctest::Approx(kPi * kPi).epsilon(1e-11));

    CHECK_THROWS_AS(monomial_norm(d, MultiIndex{0}, MultiIndex{0}, 8), PreconditionError);
    CHECK_THROWS_AS(monomial_norm(d, MultiIndex{0, 0}, MultiIndex{0}, 32), DimensionError);
}

TEST_CASE("fiber-ball closed form validated against direct quadrature") {
    // m = 1: pi^1 a! / (a+1)! = pi/(a+1) on the unit ball
    for (int a : {0, 1, 2, 3}) {
        const double closed = kPi * std::tgamma(a + 1.0) / std::tgamma(a + 2.0);
        CHECK(closed == doctest::Approx(ball_moment_m1_direct(a)).epsilon(1e-9));
    }
    // m = 2: pi^2 a! b! / (a+b+2)! on the unit ball
    for (auto [a, b] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 1}}) {
        const double closed =
            kPi * kPi * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
        CHECK(closed == doctest::Approx(ball_moment_m2_direct(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("coefficient-norm duality on a sample grid") {
    for (const FBHDomain& base : {FBHDomain(1, 1, 1.0), FBHDomain(2, 1, 1.0), FBHDomain(1, 2, 1.0)}) {
        for (double mu : {1.0, 2.0}) {
            const FBHDomain d(base.n, base.m, mu);
            std::vector<std::pair<MultiIndex, MultiIndex>> cases;
            if (d.n == 1 && d.m == 1)
                cases = {{MultiIndex{0}, MultiIndex{0}}, {MultiIndex{3}, MultiIndex{1}},
                         {MultiIndex{2}, MultiIndex{2}}, {MultiIndex{0}, MultiIndex{4}}};
            else if (d.n == 2)
                cases = {{MultiIndex{1}, MultiIndex{1, 2}}, {MultiIndex{0}, MultiIndex{2, 2}}};
            else
                cases = {{MultiIndex{1, 2}, MultiIndex{1}}, {MultiIndex{2, 2}, MultiIndex{0}}};
            for (const auto& [a, b] : cases) {
                const double prod =
                    kernel_monomial_coefficient(d, a, b) * monomial_norm(d, a, b, 32);
                CHECK(std::abs(prod - 1.0) <= 1e-8);
            }
        }
    }
}

TEST_CASE("Monte Carlo inner products") {
    const FBHDomain d(1, 1, 1.0);
    const MonomialSum one = {{MultiIndex{0}, MultiIndex{0}, 1.0}};
    const MonomialSum z = {{MultiIndex{0}, MultiIndex{1}, 1.0}};
    const MonomialSum w = {{MultiIndex{1}, MultiIndex{0}, 1.0}};

    SUBCASE("volume estimate is exact by construction") {
        const McEstimate e = inner_product_mc(d, one, one, 10000, 5);
        CHECK(std::abs(e.estimate - Complex(kPi * kPi)) <= 1e-10);
        CHECK(e.standard_error <= 1e-10);
        CHECK(e.samples == 10000);
    }

    SUBCASE("distinct monomials are orthogonal within noise") {
        const McEstimate e = inner_product_mc(d, z, w, 100000, 6);
        CHECK(std::abs(e.estimate) <= 3.0 * e.standard_error);
    }

    SUBCASE("norm of w matches the radial value within noise") {
        const McEstimate e = inner_product_mc(d, w, w, 100000, 7);
        CHECK(std::abs(e.estimate - Complex(kPi * kPi / 4.0)) <= 3.0 * e.standard_error);
        CHECK(e.standard_error > 0.0);
    }

    SUBCASE("sharding is deterministic per (seed, samples, shards)") {
        const McEstimate a = inner_product_mc(d, w, w, 20000, 9, 4);
        const McEstimate b = inner_product_mc(d, w, w, 20000, 9, 4);
        CHECK(a.estimate == b.estimate);
        CHECK(a.standard_error == b.standard_error);
        const McEstimate c = inner_product_mc(d, w, w, 20000, 9, 2);
        CHECK(c.estimate != a.estimate);  // different stream decomposition
    }

    CHECK_THROWS_AS(inner_product_mc(d, one, one, 50, 5), PreconditionError);
}

TEST_CASE("reproducing property by Monte Carlo") {
    const FBHDomain d(1, 1, 1.0);
    const Point q{cvec({Complex(0.3, 0.1)}), cvec({0.35})};

    const std::vector<MonomialSum> fs = {
        {{MultiIndex{0}, MultiIndex{0}, 1.0}},
        {{MultiIndex{0}, MultiIndex{1}, 1.0}},
        {{MultiIndex{1}, MultiIndex{0}, 1.0}},
    };
    int stream = 0;
    for (const MonomialSum& f : fs) {
        const auto r = reproducing_residual(d, f, q, 100000, 1000 + stream++);
        CHECK(r.residual <= 3.0 * r.standard_error);
    }

    // f = z reproduces z(q) at an off-axis q
    const Point q2{cvec({1.0}), cvec({0.1})};
    const auto r2 = reproducing_residual(d, fs[1], q2, 100000, 2000);
    CHECK(r2.residual <= 3.0 * r2.standard_error);

    const MonomialSum deg7 = {{MultiIndex{7}, MultiIndex{0}, 1.0}};
    CHECK_THROWS_AS(reproducing_residual(d, deg7, q, 1000, 1), PreconditionError);
    CHECK_THROWS_AS(
        reproducing_residual(d, fs[0], Point{cvec({0.0}), cvec({1.5})}, 1000, 1),
        PreconditionError);
}

TEST_CASE("orthogonality residuals vanish for distinct monomials") {
    const FBHDomain d(1, 1, 1.0);
    CHECK(orthogonality_residual(d, MultiIndex{1}, MultiIndex{0}, MultiIndex{0}, MultiIndex{1}, 32) <=
          1e-12);
    CHECK(orthogonality_residual(d, MultiIndex{2}, MultiIndex{0}, MultiIndex{1}, MultiIndex{0}, 32) <=
          1e-12);

    const FBHDomain d2(2, 1, 0.5);
    CHECK(orthogonality_residual(d2, MultiIndex{1}, MultiIndex{0, 1}, MultiIndex{1},
                                 MultiIndex{1, 0}, 32) <= 1e-12);

    CHECK_THROWS_AS(
        orthogonality_residual(d, MultiIndex{1}, MultiIndex{0}, MultiIndex{1}, MultiIndex{0}, 32),
        PreconditionError);
}

TEST_CASE("volume consistency between the oracle and the kernel") {
    Rng rng(80);
    for (const FBHDomain& d : {FBHDomain(1, 1, 1.0), FBHDomain(2, 1, 2.0), FBHDomain(1, 2, 0.5)}) {
        const double vol = monomial_norm(d, MultiIndex(std::vector<int>(d.m, 0)),
                                         MultiIndex(std::vector<int>(d.n, 0)), 32);
        const Point origin{Vector::Zero(d.n), Vector::Zero(d.m)};
        for (int i = 0; i < 5; ++i) {
            const Point p = draw_interior_point(d, rng, 0.9);
            const Complex k = kernel(d, p, origin).value;
            CHECK(std::abs(k * vol - Complex(1.0)) <= 1e-8);
        }
    }
}
