#pragma once

#include <cstdint>
#include <vector>

#include "fbh/domain.hpp"
#include "fbh/kernel.hpp"

namespace fbh {

// coeff * z^beta * w^alpha; finite linear combinations are vectors of these.
struct MonomialFunction {
    MultiIndex alpha;  // w-exponents, length m
    MultiIndex beta;   // z-exponents, length n
    Complex coeff;
};

using MonomialSum = std::vector<MonomialFunction>;

Complex evaluate(const MonomialSum& f, const Point& p);
int total_degree(const MonomialSum& f);

// ||z^beta w^alpha||^2 in A^2(D) from first principles: the fiber-ball
// integral in closed form, the z-integral as a product of radial integrals
// int_0^inf u^k e^{-cu} du evaluated by adaptive quadrature and cross-checked
// against the exact k!/c^{k+1}. quad_points sets the initial panel count.
double monomial_norm(const FBHDomain& d, const MultiIndex& alpha, const MultiIndex& beta,
                     int quad_points);

struct McEstimate {
    Complex estimate;
    double standard_error;
    long samples;
    std::uint64_t seed;
};

// Unbiased Monte Carlo estimate of <f, g> over D using sample_interior and
// its importance weights. Shards use independently seeded streams; the
// merged estimate is deterministic for fixed (seed, samples, shards).
McEstimate inner_product_mc(const FBHDomain& d, const MonomialSum& f, const MonomialSum& g,
                            long samples, std::uint64_t seed, int shards = 1);

struct ReproducingResidual {
    double residual;
    double standard_error;
};

// | MC estimate of int_D f(p) K(q, p) dV(p)  -  f(q) | with its standard
// error; the reproducing property makes the true residual zero.
ReproducingResidual reproducing_residual(const FBHDomain& d, const MonomialSum& f, const Point& q,
                                         long samples, std::uint64_t seed,
                                         const SeriesControl& ctl = {}, int shards = 1);

// |<z^b1 w^a1, z^b2 w^a2>| for distinct index pairs, through the numeric
// angular x radial factorization; circular symmetry makes it exactly zero.
double orthogonality_residual(const FBHDomain& d, const MultiIndex& a1, const MultiIndex& b1,
                              const MultiIndex& a2, const MultiIndex& b2, int quad_points);

}  // namespace fbh
