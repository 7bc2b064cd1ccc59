#pragma once

// Deterministic random draws shared by the samplers, the Monte Carlo
// oracles, and the verification suites.

#include "fbh/domain.hpp"
#include "fbh/rng.hpp"

namespace fbh {

// Interior point of D: z Gaussian (density ~ exp(-m mu ||z||^2)), w uniform
// in margin * fiber ball. margin < 1 keeps a convergence cushion for kernel
// evaluations at the sampled point.
Point draw_interior_point(const FBHDomain& d, Rng& rng, double margin = 1.0);

// Haar-distributed unitary via Ginibre + QR with phase-fixed R diagonal.
Matrix random_unitary(int k, Rng& rng);

// Uniform point of the complex dim-ball of the given radius.
Vector random_ball_vector(int dim, double radius, Rng& rng);

// Boundary point with z uniform in the radius-z_radius ball and a uniform
// unit fiber direction.
Point random_boundary_point(const FBHDomain& d, Rng& rng, double z_radius);

}  // namespace fbh
