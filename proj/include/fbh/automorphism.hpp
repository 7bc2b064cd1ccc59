#pragma once

#include <cstdint>
#include <string>

#include "fbh/domain.hpp"
#include "fbh/kernel.hpp"
#include "fbh/rng.hpp"

namespace fbh {

// Canonical group element (U, Uw, v) acting by
//   (z, w) |-> (Uz + v, e^{-mu <Uz,v> - mu ||v||^2 / 2} Uw w).
// Composition phases are absorbed into Uw, which stays unitary.
struct Automorphism {
    Matrix U;   // n x n unitary
    Matrix Uw;  // m x m unitary
    Vector v;   // z-translation
    int n;
    int m;
    double mu;

    Automorphism(Matrix U_, Matrix Uw_, Vector v_, const FBHDomain& d);

    static Automorphism identity(const FBHDomain& d);

    // Matrices are never re-unitarized silently; this is the explicit knob.
    Automorphism reorthonormalized() const;
};

Automorphism rotate_z(const Matrix& U, const FBHDomain& d);
Automorphism rotate_w(const Matrix& Uw, const FBHDomain& d);
Automorphism translate(const Vector& v, const FBHDomain& d);

// Group law in canonical form: U = U2 U1, v = U2 v1 + v2, and
// Uw = e^{-i mu Im<U2 v1, v2>} U2w U1w, the phase fixed so that
// apply(compose(g2,g1), p) == apply(g2, apply(g1, p)).
Automorphism compose(const Automorphism& g2, const Automorphism& g1);

// (U*, Uw*, -U* v); the compensating phase is exactly 1.
Automorphism inverse(const Automorphism& g);

Point apply(const Automorphism& g, const Point& p);

// Holomorphic Jacobian determinant of the action:
// det(U) det(Uw) e^{m(-mu <Uz,v> - mu ||v||^2 / 2)} by block triangularity.
Complex jacobian_det(const Automorphism& g, const Point& p);

// | K(gp, gq) J(p) conj(J(q)) - K(p, q) | / |K(p, q)|.
double kernel_invariance_residual(const FBHDomain& d, const Automorphism& g, const Point& p,
                                  const Point& q, const SeriesControl& ctl = {});

// Group elements compare equal iff their actions agree on a probe set.
bool actions_agree(const Automorphism& g1, const Automorphism& g2, std::uint64_t seed,
                   int probes, double tol);

// Random product of at most max_len generators (z-rotations, w-rotations,
// translations with the given scale); used by the verification batteries.
Automorphism random_automorphism_word(const FBHDomain& d, Rng& rng, int max_len,
                                      double translate_scale);

struct LinearBiholomorphism {
    FBHDomain source;
    FBHDomain target;
    Matrix matrix;  // (n+m) x (n+m)
};

// (z, w) |-> (sqrt(mu/mu') z, w) from D_{n,m}(mu) onto D_{n,m}(mu').
LinearBiholomorphism rescaling_biholomorphism(const FBHDomain& source, const FBHDomain& target);

struct Decomposition {
    bool accepted;
    std::string reason;  // first violated condition when rejected, else empty
    Matrix U;            // sqrt(mu'/mu) * A on acceptance
    Matrix B;
};

// Partitions the matrix into blocks (A C; D B) and checks, in order, that
// D = 0, C = 0, B is unitary and sqrt(mu'/mu) A is unitary.
Decomposition decompose_linear_biholomorphism(const LinearBiholomorphism& L, double tol);

}  // namespace fbh
