#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbh/domain.hpp"
#include "fbh/kernel.hpp"

namespace fbh {

// The branched proper self-map family (z, w1) |-> (sqrt(d) z, w1^d) on
// D_{n,1}(mu); d = 2 is the basic square-power case. The map is proper and
// boundary-preserving but branches along {w1 = 0}.
struct PowerProperMap {
    int n;
    double mu;
    int d;  // branching order, >= 2

    PowerProperMap(int n_, double mu_, int d_) : n(n_), mu(mu_), d(d_) {
        if (n < 1) throw PreconditionError("PowerProperMap: n must be >= 1");
        if (!(mu > 0.0)) throw PreconditionError("PowerProperMap: mu must be positive");
        if (d < 2) throw PreconditionError("PowerProperMap: branching order must be >= 2");
    }

    FBHDomain domain() const { return FBHDomain(n, 1, mu); }
};

struct BranchReport {
    std::string locus_description;
    double min_boundary_gap;      // inf over probes of |rho(z, 0)|
    bool closure_meets_boundary;  // false for this family
};

struct LocalInverse {
    Point preimage;   // F_k(q)
    Complex jacobian; // U_k = det[F_k']
};

Point apply_proper(const PowerProperMap& f, const Point& p);

// (sqrt(d))^n * d * w1^{d-1}.
Complex proper_jacobian_det(const PowerProperMap& f, const Point& p);

// The d preimages (z/sqrt(d), zeta_k) with zeta_k the d-th roots of w1
// (principal root times the unit roots, ordered by k), each paired with its
// inverse-branch Jacobian U_k = (1/sqrt(d))^n zeta_k / (d w1).
std::vector<LocalInverse> local_inverses(const PowerProperMap& f, const Point& q);

// Residual of the proper-map kernel transformation rule
//   sum_k K(p, F_k(q)) conj(U_k(q)) = u(p) K(f(p), q),
// relative to |u(p) K(f(p), q)| with a tiny denominator floor so the
// u(p) = 0 cancellation case stays well-defined.
double transformation_rule_residual(const PowerProperMap& f, const Point& p, const Point& q,
                                    const SeriesControl& ctl = {});

// Probes the branch locus {w1 = 0}: the boundary gap |rho(z,0)| = e^{-mu||z||^2}
// is positive at every probe, so the locus closure stays off the boundary.
BranchReport branch_locus_report(const PowerProperMap& f, long probe_count, std::uint64_t seed);

}  // namespace fbh
