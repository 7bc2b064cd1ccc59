#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "fbh/errors.hpp"
#include "fbh/defaults.hpp"

namespace fbh {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Hermitian inner product <x,y> = sum_j x_j conj(y_j).
inline Complex herm(const Vector& x, const Vector& y) { return y.dot(x); }

inline Vector cvec(std::initializer_list<Complex> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const Complex& x : xs) v[i++] = x;
    return v;
}

// The domain D_{n,m}(mu) = { (z,w) in C^n x C^m : ||w||^2 < exp(-mu ||z||^2) }.
struct FBHDomain {
    int n;
    int m;
    double mu;

    FBHDomain(int n_, int m_, double mu_) : n(n_), m(m_), mu(mu_) {
        if (n < 1 || m < 1) throw PreconditionError("FBHDomain: n and m must be >= 1");
        if (!(mu > 0.0)) throw PreconditionError("FBHDomain: mu must be positive");
    }
};

struct Point {
    Vector z;
    Vector w;
};

enum class Region { Interior, Boundary, Exterior };

struct PointClass {
    Region tag;
    double rho;
};

struct LeviForm {
    Matrix restricted;            // (n+m-1) x (n+m-1), Hermitian
    Eigen::VectorXd eigenvalues;  // ascending
    bool positive_definite;
};

struct InteriorSample {
    std::vector<Point> points;
    std::vector<double> weights;  // sum_i f(p_i) weights[i] estimates \int_D f dV
};

void check_point_dims(const FBHDomain& d, const Point& p);

// rho(z,w) = ||w||^2 - exp(-mu ||z||^2); negative inside, zero on the boundary.
double defining_function(const FBHDomain& d, const Point& p);

PointClass classify_point(const FBHDomain& d, const Point& p, double tol);

// (z, exp(-mu ||z||^2 / 2) u) for a unit direction u.
Point boundary_point(const FBHDomain& d, const Vector& z, const Vector& u);

// Complex Hessian of rho restricted to the complex tangent space at a
// boundary point, with its spectrum and a positive-definiteness verdict.
LeviForm levi_form_restricted(const FBHDomain& d, const Point& p, double tol);

// pi^{n+m} / (m! m^n mu^n); cross-validated against 1/K(.,0) elsewhere.
double volume_closed_form(const FBHDomain& d);

// Importance sampler: z from the complex Gaussian matching the fiber-volume
// factor exp(-m mu ||z||^2), w uniform in the fiber ball. The weight is the
// constant vol(D)/count, so weighted sums are unbiased for Lebesgue
// integrals over D. Deterministic per (seed, count).
InteriorSample sample_interior(const FBHDomain& d, std::uint64_t seed, long count);

}  // namespace fbh
