#include "fbh/domain.hpp"

#include <cmath>

#include "fbh/rng.hpp"
#include "fbh/sampling.hpp"

namespace fbh {

void check_point_dims(const FBHDomain& d, const Point& p) {
    if (p.z.size() != d.n || p.w.size() != d.m)
        throw DimensionError("point dimensions do not match the domain");
}

double defining_function(const FBHDomain& d, const Point& p) {
    check_point_dims(d, p);
    return p.w.squaredNorm() - std::exp(-d.mu * p.z.squaredNorm());
}

PointClass classify_point(const FBHDomain& d, const Point& p, double tol) {
    if (!(tol >= 0.0)) throw PreconditionError("classify_point: tol must be >= 0");
    const double rho = defining_function(d, p);
    Region tag = Region::Boundary;
    if (rho < -tol)
        tag = Region::Interior;
    else if (rho > tol)
        tag = Region::Exterior;
    return {tag, rho};
}

Point boundary_point(const FBHDomain& d, const Vector& z, const Vector& u) {
    if (z.size() != d.n || u.size() != d.m)
        throw DimensionError("boundary_point: vector dimensions do not match the domain");
    if (std::abs(u.norm() - 1.0) > 1e-12)
        throw PreconditionError("boundary_point: direction u must be a unit vector");
    return {z, std::exp(-0.5 * d.mu * z.squaredNorm()) * u};
}

LeviForm levi_form_restricted(const FBHDomain& d, const Point& p, double tol) {
    if (classify_point(d, p, tol).tag != Region::Boundary)
        throw PreconditionError("levi_form_restricted: point is not on the boundary within tol");

    const int N = d.n + d.m;
    const double e = std::exp(-d.mu * p.z.squaredNorm());

    // Tangency is <v, g> = 0 with g_j = conj(d rho / d zeta_j):
    // g = (mu e^{-mu||z||^2} z, w). Nonzero on bD since ||w|| = e^{...}/2 > 0.
    Vector g(N);
    g.head(d.n) = d.mu * e * p.z;
    g.tail(d.m) = p.w;
    if (!(g.norm() > 0.0))
        throw PreconditionError("levi_form_restricted: degenerate gradient");

    // Hermitian form L(v) = v^* G v with G the complex Hessian of rho:
    // z-block mu e^{-mu||z||^2} (I - mu z z^*), w-block identity, mixed zero.
    Matrix G = Matrix::Zero(N, N);
    G.topLeftCorner(d.n, d.n) =
        d.mu * e * (Matrix::Identity(d.n, d.n) - d.mu * (p.z * p.z.adjoint()));
    G.bottomRightCorner(d.m, d.m) = Matrix::Identity(d.m, d.m);

    // Orthonormal basis of the tangent space: Householder completion of g.
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix Q = qr.householderQ();
    const Matrix B = Q.rightCols(N - 1);

    Matrix R = B.adjoint() * G * B;
    R = 0.5 * (R + R.adjoint().eval());  // clean Hermitian roundoff

    Eigen::SelfAdjointEigenSolver<Matrix> es(R);
    const Eigen::VectorXd eigs = es.eigenvalues();
    return {R, eigs, eigs.minCoeff() > defaults::eigenvalue_tol};
}

double volume_closed_form(const FBHDomain& d) {
    double mfac = 1.0;
    for (int k = 2; k <= d.m; ++k) mfac *= k;
    const double pi = std::numbers::pi;
    return std::pow(pi, d.n + d.m) /
           (mfac * std::pow(static_cast<double>(d.m), d.n) * std::pow(d.mu, d.n));
}

InteriorSample sample_interior(const FBHDomain& d, std::uint64_t seed, long count) {
    if (count < 1) throw PreconditionError("sample_interior: count must be >= 1");
    Rng rng(seed);
    InteriorSample out;
    out.points.reserve(count);
    // The Gaussian z-density cancels the fiber-volume factor exactly, so the
    // importance weight is the constant vol(D)/count.
    out.weights.assign(count, volume_closed_form(d) / static_cast<double>(count));
    for (long i = 0; i < count; ++i) out.points.push_back(draw_interior_point(d, rng, 1.0));
    return out;
}

}  // namespace fbh
