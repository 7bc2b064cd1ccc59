#include "fbh/sampling.hpp"

#include <cmath>

namespace fbh {

Point draw_interior_point(const FBHDomain& d, Rng& rng, double margin) {
    const double sigma = std::sqrt(0.5 / (d.m * d.mu));
    Vector z(d.n);
    for (int j = 0; j < d.n; ++j) z[j] = sigma * rng.normal_complex();

    Vector dir(d.m);
    double nrm = 0.0;
    do {
        for (int i = 0; i < d.m; ++i) dir[i] = rng.normal_complex();
        nrm = dir.norm();
    } while (!(nrm > 0.0));
    dir /= nrm;

    double f = std::pow(rng.uniform(), 1.0 / (2.0 * d.m));
    if (f > 1.0 - 1e-15) f = 1.0 - 1e-15;  // keep rho strictly negative
    const double r = margin * std::exp(-0.5 * d.mu * z.squaredNorm());
    return {z, (r * f) * dir};
}

Matrix random_unitary(int k, Rng& rng) {
    Matrix G(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) G(i, j) = rng.normal_complex();
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the diagonal phases so the distribution is Haar.
    for (int j = 0; j < k; ++j) {
        const Complex rjj = R(j, j);
        const double a = std::abs(rjj);
        Q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
    }
    return Q;
}

Vector random_ball_vector(int dim, double radius, Rng& rng) {
    Vector dir(dim);
    double nrm = 0.0;
    do {
        for (int i = 0; i < dim; ++i) dir[i] = rng.normal_complex();
        nrm = dir.norm();
    } while (!(nrm > 0.0));
    dir /= nrm;
    const double f = std::pow(rng.uniform(), 1.0 / (2.0 * dim));
    return (radius * f) * dir;
}

Point random_boundary_point(const FBHDomain& d, Rng& rng, double z_radius) {
    const Vector z = random_ball_vector(d.n, z_radius, rng);
    Vector u(d.m);
    double nrm = 0.0;
    do {
        for (int i = 0; i < d.m; ++i) u[i] = rng.normal_complex();
        nrm = u.norm();
    } while (!(nrm > 0.0));
    u /= nrm;
    return boundary_point(d, z, u);
}

}  // namespace fbh
