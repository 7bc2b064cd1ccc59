#include "fbh/automorphism.hpp"

#include <cmath>

#include "fbh/sampling.hpp"

namespace fbh {

namespace {

double unitary_defect(const Matrix& U) {
    return (U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
}

void require_unitary(const Matrix& U, const char* what) {
    if (U.rows() != U.cols()) throw DimensionError(std::string(what) + ": matrix must be square");
    if (unitary_defect(U) > defaults::unitary_tol)
        throw PreconditionError(std::string(what) + ": matrix is not unitary within 1e-10");
}

void require_same_group(const Automorphism& a, const Automorphism& b) {
    if (a.n != b.n || a.m != b.m || a.mu != b.mu)
        throw PreconditionError("automorphism domain parameters differ");
}

// Exponent of the fiber scaling factor at z.
Complex action_exponent(const Automorphism& g, const Vector& Uz) {
    return -g.mu * herm(Uz, g.v) - 0.5 * g.mu * g.v.squaredNorm();
}

}  // namespace

Automorphism::Automorphism(Matrix U_, Matrix Uw_, Vector v_, const FBHDomain& d)
    : U(std::move(U_)), Uw(std::move(Uw_)), v(std::move(v_)), n(d.n), m(d.m), mu(d.mu) {
    if (U.rows() != n || U.cols() != n || Uw.rows() != m || Uw.cols() != m || v.size() != n)
        throw DimensionError("Automorphism: component sizes do not match the domain");
    require_unitary(U, "Automorphism U");
    require_unitary(Uw, "Automorphism Uw");
}

Automorphism Automorphism::identity(const FBHDomain& d) {
    return {Matrix::Identity(d.n, d.n), Matrix::Identity(d.m, d.m), Vector::Zero(d.n), d};
}

Automorphism Automorphism::reorthonormalized() const {
    const FBHDomain d(n, m, mu);
    const auto polar_unitary = [](const Matrix& A) {
        Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return Matrix(svd.matrixU() * svd.matrixV().adjoint());
    };
    return {polar_unitary(U), polar_unitary(Uw), v, d};
}

Automorphism rotate_z(const Matrix& U, const FBHDomain& d) {
    if (U.rows() != d.n || U.cols() != d.n) throw DimensionError("rotate_z: U must be n x n");
    return {U, Matrix::Identity(d.m, d.m), Vector::Zero(d.n), d};
}

Automorphism rotate_w(const Matrix& Uw, const FBHDomain& d) {
    if (Uw.rows() != d.m || Uw.cols() != d.m) throw DimensionError("rotate_w: Uw must be m x m");
    return {Matrix::Identity(d.n, d.n), Uw, Vector::Zero(d.n), d};
}

Automorphism translate(const Vector& v, const FBHDomain& d) {
    if (v.size() != d.n) throw DimensionError("translate: v must have length n");
    return {Matrix::Identity(d.n, d.n), Matrix::Identity(d.m, d.m), v, d};
}

Automorphism compose(const Automorphism& g2, const Automorphism& g1) {
    require_same_group(g2, g1);
    const FBHDomain d(g1.n, g1.m, g1.mu);
    const Vector u2v1 = g2.U * g1.v;
    const Complex phase = std::exp(Complex(0.0, -g1.mu * herm(u2v1, g2.v).imag()));
    return {g2.U * g1.U, phase * (g2.Uw * g1.Uw), u2v1 + g2.v, d};
}

Automorphism inverse(const Automorphism& g) {
    const FBHDomain d(g.n, g.m, g.mu);
    return {g.U.adjoint(), g.Uw.adjoint(), -(g.U.adjoint() * g.v), d};
}

Point apply(const Automorphism& g, const Point& p) {
    if (p.z.size() != g.n || p.w.size() != g.m)
        throw DimensionError("apply: point dimensions do not match the automorphism");
    const Vector Uz = g.U * p.z;
    const Complex scale = std::exp(action_exponent(g, Uz));
    return {Uz + g.v, scale * (g.Uw * p.w)};
}

Complex jacobian_det(const Automorphism& g, const Point& p) {
    if (p.z.size() != g.n || p.w.size() != g.m)
        throw DimensionError("jacobian_det: point dimensions do not match the automorphism");
    const Vector Uz = g.U * p.z;
    return g.U.determinant() * g.Uw.determinant() *
           std::exp(static_cast<double>(g.m) * action_exponent(g, Uz));
}

double kernel_invariance_residual(const FBHDomain& d, const Automorphism& g, const Point& p,
                                  const Point& q, const SeriesControl& ctl) {
    // Inner evaluations run three digits tighter than the requested tolerance
    // so the returned residual honors its own 10*tol contract even when the
    // Jacobian factors amplify the series tails.
    SeriesControl inner = ctl;
    inner.tol = ctl.tol * 1e-3;
    const Complex Kpq = kernel(d, p, q, inner).value;
    const Complex Kg = kernel(d, apply(g, p), apply(g, q), inner).value;
    const Complex lhs = Kg * jacobian_det(g, p) * std::conj(jacobian_det(g, q));
    return std::abs(lhs - Kpq) / std::abs(Kpq);
}

bool actions_agree(const Automorphism& g1, const Automorphism& g2, std::uint64_t seed,
                   int probes, double tol) {
    if (g1.n != g2.n || g1.m != g2.m || g1.mu != g2.mu) return false;
    const FBHDomain d(g1.n, g1.m, g1.mu);
    Rng rng(seed);
    for (int i = 0; i < probes; ++i) {
        const Point p = draw_interior_point(d, rng, 0.9);
        const Point a = apply(g1, p);
        const Point b = apply(g2, p);
        if ((a.z - b.z).cwiseAbs().maxCoeff() > tol) return false;
        if ((a.w - b.w).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

Automorphism random_automorphism_word(const FBHDomain& d, Rng& rng, int max_len,
                                      double translate_scale) {
    const auto generator = [&]() {
        const double pick = rng.uniform();
        if (pick < 1.0 / 3.0) return rotate_z(random_unitary(d.n, rng), d);
        if (pick < 2.0 / 3.0) return rotate_w(random_unitary(d.m, rng), d);
        Vector v(d.n);
        for (int j = 0; j < d.n; ++j) v[j] = translate_scale * rng.normal_complex();
        return translate(v, d);
    };
    const int len = 1 + static_cast<int>(rng.uniform() * max_len);
    Automorphism g = generator();
    for (int i = 1; i < std::min(len, max_len); ++i) g = compose(generator(), g);
    return g;
}

LinearBiholomorphism rescaling_biholomorphism(const FBHDomain& source, const FBHDomain& target) {
    if (source.n != target.n || source.m != target.m)
        throw DimensionError("rescaling_biholomorphism: source and target dimensions differ");
    const int N = source.n + source.m;
    Matrix M = Matrix::Identity(N, N);
    M.topLeftCorner(source.n, source.n) *= std::sqrt(source.mu / target.mu);
    return {source, target, M};
}

Decomposition decompose_linear_biholomorphism(const LinearBiholomorphism& L, double tol) {
    const int n = L.source.n, m = L.source.m;
    if (L.source.n != L.target.n || L.source.m != L.target.m)
        throw DimensionError("decompose: source and target dimensions differ");
    if (L.matrix.rows() != n + m || L.matrix.cols() != n + m)
        throw DimensionError("decompose: matrix must be (n+m) x (n+m)");

    const Matrix A = L.matrix.topLeftCorner(n, n);
    const Matrix C = L.matrix.topRightCorner(n, m);
    const Matrix D = L.matrix.bottomLeftCorner(m, n);
    const Matrix B = L.matrix.bottomRightCorner(m, m);

    // Deduction order D, C, B, A; the first failing block names the reason.
    Decomposition out{false, "", Matrix(), Matrix()};
    if (D.norm() > tol) {
        out.reason = "D != 0";
        return out;
    }
    if (C.norm() > tol) {
        out.reason = "C != 0";
        return out;
    }
    if (unitary_defect(B) > tol) {
        out.reason = "B not unitary";
        return out;
    }
    const Matrix U = std::sqrt(L.target.mu / L.source.mu) * A;
    if (unitary_defect(U) > tol) {
        out.reason = "A not sqrt(mu/mu') times unitary";
        return out;
    }
    return {true, "", U, B};
}

}  // namespace fbh
