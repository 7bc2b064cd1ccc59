#include "fbh/proper_map.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fbh/sampling.hpp"

namespace fbh {

namespace {

void require_m1(const PowerProperMap& f, const Point& p, const char* what) {
    if (p.z.size() != f.n || p.w.size() != 1)
        throw DimensionError(std::string(what) + ": point must lie in C^n x C^1");
}

Complex pow_complex_int(Complex w, int d) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < d; ++i) r *= w;
    return r;
}

// d-th root of unity, exact on the axes so that root pairs cancel exactly.
Complex unit_root(int k, int d) {
    const int r = ((k % d) + d) % d;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == d) return {-1.0, 0.0};
    if (4 * r == d) return {0.0, 1.0};
    if (4 * r == 3 * d) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * r / d);
}

}  // namespace

Point apply_proper(const PowerProperMap& f, const Point& p) {
    require_m1(f, p, "apply_proper");
    return {std::sqrt(static_cast<double>(f.d)) * p.z, cvec({pow_complex_int(p.w[0], f.d)})};
}

Complex proper_jacobian_det(const PowerProperMap& f, const Point& p) {
    require_m1(f, p, "proper_jacobian_det");
    return std::pow(std::sqrt(static_cast<double>(f.d)), f.n) * static_cast<double>(f.d) *
           pow_complex_int(p.w[0], f.d - 1);
}

std::vector<LocalInverse> local_inverses(const PowerProperMap& f, const Point& q) {
    require_m1(f, q, "local_inverses");
    const FBHDomain dom = f.domain();
    if (!(defining_function(dom, q) < 0.0))
        throw PreconditionError("local_inverses: q must be interior");
    const Complex w1 = q.w[0];
    if (w1 == Complex(0.0, 0.0))
        throw PreconditionError("local_inverses: q lies on the branch value set w1 = 0");

    const double sd = std::sqrt(static_cast<double>(f.d));
    const Vector z_pre = q.z / sd;  // shared by every branch
    const Complex zeta0 = std::polar(std::pow(std::abs(w1), 1.0 / f.d), std::arg(w1) / f.d);
    const Complex c = std::pow(1.0 / sd, f.n) / (static_cast<double>(f.d) * w1);

    std::vector<LocalInverse> out;
    out.reserve(f.d);
    for (int k = 0; k < f.d; ++k) {
        const Complex zeta = zeta0 * unit_root(k, f.d);
        out.push_back({Point{z_pre, cvec({zeta})}, c * zeta});
    }
    return out;
}

double transformation_rule_residual(const PowerProperMap& f, const Point& p, const Point& q,
                                    const SeriesControl& ctl) {
    require_m1(f, p, "transformation_rule_residual");
    const FBHDomain dom = f.domain();
    if (!(defining_function(dom, p) < 0.0))
        throw PreconditionError("transformation_rule_residual: p must be interior");

    // Tighter inner tolerance: the branch Jacobians amplify the series tails
    // near the locus, and the residual must still meet its 10*tol contract.
    SeriesControl inner = ctl;
    inner.tol = ctl.tol * 1e-3;

    const Complex u = proper_jacobian_det(f, p);
    const Complex rhs = u * kernel(dom, apply_proper(f, p), q, inner).value;

    Complex lhs{0.0, 0.0};
    for (const LocalInverse& br : local_inverses(f, q))
        lhs += kernel(dom, p, br.preimage, inner).value * std::conj(br.jacobian);

    return std::abs(lhs - rhs) / (std::abs(rhs) + defaults::residual_floor);
}

BranchReport branch_locus_report(const PowerProperMap& f, long probe_count, std::uint64_t seed) {
    if (probe_count < 1) throw PreconditionError("branch_locus_report: probe_count must be >= 1");
    Rng rng(seed);
    double min_gap = std::numeric_limits<double>::infinity();
    for (long i = 0; i < probe_count; ++i) {
        // First probe at the origin, the rest spread over ||z|| <= 3.
        const Vector z = (i == 0) ? Vector(Vector::Zero(f.n)) : random_ball_vector(f.n, 3.0, rng);
        // rho(z, 0) = -e^{-mu ||z||^2}: strictly inside for every finite z.
        min_gap = std::min(min_gap, std::exp(-f.mu * z.squaredNorm()));
    }
    return {"w1 = 0", min_gap, false};
}

}  // namespace fbh
