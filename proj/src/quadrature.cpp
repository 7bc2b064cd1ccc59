#include "fbh/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "fbh/sampling.hpp"

namespace fbh {

namespace {

constexpr double kPi = std::numbers::pi;

double pow_int(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

Complex cpow_int(Complex x, int n) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// ---- 1-D radial integrals ----------------------------------------------

double radial_integrand(double u, double nu, double c) {
    if (u <= 0.0) return (nu == 0.0) ? 1.0 : 0.0;
    return std::pow(u, nu) * std::exp(-c * u);
}

struct SimpsonState {
    double nu, c;
    long evals = 0;
    long max_evals = 2000000;
};

double adaptive_simpson(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = radial_integrand(lm, st.nu, st.c);
    const double frm = radial_integrand(rm, st.nu, st.c);
    st.evals += 2;
    if (st.evals > st.max_evals)
        throw ConvergenceError("radial quadrature exceeded its evaluation budget");
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw ConvergenceError("radial quadrature did not converge");
    if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    // eps is deliberately not halved per level; the final comparison against
    // the exact integral is the accuracy guarantee.
    return adaptive_simpson(st, a, m, fa, flm, fm, left, eps, depth - 1) +
           adaptive_simpson(st, m, b, fm, frm, fb, right, eps, depth - 1);
}

// int_0^inf u^nu e^{-cu} du by adaptive Simpson on a truncated interval,
// cross-checked against the exact Gamma(nu+1)/c^{nu+1}.
double radial_integral_quad(double nu, double c, int quad_points) {
    const double exact = std::tgamma(nu + 1.0) / std::pow(c, nu + 1.0);
    // Truncation point: the tail beyond c*U = 8(nu+1)+60 is below 1e-16
    // relative to the total.
    const double U = (8.0 * (nu + 1.0) + 60.0) / c;
    const double eps = 1e-12 * exact;

    SimpsonState st{nu, c};
    double total = 0.0;
    const long panels = std::max(quad_points, 16);
    double x0 = 0.0, f0 = radial_integrand(0.0, nu, c);
    for (long i = 1; i <= panels; ++i) {
        const double x1 = U * static_cast<double>(i) / panels;
        const double xm = 0.5 * (x0 + x1);
        const double f1 = radial_integrand(x1, nu, c);
        const double fm = radial_integrand(xm, nu, c);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += adaptive_simpson(st, x0, x1, f0, fm, f1, whole, eps / panels, 48);
        x0 = x1;
        f0 = f1;
    }

    if (std::abs(total - exact) > defaults::quad_rel_tol * exact)
        throw ConvergenceError("radial quadrature disagrees with the exact integral");
    return total;
}

// Fiber-ball integral int_{||w||<r} prod |w_i|^{2 gamma_i} dV for real
// gamma_i >= 0, without the r-power (Dirichlet closed form):
//   pi^m prod Gamma(gamma_i + 1) / Gamma(|gamma| + m + 1) * r^{2(|gamma|+m)}.
double ball_moment_constant(const std::vector<double>& gamma) {
    const int m = static_cast<int>(gamma.size());
    double num = 1.0, total = 0.0;
    for (double g : gamma) {
        num *= std::tgamma(g + 1.0);
        total += g;
    }
    return pow_int(kPi, m) * num / std::tgamma(total + m + 1.0);
}

// Numeric angular factor int_0^{2pi} e^{i k theta} dtheta via the composite
// trapezoid rule, which is spectrally exact for integer frequencies.
Complex angular_factor(int k, int nodes = 64) {
    Complex s{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * kPi * j / nodes;
        s += std::polar(1.0, k * th);
    }
    return s * (2.0 * kPi / nodes);
}

void check_indices(const FBHDomain& d, const MultiIndex& alpha, const MultiIndex& beta,
                   const char* what) {
    if (static_cast<int>(alpha.size()) != d.m)
        throw DimensionError(std::string(what) + ": alpha must have length m");
    if (static_cast<int>(beta.size()) != d.n)
        throw DimensionError(std::string(what) + ": beta must have length n");
    for (int e : alpha.entries)
        if (e < 0) throw PreconditionError(std::string(what) + ": negative multi-index");
    for (int e : beta.entries)
        if (e < 0) throw PreconditionError(std::string(what) + ": negative multi-index");
}

struct Accumulator {
    Complex sum{0.0, 0.0};
    double sumsq = 0.0;  // sum of |X|^2
    long n = 0;

    void add(Complex x) {
        sum += x;
        sumsq += std::norm(x);
        ++n;
    }
    void merge(const Accumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        n += o.n;
    }
    Complex mean() const { return sum / static_cast<double>(n); }
    double standard_error() const {
        if (n < 2) return 0.0;
        const double var = std::max(0.0, (sumsq - std::norm(sum) / n) / (n - 1.0));
        return std::sqrt(var / n);
    }
};

// Shared shard loop: fn(point) -> sample value X_i with E[X] the target.
template <typename F>
Accumulator mc_sharded(const FBHDomain& d, long samples, std::uint64_t seed, int shards, F&& fn) {
    if (shards < 1) throw PreconditionError("Monte Carlo shard count must be >= 1");
    Accumulator total;
    const long base = samples / shards;
    const long extra = samples % shards;
    for (int s = 0; s < shards; ++s) {
        const long count = base + (s < extra ? 1 : 0);
        if (count == 0) continue;
        const InteriorSample sample = sample_interior(d, derive_seed(seed, s), count);
        Accumulator acc;
        for (long i = 0; i < count; ++i)
            acc.add(fn(sample.points[i]) * (sample.weights[i] * static_cast<double>(count)));
        total.merge(acc);
    }
    return total;
}

}  // namespace

Complex evaluate(const MonomialSum& f, const Point& p) {
    Complex s{0.0, 0.0};
    for (const MonomialFunction& t : f) {
        Complex v = t.coeff;
        for (std::size_t j = 0; j < t.beta.size(); ++j)
            v *= cpow_int(p.z[static_cast<Eigen::Index>(j)], t.beta.entries[j]);
        for (std::size_t i = 0; i < t.alpha.size(); ++i)
            v *= cpow_int(p.w[static_cast<Eigen::Index>(i)], t.alpha.entries[i]);
        s += v;
    }
    return s;
}

int total_degree(const MonomialSum& f) {
    int deg = 0;
    for (const MonomialFunction& t : f) deg = std::max(deg, t.alpha.order() + t.beta.order());
    return deg;
}

double monomial_norm(const FBHDomain& d, const MultiIndex& alpha, const MultiIndex& beta,
                     int quad_points) {
    check_indices(d, alpha, beta, "monomial_norm");
    if (quad_points < 16) throw PreconditionError("monomial_norm: quad_points must be >= 16");

    // Fiber ball: int_{||w||<r} |w^alpha|^2 dV = pi^m alpha! r^{2(|alpha|+m)} / (|alpha|+m)!.
    std::vector<double> gam(alpha.entries.begin(), alpha.entries.end());
    const double wfac = ball_moment_constant(gam);

    // z-integral with the r-power folded in: product over coordinates of
    // pi * int_0^inf u^{beta_j} e^{-cu} du, c = mu (|alpha| + m).
    const double c = d.mu * (alpha.order() + d.m);
    double zfac = 1.0;
    for (int j = 0; j < d.n; ++j)
        zfac *= kPi * radial_integral_quad(beta.entries[j], c, quad_points);

    return wfac * zfac;
}

McEstimate inner_product_mc(const FBHDomain& d, const MonomialSum& f, const MonomialSum& g,
                            long samples, std::uint64_t seed, int shards) {
    if (samples < 100) throw PreconditionError("inner_product_mc: samples must be >= 100");
    const Accumulator acc = mc_sharded(d, samples, seed, shards, [&](const Point& p) {
        return evaluate(f, p) * std::conj(evaluate(g, p));
    });
    return {acc.mean(), acc.standard_error(), samples, seed};
}

ReproducingResidual reproducing_residual(const FBHDomain& d, const MonomialSum& f, const Point& q,
                                         long samples, std::uint64_t seed,
                                         const SeriesControl& ctl, int shards) {
    if (samples < 100) throw PreconditionError("reproducing_residual: samples must be >= 100");
    check_point_dims(d, q);
    if (!(defining_function(d, q) < 0.0))
        throw PreconditionError("reproducing_residual: q must be interior");
    if (total_degree(f) > 6)
        throw PreconditionError("reproducing_residual: total degree capped at 6");

    const Accumulator acc = mc_sharded(d, samples, seed, shards, [&](const Point& p) {
        return evaluate(f, p) * kernel(d, q, p, ctl).value;
    });
    return {std::abs(acc.mean() - evaluate(f, q)), acc.standard_error()};
}

double orthogonality_residual(const FBHDomain& d, const MultiIndex& a1, const MultiIndex& b1,
                              const MultiIndex& a2, const MultiIndex& b2, int quad_points) {
    check_indices(d, a1, b1, "orthogonality_residual");
    check_indices(d, a2, b2, "orthogonality_residual");
    if (a1.entries == a2.entries && b1.entries == b2.entries)
        throw PreconditionError("orthogonality_residual: index pairs must differ");
    if (quad_points < 16)
        throw PreconditionError("orthogonality_residual: quad_points must be >= 16");

    // <z^b1 w^a1, z^b2 w^a2> factors into per-coordinate angular integrals
    // (numeric, vanishing whenever an exponent differs) times the modulus
    // integral M with averaged exponents.
    Complex angular{1.0, 0.0};
    for (int j = 0; j < d.n; ++j)
        angular *= angular_factor(b1.entries[j] - b2.entries[j]) / (2.0 * kPi);
    for (int i = 0; i < d.m; ++i)
        angular *= angular_factor(a1.entries[i] - a2.entries[i]) / (2.0 * kPi);

    std::vector<double> gam(d.m);
    for (int i = 0; i < d.m; ++i) gam[i] = 0.5 * (a1.entries[i] + a2.entries[i]);
    double gtot = 0.0;
    for (double g : gam) gtot += g;
    const double wfac = ball_moment_constant(gam);

    const double c = d.mu * (gtot + d.m);
    double zfac = 1.0;
    for (int j = 0; j < d.n; ++j)
        zfac *= kPi * radial_integral_quad(0.5 * (b1.entries[j] + b2.entries[j]), c, quad_points);

    return std::abs(angular) * wfac * zfac;
}

}  // namespace fbh
