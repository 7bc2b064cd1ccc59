#include "fbh/kernel.hpp"

#include <cmath>
#include <numbers>

namespace fbh {

namespace {

constexpr double kPi = std::numbers::pi;

double pow_int(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Compensated (Kahan) accumulator; complex addition is componentwise, so the
// scalar scheme carries over directly.
class KahanSum {
public:
    void add(Complex x) {
        const Complex y = x - c_;
        const Complex t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    Complex value() const { return sum_; }

private:
    Complex sum_{0.0, 0.0};
    Complex c_{0.0, 0.0};
};

double series_prefactor(const FBHDomain& d) {
    return factorial(d.m) * pow_int(d.mu, d.n) / pow_int(kPi, d.n + d.m);
}

void require_interior(const FBHDomain& d, const Point& p, const char* what) {
    if (!(defining_function(d, p) < 0.0))
        throw PreconditionError(std::string(what) + ": point is not interior");
}

}  // namespace

double pochhammer(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a + i;
    return r;
}

Complex fock_bargmann_kernel(int n, double nu, const Vector& z, const Vector& t) {
    if (z.size() != n || t.size() != n)
        throw DimensionError("fock_bargmann_kernel: vector length must equal n");
    if (!(nu > 0.0)) throw PreconditionError("fock_bargmann_kernel: nu must be positive");
    return pow_int(nu, n) * std::exp(nu * herm(z, t)) / pow_int(kPi, n);
}

KernelValue kernel_scalar(const FBHDomain& d, Complex a, Complex b, const SeriesControl& ctl) {
    if (!(ctl.tol > 0.0) || ctl.max_terms < 1)
        throw PreconditionError("kernel_scalar: invalid series control");
    const int n = d.n, m = d.m;

    const double q = std::abs(b) * std::exp(d.mu * a.real());
    if (!(q < 1.0))
        throw ConvergenceError("kernel_scalar: divergent input, |<w,s>| exp(mu Re<z,t>) >= 1");

    const Complex growth = std::exp(d.mu * a) * b;  // e^{mu a} b
    Complex term = series_prefactor(d) * pow_int(static_cast<double>(m), n) *
                   std::exp(d.mu * static_cast<double>(m) * a);

    KahanSum sum;
    for (long k = 0; k < ctl.max_terms; ++k) {
        sum.add(term);
        const double coef_ratio = ((m + 1.0 + k) / (k + 1.0)) *
                                  pow_int((k + 1.0 + m) / (k + m), n);
        const double rho = coef_ratio * q;
        if (rho < 1.0) {
            const double bound = std::abs(term) * rho / (1.0 - rho);
            if (bound <= ctl.tol) return {sum.value(), bound, k + 1};
        }
        term *= coef_ratio * growth;
    }
    throw ConvergenceError("kernel_scalar: max_terms exceeded before reaching tolerance");
}

KernelValue kernel(const FBHDomain& d, const Point& p, const Point& q,
                   const SeriesControl& ctl) {
    check_point_dims(d, p);
    check_point_dims(d, q);
    require_interior(d, p, "kernel");
    require_interior(d, q, "kernel");
    return kernel_scalar(d, herm(p.z, q.z), herm(p.w, q.w), ctl);
}

KernelValue kernel_extended(const FBHDomain& d, const Point& p, const Point& q,
                            const SeriesControl& ctl) {
    check_point_dims(d, p);
    check_point_dims(d, q);
    const Complex a = herm(p.z, q.z);
    const Complex b = herm(p.w, q.w);

    // The rescaling w -> rw, s -> s/r leaves the reduced scalars unchanged;
    // assert it for r = 1/2 before summing (exact for power-of-two r).
    constexpr double r = 0.5;
    const Complex b_rescaled = herm((r * p.w).eval(), (q.w / r).eval());
    if (std::abs(b_rescaled - b) > 1e-14 * (1.0 + std::abs(b)))
        throw PreconditionError("kernel_extended: rescaling identity violated");

    return kernel_scalar(d, a, b, ctl);
}

KernelValue ligocka_assemble(const BaseKernel& base_kernel, int m, const Point& p,
                             const Point& q, const SeriesControl& ctl) {
    if (m < 1) throw PreconditionError("ligocka_assemble: m must be >= 1");
    if (p.w.size() != m || q.w.size() != m)
        throw DimensionError("ligocka_assemble: w-dimensions must equal m");
    if (!(ctl.tol > 0.0) || ctl.max_terms < 1)
        throw PreconditionError("ligocka_assemble: invalid series control");

    const Complex b = herm(p.w, q.w);
    const double pref = factorial(m) / pow_int(kPi, m);

    KahanSum sum;
    double coef = 1.0;     // (m+1)_k / k!
    Complex bpow = 1.0;    // b^k
    double prev_mag = -1.0;
    int decay_run = 0;
    double rhat = 0.0;

    for (long k = 0; k < ctl.max_terms; ++k) {
        const Complex term = pref * coef * base_kernel(static_cast<int>(k), p.z, q.z) * bpow;
        sum.add(term);

        if (b == Complex(0.0, 0.0)) return {sum.value(), 0.0, k + 1};  // all later terms vanish

        // Black-box base kernel: estimate the tail from observed ratios and
        // require three consecutive decaying terms before trusting it.
        const double mag = std::abs(term);
        if (prev_mag > 0.0) {
            const double ratio = mag / prev_mag;
            if (ratio < 0.999) {
                ++decay_run;
                rhat = (decay_run == 1) ? ratio : std::max(rhat, ratio);
            } else {
                decay_run = 0;
            }
            if (decay_run >= 3) {
                const double bound = mag * rhat / (1.0 - rhat);
                if (bound <= ctl.tol) return {sum.value(), bound, k + 1};
            }
        } else if (mag == 0.0 && prev_mag == 0.0) {
            return {sum.value(), 0.0, k + 1};
        }
        prev_mag = mag;

        coef *= (m + 1.0 + k) / (k + 1.0);
        bpow *= b;
    }
    throw ConvergenceError("ligocka_assemble: series did not converge within max_terms");
}

namespace {

// All scalar-series data needed for the log-derivative matrix:
// F and its partials in a and b.
struct SeriesDerivatives {
    Complex F, Fa, Faa, Fb, Fbb, Fab;
};

SeriesDerivatives scalar_series_derivatives(const FBHDomain& d, Complex a, Complex b,
                                            const SeriesControl& ctl) {
    const int n = d.n, m = d.m;
    const double q = std::abs(b) * std::exp(d.mu * a.real());
    if (!(q < 1.0)) throw ConvergenceError("t_matrix: input outside the convergence region");

    const double C = series_prefactor(d);
    const Complex em = std::exp(d.mu * a);
    const Complex E0 = std::exp(d.mu * static_cast<double>(m) * a);

    SeriesDerivatives out{};
    if (b == Complex(0.0, 0.0)) {
        // Only k = 0 survives for F, Fa, Faa; k = 1 for Fb, Fab; k = 2 for Fbb.
        const double g0 = pow_int(static_cast<double>(m), n);
        const double g1 = pochhammer(m + 1.0, 1) * pow_int(m + 1.0, n);
        const double g2 = pochhammer(m + 1.0, 2) / 2.0 * pow_int(m + 2.0, n);
        const Complex E1 = E0 * em, E2 = E1 * em;
        out.F = C * g0 * E0;
        out.Fa = d.mu * m * out.F;
        out.Faa = d.mu * m * out.Fa;
        out.Fb = C * g1 * E1;
        out.Fab = d.mu * (1.0 + m) * out.Fb;
        out.Fbb = 2.0 * C * g2 * E2;
        return out;
    }

    // P0 = e^{mu(k+m)a} b^k, P1 = e^{...} b^{k-1}, P2 = e^{...} b^{k-2}; each
    // advances by the same bounded factor e^{mu a} b, which keeps every
    // sequence finite even when e^{mu(k+m)a} alone would overflow.
    const Complex step = em * b;
    Complex P0 = E0;            // valid from k = 0
    Complex P1 = E0 * em;       // valid from k = 1
    Complex P2 = E0 * em * em;  // valid from k = 2

    KahanSum F, Fa, Faa, Fb, Fbb, Fab;
    double gamma = pow_int(static_cast<double>(m), n);  // (m+1)_k (k+m)^n / k!
    double last_max_mag = 0.0;

    for (long k = 0; k < ctl.max_terms; ++k) {
        const double km = static_cast<double>(k + m);
        const Complex base = C * gamma * P0;
        F.add(base);
        Fa.add(d.mu * km * base);
        Faa.add(d.mu * km * d.mu * km * base);
        double mag = std::abs(base) * std::max(1.0, d.mu * km * std::max(1.0, d.mu * km));
        if (k >= 1) {
            const Complex t1 = C * gamma * static_cast<double>(k) * P1;
            Fb.add(t1);
            Fab.add(d.mu * km * t1);
            mag = std::max(mag, std::abs(t1) * std::max(1.0, d.mu * km));
        }
        if (k >= 2) {
            const Complex t2 = C * gamma * static_cast<double>(k) * static_cast<double>(k - 1) * P2;
            Fbb.add(t2);
            mag = std::max(mag, std::abs(t2));
        }
        last_max_mag = mag;

        const double coef_ratio = ((m + 1.0 + k) / (k + 1.0)) *
                                  pow_int((k + 1.0 + m) / (k + m), n);
        // Majorant covering the polynomially weighted derivative series too;
        // decreasing (hence rigorous) from k = 2 on.
        const double rho = coef_ratio * q *
                           ((k + 1.0) / std::max<double>(k - 1.0, 1.0)) *
                           pow_int((k + 1.0 + m) / (k + m), 2);
        if (k >= 2 && rho < 1.0 && last_max_mag * rho / (1.0 - rho) <= ctl.tol) {
            out.F = F.value();
            out.Fa = Fa.value();
            out.Faa = Faa.value();
            out.Fb = Fb.value();
            out.Fbb = Fbb.value();
            out.Fab = Fab.value();
            return out;
        }

        gamma *= coef_ratio;
        P0 *= step;
        P1 = (k >= 1) ? P1 * step : P1;
        P2 = (k >= 2) ? P2 * step : P2;
    }
    throw ConvergenceError("t_matrix: series did not converge within max_terms");
}

}  // namespace

Matrix t_matrix(const FBHDomain& d, const Point& p, const Point& q, const SeriesControl& ctl) {
    check_point_dims(d, p);
    check_point_dims(d, q);
    const Complex a = herm(p.z, q.z);
    const Complex b = herm(p.w, q.w);
    const SeriesDerivatives S = scalar_series_derivatives(d, a, b, ctl);
    if (!(std::abs(S.F) > 0.0)) throw PreconditionError("t_matrix: kernel vanishes at this pair");

    const Complex La = S.Fa / S.F;
    const Complex Lb = S.Fb / S.F;
    const Complex Laa = S.Faa / S.F - La * La;
    const Complex Lbb = S.Fbb / S.F - Lb * Lb;
    const Complex Lab = S.Fab / S.F - La * Lb;

    // Chain rule through a = <z,t>, b = <w,s>:
    //   d a / d p_z[k] = conj(t_k),  d a / d conj(q_z[j]) = z_j,
    //   d b / d p_w[k] = conj(s_k),  d b / d conj(q_w[j]) = w_j.
    const int N = d.n + d.m;
    Matrix T(N, N);
    for (int j = 0; j < N; ++j) {
        const bool jz = j < d.n;
        const Complex qbar_factor = jz ? p.z[j] : p.w[j - d.n];
        for (int k = 0; k < N; ++k) {
            const bool kz = k < d.n;
            const Complex p_factor = kz ? std::conj(q.z[k]) : std::conj(q.w[k - d.n]);
            Complex entry;
            if (jz && kz)
                entry = Laa * qbar_factor * p_factor + (j == k ? La : Complex(0.0));
            else if (jz && !kz)
                entry = Lab * qbar_factor * p_factor;
            else if (!jz && kz)
                entry = Lab * qbar_factor * p_factor;
            else
                entry = Lbb * qbar_factor * p_factor + (j == k ? Lb : Complex(0.0));
            T(j, k) = entry;
        }
    }
    return T;
}

Matrix t_matrix_fd(const FBHDomain& d, const Point& p, const Point& q, double fd_step,
                   const SeriesControl& ctl) {
    check_point_dims(d, p);
    check_point_dims(d, q);
    if (!(fd_step > 0.0)) throw PreconditionError("t_matrix_fd: step must be positive");

    const auto eval = [&](const Point& pp, const Point& qq) {
        return kernel_scalar(d, herm(pp.z, qq.z), herm(pp.w, qq.w), ctl).value;
    };
    const Complex Kc = eval(p, q);
    if (!(std::abs(Kc) > 0.0))
        throw PreconditionError("t_matrix_fd: kernel vanishes at this pair");

    const auto shift = [&](const Point& base, int coord, double h) {
        Point s = base;
        if (coord < d.n)
            s.z[coord] += h;
        else
            s.w[coord - d.n] += h;
        return s;
    };

    const int N = d.n + d.m;
    const double h = fd_step;
    Matrix T(N, N);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            // Real steps suffice: K is holomorphic in p and a function of
            // conj(q) only. Logs are taken of ratios to the center value so
            // the branch stays principal.
            const Complex lpp = std::log(eval(shift(p, k, +h), shift(q, j, +h)) / Kc);
            const Complex lpm = std::log(eval(shift(p, k, +h), shift(q, j, -h)) / Kc);
            const Complex lmp = std::log(eval(shift(p, k, -h), shift(q, j, +h)) / Kc);
            const Complex lmm = std::log(eval(shift(p, k, -h), shift(q, j, -h)) / Kc);
            T(j, k) = (lpp - lpm - lmp + lmm) / (4.0 * h * h);
        }
    }
    return T;
}

double kernel_monomial_coefficient(const FBHDomain& d, const MultiIndex& alpha,
                                   const MultiIndex& beta) {
    if (static_cast<int>(alpha.size()) != d.m)
        throw DimensionError("kernel_monomial_coefficient: alpha must have length m");
    if (static_cast<int>(beta.size()) != d.n)
        throw DimensionError("kernel_monomial_coefficient: beta must have length n");
    for (int e : alpha.entries)
        if (e < 0) throw PreconditionError("kernel_monomial_coefficient: negative index");
    for (int e : beta.entries)
        if (e < 0) throw PreconditionError("kernel_monomial_coefficient: negative index");

    const int ka = alpha.order();
    const int kb = beta.order();
    const double kam = ka + d.m;
    return series_prefactor(d) * pochhammer(d.m + 1.0, ka) * pow_int(kam, d.n) /
           alpha.factorial() * std::pow(d.mu, kb) * std::pow(kam, kb) / beta.factorial();
}

}  // namespace fbh
