#pragma once

#include <functional>

#include "fbh/domain.hpp"

namespace fbh {

// Kernel evaluation with a rigorous bound on the truncated tail.
struct KernelValue {
    Complex value;
    double tail_bound;
    long terms_used;
};

struct SeriesControl {
    double tol = defaults::series_tol;  // absolute tail tolerance
    long max_terms = defaults::series_max_terms;
};

struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> es) : entries(es) {}
    explicit MultiIndex(std::vector<int> es) : entries(std::move(es)) {}

    int order() const {  // |alpha|
        int s = 0;
        for (int e : entries) s += e;
        return s;
    }
    double factorial() const {  // alpha!
        double f = 1.0;
        for (int e : entries)
            for (int k = 2; k <= e; ++k) f *= k;
        return f;
    }
    std::size_t size() const { return entries.size(); }
};

// Rising factorial a(a+1)...(a+k-1); 1 for k = 0.
double pochhammer(double a, int k);

// nu^n exp(nu <z,t>) / pi^n, the reproducing kernel of the Gaussian-weighted
// space A^2(C^n, e^{-nu ||z||^2}).
Complex fock_bargmann_kernel(int n, double nu, const Vector& z, const Vector& t);

// Reduced Bergman kernel series of D_{n,m}(mu) in the invariant scalars
// a = <z,t>, b = <w,s>:
//
//   K = (m! mu^n / pi^{n+m}) sum_k ((m+1)_k (k+m)^n / k!) e^{mu(k+m)a} b^k
//
// Terms follow the overflow-free recurrence
//   t_{k+1} = t_k * ((m+1+k)/(k+1)) * ((k+1+m)/(k+m))^n * e^{mu a} b,
// and summation stops at the first k whose decreasing ratio factor rho_k
// satisfies rho_k < 1 and |t_k| rho_k / (1 - rho_k) < tol, which makes the
// reported tail_bound a rigorous geometric majorant.
// Requires |b| e^{mu Re a} < 1.
KernelValue kernel_scalar(const FBHDomain& d, Complex a, Complex b,
                          const SeriesControl& ctl = {});

// Bergman kernel at an interior point pair.
KernelValue kernel(const FBHDomain& d, const Point& p, const Point& q,
                   const SeriesControl& ctl = {});

// Same series on the enlarged region where it still converges: q well inside
// D, p allowed past the boundary as long as |<w,s>| e^{mu Re<z,t>} < 1.
// Evaluates through the rescaling identity
//   K((z,w),(t,s)) = K((z,rw),(t,s/r))
// and asserts it on the reduced scalars before summing.
KernelValue kernel_extended(const FBHDomain& d, const Point& p, const Point& q,
                            const SeriesControl& ctl = {});

// Weighted base kernel K_{A^2(Omega, p^{k+m})}(z, t) for the k-th layer.
using BaseKernel = std::function<Complex(int k, const Vector& z, const Vector& t)>;

// Hartogs-domain kernel assembled from weighted base kernels:
//   K_m = (m!/pi^m) sum_k ((m+1)_k / k!) base(k, z, t) <w,s>^k.
// The base kernel is a black box, so the tail bound is estimated from the
// observed term ratios rather than a closed-form majorant.
KernelValue ligocka_assemble(const BaseKernel& base_kernel, int m, const Point& p,
                             const Point& q, const SeriesControl& ctl = {});

// Matrix of mixed second derivatives of log K: entry (j,k) is
// d^2 log K / (d conj(q_j) d p_k), rows over the conjugated second point,
// columns over the first, z-coordinates before w-coordinates. Computed by
// term-by-term differentiation of the reduced series.
Matrix t_matrix(const FBHDomain& d, const Point& p, const Point& q,
                const SeriesControl& ctl = {});

// Central finite-difference cross-check of t_matrix.
Matrix t_matrix_fd(const FBHDomain& d, const Point& p, const Point& q,
                   double fd_step = defaults::fd_step, const SeriesControl& ctl = {});

// Coefficient of z^beta conj(t)^beta w^alpha conj(s)^alpha in the kernel's
// monomial expansion; equals 1/||z^beta w^alpha||^2 in A^2(D).
double kernel_monomial_coefficient(const FBHDomain& d, const MultiIndex& alpha,
                                   const MultiIndex& beta);

}  // namespace fbh
