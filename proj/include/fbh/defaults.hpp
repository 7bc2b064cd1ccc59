#pragma once

// Central home for every default tolerance used by the library and CLI.
// The CLI exposes per-flag overrides; nothing else redefines these.

namespace fbh::defaults {

inline constexpr double boundary_tol = 1e-10;    // |rho| band for Boundary classification
inline constexpr double unitary_tol = 1e-10;     // ||U* U - I||_max at construction
inline constexpr double eigenvalue_tol = 1e-10;  // positivity margin for Hermitian spectra
inline constexpr double series_tol = 1e-12;      // absolute tail tolerance for kernel series
inline constexpr long series_max_terms = 100000; // term cap for kernel series
inline constexpr double fd_step = 1e-4;          // central finite-difference step
inline constexpr double quad_rel_tol = 1e-10;    // radial quadrature relative accuracy target
inline constexpr double residual_floor = 1e-300; // denominator floor for relative residuals

}  // namespace fbh::defaults
