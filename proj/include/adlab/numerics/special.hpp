#pragma once

#include <cstddef>
#include <functional>

namespace adlab {

/// ln B(a, b) for a, b > 0. Symmetric in its arguments bit-for-bit.
double log_beta(double a, double b);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (21-point) integration of f over [0, 1].
///
/// The interval is split at 1/2 and each half is mapped onto its endpoint by a
/// quadratic substitution (p = u^2 near 0, p = 1 - v^2 near 1), which turns
/// p^{-1/2}- and (1-p)^{-1/2}-type endpoint behaviour into a smooth integrand.
/// The integrand is never evaluated at p = 0 or p = 1.
///
/// Throws AccuracyError carrying the best estimate when `max_subdivisions`
/// intervals do not reach `tol` (absolute).
QuadratureResult integrate_unit(const std::function<double(double)>& f, double tol,
                                std::size_t max_subdivisions = 2000);

/// Convenience wrapper returning only the value.
double integrate(const std::function<double(double)>& f, double tol);

/// Plain adaptive Gauss-Kronrod on a finite interval [a, b], no substitution.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol, std::size_t max_subdivisions = 2000);

}  // namespace adlab
