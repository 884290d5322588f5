#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace levyhit {

struct ToleranceProfile {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 400;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 1;
};

class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& msg, QuadratureResult partial_result)
        : std::runtime_error(msg), partial(partial_result) {}
    QuadratureResult partial;
};

using RealFn = std::function<double(double)>;

// Integral of f over (a, b); b may be +infinity, in which case geometrically
// doubled panels are summed until the panel contributions certify a tail bound.
QuadratureResult integrate_adaptive(const RealFn& f, double a, double b,
                                    const ToleranceProfile& tol = {});

// Integral of f over (0, b] when f may blow up (integrably) at the origin.
// Geometric panels toward zero; f is never evaluated at 0 itself.
QuadratureResult integrate_to_zero(const RealFn& f, double b,
                                   const ToleranceProfile& tol = {});

// Integral of (1 - cos(x s)) g(s) over (0, inf) for g >= 0, eventually monotone,
// with a finite (1 ^ s^2)-moment. Split at the half-period points k pi / x: a smooth
// panel near zero, direct summation of a block of periods, then the tail handled as
// integral of g minus an Euler-accelerated alternating cosine series.
QuadratureResult integrate_oscillatory(const RealFn& g, double x,
                                       const ToleranceProfile& tol = {});

// Integral of sin(x s) q(s) over (0, inf) for q eventually monotone, s*q integrable
// near zero. Same half-period machinery; the series alternates from the start.
QuadratureResult integrate_sin_oscillatory(const RealFn& q, double x,
                                           const ToleranceProfile& tol = {});

// Integral of (x s - sin(x s)) g(s) over (0, inf); the compensated-sine kernel that
// appears in the imaginary part of the exponent for measures with a first moment.
QuadratureResult integrate_compensated_sin(const RealFn& g, double x,
                                           const ToleranceProfile& tol = {});

// The constant int_0^inf (1 - cos s) s^{-alpha} ds = pi / (2 Gamma(alpha) sin(pi (alpha-1)/2))
// for alpha in (1, 2).
double one_minus_cos_moment(double alpha);

enum class Monotone { increasing, decreasing };

struct InverseResult {
    double value = 0.0;
    bool clamped = false;
};

// Generalized inverse of a monotone f on (0, inf):
// increasing: sup{r > 0 : f(r) <= s}; decreasing: sup{r > 0 : f(r) >= s}.
// Values of s outside the attained range give a clamped endpoint with the flag set.
InverseResult monotone_inverse(const RealFn& f, double s, Monotone direction,
                               const ToleranceProfile& tol = {});

// 2 sin^2(u/2), stable for small u where 1 - cos(u) cancels.
double one_minus_cos(double u);

// u - sin(u) evaluated without cancellation for small u.
double u_minus_sin(double u);

}  // namespace levyhit
