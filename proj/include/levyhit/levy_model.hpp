#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levyhit/numerics.hpp"

namespace levyhit {

// Jump measure with density c_u z^{-1-alpha} on z > 0 and c_d |z|^{-1-alpha}
// on z < 0. Restricted to 1 < alpha < 2 so the mean exists but paths have
// unbounded variation.
struct StableSpec {
    double alpha = 1.5;
    double c_u = 1.0;
    double c_d = 1.0;
};

// Profiles for the slowly-varying factor f below.
struct PowerF {
    double beta = 0.5;  // f(z) = z^{-beta}
};
struct PiecewisePowerF {
    double beta_small = 0.4;  // exponent for z < brk
    double beta_large = 0.6;  // exponent for z >= brk
    double brk = 1.0;
};
struct CustomF {
    std::function<double(double)> fn;
    std::string label;  // shows up in diagnostics; custom profiles are not serializable
};
using FactorProfile = std::variant<PowerF, PiecewisePowerF, CustomF>;

// nu(dz) = (c_u 1_{z>0} + c_d 1_{z<0}) f(|z|) |z|^{-2} dz with f pinched
// between power envelopes: a2 (w/z)^{beta2} <= f(z)/f(w) <= a1 (w/z)^{beta1}
// for z <= w, 0 < beta1 <= beta2 < 1. The envelope keeps the small-jump
// activity alpha-stable-like with alpha in (1 + beta1, 1 + beta2).
struct FactorizedSpec {
    double c_u = 1.0;
    double c_d = 1.0;
    FactorProfile profile = PowerF{};
    double beta1 = 0.4;
    double beta2 = 0.6;
    double a1 = 1.0;
    double a2 = 1.0;

    double f(double z) const;
};

// Free-form measure given by a density plus both tail functions. No structure
// is assumed beyond integrability of 1 ^ z^2; quadrature does all the work.
struct TabulatedSpec {
    std::function<double(double)> density;     // nu density at z != 0
    std::function<double(double)> right_tail;  // nu([t, inf)) for t > 0
    std::function<double(double)> left_tail;   // nu((-inf, -t]) for t > 0
    std::string label;
};

// monostate = no jump part (pure Brownian-with-drift models).
using MeasureSpec = std::variant<std::monostate, StableSpec, FactorizedSpec, TabulatedSpec>;

// Scaling traits available when the exponent has an exact power form:
// Re psi(xi) = scale_c |xi|^alpha, Im psi(xi) = scale_c * C_I * sgn(xi) |xi|^alpha
// once the linear drift part is removed.
struct StableTraits {
    double alpha = 2.0;
    double scale_c = 1.0;
    double beta_skew = 0.0;  // (c_u - c_d) / (c_u + c_d), 0 for Brownian
    double C_I = 0.0;        // -beta_skew * tan(pi alpha / 2)
};

// Weak lower scaling fit: Re psi(lambda u) >= c_hat lambda^alpha_hat Re psi(u)
// on the supplied grid. witness_* records the pair attaining the binding ratio.
struct WlscEstimate {
    double alpha_hat = 0.0;
    double c_hat = 0.0;
    double witness_u = 0.0;
    double witness_lambda = 0.0;
};

enum class IntegrabilityVerdict { finite, not_finite, undetermined };

// Verdict on int 1/(1 + Re psi) dxi < infinity, the resolvent-mass criterion
// for points being hit. value carries the integral when it is finite.
struct IntegrabilityReport {
    IntegrabilityVerdict verdict = IntegrabilityVerdict::undetermined;
    double value = 0.0;
    std::string note;
};

// One-dimensional Levy process (sigma, gamma, nu) with characteristic exponent
//   psi(xi) = sigma^2 xi^2 - i gamma xi - int (e^{i xi z} - 1 - i xi z 1_{|z|<1}) nu(dz),
// so E e^{i xi X_t} = e^{-t psi(xi)}. Immutable; copies share state.
class LevyModel {
public:
    // centered = true ignores the drift argument and solves gamma so E X_1 = 0;
    // requires the measure to have a finite first moment.
    static LevyModel make(double sigma, double gamma, MeasureSpec measure,
                          bool centered = false, const ToleranceProfile& tol = {});

    // Unit-scale builders used by the presets: Re psi(xi) = |xi|^alpha, zero mean.
    static LevyModel symmetric_stable(double alpha, const ToleranceProfile& tol = {});
    static LevyModel spectrally_negative_stable(double alpha, const ToleranceProfile& tol = {});
    static LevyModel brownian(double sigma = 1.0, const ToleranceProfile& tol = {});

    double sigma() const;
    double gamma() const;
    const MeasureSpec& measure() const;
    bool centered() const;
    const ToleranceProfile& tolerance() const;

    // gamma + int_{|z|>=1} z nu(dz); equals E X_1. Empty when the measure has
    // no first moment.
    std::optional<double> mean() const;
    bool has_first_moment() const;
    bool spectrally_negative() const;  // no upward jumps
    std::optional<StableTraits> closed_form() const;

    std::complex<double> eval_exponent(double xi) const;
    double re_psi(double xi) const;
    double im_psi(double xi) const;

    // Concentration function h(r) = sigma^2/r^2 + int (1 ^ z^2/r^2) nu(dz);
    // decreasing in r, and h(1/|xi|) is comparable to sup_{|u|<=|xi|} Re psi(u).
    double concentration_h(double r) const;

    // Truncation-adjusted drift b_r = gamma + int z (1_{|z|<r} - 1_{|z|<1}) nu(dz).
    double compensated_drift_b(double r) const;

    // Running maximum psi*(r) = sup_{0 < u <= r} Re psi(u) and the inverses
    // used for time/space changes. Both inverses clamp at the range edges.
    double psi_star(double r) const;
    double inv_re_psi(double s) const;  // smallest r with psi*(r) >= s
    double inv_h(double s) const;       // r with h(r) = s (h strictly decreasing)

    // Grid fit of the weak lower scaling index of Re psi. Defaults cover
    // u in [1e-3, 1e3] with lambda in [2, 64].
    WlscEstimate wlsc_estimate(const std::vector<double>& u_grid = {},
                               const std::vector<double>& lambda_grid = {}) const;

    IntegrabilityReport integrability_check() const;

    // Measure totals shared by the kernel and simulation layers.
    double nu_tail_mass(double t) const;           // nu(|z| >= t), t > 0
    double nu_right_tail(double t) const;          // nu([t, inf))
    double nu_left_tail(double t) const;           // nu((-inf, -t])
    double abs_moment_outside(double r) const;     // int_{|z|>=r} |z| nu(dz)
    double second_moment_inside(double r) const;   // int_{|z|<r} z^2 nu(dz)

private:
    struct Impl;
    explicit LevyModel(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace levyhit
