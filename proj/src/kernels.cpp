#include "levyhit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace levyhit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Ratios against |lambda + psi|^2, guarded so that a zero numerator (or the
// squared modulus underflowing to zero far below any relevant frequency) gives
// 0 instead of 0/0 = NaN.
double re_ratio(const LevyModel& m, double lambda, double s) {
    double re = lambda + m.re_psi(s);
    if (re == 0.0) return 0.0;
    double im = m.im_psi(s);
    double d = re * re + im * im;
    return d == 0.0 ? 0.0 : re / d;
}

double im_ratio(const LevyModel& m, double lambda, double s) {
    double im = m.im_psi(s);
    if (im == 0.0) return 0.0;
    double re = lambda + m.re_psi(s);
    double d = re * re + im * im;
    return d == 0.0 ? 0.0 : im / d;
}

// u^lambda(0) = (1/pi) int_0^inf (lambda + Re psi) / |lambda + psi|^2 d xi
QuadratureResult u0_raw(const LevyModel& m, double lambda) {
    return integrate_adaptive([&](double xi) { return re_ratio(m, lambda, xi); }, 0.0, kInf,
                              m.tolerance());
}

}  // namespace

double transition_density(const LevyModel& model, double t, double x) {
    if (!(t > 0.0)) throw std::domain_error("transition_density: t must be > 0");
    // damping cutoff: e^{-t Re psi} below 1e-20 past U
    double cut = 46.0 / t;
    double U = model.inv_re_psi(cut);
    if (!(U > 0.0) || !std::isfinite(U))
        throw std::runtime_error("transition_density: no damping scale found");
    auto integrand = [&](double xi) {
        return std::exp(-t * model.re_psi(xi)) * std::cos(xi * x + t * model.im_psi(xi));
    };
    double ax = std::abs(x);
    QuadratureResult core;
    if (ax * U <= 4.0 * kPi) {
        core = integrate_adaptive(integrand, 0.0, U, model.tolerance());
    } else {
        // many oscillations in the window: half-period panels keep the cosine
        // resolved no matter how large |x| gets
        double L = kPi / ax;
        for (double a = 0.0; a < U; a += L) {
            QuadratureResult panel = integrate_adaptive(integrand, a, std::min(a + L, U),
                                                        model.tolerance());
            core.value += panel.value;
            core.abs_error_estimate += panel.abs_error_estimate;
            core.evaluations += panel.evaluations;
        }
    }
    double tail_bound = 1e-20 * std::max(1.0, U);
    double p = core.value / kPi;
    double err = (core.abs_error_estimate + tail_bound) / kPi;
    if (p < 0.0 && p > -std::max(model.tolerance().abs_tol, 10.0 * err)) p = 0.0;
    return p;
}

KernelValue u_lambda(const LevyModel& model, double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("u_lambda: lambda must be > 0");
    QuadratureResult base = u0_raw(model, lambda);
    KernelValue out;
    out.lambda = lambda;
    if (x == 0.0) {
        out.value = base.value / kPi;
        out.error_estimate = base.abs_error_estimate / kPi;
        return out;
    }
    KernelValue k = K_lambda(model, lambda, x);
    out.value = base.value / kPi - k.value;
    out.error_estimate = base.abs_error_estimate / kPi + k.error_estimate;
    return out;
}

KernelValue K_lambda(const LevyModel& model, double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("K_lambda: lambda must be > 0");
    KernelValue out;
    out.lambda = lambda;
    if (x == 0.0) return out;
    double ax = std::abs(x);
    QuadratureResult cos_part = integrate_oscillatory(
        [&](double s) { return re_ratio(model, lambda, s); }, ax, model.tolerance());
    QuadratureResult sin_part = integrate_sin_oscillatory(
        [&](double s) { return im_ratio(model, lambda, s); }, ax, model.tolerance());
    double v = (cos_part.value + sign_of(x) * sin_part.value) / kPi;
    double err = (cos_part.abs_error_estimate + sin_part.abs_error_estimate) / kPi;
    if (v < 0.0 && v > -10.0 * err) v = 0.0;  // K^lambda >= 0 up to quadrature noise
    out.value = v;
    out.error_estimate = err;
    return out;
}

KernelValue H_sym(const LevyModel& model, double x, double lambda) {
    if (lambda < 0.0) throw std::domain_error("H_sym: lambda must be >= 0");
    KernelValue out;
    out.lambda = lambda;
    if (x == 0.0) return out;
    double ax = std::abs(x);
    QuadratureResult osc = integrate_oscillatory(
        [&](double s) { return re_ratio(model, lambda, s); }, ax, model.tolerance());
    out.value = 2.0 * osc.value / kPi;
    out.error_estimate = 2.0 * osc.abs_error_estimate / kPi;
    return out;
}

double kappa(const LevyModel& model) {
    // w_k = 1 / u^{2^-k}(0) decreases to kappa; Aitken extrapolation of the
    // (close to geometric) approach gives the limit without a known rate
    std::vector<double> w;
    double prev_accel = kInf;
    for (int k = 0; k <= 20; ++k) {
        double lambda = std::ldexp(1.0, -k);
        double u0 = u0_raw(model, lambda).value / kPi;
        if (!(u0 > 0.0)) throw std::runtime_error("kappa: nonpositive u^lambda(0)");
        double wk = 1.0 / u0;
        if (!w.empty() && wk > w.back() * (1.0 + 1e-9))
            throw std::runtime_error("kappa: unstable limit (sequence not decreasing)");
        w.push_back(wk);
        if (wk < 1e-8) return 0.0;
        if (w.size() >= 3) {
            size_t n = w.size();
            double d1 = w[n - 2] - w[n - 1];
            double d2 = w[n - 3] - w[n - 2];
            double dd = d2 - d1;
            double accel = std::abs(dd) > 1e-300 ? w[n - 1] - d1 * d1 / dd : w[n - 1];
            if (std::isfinite(prev_accel) &&
                std::abs(accel - prev_accel) <= std::max(1e-8, 1e-6 * std::abs(accel))) {
                return accel < 1e-8 ? 0.0 : accel;
            }
            prev_accel = accel;
        }
    }
    return prev_accel < 1e-8 ? 0.0 : prev_accel;
}

KExistenceEvidence K_exists_evidence(const LevyModel& model) {
    KExistenceEvidence ev;

    // 1) Im psi >= 0 on (0, eps)
    const double eps = 1.0;
    bool nonneg = true;
    for (int i = 0; i < 48 && nonneg; ++i) {
        double xi = eps * std::pow(10.0, -6.0 * (1.0 - i / 47.0));
        double im = model.im_psi(xi);
        if (im < -1e-12 * (1.0 + model.re_psi(xi))) nonneg = false;
    }
    if (nonneg) {
        ev.exists = true;
        ev.witness = KWitness::im_sign;
        ev.detail = eps;
        ev.note = "Im psi >= 0 on (0, " + std::to_string(eps) + ")";
        return ev;
    }

    // 2) finite nonzero mean
    if (auto m = model.mean(); m && std::abs(*m) > 1e-10) {
        ev.exists = true;
        ev.witness = KWitness::nonzero_mean;
        ev.detail = *m;
        ev.note = "E X_1 = " + std::to_string(*m);
        return ev;
    }

    // 3) int_{|z|>r} |z| nu(dz) <= c r h(r) with bounded c over r in [1, 1e3]
    try {
        double c = 0.0;
        double first = 0.0, last = 0.0;
        const int n = 30;
        for (int i = 0; i < n; ++i) {
            double r = std::pow(10.0, 3.0 * i / (n - 1.0));
            double ratio = model.abs_moment_outside(r) / (r * model.concentration_h(r));
            c = std::max(c, ratio);
            if (i == 0) first = ratio;
            if (i == n - 1) last = ratio;
        }
        bool bounded = std::isfinite(c) && (last <= std::max(first, c * 0.999) * 1.2 + 1e-12);
        if (bounded) {
            ev.exists = true;
            ev.witness = KWitness::tail_bound;
            ev.detail = c;
            ev.note = "sup_r tail moment / (r h(r)) = " + std::to_string(c);
            return ev;
        }
    } catch (const QuadratureFailure&) {
        // first absolute moment diverges; no tail witness
    }

    ev.note = "no witness: Im psi changes sign near 0, mean is zero or absent, tail ratio unbounded";
    return ev;
}

KernelValue K_compensated(const LevyModel& model, double x) {
    KExistenceEvidence ev = K_exists_evidence(model);
    if (!ev.exists) throw std::runtime_error("K_compensated: existence not certified");
    KernelValue out;
    out.lambda = 0.0;
    if (x == 0.0) return out;
    double ax = std::abs(x);
    QuadratureResult cos_part = integrate_oscillatory(
        [&](double s) { return re_ratio(model, 0.0, s); }, ax, model.tolerance());
    QuadratureResult sin_part = integrate_sin_oscillatory(
        [&](double s) { return im_ratio(model, 0.0, s); }, ax, model.tolerance());
    double v = (cos_part.value + sign_of(x) * sin_part.value) / kPi;
    double err = (cos_part.abs_error_estimate + sin_part.abs_error_estimate) / kPi;
    if (v < 0.0 && v > -10.0 * err) v = 0.0;
    out.value = v;
    out.error_estimate = err;
    return out;
}

double survival_prob_T0(const LevyModel& model, double x) {
    double k = kappa(model);
    if (k == 0.0) return 0.0;
    KernelValue K = K_compensated(model, -x);
    return std::clamp(k * K.value, 0.0, 1.0);
}

}  // namespace levyhit
