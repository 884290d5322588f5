#include "levyhit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace levyhit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

boost::math::quadrature::tanh_sinh<double>& ts_integrator() {
    static thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
    return ts;
}

struct CountedFn {
    const RealFn& f;
    long* count;
    double operator()(double s) const {
        ++*count;
        return f(s);
    }
};

double target_tolerance(const ToleranceProfile& tol, double scale) {
    return std::max(tol.abs_tol, tol.rel_tol * std::abs(scale));
}

double smooth_panel(const CountedFn& f, double a, double b, double rel, double* err, int depth);

// One finite panel. tanh_sinh tolerates integrable endpoint singularities, which
// show up routinely here (power-law kernels at the origin). Its error output is in
// the substituted coordinate, so rescale by the half-width to get an absolute bound.
// Panels that sit away from zero and do not straddle orders of magnitude go to
// Gauss-Kronrod instead: the only endpoint singularities in this library live at
// the origin, and tanh_sinh's node clustering would otherwise demand points
// closer to the endpoints than doubles can represent.
double finite_panel(const CountedFn& f, double a, double b, double rel, double* err) {
    if (a > 0.0 && b - a <= a) return smooth_panel(f, a, b, rel, err, 0);
    double error = 0.0, l1 = 0.0;
    double v = ts_integrator().integrate(f, a, b, std::max(rel, 1e-12), &error, &l1);
    double abs_err = error * 0.5 * (b - a);
    if (!std::isfinite(abs_err)) abs_err = std::abs(v);
    *err = std::max(abs_err, std::abs(v) * 1e-15);
    return v;
}

// One Gauss-Kronrod application with hand-rolled bisection. Boost's adaptive
// driver compares an error expressed in the mapped [-1,1] coordinate against
// tol times the integral, so for very narrow panels its epsilon floor forces
// pointless full-depth recursion; scaling the error ourselves avoids that.
double smooth_panel(const CountedFn& f, double a, double b, double rel, double* err,
                    int depth) {
    double e0 = 0.0;
    double v = GK::integrate(f, a, b, 0, 0.0, &e0);
    double abs_e = e0 * 0.5 * (b - a);
    if (!std::isfinite(abs_e)) abs_e = std::abs(v);
    if (depth >= 6 || abs_e <= rel * std::abs(v)) {
        *err = abs_e;
        return v;
    }
    double mid = 0.5 * (a + b);
    double e1 = 0.0, e2 = 0.0;
    double v1 = smooth_panel(f, a, mid, rel, &e1, depth + 1);
    double v2 = smooth_panel(f, mid, b, rel, &e2, depth + 1);
    *err = e1 + e2;
    return v1 + v2;
}

// Sum of the semi-infinite remainder by doubling panels [A, 2A]. Requires the
// panel contributions to decay geometrically; the observed ratio certifies an
// analytic bound on the dropped tail.
QuadratureResult tail_by_doubling(const CountedFn& f, double start,
                                  const ToleranceProfile& tol, double external_scale) {
    QuadratureResult out;
    double a = start;
    double prev = kInf;
    double q = 0.0;
    int zero_panels = 0;
    bool seen_mass = false;
    for (int k = 0; k < tol.max_subdivisions; ++k) {
        double b = 2.0 * a;
        double perr = 0.0;
        double p = smooth_panel(f, a, b, 0.1 * tol.rel_tol, &perr, 0);
        out.value += p;
        out.abs_error_estimate += perr;
        double mag = std::abs(p);
        if (mag == 0.0) {
            // only trust consecutive empty panels once mass has been seen;
            // before that the support may simply start further out
            if (seen_mass && ++zero_panels >= 2) return out;
        } else {
            seen_mass = true;
            zero_panels = 0;
        }
        if (std::isfinite(prev) && prev > 0.0) q = std::max(0.5 * q, mag / prev);
        double scale = std::max(std::abs(out.value), std::abs(external_scale));
        double goal = 0.25 * target_tolerance(tol, scale);
        if (std::isfinite(prev) && q > 0.0 && q < 0.95) {
            double tail_bound = mag * q / (1.0 - q);
            if (tail_bound <= goal) {
                out.abs_error_estimate += tail_bound;
                return out;
            }
        }
        prev = mag;
        a = b;
        if (a > 1e300) break;
    }
    if (!seen_mass) return out;
    throw QuadratureFailure("quadrature failure: tail not convergent after max subdivisions", out);
}

// Integral over (0, b] of an integrand vanishing at the origin fast enough to be
// integrable. Geometric panels toward zero; Gauss nodes stay interior, so the
// integrand is never evaluated at the singular endpoint itself.
QuadratureResult head_by_halving(const CountedFn& f, double b,
                                 const ToleranceProfile& tol, double external_scale) {
    QuadratureResult out;
    double hi = b;
    double prev = kInf;
    double q = 0.0;
    int zero_panels = 0;
    bool seen_mass = false;
    for (int k = 0; k < tol.max_subdivisions; ++k) {
        double lo = 0.5 * hi;
        double perr = 0.0;
        double p = smooth_panel(f, lo, hi, 0.1 * tol.rel_tol, &perr, 0);
        out.value += p;
        out.abs_error_estimate += perr;
        double mag = std::abs(p);
        if (mag == 0.0) {
            if (seen_mass && ++zero_panels >= 2) return out;
        } else {
            seen_mass = true;
            zero_panels = 0;
        }
        if (std::isfinite(prev) && prev > 0.0) q = std::max(0.5 * q, mag / prev);
        double scale = std::max(std::abs(out.value), std::abs(external_scale));
        double goal = 0.25 * target_tolerance(tol, scale);
        if (std::isfinite(prev) && q > 0.0 && q < 0.95) {
            double remainder_bound = mag * q / (1.0 - q);
            if (remainder_bound <= goal) {
                out.abs_error_estimate += remainder_bound;
                return out;
            }
        }
        prev = mag;
        hi = lo;
        if (hi < 1e-280) return out;
    }
    if (!seen_mass) return out;
    throw QuadratureFailure("non-integrable integrand", out);
}

// Euler transformation of an (eventually) alternating series. Terms are passed
// with their signs; returns the accelerated sum and a residual estimate.
std::pair<double, double> euler_sum(const std::vector<double>& terms) {
    if (terms.empty()) return {0.0, 0.0};
    std::vector<double> row(terms.size());
    double s = 0.0;
    for (size_t i = 0; i < terms.size(); ++i) {
        s += terms[i];
        row[i] = s;
    }
    double last = row.back();
    double prev_last = last;
    while (row.size() > 1) {
        for (size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
        prev_last = last;
        last = row.back();
    }
    return {last, std::abs(last - prev_last)};
}

}  // namespace

double one_minus_cos(double u) {
    double h = 0.5 * u;
    double s = std::sin(h);
    return 2.0 * s * s;
}

double u_minus_sin(double u) {
    double au = std::abs(u);
    if (au < 1e-4) {
        double u3 = u * u * u;
        return u3 / 6.0 * (1.0 - u * u / 20.0 * (1.0 - u * u / 42.0));
    }
    return u - std::sin(u);
}

QuadratureResult integrate_adaptive(const RealFn& f, double a, double b,
                                    const ToleranceProfile& tol) {
    long evals = 0;
    CountedFn cf{f, &evals};
    QuadratureResult out;
    if (!(b > a)) throw std::domain_error("integrate_adaptive: empty interval");
    if (std::isfinite(b)) {
        double err = 0.0;
        out.value = finite_panel(cf, a, b, tol.rel_tol, &err);
        out.abs_error_estimate = err;
        out.evaluations = std::max(evals, 1L);
        return out;
    }
    double c0 = std::max(1.0, 2.0 * std::abs(a));
    if (c0 <= a) c0 = 2.0 * a;
    double err = 0.0;
    out.value = finite_panel(cf, a, c0, tol.rel_tol, &err);
    out.abs_error_estimate = err;
    QuadratureResult tail = tail_by_doubling(cf, c0, tol, out.value);
    out.value += tail.value;
    out.abs_error_estimate += tail.abs_error_estimate;
    out.evaluations = std::max(evals, 1L);
    return out;
}

QuadratureResult integrate_to_zero(const RealFn& f, double b,
                                   const ToleranceProfile& tol) {
    if (!(b > 0.0)) throw std::domain_error("integrate_to_zero: b must be > 0");
    long evals = 0;
    CountedFn cf{f, &evals};
    QuadratureResult out = head_by_halving(cf, b, tol, 0.0);
    out.evaluations = std::max(evals, 1L);
    return out;
}

QuadratureResult integrate_oscillatory(const RealFn& g, double x,
                                       const ToleranceProfile& tol) {
    if (x < 0.0) throw std::domain_error("integrate_oscillatory: x must be >= 0");
    QuadratureResult out;
    if (x == 0.0) return out;
    long evals = 0;
    RealFn integrand = [&g, x](double s) { return one_minus_cos(x * s) * g(s); };
    CountedFn cf{integrand, &evals};
    CountedFn cg{g, &evals};

    const double L = M_PI / x;
    QuadratureResult head = head_by_halving(cf, L, tol, 0.0);
    out.value = head.value;
    out.abs_error_estimate = head.abs_error_estimate;

    // A block of half periods summed outright; every term is non-negative.
    const int direct = 32;
    double first_block = std::abs(out.value);
    for (int k = 1; k <= direct; ++k) {
        double perr = 0.0;
        double p = smooth_panel(cf, k * L, (k + 1) * L, 0.1 * tol.rel_tol, &perr, 0);
        out.value += p;
        out.abs_error_estimate += perr;
        if (std::abs(out.value) > 1e12 * (first_block + 1.0))
            throw QuadratureFailure("non-integrable integrand", out);
    }

    const double S = (direct + 1) * L;
    QuadratureResult tail_pos;
    try {
        tail_pos = tail_by_doubling(cg, S, tol, out.value);
    } catch (const QuadratureFailure&) {
        throw QuadratureFailure("non-integrable integrand", out);
    }
    out.value += tail_pos.value;
    out.abs_error_estimate += tail_pos.abs_error_estimate;

    // Remaining oscillatory piece: -int_S^inf cos(x s) g(s) ds as an alternating
    // half-period series.
    RealFn cos_part = [&g, x](double s) { return std::cos(x * s) * g(s); };
    CountedFn cc{cos_part, &evals};
    std::vector<double> terms;
    terms.reserve(40);
    double goal = 0.5 * target_tolerance(tol, out.value);
    double accel = 0.0, accel_err = 0.0;
    bool live = false;
    for (int j = 0; j < 40; ++j) {
        double perr = 0.0;
        terms.push_back(smooth_panel(cc, S + j * L, S + (j + 1) * L, 0.1 * tol.rel_tol, &perr, 0));
        out.abs_error_estimate += perr;
        live = live || terms.back() != 0.0;
        if (live && terms.size() >= 6) {
            auto [v, e] = euler_sum(terms);
            accel = v;
            accel_err = e;
            if (e < goal) break;
        }
    }
    out.value -= accel;
    out.abs_error_estimate += accel_err;
    out.evaluations = std::max(evals, 1L);
    return out;
}

QuadratureResult integrate_sin_oscillatory(const RealFn& q, double x,
                                           const ToleranceProfile& tol) {
    if (x < 0.0) throw std::domain_error("integrate_sin_oscillatory: x must be >= 0");
    QuadratureResult out;
    if (x == 0.0) return out;
    long evals = 0;
    RealFn integrand = [&q, x](double s) { return std::sin(x * s) * q(s); };
    CountedFn cf{integrand, &evals};

    const double L = M_PI / x;
    QuadratureResult head = head_by_halving(cf, L, tol, 0.0);
    out.value = head.value;
    out.abs_error_estimate = head.abs_error_estimate;

    const int direct = 16;
    for (int k = 1; k <= direct; ++k) {
        double perr = 0.0;
        out.value += smooth_panel(cf, k * L, (k + 1) * L, 0.1 * tol.rel_tol, &perr, 0);
        out.abs_error_estimate += perr;
    }

    std::vector<double> terms;
    terms.reserve(48);
    double goal = 0.5 * target_tolerance(tol, std::max(std::abs(out.value), 1e-12));
    double accel = 0.0, accel_err = 0.0;
    bool live = false;
    for (int j = direct + 1; j < direct + 49; ++j) {
        double perr = 0.0;
        terms.push_back(smooth_panel(cf, j * L, (j + 1) * L, 0.1 * tol.rel_tol, &perr, 0));
        out.abs_error_estimate += perr;
        live = live || terms.back() != 0.0;
        if (live && terms.size() >= 6) {
            auto [v, e] = euler_sum(terms);
            accel = v;
            accel_err = e;
            if (e < goal) break;
        }
    }
    out.value += accel;
    out.abs_error_estimate += accel_err;
    out.evaluations = std::max(evals, 1L);
    return out;
}

QuadratureResult integrate_compensated_sin(const RealFn& g, double x,
                                           const ToleranceProfile& tol) {
    if (x < 0.0) throw std::domain_error("integrate_compensated_sin: x must be >= 0");
    QuadratureResult out;
    if (x == 0.0) return out;
    long evals = 0;
    // Near zero the kernel behaves like (x s)^3 / 6; keep that part as one absolutely
    // convergent integral and peel the oscillation off only past the first period.
    RealFn head = [&g, x](double s) { return u_minus_sin(x * s) * g(s); };
    CountedFn ch{head, &evals};
    const double L = M_PI / x;
    QuadratureResult head_part = head_by_halving(ch, L, tol, 0.0);
    out.value = head_part.value;
    out.abs_error_estimate = head_part.abs_error_estimate;
    for (int k = 1; k <= 4; ++k) {
        double perr = 0.0;
        out.value += smooth_panel(ch, k * L, (k + 1) * L, 0.1 * tol.rel_tol, &perr, 0);
        out.abs_error_estimate += perr;
    }
    const double S = 5.0 * L;
    // Beyond S: int (x s) g(s) ds - int sin(x s) g(s) ds, the first by doubling
    // panels, the second by the alternating series.
    RealFn linear = [&g, x](double s) { return x * s * g(s); };
    CountedFn cl{linear, &evals};
    QuadratureResult lin_tail = tail_by_doubling(cl, S, tol, out.value);
    out.value += lin_tail.value;
    out.abs_error_estimate += lin_tail.abs_error_estimate;

    RealFn osc = [&g, x](double s) { return std::sin(x * s) * g(s); };
    CountedFn co{osc, &evals};
    std::vector<double> terms;
    terms.reserve(48);
    double goal = 0.5 * target_tolerance(tol, std::max(std::abs(out.value), 1e-12));
    double accel = 0.0, accel_err = 0.0;
    bool live = false;
    for (int j = 5; j < 53; ++j) {
        double perr = 0.0;
        terms.push_back(smooth_panel(co, j * L, (j + 1) * L, 0.1 * tol.rel_tol, &perr, 0));
        out.abs_error_estimate += perr;
        live = live || terms.back() != 0.0;
        if (live && terms.size() >= 6) {
            auto [v, e] = euler_sum(terms);
            accel = v;
            accel_err = e;
            if (e < goal) break;
        }
    }
    out.value -= accel;
    out.abs_error_estimate += accel_err;
    out.evaluations = std::max(evals, 1L);
    return out;
}

double one_minus_cos_moment(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::domain_error("one_minus_cos_moment: alpha must lie in (1, 2)");
    return M_PI / (2.0 * std::tgamma(alpha) * std::sin(M_PI * (alpha - 1.0) / 2.0));
}

InverseResult monotone_inverse(const RealFn& f, double s, Monotone direction,
                               const ToleranceProfile& tol) {
    const bool inc = direction == Monotone::increasing;
    // "Not past s yet" at r means the sup defining the inverse is still >= r.
    auto below = [&](double r) {
        double v = f(r);
        return inc ? v <= s : v >= s;
    };
    double lo = 1.0, hi = 1.0;
    InverseResult out;
    if (below(1.0)) {
        for (int i = 0; i < 1100; ++i) {
            hi = 2.0 * lo;
            if (!below(hi)) break;
            lo = hi;
            if (lo > 1e300) {
                out.value = lo;
                out.clamped = true;
                return out;
            }
        }
    } else {
        for (int i = 0; i < 1100; ++i) {
            lo = 0.5 * hi;
            if (below(lo)) break;
            hi = lo;
            if (hi < 1e-300) {
                out.value = hi;
                out.clamped = true;
                return out;
            }
        }
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (below(mid))
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= tol.rel_tol * std::abs(mid) + 1e-300) break;
    }
    out.value = 0.5 * (lo + hi);
    return out;
}

}  // namespace levyhit
