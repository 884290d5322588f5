#include "levyhit/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace levyhit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// int_0^inf (1 - cos u) u^{-1-a} du, a in (0, 2)
double cos_tail_constant(double a) {
    return kPi / (2.0 * std::tgamma(1.0 + a) * std::sin(kPi * a / 2.0));
}

// int_0^inf (u - sin u) u^{-1-a} du, a in (1, 2); positive since tan(pi a/2) < 0 there
double sin_comp_constant(double a) {
    return -std::tan(kPi * a / 2.0) * cos_tail_constant(a);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return g;
}

// Positive function tabulated as a cubic Hermite interpolant of ln y against
// ln xi on uniform knots, with power-law continuation outside the knot range.
struct LogLogCurve {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> y;  // ln values
    std::vector<double> d;  // slopes d(ln y)/d(ln xi)

    bool empty() const { return y.empty(); }

    void fit(double lo, const std::vector<double>& values, double step) {
        t0 = std::log(lo);
        dt = step;
        y.resize(values.size());
        for (size_t i = 0; i < values.size(); ++i) y[i] = std::log(values[i]);
        d.resize(y.size());
        size_t n = y.size();
        d[0] = (y[1] - y[0]) / dt;
        d[n - 1] = (y[n - 1] - y[n - 2]) / dt;
        for (size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
    }

    double operator()(double xi) const {
        double t = std::log(xi);
        size_t n = y.size();
        double tend = t0 + dt * (n - 1);
        if (t <= t0) return std::exp(y[0] + d[0] * (t - t0));
        if (t >= tend) return std::exp(y[n - 1] + d[n - 1] * (t - tend));
        size_t k = std::min<size_t>(static_cast<size_t>((t - t0) / dt), n - 2);
        double s = (t - (t0 + dt * k)) / dt;
        double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        double h10 = s * (1.0 - s) * (1.0 - s);
        double h01 = s * s * (3.0 - 2.0 * s);
        double h11 = s * s * (s - 1.0);
        double v = h00 * y[k] + h10 * dt * d[k] + h01 * y[k + 1] + h11 * dt * d[k + 1];
        return std::exp(v);
    }
};

struct PsiTable {
    LogLogCurve re_meas;      // int (1 - cos xi z) nu(dz), always > 0
    LogLogCurve im_meas_abs;  // |int (xi z - sin xi z) nu(dz)|
    double im_sign = 0.0;
    bool im_zero = true;
    bool im_direct = false;  // mixed-sign data: fall back to per-call quadrature
};

}  // namespace

double FactorizedSpec::f(double z) const {
    if (!(z > 0.0)) throw std::domain_error("FactorizedSpec::f: z must be > 0");
    if (const auto* p = std::get_if<PowerF>(&profile)) return std::pow(z, -p->beta);
    if (const auto* p = std::get_if<PiecewisePowerF>(&profile)) {
        if (z < p->brk) return std::pow(p->brk, -p->beta_small) * std::pow(z / p->brk, -p->beta_small);
        return std::pow(p->brk, -p->beta_small) * std::pow(z / p->brk, -p->beta_large);
    }
    return std::get<CustomF>(profile).fn(z);
}

struct LevyModel::Impl {
    double sigma = 0.0;
    double sigma2 = 0.0;
    double gamma = 0.0;
    MeasureSpec measure;
    bool centered_mode = false;
    ToleranceProfile tol;

    const StableSpec* st = nullptr;
    const FactorizedSpec* fa = nullptr;
    const TabulatedSpec* tb = nullptr;
    bool quad_measure = false;

    // stable shortcuts
    double st_A = 0.0;  // cos_tail_constant(alpha)
    double st_S = 0.0;  // sin_comp_constant(alpha)

    std::optional<double> tail_moment;  // int_{|z|>=1} z nu(dz)
    bool spec_neg = false;
    std::optional<StableTraits> traits;
    bool diff_zero = false;  // nu(dz) symmetric (upward density == downward density)

    mutable std::once_flag table_once;
    mutable PsiTable table;

    bool has_measure() const { return st || fa || tb; }

    // densities restricted to z > 0
    double dens_up(double z) const {
        if (st) return st->c_u * std::pow(z, -1.0 - st->alpha);
        if (fa) return fa->c_u * fa->f(z) / (z * z);
        if (tb) return tb->density(z);
        return 0.0;
    }
    double dens_down(double z) const {
        if (st) return st->c_d * std::pow(z, -1.0 - st->alpha);
        if (fa) return fa->c_d * fa->f(z) / (z * z);
        if (tb) return tb->density(-z);
        return 0.0;
    }
    double dens_sum(double z) const { return dens_up(z) + dens_down(z); }
    double dens_diff(double z) const { return dens_up(z) - dens_down(z); }

    double right_tail(double t) const {
        if (st) return st->c_u / st->alpha * std::pow(t, -st->alpha);
        if (fa)
            return fa->c_u *
                   integrate_adaptive([this](double z) { return fa->f(z) / (z * z); }, t,
                                      std::numeric_limits<double>::infinity(), tol)
                       .value;
        if (tb) return tb->right_tail(t);
        return 0.0;
    }
    double left_tail(double t) const {
        if (st) return st->c_d / st->alpha * std::pow(t, -st->alpha);
        if (fa)
            return fa->c_d *
                   integrate_adaptive([this](double z) { return fa->f(z) / (z * z); }, t,
                                      std::numeric_limits<double>::infinity(), tol)
                       .value;
        if (tb) return tb->left_tail(t);
        return 0.0;
    }

    double second_moment_inside(double r) const {
        if (!has_measure()) return 0.0;
        if (st)
            return (st->c_u + st->c_d) / (2.0 - st->alpha) * std::pow(r, 2.0 - st->alpha);
        if (fa)
            return (fa->c_u + fa->c_d) *
                   integrate_to_zero([this](double z) { return fa->f(z); }, r, tol).value;
        return integrate_to_zero([this](double z) { return z * z * dens_sum(z); }, r, tol).value;
    }

    double abs_moment_outside(double r) const {
        if (!has_measure()) return 0.0;
        if (st) {
            if (st->alpha <= 1.0) throw std::domain_error("first moment diverges");
            return (st->c_u + st->c_d) / (st->alpha - 1.0) * std::pow(r, 1.0 - st->alpha);
        }
        return integrate_adaptive([this](double z) { return z * dens_sum(z); }, r,
                                  std::numeric_limits<double>::infinity(), tol)
            .value;
    }

    std::optional<double> compute_tail_moment() const {
        if (!has_measure()) return 0.0;
        if (st) return (st->c_u - st->c_d) / (st->alpha - 1.0);
        try {
            double up = integrate_adaptive([this](double z) { return z * dens_up(z); }, 1.0,
                                           std::numeric_limits<double>::infinity(), tol)
                            .value;
            double down = integrate_adaptive([this](double z) { return z * dens_down(z); }, 1.0,
                                             std::numeric_limits<double>::infinity(), tol)
                              .value;
            return up - down;
        } catch (const QuadratureFailure&) {
            return std::nullopt;
        }
    }

    double gamma1() const { return gamma + *tail_moment; }

    // ---- characteristic exponent ----

    void build_table() const {
        const double lo = 1e-8, hi = 1e8;
        const int per_decade = 96;
        const int n = 16 * per_decade + 1;
        std::vector<double> nodes = log_grid(lo, hi, n);
        double step = (std::log(hi) - std::log(lo)) / (n - 1);

        std::vector<double> re_vals(n);
        for (int i = 0; i < n; ++i) {
            re_vals[i] =
                integrate_oscillatory([this](double z) { return dens_sum(z); }, nodes[i], tol)
                    .value;
            if (!(re_vals[i] > 0.0))
                throw std::runtime_error("exponent table: nonpositive Re integral");
        }
        table.re_meas.fit(lo, re_vals, step);

        if (diff_zero || !tail_moment) {
            table.im_zero = diff_zero;
            table.im_direct = !diff_zero;  // asymmetric without first moment
            return;
        }
        std::vector<double> im_vals(n);
        double sign = 0.0;
        bool uniform = true;
        for (int i = 0; i < n; ++i) {
            im_vals[i] =
                integrate_compensated_sin([this](double z) { return dens_diff(z); }, nodes[i], tol)
                    .value;
            double s = sign_of(im_vals[i]);
            if (s == 0.0) { uniform = false; break; }
            if (sign == 0.0) sign = s;
            else if (s != sign) { uniform = false; break; }
        }
        if (!uniform) {
            table.im_zero = false;
            table.im_direct = true;
            return;
        }
        for (double& v : im_vals) v = std::abs(v);
        table.im_meas_abs.fit(lo, im_vals, step);
        table.im_sign = sign;
        table.im_zero = false;
    }

    void ensure_table() const {
        std::call_once(table_once, [this] { build_table(); });
    }

    // int (1 - cos xi z) nu(dz) at xi > 0
    double re_meas(double xi) const {
        if (!has_measure()) return 0.0;
        if (st) return (st->c_u + st->c_d) * st_A * std::pow(xi, st->alpha);
        ensure_table();
        return table.re_meas(xi);
    }

    // int (xi z - sin xi z) nu(dz) at xi > 0 (requires a finite first moment)
    double im_meas(double xi) const {
        if (!has_measure() || diff_zero) return 0.0;
        if (st) return (st->c_u - st->c_d) * st_S * std::pow(xi, st->alpha);
        ensure_table();
        if (table.im_zero) return 0.0;
        if (table.im_direct)
            return integrate_compensated_sin([this](double z) { return dens_diff(z); }, xi, tol)
                .value;
        return table.im_sign * table.im_meas_abs(xi);
    }

    // asymmetric measure without a first moment: keep the |z|<1 compensator
    double im_no_moment(double x) const {
        double head =
            integrate_to_zero([this, x](double z) { return (x * z - std::sin(x * z)) * dens_diff(z); },
                              1.0, tol)
                .value;
        double tail = integrate_sin_oscillatory(
                          [this](double z) { return z >= 1.0 ? dens_diff(z) : 0.0; }, x, tol)
                          .value;
        return head - tail;
    }

    double re_psi(double xi) const {
        double a = std::abs(xi);
        if (a == 0.0) return 0.0;
        return sigma2 * xi * xi + re_meas(a);
    }

    double im_psi(double xi) const {
        if (xi == 0.0) return 0.0;
        double a = std::abs(xi);
        double s = sign_of(xi);
        if (tail_moment) return -gamma1() * xi + s * im_meas(a);
        return -gamma * xi + s * im_no_moment(a);
    }

    // ---- concentration and drift ----

    double h(double r) const {
        if (!(r > 0.0)) throw std::domain_error("concentration_h: r must be > 0");
        double out = sigma2 / (r * r);
        if (!has_measure()) return out;
        if (st) {
            double alpha = st->alpha;
            out += (st->c_u + st->c_d) * std::pow(r, -alpha) *
                   (1.0 / (2.0 - alpha) + 1.0 / alpha);
            return out;
        }
        out += second_moment_inside(r) / (r * r);
        out += right_tail(r) + left_tail(r);
        return out;
    }

    double b_r(double r) const {
        if (!(r > 0.0)) throw std::domain_error("compensated_drift_b: r must be > 0");
        if (!has_measure() || diff_zero || r == 1.0) return gamma;
        if (st) {
            double alpha = st->alpha;
            return gamma + (st->c_u - st->c_d) * (1.0 - std::pow(r, 1.0 - alpha)) / (alpha - 1.0);
        }
        double lo = std::min(r, 1.0), hi = std::max(r, 1.0);
        double v = integrate_adaptive([this](double z) { return z * dens_diff(z); }, lo, hi, tol)
                       .value;
        return gamma + (r > 1.0 ? v : -v);
    }

    // ---- running max of Re psi and inverses ----

    bool re_monotone() const { return !quad_measure; }

    double psi_star(double r) const {
        if (r < 0.0) throw std::domain_error("psi_star: r must be >= 0");
        if (r == 0.0) return 0.0;
        double at_r = re_psi(r);
        if (re_monotone()) return at_r;
        // dyadic scan anchored at an absolute base so the running max is
        // monotone across different r by construction
        double best = at_r, best_xi = r;
        double lo = std::max(1e-8, r * 1e-7);
        int j0 = static_cast<int>(std::ceil(16.0 * std::log2(lo)));
        int j1 = static_cast<int>(std::floor(16.0 * std::log2(r)));
        for (int j = j0; j <= j1; ++j) {
            double xi = std::exp2(j / 16.0);
            double v = re_psi(xi);
            if (v > best) { best = v; best_xi = xi; }
        }
        // golden refinement around the best node
        double a = best_xi * std::exp2(-1.0 / 16.0);
        double b = std::min(r, best_xi * std::exp2(1.0 / 16.0));
        const double gr = 0.6180339887498949;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = re_psi(x1), f2 = re_psi(x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a); f2 = re_psi(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a); f1 = re_psi(x1);
            }
        }
        return std::max({best, f1, f2});
    }

    double inv_re_psi(double s) const {
        if (s <= 0.0) return 0.0;
        if (traits) {
            const StableTraits& c = *traits;
            return std::pow(s / c.scale_c, 1.0 / c.alpha);
        }
        return monotone_inverse([this](double r) { return psi_star(r); }, s,
                                Monotone::increasing, tol)
            .value;
    }

    double inv_h(double s) const {
        if (!(s > 0.0)) throw std::domain_error("inv_h: s must be > 0");
        if (!has_measure())  // h(r) = sigma^2 / r^2
            return sigma / std::sqrt(s);
        if (st && sigma2 == 0.0) {
            double alpha = st->alpha;
            double ch = (st->c_u + st->c_d) * (1.0 / (2.0 - alpha) + 1.0 / alpha);
            return std::pow(ch / s, 1.0 / alpha);
        }
        return monotone_inverse([this](double r) { return h(r); }, s, Monotone::decreasing, tol)
            .value;
    }

    WlscEstimate wlsc(std::vector<double> u_grid, std::vector<double> lambda_grid) const {
        if (u_grid.empty()) u_grid = log_grid(1e-3, 1e3, 25);
        if (lambda_grid.empty()) lambda_grid = {2.0, 4.0, 16.0, 64.0, 256.0};
        WlscEstimate out;
        out.alpha_hat = std::numeric_limits<double>::infinity();
        bool any = false;
        for (double u : u_grid) {
            double base = re_psi(u);
            if (!(base > 0.0)) continue;
            for (double lam : lambda_grid) {
                if (!(lam > 1.0)) continue;
                double top = re_psi(lam * u);
                if (!(top > 0.0)) continue;
                any = true;
                double slope = std::log(top / base) / std::log(lam);
                if (slope < out.alpha_hat) {
                    out.alpha_hat = slope;
                    out.witness_u = u;
                    out.witness_lambda = lam;
                }
            }
        }
        if (!any) throw std::runtime_error("wlsc_estimate: Re psi vanished on the whole grid");
        double c = std::numeric_limits<double>::infinity();
        for (double u : u_grid) {
            double base = re_psi(u);
            if (!(base > 0.0)) continue;
            for (double lam : lambda_grid) {
                if (!(lam > 1.0)) continue;
                double top = re_psi(lam * u);
                if (!(top > 0.0)) continue;
                c = std::min(c, top / (base * std::pow(lam, out.alpha_hat)));
            }
        }
        out.c_hat = std::min(1.0, c);
        return out;
    }

    IntegrabilityReport integrability() const {
        IntegrabilityReport rep;
        WlscEstimate w = wlsc({}, {});
        if (w.alpha_hat > 1.02) {
            rep.verdict = IntegrabilityVerdict::finite;
            rep.value = integrate_adaptive([this](double xi) { return 1.0 / (1.0 + re_psi(xi)); },
                                           0.0, std::numeric_limits<double>::infinity(), tol)
                            .value;
            rep.note = "Re psi grows like xi^" + std::to_string(w.alpha_hat);
            return rep;
        }
        if (w.alpha_hat < 0.98) {
            rep.verdict = IntegrabilityVerdict::not_finite;
            rep.note = "scaling index " + std::to_string(w.alpha_hat) +
                       " <= 1: resolvent mass diverges";
            return rep;
        }
        rep.verdict = IntegrabilityVerdict::undetermined;
        rep.note = "scaling index too close to 1 to decide";
        return rep;
    }
};

namespace {

void validate_measure(const MeasureSpec& m) {
    if (const auto* s = std::get_if<StableSpec>(&m)) {
        if (!(s->alpha > 1.0 && s->alpha < 2.0))
            throw std::invalid_argument("StableSpec: alpha must lie in (1, 2)");
        if (s->c_u < 0.0 || s->c_d < 0.0 || s->c_u + s->c_d <= 0.0)
            throw std::invalid_argument("StableSpec: need c_u, c_d >= 0 and not both zero");
        return;
    }
    if (const auto* f = std::get_if<FactorizedSpec>(&m)) {
        if (f->c_u < 0.0 || f->c_d < 0.0 || f->c_u + f->c_d <= 0.0)
            throw std::invalid_argument("FactorizedSpec: need c_u, c_d >= 0 and not both zero");
        if (!(f->beta1 > 0.0 && f->beta1 <= f->beta2 && f->beta2 < 1.0))
            throw std::invalid_argument("FactorizedSpec: need 0 < beta1 <= beta2 < 1");
        if (!(f->a2 > 0.0 && f->a2 <= 1.0 && f->a1 >= 1.0))
            throw std::invalid_argument("FactorizedSpec: need 0 < a2 <= 1 <= a1");
        // envelope spot check: f(lam z)/f(z) within [a2 lam^-b2, a1 lam^-b1]
        for (double z : log_grid(1e-3, 1e3, 13)) {
            double fz = f->f(z);
            if (!(fz > 0.0)) throw std::invalid_argument("FactorizedSpec: f must be positive");
            for (double lam : {2.0, 10.0}) {
                double ratio = f->f(lam * z) / fz;
                double lo = f->a2 * std::pow(lam, -f->beta2) * (1.0 - 1e-9);
                double hi = f->a1 * std::pow(lam, -f->beta1) * (1.0 + 1e-9);
                if (ratio < lo || ratio > hi)
                    throw std::invalid_argument(
                        "FactorizedSpec: f violates its scaling envelope near z=" +
                        std::to_string(z));
            }
        }
        return;
    }
    if (const auto* t = std::get_if<TabulatedSpec>(&m)) {
        if (!t->density || !t->right_tail || !t->left_tail)
            throw std::invalid_argument("TabulatedSpec: all three functions are required");
        for (double z : log_grid(1e-3, 1e3, 13)) {
            if (t->density(z) < 0.0 || t->density(-z) < 0.0)
                throw std::invalid_argument("TabulatedSpec: density must be nonnegative");
            if (t->right_tail(z) < 0.0 || t->left_tail(z) < 0.0)
                throw std::invalid_argument("TabulatedSpec: tails must be nonnegative");
        }
    }
}

}  // namespace

LevyModel::LevyModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

LevyModel LevyModel::make(double sigma, double gamma, MeasureSpec measure, bool centered,
                          const ToleranceProfile& tol) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
    validate_measure(measure);
    if (sigma == 0.0 && std::holds_alternative<std::monostate>(measure))
        throw std::invalid_argument("degenerate model: zero diffusion and empty jump measure");

    auto impl = std::make_shared<Impl>();
    impl->sigma = sigma;
    impl->sigma2 = sigma * sigma;
    impl->measure = std::move(measure);
    impl->centered_mode = centered;
    impl->tol = tol;
    impl->st = std::get_if<StableSpec>(&impl->measure);
    impl->fa = std::get_if<FactorizedSpec>(&impl->measure);
    impl->tb = std::get_if<TabulatedSpec>(&impl->measure);
    impl->quad_measure = impl->fa || impl->tb;

    if (impl->st) {
        impl->st_A = cos_tail_constant(impl->st->alpha);
        impl->st_S = sin_comp_constant(impl->st->alpha);
        impl->diff_zero = impl->st->c_u == impl->st->c_d;
        impl->spec_neg = impl->st->c_u == 0.0;
    } else if (impl->fa) {
        impl->diff_zero = impl->fa->c_u == impl->fa->c_d;
        impl->spec_neg = impl->fa->c_u == 0.0;
    } else if (impl->tb) {
        bool zero_diff = true, zero_up = true;
        for (double z : log_grid(1e-4, 1e4, 17)) {
            double up = impl->tb->density(z), down = impl->tb->density(-z);
            if (std::abs(up - down) > 1e-13 * (up + down + 1e-300)) zero_diff = false;
            if (up > 0.0 || impl->tb->right_tail(z) > 0.0) zero_up = false;
        }
        impl->diff_zero = zero_diff;
        impl->spec_neg = zero_up;
    } else {
        impl->diff_zero = true;
        impl->spec_neg = true;  // no jumps at all
    }

    // integrability of 1 ^ z^2 against nu, checked by the same quadrature the
    // exponent uses; failures surface as exceptions here rather than later
    if (impl->has_measure()) {
        double small = impl->second_moment_inside(1.0);
        double large = impl->right_tail(1.0) + impl->left_tail(1.0);
        if (!std::isfinite(small) || !std::isfinite(large))
            throw std::invalid_argument("measure fails int (1 ^ z^2) nu < infinity");
    }

    impl->tail_moment = impl->compute_tail_moment();
    if (centered) {
        if (!impl->tail_moment)
            throw std::invalid_argument("centered model requires a finite first moment");
        impl->gamma = -*impl->tail_moment;
    } else {
        impl->gamma = gamma;
    }

    if (impl->st && sigma == 0.0) {
        const StableSpec& s = *impl->st;
        StableTraits tr;
        tr.alpha = s.alpha;
        tr.scale_c = (s.c_u + s.c_d) * impl->st_A;
        tr.beta_skew = (s.c_u - s.c_d) / (s.c_u + s.c_d);
        tr.C_I = -tr.beta_skew * std::tan(kPi * s.alpha / 2.0);
        impl->traits = tr;
    } else if (!impl->has_measure()) {
        impl->traits = StableTraits{2.0, impl->sigma2, 0.0, 0.0};
    }

    return LevyModel(std::move(impl));
}

LevyModel LevyModel::symmetric_stable(double alpha, const ToleranceProfile& tol) {
    double c = 1.0 / (2.0 * cos_tail_constant(alpha));
    return make(0.0, 0.0, StableSpec{alpha, c, c}, true, tol);
}

LevyModel LevyModel::spectrally_negative_stable(double alpha, const ToleranceProfile& tol) {
    double c = 1.0 / cos_tail_constant(alpha);
    return make(0.0, 0.0, StableSpec{alpha, 0.0, c}, true, tol);
}

LevyModel LevyModel::brownian(double sigma, const ToleranceProfile& tol) {
    return make(sigma, 0.0, std::monostate{}, true, tol);
}

double LevyModel::sigma() const { return impl_->sigma; }
double LevyModel::gamma() const { return impl_->gamma; }
const MeasureSpec& LevyModel::measure() const { return impl_->measure; }
bool LevyModel::centered() const { return impl_->centered_mode; }
const ToleranceProfile& LevyModel::tolerance() const { return impl_->tol; }

std::optional<double> LevyModel::mean() const {
    if (!impl_->tail_moment) return std::nullopt;
    return impl_->gamma1();
}

bool LevyModel::has_first_moment() const { return impl_->tail_moment.has_value(); }
bool LevyModel::spectrally_negative() const { return impl_->spec_neg; }
std::optional<StableTraits> LevyModel::closed_form() const { return impl_->traits; }

std::complex<double> LevyModel::eval_exponent(double xi) const {
    if (xi == 0.0) return {0.0, 0.0};
    return {impl_->re_psi(xi), impl_->im_psi(xi)};
}

double LevyModel::re_psi(double xi) const { return impl_->re_psi(xi); }
double LevyModel::im_psi(double xi) const { return xi == 0.0 ? 0.0 : impl_->im_psi(xi); }
double LevyModel::concentration_h(double r) const { return impl_->h(r); }
double LevyModel::compensated_drift_b(double r) const { return impl_->b_r(r); }
double LevyModel::psi_star(double r) const { return impl_->psi_star(r); }
double LevyModel::inv_re_psi(double s) const { return impl_->inv_re_psi(s); }
double LevyModel::inv_h(double s) const { return impl_->inv_h(s); }

WlscEstimate LevyModel::wlsc_estimate(const std::vector<double>& u_grid,
                                      const std::vector<double>& lambda_grid) const {
    return impl_->wlsc(u_grid, lambda_grid);
}

IntegrabilityReport LevyModel::integrability_check() const { return impl_->integrability(); }

double LevyModel::nu_tail_mass(double t) const {
    if (!(t > 0.0)) throw std::domain_error("nu_tail_mass: t must be > 0");
    return impl_->right_tail(t) + impl_->left_tail(t);
}

double LevyModel::nu_right_tail(double t) const {
    if (!(t > 0.0)) throw std::domain_error("nu_right_tail: t must be > 0");
    return impl_->right_tail(t);
}

double LevyModel::nu_left_tail(double t) const {
    if (!(t > 0.0)) throw std::domain_error("nu_left_tail: t must be > 0");
    return impl_->left_tail(t);
}

double LevyModel::abs_moment_outside(double r) const {
    if (!(r > 0.0)) throw std::domain_error("abs_moment_outside: r must be > 0");
    return impl_->abs_moment_outside(r);
}

double LevyModel::second_moment_inside(double r) const {
    if (!(r > 0.0)) throw std::domain_error("second_moment_inside: r must be > 0");
    return impl_->second_moment_inside(r);
}

}  // namespace levyhit
