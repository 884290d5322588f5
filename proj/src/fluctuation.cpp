#include "levyhit/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "levyhit/numerics.hpp"

namespace levyhit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool effectively_centered(const LevyModel& model) {
    if (model.centered()) return true;
    auto m = model.mean();
    return m && std::abs(*m) <= 1e-12;
}

std::function<double(double)> power_law(double coeff, double expo) {
    return [coeff, expo](double x) { return x > 0.0 ? coeff * std::pow(x, expo) : 0.0; };
}

// log-log polyline through measured ladder levels; end slopes extend it as
// power laws. Derivative uses the segment slope, floored away from zero so
// V' stays positive.
struct McCurve {
    std::vector<double> log_x;
    std::vector<double> log_v;
    std::vector<double> slope;  // per segment, plus one extrapolation slope each end

    static McCurve build(const std::vector<double>& x, const std::vector<double>& v,
                         double fitted_slope) {
        McCurve c;
        for (std::size_t i = 0; i < x.size(); ++i) {
            c.log_x.push_back(std::log(x[i]));
            c.log_v.push_back(std::log(std::max(v[i], 1e-300)));
        }
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            double s = (c.log_v[i + 1] - c.log_v[i]) / (c.log_x[i + 1] - c.log_x[i]);
            c.slope.push_back(std::max(s, 1e-6));
        }
        c.outer = std::max(fitted_slope, 1e-6);
        return c;
    }

    double outer = 1.0;  // extrapolation slope beyond either end

    double value(double x) const {
        if (!(x > 0.0)) return 0.0;
        double lx = std::log(x);
        if (lx <= log_x.front()) return std::exp(log_v.front() + outer * (lx - log_x.front()));
        if (lx >= log_x.back()) return std::exp(log_v.back() + outer * (lx - log_x.back()));
        auto it = std::upper_bound(log_x.begin(), log_x.end(), lx);
        std::size_t i = static_cast<std::size_t>(it - log_x.begin()) - 1;
        return std::exp(log_v[i] + slope[i] * (lx - log_x[i]));
    }

    double local_slope(double x) const {
        double lx = std::log(x);
        if (lx <= log_x.front() || lx >= log_x.back()) return outer;
        auto it = std::upper_bound(log_x.begin(), log_x.end(), lx);
        return slope[static_cast<std::size_t>(it - log_x.begin()) - 1];
    }

    double derivative(double x) const {
        if (!(x > 0.0)) return 0.0;
        return value(x) * local_slope(x) / x;
    }
};

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& v) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        double lx = std::log(x[i]);
        double ly = std::log(std::max(v[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / denom;
}

void validate_grid(const std::vector<double>& grid, const char* who) {
    if (grid.empty()) throw std::invalid_argument(std::string(who) + ": empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && grid[i] <= grid[i - 1]))
            throw std::invalid_argument(std::string(who) +
                                        ": grid must be positive and increasing");
    }
}

void finish_band(RatioReport& rep, double lo, double hi) {
    rep.min_ratio = rep.rows.front().ratio;
    rep.max_ratio = rep.rows.front().ratio;
    for (const RatioRow& r : rep.rows) {
        rep.min_ratio = std::min(rep.min_ratio, r.ratio);
        rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    }
    rep.within_band = rep.min_ratio >= lo && rep.max_ratio <= hi;
}

}  // namespace

MCConfig renewal_mc_defaults() {
    MCConfig cfg;
    cfg.n_paths = 600;
    return cfg;
}

RenewalPair renewal_pair(const LevyModel& model, const MCConfig& mc) {
    if (!effectively_centered(model))
        throw std::domain_error("renewal_pair: model must be centered");

    if (auto traits = model.closed_form()) {
        double alpha = traits->alpha;
        double rho = 0.5 + std::atan(traits->beta_skew * std::tan(0.5 * kPi * alpha)) /
                               (kPi * alpha);
        double product =
            1.0 / (traits->scale_c * std::sqrt(1.0 + traits->C_I * traits->C_I) *
                   std::tgamma(1.0 + alpha * rho) * std::tgamma(1.0 + alpha * (1.0 - rho)));
        double v = std::sqrt(product);

        RenewalPair pair;
        pair.V = power_law(v, alpha * rho);
        pair.Vhat = power_law(v, alpha * (1.0 - rho));
        pair.V_prime = power_law(v * alpha * rho, alpha * rho - 1.0);
        pair.Vhat_prime = power_law(v * alpha * (1.0 - rho), alpha * (1.0 - rho) - 1.0);
        pair.provenance = RenewalPair::Provenance::closed_form;
        pair.rho = rho;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "stable power laws: alpha=%.4f rho=%.4f v=vhat=%.6g "
                      "(Brownian Green anchor)",
                      alpha, rho, v);
        pair.note = buf;
        return pair;
    }

    // measured pair: ladder record counts on a doubling grid, wide enough
    // that the power-law extrapolation stays mild over [0.01, 100]
    std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
    LadderEstimate lad = ladder_renewal_estimate(model, grid, mc);

    double s_v = fit_log_slope(lad.x, lad.v);
    double s_vhat = fit_log_slope(lad.x, lad.v_hat);
    auto curve_v = std::make_shared<McCurve>(McCurve::build(lad.x, lad.v, s_v));
    auto curve_vhat = std::make_shared<McCurve>(McCurve::build(lad.x, lad.v_hat, s_vhat));

    RenewalPair pair;
    pair.V = [curve_v](double x) { return curve_v->value(x); };
    pair.Vhat = [curve_vhat](double x) { return curve_vhat->value(x); };
    pair.V_prime = [curve_v](double x) { return curve_v->derivative(x); };
    pair.Vhat_prime = [curve_vhat](double x) { return curve_vhat->derivative(x); };
    pair.provenance = RenewalPair::Provenance::mc_estimate;
    pair.rho = s_v / (s_v + s_vhat);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "ladder estimate over [%g, %g]: fitted exponents V ~ x^%.3f, "
                  "Vhat ~ x^%.3f (sum ~ alpha), rho from their ratio",
                  grid.front(), grid.back(), s_v, s_vhat);
    pair.note = buf;
    return pair;
}

double green_halfline(const RenewalPair& pair, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("green_halfline: x and y must be positive");
    QuadratureResult q;
    if (y >= x) {
        q = integrate_to_zero(
            [&](double u) { return pair.Vhat_prime(u) * pair.V_prime(y - x + u); }, x);
    } else {
        q = integrate_to_zero(
            [&](double u) { return pair.V_prime(u) * pair.Vhat_prime(x - y + u); }, y);
    }
    return std::max(q.value, 0.0);
}

RatioReport green_comparator_check(const RenewalPair& pair, const std::vector<double>& grid,
                                   double band_lo, double band_hi) {
    validate_grid(grid, "green_comparator_check");
    RatioReport rep;
    for (double x : grid) {
        for (double y : grid) {
            RatioRow row;
            row.x = x;
            row.y = y;
            row.value = green_halfline(pair, x, y);
            row.comparator = x <= y ? pair.Vhat(x) * pair.V_prime(y)
                                    : pair.Vhat_prime(x) * pair.V(y);
            row.ratio = row.value / row.comparator;
            rep.rows.push_back(row);
        }
    }
    finish_band(rep, band_lo, band_hi);
    rep.note = "green_halfline / (Vhat(x) V'(y) for x <= y, Vhat'(x) V(y) for y < x)";
    return rep;
}

RatioReport V_ratio_check(const RenewalPair& pair, const std::vector<double>& grid,
                          double band_lo, double band_hi) {
    validate_grid(grid, "V_ratio_check");
    RatioReport rep;
    for (double x : grid) {
        RatioRow asc;
        asc.x = x;
        asc.y = 0.0;
        asc.value = x * pair.V_prime(x);
        asc.comparator = pair.V(x);
        asc.ratio = asc.value / asc.comparator;
        rep.rows.push_back(asc);

        RatioRow desc;
        desc.x = x;
        desc.y = 1.0;
        desc.value = x * pair.Vhat_prime(x);
        desc.comparator = pair.Vhat(x);
        desc.ratio = desc.value / desc.comparator;
        rep.rows.push_back(desc);
    }
    finish_band(rep, band_lo, band_hi);
    rep.note = "x V'(x)/V(x) on rows y=0, x Vhat'(x)/Vhat(x) on rows y=1";
    return rep;
}

std::pair<double, double> exit_right_bounds(const LevyModel& model, const RenewalPair& pair,
                                            double x, double R, double lower_c) {
    if (!(R > 0.0) || !(x > 0.0) || !(x < R))
        throw std::domain_error("exit_right_bounds: need 0 < x < R");
    if (!(lower_c > 0.0) || lower_c > 1.0)
        throw std::invalid_argument("exit_right_bounds: lower_c must lie in (0, 1]");
    if (!effectively_centered(model))
        throw std::domain_error("exit_right_bounds: model must be centered");
    WlscEstimate w = model.wlsc_estimate();
    if (!(w.alpha_hat > 1.0))
        throw std::domain_error(
            "exit_right_bounds: weak lower scaling index above 1 not certified");
    double upper = pair.Vhat(x) / pair.Vhat(R);
    return {lower_c * upper, upper};
}

}  // namespace levyhit
