#include "levyhit/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "levyhit/kernels.hpp"

namespace levyhit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kT0UpperConstant = 4.0 * 1.718281828459045235360287 / 2.718281828459045235360287;
constexpr double kMaxB = 100.0;

PsiComparability checked_comparability(const LevyModel& model) {
    PsiComparability c = psi_comparability(model);
    if (!(c.b < kMaxB))
        throw std::domain_error(
            "hitting: |Im psi|/Re psi exceeds 100 on the frequency grid; the comparability "
            "assumption fails (is the model centered?)");
    return c;
}

bool effectively_centered(const LevyModel& model) {
    if (model.centered()) return true;
    auto m = model.mean();
    return m && std::abs(*m) <= 1e-12;
}

void require_scaling(const LevyModel& model, const char* who) {
    if (!effectively_centered(model))
        throw std::domain_error(std::string(who) + ": model must be centered");
    WlscEstimate w = model.wlsc_estimate();
    if (!(w.alpha_hat > 1.0))
        throw std::domain_error(std::string(who) +
                                ": weak lower scaling index above 1 not certified");
}

double H_of(const LevyModel& model, double x) { return H_sym(model, std::abs(x)).value; }

}  // namespace

PsiComparability psi_comparability(const LevyModel& model) {
    PsiComparability c;
    c.a = 1.0;
    c.b = 0.0;
    for (int i = 0; i <= 60; ++i) {
        double xi = c.grid_lo * std::pow(c.grid_hi / c.grid_lo, i / 60.0);
        double re = model.re_psi(xi);
        double star = model.psi_star(xi);
        if (star > 0.0) c.a = std::min(c.a, re / star);
        if (re > 0.0) c.b = std::max(c.b, std::abs(model.im_psi(xi)) / re);
    }
    return c;
}

KLowerReport verify_K_lower(const LevyModel& model, const std::vector<double>& x_grid,
                            double floor) {
    if (!(floor > 0.0)) throw std::invalid_argument("verify_K_lower: floor must be positive");
    KLowerReport rep;
    rep.floor = floor;
    rep.min_ratio = 1e300;
    for (double x : x_grid) {
        if (x == 0.0) continue;  // K^lambda(0) = H(0) = 0 carries no information
        double H = H_of(model, x);
        double hx = model.concentration_h(std::abs(x));
        for (double lambda : {hx, hx / 2, hx / 4, hx / 8}) {
            RatioRow row;
            row.x = x;
            row.y = lambda;
            row.value = K_lambda(model, lambda, x).value;
            row.comparator = H;
            row.ratio = row.value / H;
            rep.min_ratio = std::min(rep.min_ratio, row.ratio);
            rep.rows.push_back(row);
        }
    }
    if (rep.rows.empty())
        throw std::invalid_argument("verify_K_lower: grid needs a nonzero point");
    rep.certified = rep.min_ratio >= floor;
    char buf[120];
    std::snprintf(buf, sizeof buf, "min K^lambda(x)/H(x) = %.4f over lambda in h(x)*{1,1/2,1/4,1/8}",
                  rep.min_ratio);
    rep.note = buf;
    return rep;
}

std::pair<double, double> u_lambda_sandwich(const LevyModel& model, double lambda) {
    if (!(lambda > 0.0))
        throw std::domain_error("u_lambda_sandwich: lambda must be positive");
    PsiComparability c = checked_comparability(model);
    double r = model.inv_re_psi(lambda);
    double H = H_of(model, 1.0 / r);
    double swell = 1.0 + c.b * c.b;
    return {c.a / (4.0 * swell) * H, 2.0 * kPi * kPi * swell / c.a * H};
}

double T0_upper(const LevyModel& model, double x, double t) {
    if (!(t > 0.0)) throw std::domain_error("T0_upper: t must be positive");
    if (x == 0.0) return 0.0;
    PsiComparability c = checked_comparability(model);
    double r = model.inv_re_psi(1.0 / t);
    double bound =
        kT0UpperConstant * (1.0 + c.b * c.b) / c.a * H_of(model, x) / H_of(model, 1.0 / r);
    return std::min(1.0, bound);
}

double T0_lower_comparator(const LevyModel& model, const KLowerReport& cert, double x,
                           double t) {
    if (!(t > 0.0)) throw std::domain_error("T0_lower_comparator: t must be positive");
    if (!cert.certified)
        throw std::domain_error(
            "T0_lower_comparator: K^lambda >= floor * H not certified for this model");
    if (x == 0.0) return 0.0;
    return std::min(1.0, H_of(model, x) / H_of(model, model.inv_h(1.0 / t)));
}

ComparatorReport interval_comparator(const LevyModel& model, const RenewalPair& pair,
                                     const KLowerReport& cert, double x, double R, double t) {
    if (R < 0.0) throw std::domain_error("interval_comparator: R must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("interval_comparator: t must be positive");
    if (!(x > R))
        throw std::domain_error(
            "interval_comparator: needs x > R (left-side starts are covered only in the "
            "spectrally negative case)");
    require_scaling(model, "interval_comparator");
    if (!cert.certified)
        throw std::domain_error(
            "interval_comparator: K^lambda >= floor * H not certified for this model");

    ComparatorReport rep;
    rep.x = x;
    rep.R = R;
    rep.t = t;
    double t_split = R > 0.0 ? 1.0 / model.concentration_h(R) : 0.0;
    double r_t = model.inv_h(1.0 / t);
    if (t < t_split) {
        rep.regime = ComparatorReport::Regime::small_time;
        rep.comparator = std::min(1.0, pair.Vhat(x - R) / pair.Vhat(r_t));
    } else {
        rep.regime = ComparatorReport::Regime::large_time;
        rep.comparator = std::min(1.0, pair.Vhat(x - R) / pair.Vhat(x) * H_of(model, x) /
                                           H_of(model, r_t));
    }
    return rep;
}

double spectrally_negative_comparator(const LevyModel& model, double x, double R, double t) {
    if (!model.spectrally_negative())
        throw std::domain_error(
            "spectrally_negative_comparator: model has upward jumps; use interval_comparator");
    if (R < 0.0) throw std::domain_error("spectrally_negative_comparator: R must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("spectrally_negative_comparator: t must be positive");
    if (x >= -R && x <= R)
        throw std::domain_error("spectrally_negative_comparator: start lies inside the target");
    require_scaling(model, "spectrally_negative_comparator");

    double r_t = model.inv_h(1.0 / t);
    if (x > R) return std::min(1.0, H_of(model, x - R) / H_of(model, r_t));
    // left of the target the hit is a first passage through -R, no kernel needed
    return std::min(1.0, std::abs(x + R) / r_t);
}

}  // namespace levyhit
