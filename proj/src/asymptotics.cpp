#include "levyhit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <variant>

#include "levyhit/kernels.hpp"
#include "levyhit/numerics.hpp"

namespace levyhit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Power of Re psi near zero, read off two small frequencies. Used when the
// measure does not carry an exact exponent.
double measured_alpha(const LevyModel& model) {
    double lo = model.re_psi(1e-4);
    double hi = model.re_psi(1e-2);
    if (!(lo > 0.0) || !(hi > 0.0))
        throw std::runtime_error("stability exponents: Re psi vanishes at small frequencies");
    return std::log(hi / lo) / std::log(1e2);
}

double factorized_alpha(const FactorizedSpec& spec, const LevyModel& model) {
    struct Visitor {
        const LevyModel& model;
        double operator()(const PowerF& p) const { return 1.0 + p.beta; }
        double operator()(const PiecewisePowerF& p) const { return 1.0 + p.beta_large; }
        double operator()(const CustomF&) const { return measured_alpha(model); }
    };
    return std::visit(Visitor{model}, spec.profile);
}

bool relatively_close(double r, double p, double band) {
    return std::abs(r - p) <= band * std::max(std::abs(p), 1e-12);
}

void finish_convergence(AsymptoticReport& rep, double band) {
    const auto& c = rep.empirical_ratio_curve;
    rep.converged = c.size() >= 2 &&
                    relatively_close(c[c.size() - 1].second, rep.predicted_constant, band) &&
                    relatively_close(c[c.size() - 2].second, rep.predicted_constant, band);
}

}  // namespace

double tail_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("tail_constant: alpha must lie in (0, 2)");
    return std::tgamma(1.0 + alpha) / std::beta(1.0 - 0.5 * alpha, 1.0 + 0.5 * alpha);
}

AsymptoticReport nu_tail_asymptotic_check(const LevyModel& model,
                                          std::vector<double> t_grid, double band) {
    if (t_grid.empty()) {
        for (int i = 0; i < 13; ++i) t_grid.push_back(std::pow(10.0, 3.0 * i / 12.0));
    }
    if (t_grid.size() < 2)
        throw std::invalid_argument("nu_tail_asymptotic_check: need at least two thresholds");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0) || (i > 0 && t_grid[i] <= t_grid[i - 1]))
            throw std::invalid_argument(
                "nu_tail_asymptotic_check: thresholds must be positive and increasing");
    }

    AsymptoticReport rep;
    if (model.nu_tail_mass(t_grid.front()) <= 0.0) {
        for (double t : t_grid) rep.empirical_ratio_curve.emplace_back(t, 0.0);
        rep.note = "not applicable: the measure has no mass beyond the smallest threshold";
        return rep;
    }

    std::vector<double> re(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) re[i] = model.re_psi(1.0 / t_grid[i]);

    std::size_t n = t_grid.size();
    double alpha_hat =
        std::log(re[n - 2] / re[n - 1]) / std::log(t_grid[n - 1] / t_grid[n - 2]);

    char buf[160];
    if (alpha_hat > 0.0 && alpha_hat < 2.0) {
        rep.predicted_constant = tail_constant(alpha_hat);
        std::snprintf(buf, sizeof buf,
                      "alpha_hat=%.4f from the slope of Re psi(1/t) at the grid end", alpha_hat);
    } else {
        std::snprintf(buf, sizeof buf,
                      "alpha_hat=%.4f lies outside (0, 2); no tail constant predicted", alpha_hat);
    }
    rep.note = buf;

    for (std::size_t i = 0; i < n; ++i)
        rep.empirical_ratio_curve.emplace_back(t_grid[i], model.nu_tail_mass(t_grid[i]) / re[i]);
    if (rep.predicted_constant > 0.0) finish_convergence(rep, band);
    return rep;
}

AsymptoticReport im_re_limit(const LevyModel& model, double band) {
    AsymptoticReport rep;
    if (model.has_first_moment() && std::abs(*model.mean()) > 1e-10) {
        rep.predicted_constant = -*model.mean();
        for (int k = 0; k <= 6; ++k) {
            double xi = std::pow(10.0, -k);
            rep.empirical_ratio_curve.emplace_back(xi, model.im_psi(xi) / xi);
        }
        rep.note = "nonzero mean: Im psi(xi)/xi -> -mean";
        finish_convergence(rep, band);
        return rep;
    }

    struct Predictor {
        const LevyModel& model;
        double operator()(std::monostate) const { return 0.0; }
        double operator()(const StableSpec& s) const {
            return -(s.c_u - s.c_d) / (s.c_u + s.c_d) * std::tan(0.5 * kPi * s.alpha);
        }
        double operator()(const FactorizedSpec& f) const {
            double alpha = factorized_alpha(f, model);
            return -(f.c_u - f.c_d) / (f.c_u + f.c_d) * std::tan(0.5 * kPi * alpha);
        }
        double operator()(const TabulatedSpec&) const {
            throw std::invalid_argument(
                "im_re_limit: tabulated measures carry no predicted skewness limit");
        }
    };
    rep.predicted_constant = std::visit(Predictor{model}, model.measure());

    for (int k = 0; k <= 6; ++k) {
        double xi = std::pow(10.0, -k);
        double re = model.re_psi(xi);
        double im = model.im_psi(xi);
        rep.empirical_ratio_curve.emplace_back(xi, re > 0.0 ? im / re : 0.0);
    }
    rep.note = "centered: Im psi/Re psi -> -(c_u - c_d)/(c_u + c_d) tan(pi alpha/2)";
    finish_convergence(rep, band);
    return rep;
}

double C_of_alpha(double alpha, double C_I) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::domain_error("C_of_alpha: alpha must lie in (1, 2]");
    if (!std::isfinite(C_I)) throw std::domain_error("C_of_alpha: C_I must be finite");
    auto integrand = [alpha, C_I](double w) {
        double wa = std::pow(w, alpha);
        double re = 1.0 + wa;
        double im = C_I * wa;
        return re / (re * re + im * im);
    };
    QuadratureResult q =
        integrate_adaptive(integrand, 0.0, std::numeric_limits<double>::infinity());
    return q.value / kPi;
}

double C_of_alpha_closed(double alpha, double C_I) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::domain_error("C_of_alpha_closed: alpha must lie in (1, 2]");
    if (!std::isfinite(C_I)) throw std::domain_error("C_of_alpha_closed: C_I must be finite");
    return std::cos(std::atan(C_I) / alpha) /
           (alpha * std::pow(1.0 + C_I * C_I, 1.0 / (2.0 * alpha)) * std::sin(kPi / alpha));
}

std::pair<double, double> stability_exponents(const LevyModel& model) {
    if (!model.has_first_moment() || std::abs(*model.mean()) > 1e-10)
        throw std::domain_error(
            "stability exponents: model must be centered; a drift swamps the Im psi limit");
    if (auto traits = model.closed_form()) return {traits->alpha, traits->C_I};

    struct Visitor {
        const LevyModel& model;
        std::pair<double, double> operator()(std::monostate) const { return {2.0, 0.0}; }
        std::pair<double, double> operator()(const StableSpec& s) const {
            // Gaussian + stable mix: the jump part dominates at small xi.
            double ci = -(s.c_u - s.c_d) / (s.c_u + s.c_d) * std::tan(0.5 * kPi * s.alpha);
            return {s.alpha, ci};
        }
        std::pair<double, double> operator()(const FactorizedSpec& f) const {
            double alpha = factorized_alpha(f, model);
            double ci = -(f.c_u - f.c_d) / (f.c_u + f.c_d) * std::tan(0.5 * kPi * alpha);
            return {alpha, ci};
        }
        std::pair<double, double> operator()(const TabulatedSpec&) const {
            double alpha = measured_alpha(model);
            double xi = 1e-6;
            double re = model.re_psi(xi);
            double ci = re > 0.0 ? model.im_psi(xi) / re : 0.0;
            return {alpha, ci};
        }
    };
    auto [alpha, ci] = std::visit(Visitor{model}, model.measure());
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::domain_error(
            "stability exponents: Re psi does not scale like |xi|^alpha with alpha in (1, 2]");
    return {alpha, ci};
}

double point_hitting_asymptote(const LevyModel& model, double x) {
    if (x == 0.0) return 0.0;
    auto [alpha, ci] = stability_exponents(model);
    double k = K_compensated(model, -x).value;
    return k / (C_of_alpha(alpha, ci) * std::tgamma(1.0 / alpha));
}

double set_hitting_asymptote(const LevyModel& model, double x, double R, const MCConfig& mc) {
    if (R < 0.0) throw std::invalid_argument("set_hitting_asymptote: R must be >= 0");
    if (R == 0.0) return point_hitting_asymptote(model, x);
    if (std::abs(x) <= R)
        throw std::domain_error("set_hitting_asymptote: x must start outside [-R, R]");

    auto [alpha, ci] = stability_exponents(model);
    double k_start = K_compensated(model, -x).value;

    HitPositionSample hp = sample_hit_positions(model, x, R, mc);
    std::size_t need = std::max<std::size_t>(mc.n_paths / 2, 50);
    if (hp.positions.size() < need)
        throw std::runtime_error(
            "set_hitting_asymptote: fewer than half the paths reached the target; raise t_max");

    // Bin entry positions so the kernel is evaluated a bounded number of
    // times; the bin width R/128 is far below the Monte Carlo noise floor.
    constexpr int kBins = 256;
    std::vector<std::int64_t> count(kBins, 0);
    for (double p : hp.positions) {
        double u = (p + R) / (2.0 * R);
        int b = std::clamp(static_cast<int>(u * kBins), 0, kBins - 1);
        ++count[b];
    }
    double acc = 0.0;
    std::int64_t total = 0;
    for (int b = 0; b < kBins; ++b) {
        if (count[b] == 0) continue;
        double center = -R + 2.0 * R * (b + 0.5) / kBins;
        acc += static_cast<double>(count[b]) * K_compensated(model, -center).value;
        total += count[b];
    }
    double k_entry = acc / static_cast<double>(total);
    return (k_start - k_entry) / (C_of_alpha(alpha, ci) * std::tgamma(1.0 / alpha));
}

}  // namespace levyhit
