#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "levyhit/fluctuation.hpp"
#include "levyhit/levy_model.hpp"
#include "levyhit/mc_engine.hpp"
#include "levyhit/model_io.hpp"

using namespace levyhit;

namespace {

constexpr double kPi = 3.14159265358979323846;

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& v) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(v[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, n > 1 ? i / (n - 1.0) : 0.0));
    return g;
}

// compact symmetric jump measure: psi bounded, so no WLSC index above 1
LevyModel compact_jumps() {
    TabulatedSpec t;
    t.density = [](double z) { return std::abs(z) >= 1.0 && std::abs(z) <= 2.0 ? 0.5 : 0.0; };
    t.right_tail = [](double r) { return r >= 2.0 ? 0.0 : 0.5 * (2.0 - std::max(r, 1.0)); };
    t.left_tail = [](double r) { return r >= 2.0 ? 0.0 : 0.5 * (2.0 - std::max(r, 1.0)); };
    t.label = "uniform on 1<=|z|<=2";
    return LevyModel::make(0.0, 0.0, std::move(t));
}

}  // namespace

TEST_CASE("closed form pairs carry the stable exponents") {
    RenewalPair bm = renewal_pair(LevyModel::brownian());
    CHECK(bm.provenance == RenewalPair::Provenance::closed_form);
    CHECK(bm.rho == doctest::Approx(0.5));
    CHECK(bm.V(2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bm.Vhat(3.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(bm.V_prime(5.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bm.V(0.0) == 0.0);
    CHECK(bm.V(-1.0) == 0.0);
    CHECK(bm.Vhat_prime(-2.0) == 0.0);

    RenewalPair sym = renewal_pair(make_preset("stable-sym-1.5"));
    CHECK(sym.rho == doctest::Approx(0.5));
    CHECK(sym.V(4.0) / sym.V(1.0) == doctest::Approx(std::pow(4.0, 0.75)).epsilon(1e-12));
    // product anchored at 1 / (c sqrt(1+C_I^2) Gamma(1+3/4)^2) with c = 1
    CHECK(sym.V(1.0) * sym.Vhat(1.0) ==
          doctest::Approx(1.0 / (std::tgamma(1.75) * std::tgamma(1.75))).epsilon(1e-12));
    CHECK(sym.V(1.0) == doctest::Approx(sym.Vhat(1.0)).epsilon(1e-12));

    RenewalPair sn = renewal_pair(make_preset("stable-specneg-1.5"));
    CHECK(sn.rho == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sn.V(4.0) / sn.V(2.0) == doctest::Approx(2.0).epsilon(1e-12));  // creeping side
    CHECK(sn.Vhat(4.0) / sn.Vhat(2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sn.V(1.0) * sn.Vhat(1.0) ==
          doctest::Approx(1.0 / (std::sqrt(2.0) * std::tgamma(1.5))).epsilon(1e-12));

    // 2:1 upward skew pulls rho below 1/2
    LevyModel skew = LevyModel::make(0.0, 0.0, StableSpec{1.5, 2.0, 1.0}, true);
    RenewalPair sk = renewal_pair(skew);
    CHECK(sk.rho == doctest::Approx(0.431723).epsilon(1e-5));

    LevyModel drifting = LevyModel::make(0. , 0.5, StableSpec{1.5, 1.0, 1.0});
    CHECK_THROWS_AS(renewal_pair(drifting), std::domain_error);
}

TEST_CASE("green halfline reproduces the dirichlet kernel") {
    RenewalPair bm = renewal_pair(LevyModel::brownian());
    CHECK(green_halfline(bm, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(green_halfline(bm, 3.0, 2.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(green_halfline(bm, 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(green_halfline(bm, 1e-7, 5.0) < 1e-6);

    RenewalPair sym = renewal_pair(make_preset("stable-sym-1.5"));
    for (auto [x, y] : {std::pair{0.3, 4.0}, {1.0, 2.5}, {7.0, 0.2}})
        CHECK(green_halfline(sym, x, y) == doctest::Approx(green_halfline(sym, y, x)).epsilon(1e-7));

    // the two branch formulas meet continuously on the diagonal; the shifted
    // endpoint singularity costs the quadrature a few 1e-5 of accuracy there
    RenewalPair sn = renewal_pair(make_preset("stable-specneg-1.5"));
    double above = green_halfline(sn, 2.0, 2.0 * (1 + 1e-9));
    double below = green_halfline(sn, 2.0, 2.0 * (1 - 1e-9));
    CHECK(above == doctest::Approx(below).epsilon(2e-4));

    CHECK_THROWS_AS(green_halfline(bm, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(green_halfline(bm, 1.0, -2.0), std::domain_error);
}

TEST_CASE("green comparator stays in band") {
    RenewalPair bm = renewal_pair(LevyModel::brownian());
    RatioReport rb = green_comparator_check(bm, log_grid(0.1, 10.0, 8));
    CHECK(rb.within_band);
    CHECK(rb.min_ratio == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(rb.max_ratio == doctest::Approx(1.0).epsilon(1e-7));

    RatioReport rs = green_comparator_check(renewal_pair(make_preset("stable-sym-1.5")),
                                            log_grid(0.05, 20.0, 20));
    CHECK(rs.within_band);
    CHECK(rs.rows.size() == 400);
    CHECK(rs.min_ratio > 0.99);   // comparator never overshoots
    CHECK(rs.max_ratio < 1.51);   // worst pair sits on the diagonal

    RatioReport rn = green_comparator_check(renewal_pair(make_preset("stable-specneg-1.5")),
                                            log_grid(0.05, 20.0, 20));
    CHECK(rn.within_band);
    CHECK(rn.max_ratio < 1.35);

    CHECK_THROWS_AS(green_comparator_check(bm, {}), std::invalid_argument);
    CHECK_THROWS_AS(green_comparator_check(bm, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("V ratio check pins the power") {
    RatioReport rb = V_ratio_check(renewal_pair(LevyModel::brownian()), log_grid(0.01, 100.0, 9));
    for (const RatioRow& r : rb.rows) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));

    RatioReport rs =
        V_ratio_check(renewal_pair(make_preset("stable-sym-1.5")), log_grid(0.01, 100.0, 9));
    CHECK(rs.within_band);
    for (const RatioRow& r : rs.rows) CHECK(r.ratio == doctest::Approx(0.75).epsilon(1e-12));

    RatioReport rn =
        V_ratio_check(renewal_pair(make_preset("stable-specneg-1.5")), log_grid(0.1, 10.0, 5));
    for (const RatioRow& r : rn.rows)
        CHECK(r.ratio == doctest::Approx(r.y == 0.0 ? 1.0 : 0.5).epsilon(1e-12));
}

TEST_CASE("mc pair tracks the factorized preset") {
    LevyModel fac = make_preset("factorized-beta0.4-0.6");
    RenewalPair pair = renewal_pair(fac);
    CHECK(pair.provenance == RenewalPair::Provenance::mc_estimate);

    // tail index 1.6, C_I = tan(0.8 pi)/3: rho = 1/2 + arctan(-C_I)/(1.6 pi)
    double ci = -(1.0 / 3.0) * std::tan(0.8 * kPi);
    double rho_true = 0.5 + std::atan(-ci) / (1.6 * kPi);
    CHECK(pair.rho == doctest::Approx(rho_true).epsilon(0.10));
    CHECK(pair.V(-1.0) == 0.0);
    CHECK(pair.V(0.0) == 0.0);

    // monotone through the grid and beyond it
    std::vector<double> xs = log_grid(0.01, 100.0, 25);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        CHECK(pair.V(xs[i]) > pair.V(xs[i - 1]));
        CHECK(pair.Vhat(xs[i]) > pair.Vhat(xs[i - 1]));
        CHECK(pair.V_prime(xs[i]) > 0.0);
    }

    RatioReport vr = V_ratio_check(pair, log_grid(0.1, 10.0, 8));
    CHECK(vr.within_band);

    RatioReport gr = green_comparator_check(pair, log_grid(0.1, 10.0, 8));
    CHECK(gr.within_band);
    CHECK(gr.max_ratio < 4.0);

    // h V Vhat stays comparable across four decades, extrapolation included
    for (double R : log_grid(0.01, 100.0, 17)) {
        double prod = fac.concentration_h(R) * pair.V(R) * pair.Vhat(R);
        CHECK(prod > 1.0 / 16.0);
        CHECK(prod < 16.0);
    }

    // the measured upper bound still majorizes a direct exit estimate
    MCConfig mc;
    mc.seed = 515;
    mc.n_paths = 2000;
    MCResult exit = estimate_exit_right(fac, 1.0, 4.0, mc);
    double upper = pair.Vhat(1.0) / pair.Vhat(4.0);
    CHECK(exit.estimate <= upper + 3.0 * exit.ci_halfwidth);
    CHECK(exit.estimate >= upper / 16.0 - 3.0 * exit.ci_halfwidth);
}

TEST_CASE("exit bounds brace the ruin oracle") {
    LevyModel bm = LevyModel::brownian();
    RenewalPair pb = renewal_pair(bm);
    auto [lo, up] = exit_right_bounds(bm, pb, 1.0, 4.0);
    CHECK(up == doctest::Approx(0.25).epsilon(1e-12));  // gambler's ruin attains it
    CHECK(lo == doctest::Approx(0.25 / 16.0).epsilon(1e-12));

    LevyModel sym = make_preset("stable-sym-1.5");
    RenewalPair ps = renewal_pair(sym);
    CHECK(exit_right_bounds(sym, ps, 1.0, 16.0).second == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(exit_right_bounds(sym, ps, 3.999, 4.0).second ==
          doctest::Approx(std::pow(3.999 / 4.0, 0.75)).epsilon(1e-12));
    CHECK(exit_right_bounds(sym, ps, 1.0, 4.0, 0.25).first ==
          doctest::Approx(0.25 * std::pow(0.25, 0.75)).epsilon(1e-12));

    MCConfig mc;
    mc.seed = 516;
    mc.n_paths = 2000;
    MCResult est = estimate_exit_right(sym, 1.0, 4.0, mc);
    auto [slo, sup] = exit_right_bounds(sym, ps, 1.0, 4.0);
    CHECK(est.estimate <= sup + 3.0 * est.ci_halfwidth);
    CHECK(est.estimate >= slo - 3.0 * est.ci_halfwidth);

    CHECK_THROWS_AS(exit_right_bounds(bm, pb, 0.0, 4.0), std::domain_error);
    CHECK_THROWS_AS(exit_right_bounds(bm, pb, 4.0, 4.0), std::domain_error);
    CHECK_THROWS_AS(exit_right_bounds(bm, pb, 5.0, 4.0), std::domain_error);
    CHECK_THROWS_AS(exit_right_bounds(bm, pb, 1.0, 4.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(exit_right_bounds(bm, pb, 1.0, 4.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(exit_right_bounds(compact_jumps(), pb, 1.0, 4.0), std::domain_error);
    CHECK_THROWS_AS(exit_right_bounds(LevyModel::make(1.0, 1.0, MeasureSpec{}), pb, 1.0, 4.0),
                    std::domain_error);
}

TEST_CASE("renewal invariants hold on sampled pairs") {
    RenewalPair sym = renewal_pair(make_preset("stable-sym-1.5"));
    RenewalPair sn = renewal_pair(make_preset("stable-specneg-1.5"));

    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> log_u(std::log(1e-3), std::log(1e3));
    for (int i = 0; i < 10000; ++i) {
        double a = std::exp(log_u(gen)), b = std::exp(log_u(gen));
        CHECK(sym.V(a + b) <= (sym.V(a) + sym.V(b)) * (1 + 1e-12));
        CHECK(sn.Vhat(a + b) <= (sn.Vhat(a) + sn.Vhat(b)) * (1 + 1e-12));
    }
    std::uniform_real_distribution<double> lam(1.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
        double x = std::exp(log_u(gen)), l = lam(gen);
        CHECK(sym.V(l * x) <= 2.0 * l * sym.V(x) * (1 + 1e-12));
        CHECK(sn.V(l * x) <= 2.0 * l * sn.V(x) * (1 + 1e-12));
    }

    // h(R) V(R) Vhat(R) is exactly constant for the closed forms; Brownian
    // sits at 1 by the Green-function anchor
    LevyModel bm_model = LevyModel::brownian();
    RenewalPair bm = renewal_pair(bm_model);
    LevyModel sym_model = make_preset("stable-sym-1.5");
    LevyModel sn_model = make_preset("stable-specneg-1.5");
    for (double R : log_grid(0.01, 100.0, 17)) {
        CHECK(bm_model.concentration_h(R) * bm.V(R) * bm.Vhat(R) ==
              doctest::Approx(1.0).epsilon(1e-9));
        double ps = sym_model.concentration_h(R) * sym.V(R) * sym.Vhat(R);
        double pn = sn_model.concentration_h(R) * sn.V(R) * sn.Vhat(R);
        CHECK(ps > 1.0 / 16.0);
        CHECK(ps < 16.0);
        CHECK(pn > 1.0 / 16.0);
        CHECK(pn < 16.0);
    }
}

TEST_CASE("ladder exponents cross validate the stable rho") {
    // spectrally negative: Vhat ~ x^{alpha(1-rho)} = x^{1/2}, V ~ x^{alpha rho} = x
    LevyModel sn = make_preset("stable-specneg-1.5");
    MCConfig fine;
    fine.seed = 777;
    fine.n_paths = 600;
    fine.dt = std::pow(1.0 / 48.0, 1.5);  // spatial scale dt^{2/3} = 1/48
    LadderEstimate lad = ladder_renewal_estimate(sn, {1.0, 2.0, 4.0, 8.0, 16.0}, fine);
    CHECK(fit_log_slope(lad.x, lad.v_hat) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(fit_log_slope(lad.x, lad.v) == doctest::Approx(1.0).epsilon(0.05));

    // symmetric: both exponents 3/4; the heavy ladder-height overshoot leaves
    // a known -4% discretization bias at this step, hence the wider band
    LevyModel sym = make_preset("stable-sym-1.5");
    MCConfig cfg;
    cfg.seed = 778;
    cfg.n_paths = 600;
    cfg.dt = std::pow(1.0 / 32.0, 1.5);
    LadderEstimate ls = ladder_renewal_estimate(sym, {1.0, 2.0, 4.0, 8.0, 16.0}, cfg);
    CHECK(fit_log_slope(ls.x, ls.v) == doctest::Approx(0.75).epsilon(0.08));
    CHECK(fit_log_slope(ls.x, ls.v_hat) == doctest::Approx(0.75).epsilon(0.08));
}
