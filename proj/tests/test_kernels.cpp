#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "levyhit/kernels.hpp"
#include "levyhit/levy_model.hpp"
#include "levyhit/numerics.hpp"

using namespace levyhit;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Brownian (sigma=1) closed forms: psi = xi^2, variance 2t
double bm_density(double t, double x) { return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t); }
double bm_resolvent(double lambda, double x) {
    return std::exp(-std::sqrt(lambda) * std::abs(x)) / (2.0 * std::sqrt(lambda));
}

// Brownian with drift mu: psi = xi^2 - i mu xi, u^l(0) = 1/sqrt(mu^2+4l),
// kappa = |mu|, and for mu > 0: K(x>0) = 0, K(x<0) = (1 - e^{-mu|x|})/mu.
LevyModel drift_brownian(double mu) { return LevyModel::make(1.0, mu, MeasureSpec{}); }

// stable measure replicated through the quadrature-backed factorized path
LevyModel factorized_stable(double alpha, double c_u, double c_d) {
    FactorizedSpec f;
    f.c_u = c_u;
    f.c_d = c_d;
    f.profile = PowerF{alpha - 1.0};
    f.beta1 = alpha - 1.0;
    f.beta2 = alpha - 1.0;
    return LevyModel::make(0.0, 0.0, std::move(f), true);
}

// one-sided density z^{-2} on z >= 1: no first moment, Im psi < 0 near 0,
// diverging first tail moment -- none of the existence witnesses applies
LevyModel heavy_one_sided() {
    TabulatedSpec t;
    t.density = [](double z) { return z >= 1.0 ? 1.0 / (z * z) : 0.0; };
    t.right_tail = [](double r) { return 1.0 / std::max(r, 1.0); };
    t.left_tail = [](double) { return 0.0; };
    t.label = "one-sided z^-2";
    return LevyModel::make(0.0, 0.0, std::move(t));
}

// mass over [-X, X] plus the t nu(|z| > X) tail equivalent; beyond the window the
// density is power-tail and a direct oscillatory evaluation would only return noise
double total_mass(const LevyModel& m, double t, double X) {
    auto upper = integrate_adaptive([&](double x) { return transition_density(m, t, x); }, 0.0, X,
                                    {1e-6, 1e-9, 400});
    auto lower = integrate_adaptive([&](double x) { return transition_density(m, t, -x); }, 0.0, X,
                                    {1e-6, 1e-9, 400});
    return upper.value + lower.value + t * (m.nu_right_tail(X) + m.nu_left_tail(X));
}

}  // namespace

TEST_CASE("transition density closed forms") {
    LevyModel bm = LevyModel::brownian();
    CHECK(transition_density(bm, 1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-9));
    CHECK(transition_density(bm, 1.0, 2.0) == doctest::Approx(bm_density(1.0, 2.0)).epsilon(1e-9));
    CHECK(transition_density(bm, 1.0, -2.0) == doctest::Approx(bm_density(1.0, 2.0)).epsilon(1e-9));
    CHECK(transition_density(bm, 2.0, 0.5) == doctest::Approx(bm_density(2.0, 0.5)).epsilon(1e-9));

    // p(1,0) = (1/pi) int_0^inf e^{-xi^alpha} d xi = Gamma(1+1/alpha)/pi
    LevyModel sym = LevyModel::symmetric_stable(1.5);
    CHECK(transition_density(sym, 1.0, 0.0) ==
          doctest::Approx(std::tgamma(1.0 + 2.0 / 3.0) / kPi).epsilon(1e-8));

    // spectrally negative: psi(xi) = xi^1.5 (1 - i sgn xi), so at x=0
    // p(1,0) = (1/pi) Re int e^{-(1-i) xi^1.5} d xi = (2/(3 pi)) Gamma(2/3) 2^{-1/3} cos(pi/6)
    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    double want = 2.0 / (3.0 * kPi) * std::tgamma(2.0 / 3.0) * std::pow(2.0, -1.0 / 3.0) *
                  std::cos(kPi / 6.0);
    CHECK(transition_density(sn, 1.0, 0.0) == doctest::Approx(want).epsilon(1e-8));

    CHECK_THROWS_AS(transition_density(bm, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(transition_density(bm, -1.0, 0.0), std::domain_error);
}

TEST_CASE("transition density integrates to one") {
    CHECK(total_mass(LevyModel::brownian(), 1.0, 15.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(total_mass(LevyModel::symmetric_stable(1.5), 1.0, 100.0) ==
          doctest::Approx(1.0).epsilon(1e-4));
    // asymmetric case: both halves carry different mass
    CHECK(total_mass(LevyModel::spectrally_negative_stable(1.5), 1.0, 100.0) ==
          doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("resolvent kernel closed forms") {
    LevyModel bm = LevyModel::brownian();
    CHECK(u_lambda(bm, 4.0, 0.0).value == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(u_lambda(bm, 1.0, 1.0).value == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-8));
    CHECK(u_lambda(bm, 1.0, -1.0).value == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-8));
    CHECK(u_lambda(bm, 0.25, 2.0).value == doctest::Approx(bm_resolvent(0.25, 2.0)).epsilon(1e-8));

    LevyModel dm = drift_brownian(1.0);
    CHECK(u_lambda(dm, 1.0, 0.0).value == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-8));
    CHECK(u_lambda(dm, 2.0, 0.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    // u^1(0) = (1/pi) int d xi/(1+xi^alpha) = 1/(alpha sin(pi/alpha))
    LevyModel sym = LevyModel::symmetric_stable(1.5);
    CHECK(u_lambda(sym, 1.0, 0.0).value ==
          doctest::Approx(1.0 / (1.5 * std::sin(kPi / 1.5))).epsilon(1e-7));

    CHECK_THROWS_AS(u_lambda(bm, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(u_lambda(bm, -1.0, 1.0), std::domain_error);
}

TEST_CASE("resolvent kernel monotonicity") {
    for (const auto& m : {LevyModel::brownian(), LevyModel::symmetric_stable(1.5),
                          LevyModel::spectrally_negative_stable(1.5)}) {
        double prev = kInf;
        for (double lambda : {1.0, 2.0, 4.0, 8.0}) {
            double u0 = u_lambda(m, lambda, 0.0).value;
            CHECK(u0 > 0.0);
            CHECK(u0 < prev);
            prev = u0;
        }
        for (double x : {-3.0, -1.0, 0.3, 1.0, 3.0}) {
            auto u0 = u_lambda(m, 1.0, 0.0);
            auto ux = u_lambda(m, 1.0, x);
            CHECK(u0.value + 3.0 * (u0.error_estimate + ux.error_estimate) >= ux.value);
        }
    }
}

TEST_CASE("compensated resolvent kernel") {
    LevyModel bm = LevyModel::brownian();
    auto at_zero = K_lambda(bm, 2.0, 0.0);
    CHECK(at_zero.value == 0.0);
    CHECK(at_zero.lambda == 2.0);

    // K^l(x) = (1 - e^{-sqrt(l)|x|})/(2 sqrt(l)) for Brownian
    CHECK(K_lambda(bm, 1.0, 1.0).value == doctest::Approx((1.0 - std::exp(-1.0)) / 2.0).epsilon(1e-8));
    CHECK(K_lambda(bm, 4.0, 0.5).value == doctest::Approx((1.0 - std::exp(-1.0)) / 4.0).epsilon(1e-8));
    CHECK(K_lambda(bm, 0.25, -2.0).value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-8));

    // symmetric model: K^l(x) = K^l(-x) = H^l(x)/2
    LevyModel sym = LevyModel::symmetric_stable(1.2);
    for (double x : {0.5, 2.0}) {
        auto kp = K_lambda(sym, 1.0, x);
        auto km = K_lambda(sym, 1.0, -x);
        auto h = H_sym(sym, x, 1.0);
        double slack = 3.0 * (kp.error_estimate + km.error_estimate + h.error_estimate) + 1e-12;
        CHECK(std::abs(kp.value - km.value) <= slack);
        CHECK(std::abs(kp.value - h.value / 2.0) <= slack);
        CHECK(kp.value >= 0.0);
    }

    // subadditivity K^l(x+y) <= K^l(x) + K^l(y)
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.4, 0.7}, {1.0, 2.0}, {0.1, 0.1}}) {
        auto a = K_lambda(sym, 1.0, x);
        auto b = K_lambda(sym, 1.0, y);
        auto c = K_lambda(sym, 1.0, x + y);
        CHECK(c.value <= a.value + b.value + 3.0 * (a.error_estimate + b.error_estimate + c.error_estimate));
    }

    CHECK_THROWS_AS(K_lambda(bm, 0.0, 1.0), std::domain_error);
}

TEST_CASE("kernel consistency chain") {
    // K^l(x) + K^l(-x) = H^l(x) at random (lambda, x)
    std::mt19937 rng(20240518);
    std::uniform_real_distribution<double> log_l(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> log_x(std::log(0.1), std::log(3.0));
    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    for (int i = 0; i < 50; ++i) {
        double lambda = std::exp(log_l(rng));
        double x = std::exp(log_x(rng)) * (i % 2 == 0 ? 1.0 : -1.0);
        auto kp = K_lambda(sn, lambda, x);
        auto km = K_lambda(sn, lambda, -x);
        auto h = H_sym(sn, x, lambda);
        double slack = 3.0 * (kp.error_estimate + km.error_estimate + h.error_estimate) + 1e-12;
        CHECK(std::abs(kp.value + km.value - h.value) <= slack);
    }
    // one pass through the quadrature-table path as well
    LevyModel fa = factorized_stable(1.5, 2.0, 1.0);
    for (double x : {0.5, 1.5}) {
        auto kp = K_lambda(fa, 0.7, x);
        auto km = K_lambda(fa, 0.7, -x);
        auto h = H_sym(fa, x, 0.7);
        double slack = 3.0 * (kp.error_estimate + km.error_estimate + h.error_estimate) + 1e-9;
        CHECK(std::abs(kp.value + km.value - h.value) <= slack);
    }
}

TEST_CASE("symmetrized kernel closed forms") {
    LevyModel bm = LevyModel::brownian();
    CHECK(H_sym(bm, 0.0).value == 0.0);
    CHECK(H_sym(bm, 1.0).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(H_sym(bm, -2.5).value == doctest::Approx(2.5).epsilon(1e-8));

    // unit symmetric stable: H(x) = (2/pi) one_minus_cos_moment(alpha) |x|^{alpha-1}
    for (double alpha : {1.2, 1.5, 1.8}) {
        LevyModel sym = LevyModel::symmetric_stable(alpha);
        double c = 2.0 / kPi * one_minus_cos_moment(alpha);
        CHECK(H_sym(sym, 1.0).value == doctest::Approx(c).epsilon(1e-7));
        CHECK(H_sym(sym, -1.0).value == doctest::Approx(c).epsilon(1e-7));
        CHECK(H_sym(sym, 2.0).value / H_sym(sym, 1.0).value ==
              doctest::Approx(std::pow(2.0, alpha - 1.0)).epsilon(1e-6));
    }

    // spectrally negative 1.5: Re[1/psi] halves, H(1) = sqrt(2 pi)/pi
    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    CHECK(H_sym(sn, 1.0).value == doctest::Approx(std::sqrt(2.0 * kPi) / kPi).epsilon(1e-7));

    CHECK_THROWS_AS(H_sym(bm, 1.0, -0.5), std::domain_error);
}

TEST_CASE("symmetrized kernel lambda limit") {
    LevyModel sym = LevyModel::symmetric_stable(1.5);
    double h = H_sym(sym, 1.0).value;
    double prev = kInf;
    double first = 0.0;
    for (int k = 0; k <= 10; k += 2) {
        double d = std::abs(H_sym(sym, 1.0, std::ldexp(1.0, -k)).value - h);
        if (k == 0) first = d;
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.01 * first);
}

TEST_CASE("symmetrized kernel subadditivity") {
    // aligned grid makes x_i + x_j land on a precomputed node; ~2e4 pairs
    for (const auto& m : {LevyModel::brownian(), LevyModel::symmetric_stable(1.5)}) {
        const int n = 200;
        const double step = 0.05;
        std::vector<double> h(n + 1, 0.0), e(n + 1, 0.0);
        for (int i = 1; i <= n; ++i) {
            auto v = H_sym(m, i * step);
            h[i] = v.value;
            e[i] = v.error_estimate;
        }
        int violations = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = i; i + j <= n; ++j)
                if (h[i + j] > h[i] + h[j] + 3.0 * (e[i] + e[j] + e[i + j])) ++violations;
        CHECK(violations == 0);
    }
}

TEST_CASE("existence evidence picks the first applicable witness") {
    auto sym = K_exists_evidence(LevyModel::symmetric_stable(1.5));
    CHECK(sym.exists);
    CHECK(sym.witness == KWitness::im_sign);

    // downward drift: Im psi = +mu xi >= 0
    auto down = K_exists_evidence(drift_brownian(-1.0));
    CHECK(down.exists);
    CHECK(down.witness == KWitness::im_sign);

    // upward drift: Im psi < 0 near zero, but the mean is nonzero
    auto up = K_exists_evidence(drift_brownian(1.0));
    CHECK(up.exists);
    CHECK(up.witness == KWitness::nonzero_mean);
    CHECK(up.detail == doctest::Approx(1.0));

    // centered spectrally negative: zero mean, Im psi < 0, but the tail moment
    // is dominated by r h(r) (both sides are the same power of r)
    auto sn = K_exists_evidence(LevyModel::spectrally_negative_stable(1.5));
    CHECK(sn.exists);
    CHECK(sn.witness == KWitness::tail_bound);
    CHECK(sn.detail > 0.0);
    CHECK(std::isfinite(sn.detail));

    auto none = K_exists_evidence(heavy_one_sided());
    CHECK_FALSE(none.exists);
    CHECK(none.witness == KWitness::none);
}

TEST_CASE("compensated kernel without lambda") {
    LevyModel bm = LevyModel::brownian();
    CHECK(K_compensated(bm, 0.0).value == 0.0);
    CHECK(K_compensated(bm, 1.0).value == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(K_compensated(bm, -1.0).value == doctest::Approx(0.5).epsilon(1e-7));

    for (double x : {0.7, 2.0}) {
        LevyModel sym = LevyModel::symmetric_stable(1.5);
        auto k = K_compensated(sym, x);
        auto h = H_sym(sym, x);
        CHECK(k.value == doctest::Approx(h.value / 2.0).epsilon(1e-7));
    }

    // spectrally negative: all of H sits on the negative side
    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    double h1 = std::sqrt(2.0 * kPi) / kPi;
    CHECK(std::abs(K_compensated(sn, 1.0).value) < 1e-7);
    CHECK(K_compensated(sn, -1.0).value == doctest::Approx(h1).epsilon(1e-7));

    // skewed jumps: K(x)/H(|x|) = (1 + sgn(x) beta)/2 with beta = (c_u-c_d)/(c_u+c_d)
    LevyModel fa = factorized_stable(1.5, 2.0, 1.0);
    double h = H_sym(fa, 1.0).value;
    CHECK(K_compensated(fa, 1.0).value / h == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
    CHECK(K_compensated(fa, -1.0).value / h == doctest::Approx(1.0 / 3.0).epsilon(1e-4));

    CHECK_THROWS_WITH_AS(K_compensated(heavy_one_sided(), 1.0), "K_compensated: existence not certified",
                         std::runtime_error);
}

TEST_CASE("compensated kernel agrees with the lambda limit") {
    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    for (double x : {1.0, -1.0}) {
        double target = K_compensated(sn, x).value;
        std::vector<double> w;
        double accel = 0.0;
        for (int k = 0; k <= 14; ++k) {
            w.push_back(K_lambda(sn, std::ldexp(1.0, -k), x).value);
            if (w.size() >= 3) {
                size_t n = w.size();
                double d1 = w[n - 2] - w[n - 1];
                double d2 = w[n - 3] - w[n - 2];
                accel = std::abs(d2 - d1) > 1e-300 ? w[n - 1] - d1 * d1 / (d2 - d1) : w[n - 1];
            }
        }
        CHECK(std::abs(accel - target) <= 1e-4);
    }
}

TEST_CASE("kappa closed forms") {
    CHECK(kappa(LevyModel::brownian()) == 0.0);
    CHECK(kappa(LevyModel::symmetric_stable(1.5)) == 0.0);
    CHECK(kappa(LevyModel::spectrally_negative_stable(1.5)) == 0.0);

    // Brownian with drift: u^l(0) = 1/sqrt(mu^2+4l), kappa = |mu|
    CHECK(kappa(drift_brownian(1.0)) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(kappa(drift_brownian(0.5)) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(kappa(drift_brownian(-1.0)) == doctest::Approx(1.0).epsilon(1e-5));

    // spectrally negative with positive mean: kappa = E X_1 exactly
    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    LevyModel snd = LevyModel::make(0.0, sn.gamma() + 1.0, sn.measure());
    REQUIRE(snd.mean().has_value());
    CHECK(*snd.mean() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kappa(snd) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("survival probability of hitting zero") {
    CHECK(survival_prob_T0(LevyModel::brownian(), 3.0) == 0.0);
    CHECK(survival_prob_T0(LevyModel::symmetric_stable(1.5), -2.0) == 0.0);

    // Brownian drift mu > 0 from x > 0: P(T_0 = inf) = 1 - e^{-mu x}; from x < 0
    // the process crosses zero continuously, so it hits almost surely
    LevyModel dm = drift_brownian(1.0);
    for (double x : {0.5, 1.0, 2.0}) {
        CHECK(survival_prob_T0(dm, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-5));
    }
    CHECK(survival_prob_T0(dm, -1.5) <= 1e-6);

    LevyModel sn = LevyModel::spectrally_negative_stable(1.5);
    LevyModel snd = LevyModel::make(0.0, sn.gamma() + 1.0, sn.measure());
    double s1 = survival_prob_T0(snd, 1.0);
    double s2 = survival_prob_T0(snd, 2.0);
    CHECK(s1 > 0.0);
    CHECK(s1 < 1.0);
    CHECK(s2 > s1);
    CHECK(survival_prob_T0(snd, -1.0) <= 1e-6);
    // escape probability grows toward 1, but only at rate x^{alpha-2} here
    double s50 = survival_prob_T0(snd, 50.0);
    CHECK(s50 <= 1.0);
    CHECK(s50 > s2);

    // transience cross-check: 1 - u^l(-x)/u^l(0) -> P^x(T_0 = inf) as l -> 0
    auto u0 = u_lambda(snd, 1e-6, 0.0);
    auto um = u_lambda(snd, 1e-6, -1.0);
    CHECK(1.0 - um.value / u0.value == doctest::Approx(s1).epsilon(5e-3));
}

TEST_CASE("potential kernel comparability band") {
    // r h(r) H(r) stays within [1/16, 16] across six decades
    std::vector<LevyModel> models = {
        LevyModel::brownian(),           LevyModel::symmetric_stable(1.2),
        LevyModel::symmetric_stable(1.5), LevyModel::symmetric_stable(1.8),
        LevyModel::spectrally_negative_stable(1.5), factorized_stable(1.5, 2.0, 1.0)};
    for (const auto& m : models) {
        for (int i = 0; i <= 12; ++i) {
            double r = std::pow(10.0, -3.0 + 0.5 * i);
            double band = r * m.concentration_h(r) * H_sym(m, r).value;
            CHECK(band >= 1.0 / 16.0);
            CHECK(band <= 16.0);
        }
    }
}

TEST_CASE("half-line Green function bound at the Brownian oracle") {
    // G(x,y) = x ^ y for the free process off {0}; dominated by H(x) ^ H(y) = |x| ^ |y|
    LevyModel bm = LevyModel::brownian();
    for (auto [x, y] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 2.0}, {2.0, 0.7}, {3.0, 3.0}}) {
        double g = std::min(x, y);
        auto hx = H_sym(bm, x);
        auto hy = H_sym(bm, y);
        CHECK(g <= std::min(hx.value, hy.value) + 3.0 * (hx.error_estimate + hy.error_estimate));
    }
}
