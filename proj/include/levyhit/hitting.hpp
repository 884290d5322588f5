#pragma once

#include <string>
#include <utility>
#include <vector>

#include "levyhit/fluctuation.hpp"
#include "levyhit/levy_model.hpp"

namespace levyhit {

// Comparability constants of the exponent on a six-decade log grid:
// a = inf Re psi / psi* (so a psi* <= Re psi) and b = sup |Im psi| / Re psi.
// Every op below that uses them refuses models where b exceeds 100, the
// signature of a ratio diverging at small frequencies (uncentered drift).
struct PsiComparability {
    double a = 1.0;
    double b = 0.0;
    double grid_lo = 1e-3;
    double grid_hi = 1e3;
};
PsiComparability psi_comparability(const LevyModel& model);

// Certification that K^lambda(x) stays comparable to H(x) for lambda of the
// order of h(x): for each grid x, the minimum of K^lambda(x)/H(x) over
// lambda in {h, h/2, h/4, h/8}(|x|) must clear the floor. Rows reuse
// RatioRow as (x, lambda, K^lambda(x), H(x), ratio).
struct KLowerReport {
    bool certified = false;
    double floor = 0.05;
    double min_ratio = 0.0;
    std::vector<RatioRow> rows;
    std::string note;
};
KLowerReport verify_K_lower(const LevyModel& model, const std::vector<double>& x_grid,
                            double floor = 0.05);

// Two-sided envelope for the resolvent at zero:
// a/(4(1+b^2)) H(1/(Re psi)^{-1}(lambda)) <= u^lambda(0) <= 2 pi^2 (1+b^2)/a H(...).
std::pair<double, double> u_lambda_sandwich(const LevyModel& model, double lambda);

// Upper bound on the point-avoidance probability P^x(T_0 > t):
// 4(e-1)/e (1+b^2)/a H(x)/H(1/(Re psi)^{-1}(1/t)), clamped to 1.
double T0_upper(const LevyModel& model, double x, double t);

// Constant-free lower comparator 1 ^ H(x)/H(h^{-1}(1/t)) for the same
// probability; valid only under the K-lower certification, which must come
// from the same model.
double T0_lower_comparator(const LevyModel& model, const KLowerReport& cert, double x,
                           double t);

// One comparator cell for interval hitting; mc fields are filled by whoever
// runs the paths.
struct ComparatorReport {
    double x = 0.0;
    double R = 0.0;
    double t = 0.0;
    enum class Regime { small_time, large_time };
    Regime regime = Regime::small_time;
    double comparator = 0.0;   // clamped to [0, 1]
    double mc_estimate = 0.0;
    double ci_halfwidth = 0.0;
    double ratio = 0.0;        // mc_estimate / comparator
};

// Sharp comparator for P^x(T_{[-R,R]} > t), x > R: small time (t < 1/h(R))
// uses Vhat(x-R)/Vhat(h^{-1}(1/t)), large time Vhat(x-R)/Vhat(x) *
// H(x)/H(h^{-1}(1/t)), both clamped to 1. The renewal pair and the K-lower
// certification must belong to the model.
ComparatorReport interval_comparator(const LevyModel& model, const RenewalPair& pair,
                                     const KLowerReport& cert, double x, double R, double t);

// Spectrally negative case, valid for all t with no regime split:
// H(x-R)/H(h^{-1}(1/t)) ^ 1 right of the target, |x+R|/h^{-1}(1/t) ^ 1 left
// of it (where hitting coincides with first passage through -R).
double spectrally_negative_comparator(const LevyModel& model, double x, double R, double t);

}  // namespace levyhit
