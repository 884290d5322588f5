#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "levyhit/levy_model.hpp"
#include "levyhit/mc_engine.hpp"

namespace levyhit {

// Renewal functions of the ascending (V) and descending (Vhat) ladder-height
// processes, with derivatives; V(x) = Vhat(x) = 0 for x <= 0. Stable models
// get the exact power laws V(x) = v x^{alpha rho}, Vhat(x) = vhat x^{alpha
// (1-rho)} with rho the positivity parameter, normalized so the half-line
// Green function degenerates to min(x, y) in the Brownian limit. Other
// centered models get a Monte Carlo ladder estimate: log-log interpolation
// through measured record counts with power-law extrapolation beyond the
// grid, and rho read off the fitted exponents. Pairs are immutable and the
// function objects are reentrant.
struct RenewalPair {
    enum class Provenance { closed_form, mc_estimate };
    std::function<double(double)> V;
    std::function<double(double)> Vhat;
    std::function<double(double)> V_prime;
    std::function<double(double)> Vhat_prime;
    Provenance provenance = Provenance::closed_form;
    double rho = 0.5;
    std::string note;
};

// mc is consulted only on the Monte Carlo path; renewal_mc_defaults() trims
// the path count so a factorized model builds in seconds.
MCConfig renewal_mc_defaults();
RenewalPair renewal_pair(const LevyModel& model, const MCConfig& mc = renewal_mc_defaults());

// G_{(0,inf)}(x, y): occupation density at y for the process started at
// x > 0 and killed on leaving (0, inf). Computed as
// int_0^x Vhat'(u) V'(y - x + u) du for y >= x and through the dual form
// int_0^y V'(u) Vhat'(x - y + u) du for y < x.
double green_halfline(const RenewalPair& pair, double x, double y);

// One row of a ratio comparison; the column meaning is fixed by the
// operation that produced the report.
struct RatioRow {
    double x = 0.0;
    double y = 0.0;  // second coordinate, or a side tag where noted
    double value = 0.0;
    double comparator = 0.0;
    double ratio = 0.0;
};

struct RatioReport {
    std::vector<RatioRow> rows;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool within_band = false;
    std::string note;
};

// green_halfline against the product comparator Vhat(x) V'(y) for x <= y,
// Vhat'(x) V(y) for y < x, over grid x grid.
RatioReport green_comparator_check(const RenewalPair& pair, const std::vector<double>& grid,
                                   double band_lo = 1.0 / 8.0, double band_hi = 8.0);

// x V'(x) / V(x) on rows tagged y = 0 and x Vhat'(x) / Vhat(x) on rows
// tagged y = 1; exactly alpha rho resp. alpha (1 - rho) for closed forms.
RatioReport V_ratio_check(const RenewalPair& pair, const std::vector<double>& grid,
                          double band_lo = 0.1, double band_hi = 10.0);

// Bounds on P^x(the path leaves (0, R) at or above R before dropping to 0 or
// below): upper = Vhat(x)/Vhat(R) with exact constant 1, lower = lower_c *
// upper with a configured constant that is a convention, not a claim.
// Requires a centered model whose fitted weak lower scaling index exceeds 1.
std::pair<double, double> exit_right_bounds(const LevyModel& model, const RenewalPair& pair,
                                            double x, double R, double lower_c = 1.0 / 16.0);

}  // namespace levyhit
