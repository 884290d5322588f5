#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levyhit/levy_model.hpp"

namespace levyhit {

// Per-path generator: xoshiro256++ seeded from (seed, path index) through
// splitmix64. Every path owns an independent stream, so estimates cannot
// depend on how paths are sharded across workers.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index);

    std::uint64_t next_u64();
    double uniform01();     // (0, 1]
    double exponential();   // rate 1
    double gaussian();      // standard normal, Box-Muller with a cached spare

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct MCConfig {
    std::uint64_t seed = 20240518;
    long n_paths = 10000;          // at least 100
    double dt = 0.0;               // <= 0 picks 1/h(target width / 10)
    double t_max = 0.0;            // <= 0 picks an operation-specific horizon
    double point_proxy_eps = 0.05;
};

struct MCResult {
    double estimate = 0.0;
    double ci_halfwidth = 0.0;     // 95%: Wilson for probabilities, normal for means
    long n_effective = 0;
    std::string bias_note;
};

// Target set for first-hitting estimates: the centered interval [-R, R], or
// the point {0} stood in for by [-eps, eps].
struct HitTarget {
    enum class Kind { interval, point_proxy };
    Kind kind = Kind::interval;
    double radius = 1.0;

    static HitTarget interval(double R);
    static HitTarget point_proxy(double eps);
    double width() const { return 2.0 * radius; }
};

// One skeleton increment X_{(k+1)dt} - X_{k dt}, precomputed per (model, dt).
// Brownian part is Gaussian with variance 2 sigma^2 dt; stable jumps go
// through the Chambers-Mallows-Stuck transform; factorized measures split at
// a threshold delta with nu(|z| > delta) dt = 1: jumps above delta arrive as
// a compound Poisson pair sampled by tail inversion, jumps below fold into
// the Gaussian by moment matching, and the mean is restored by a drift
// compensator. Tabulated measures are refused.
class IncrementSampler {
public:
    IncrementSampler(const LevyModel& model, double dt);
    ~IncrementSampler();
    IncrementSampler(IncrementSampler&&) noexcept;

    double operator()(PathRng& rng) const;
    double dt() const;
    std::string describe() const;

private:
    struct Impl;
    std::unique_ptr<const Impl> impl_;
};

double sample_increment(const LevyModel& model, double dt, PathRng& rng);

// Survival curve P^x(T_target > t) for every t in t_grid, from one path
// ensemble: each path records its first entry time into the target and all
// grid times share the counts. Requires x outside the target and the grid
// inside the simulation horizon.
std::vector<MCResult> estimate_hitting_tail(const LevyModel& model, double x,
                                            const HitTarget& target,
                                            const std::vector<double>& t_grid,
                                            const MCConfig& cfg);

// P^x(path exits (0, R) at or above R before dropping to 0 or below),
// 0 < x < R. Paths still undecided at the horizon are dropped from
// n_effective and noted.
MCResult estimate_exit_right(const LevyModel& model, double x, double R,
                             const MCConfig& cfg);

// Positions X_{T_B} at the first entry into B = [-R, R]. Paths that have not
// entered by the horizon are skipped; attempted records the full count.
struct HitPositionSample {
    std::vector<double> positions;
    long attempted = 0;
    std::string note;
};
HitPositionSample sample_hit_positions(const LevyModel& model, double x, double R,
                                       const MCConfig& cfg);

// Renewal function estimates from ladder record counts of the path skeleton:
// v_hat from strict descending records (depth in (0, x]), v from ascending
// ones. Counts are scaled by sqrt(dt), the normalization under which the
// Brownian pair converges to V(x) = Vhat(x) = x; an optional anchor rescales
// v_hat (and v) so the estimate matches a known value at one pivot.
struct LadderAnchor {
    double x0 = 1.0;
    double value = 1.0;
};
struct LadderEstimate {
    std::vector<double> x;
    std::vector<double> v_hat;
    std::vector<double> v_hat_ci;
    std::vector<double> v;
    std::vector<double> v_ci;
    double ladder_epochs_per_path = 0.0;  // descending, diagnostic
    std::string note;
};
LadderEstimate ladder_renewal_estimate(const LevyModel& model,
                                       const std::vector<double>& x_grid,
                                       const MCConfig& cfg,
                                       std::optional<LadderAnchor> vhat_anchor = {},
                                       std::optional<LadderAnchor> v_anchor = {});

// Worker count for path-parallel loops: LEVY_HIT_THREADS when set, else the
// hardware count. Results never depend on it.
int mc_worker_count();

}  // namespace levyhit
