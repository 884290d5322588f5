#include "levyhit/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levyhit/asymptotics.hpp"
#include "levyhit/csv.hpp"
#include "levyhit/fluctuation.hpp"
#include "levyhit/hitting.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/mc_engine.hpp"
#include "levyhit/model_io.hpp"
#include "levyhit/numerics.hpp"

namespace levyhit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double parse_double(const std::string& text, const char* what) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::invalid_argument(std::string(what) + ": '" + text + "' is not a number");
    return v;
}

long parse_count(const std::string& text, const char* what) {
    char* end = nullptr;
    long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || v < 0)
        throw std::invalid_argument(std::string(what) + ": '" + text + "' is not a count");
    return v;
}

void check_overrides(const std::map<std::string, std::string>& overrides,
                     std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : overrides) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw std::invalid_argument("unrecognized option '" + key + "' for this command");
    }
}

std::string get_or(const std::map<std::string, std::string>& overrides, const std::string& key,
                   const std::string& fallback) {
    auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
}

// writes the table to the output path, or inlines it into the stream
void emit(const CsvWriter& csv, const RunSpec& spec, std::ostream& out) {
    if (spec.output.empty()) {
        out << csv.str();
    } else {
        csv.write_atomic(spec.output);
        out << "wrote " << spec.output << "\n";
    }
}

int cmd_psi(const RunSpec& spec, std::ostream& out) {
    check_overrides(spec.overrides, {"xi-grid"});
    LevyModel model = resolve_model(spec.model_file);
    std::vector<double> grid = parse_log_grid(get_or(spec.overrides, "xi-grid", "1e-3:1e3:64"));
    CsvWriter csv({"xi", "re_psi", "im_psi"});
    csv.set_meta("command", "psi");
    csv.set_meta("model", spec.model_file);
    for (double xi : grid) csv.add_row({xi, model.re_psi(xi), model.im_psi(xi)});
    emit(csv, spec, out);
    return 0;
}

int cmd_kernel(const RunSpec& spec, std::ostream& out) {
    check_overrides(spec.overrides, {"lambda", "x-grid"});
    LevyModel model = resolve_model(spec.model_file);
    double lambda = parse_double(get_or(spec.overrides, "lambda", "1"), "lambda");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    std::vector<double> grid = parse_log_grid(get_or(spec.overrides, "x-grid", "0.25:8:12"));
    CsvWriter csv({"x", "u_lambda", "K_lambda", "H"});
    csv.set_meta("command", "kernel");
    csv.set_meta("model", spec.model_file);
    csv.set_meta("lambda", lambda);
    for (double x : grid)
        csv.add_row({x, u_lambda(model, lambda, x).value, K_lambda(model, lambda, x).value,
                     H_sym(model, x).value});
    emit(csv, spec, out);
    return 0;
}

int cmd_asymp(const RunSpec& spec, std::ostream& out) {
    check_overrides(spec.overrides, {});
    LevyModel model = resolve_model(spec.model_file);
    CsvWriter csv({"check", "grid_point", "ratio", "predicted"});
    csv.set_meta("command", "asymp");
    csv.set_meta("model", spec.model_file);

    AsymptoticReport tail = nu_tail_asymptotic_check(model);
    csv.set_meta("nu_tail_converged", tail.converged ? "yes" : "no");
    for (const auto& [t, ratio] : tail.empirical_ratio_curve)
        csv.add_row({"nu_tail", format_double(t), format_double(ratio),
                     format_double(tail.predicted_constant)});

    AsymptoticReport imre = im_re_limit(model);
    csv.set_meta("im_re_converged", imre.converged ? "yes" : "no");
    for (const auto& [xi, ratio] : imre.empirical_ratio_curve)
        csv.add_row({"im_re", format_double(xi), format_double(ratio),
                     format_double(imre.predicted_constant)});

    try {
        auto [alpha, ci] = stability_exponents(model);
        csv.set_meta("alpha", alpha);
        csv.set_meta("C_I", ci);
    } catch (const std::exception&) {
        // exponents only exist for centered models with alpha in (1, 2]
    }
    emit(csv, spec, out);
    return 0;
}

int cmd_fluct(const RunSpec& spec, std::ostream& out) {
    check_overrides(spec.overrides, {"x-grid", "seed", "mc-paths"});
    LevyModel model = resolve_model(spec.model_file);
    MCConfig mc = renewal_mc_defaults();
    if (spec.overrides.count("seed"))
        mc.seed = static_cast<std::uint64_t>(parse_count(spec.overrides.at("seed"), "seed"));
    if (spec.overrides.count("mc-paths"))
        mc.n_paths = parse_count(spec.overrides.at("mc-paths"), "mc-paths");

    RenewalPair pair = renewal_pair(model, mc);
    std::vector<double> grid = parse_log_grid(get_or(spec.overrides, "x-grid", "0.25:8:7"));
    RatioReport report = green_comparator_check(pair, grid);

    CsvWriter csv({"x", "y", "green", "comparator", "ratio"});
    csv.set_meta("command", "fluct");
    csv.set_meta("model", spec.model_file);
    csv.set_meta("rho", pair.rho);
    csv.set_meta("V(1)", pair.V(1.0));
    csv.set_meta("Vhat(1)", pair.Vhat(1.0));
    bool randomized = pair.provenance == RenewalPair::Provenance::mc_estimate;
    csv.set_meta("provenance", randomized ? "mc" : "closed-form");
    if (randomized) csv.set_meta("seed", format_double(static_cast<double>(mc.seed)));
    csv.set_meta("green_band", report.within_band ? "ok" : "violated");
    for (const RatioRow& row : report.rows)
        csv.add_row({row.x, row.y, row.value, row.comparator, row.ratio});
    if (randomized) out << "seed: " << mc.seed << "\n";
    emit(csv, spec, out);
    return 0;
}

int cmd_hit(const RunSpec& spec, std::ostream& out) {
    check_overrides(spec.overrides, {"x", "R", "t-grid", "mc-paths", "seed", "dt", "t-max"});
    LevyModel model = resolve_model(spec.model_file);
    if (!spec.overrides.count("x")) throw std::invalid_argument("hit needs --x");
    double x = parse_double(spec.overrides.at("x"), "x");
    double R = parse_double(get_or(spec.overrides, "R", "1"), "R");
    std::vector<double> t_grid = parse_log_grid(get_or(spec.overrides, "t-grid", "0.1:100:10"));
    long mc_paths = parse_count(get_or(spec.overrides, "mc-paths", "0"), "mc-paths");

    bool spectral = model.spectrally_negative();
    RenewalPair pair;
    KLowerReport cert;
    if (!spectral) {
        pair = renewal_pair(model);
        cert = verify_K_lower(model, {x});
        if (!cert.certified) {
            out << "certification failed: " << cert.note << "\n";
            return 2;
        }
    }

    std::vector<MCResult> mc;
    MCConfig cfg;
    if (mc_paths > 0) {
        cfg.seed = static_cast<std::uint64_t>(
            parse_count(get_or(spec.overrides, "seed", "20240518"), "seed"));
        cfg.n_paths = mc_paths;
        cfg.dt = parse_double(get_or(spec.overrides, "dt", "0"), "dt");
        cfg.t_max = parse_double(get_or(spec.overrides, "t-max", "0"), "t-max");
        if (cfg.t_max <= 0.0)
            for (double t : t_grid) cfg.t_max = std::max(cfg.t_max, t);
        mc = estimate_hitting_tail(model, x, HitTarget::interval(R), t_grid, cfg);
        out << "seed: " << cfg.seed << "\n";
    }

    CsvWriter csv({"x", "R", "t", "regime", "comparator", "mc_estimate", "ci_halfwidth", "ratio"});
    csv.set_meta("command", "hit");
    csv.set_meta("model", spec.model_file);
    if (mc_paths > 0) {
        csv.set_meta("seed", format_double(static_cast<double>(cfg.seed)));
        csv.set_meta("mc_paths", format_double(static_cast<double>(mc_paths)));
        csv.set_meta("dt", cfg.dt);
        if (!mc.empty() && !mc.front().bias_note.empty()) csv.set_meta("bias", mc.front().bias_note);
    }

    bool violated = false;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        double t = t_grid[i];
        std::string regime;
        double comp = 0.0;
        if (spectral) {
            comp = spectrally_negative_comparator(model, x, R, t);
            regime = x > R ? "right" : "left";
        } else {
            ComparatorReport rep = interval_comparator(model, pair, cert, x, R, t);
            comp = rep.comparator;
            regime = rep.regime == ComparatorReport::Regime::small_time ? "small" : "large";
        }
        double est = 0.0, ci = 0.0, ratio = 0.0;
        if (mc_paths > 0) {
            est = mc[i].estimate;
            ci = mc[i].ci_halfwidth;
            ratio = comp > 0.0 ? est / comp : 0.0;
            if (est - 3.0 * ci > 16.0 * comp || est + 3.0 * ci < comp / 16.0) violated = true;
        }
        csv.add_row({format_double(x), format_double(R), format_double(t), regime,
                     format_double(comp), format_double(est), format_double(ci),
                     format_double(ratio)});
    }
    if (mc_paths > 0) {
        csv.set_meta("band", violated ? "violated" : "ok");
        out << "band: " << (violated ? "violated" : "ok") << "\n";
    }
    emit(csv, spec, out);
    return violated ? 2 : 0;
}

void push(SuiteResult& suite, const std::string& name, double value, double lo, double hi) {
    SuiteRow row{name, value, lo, hi, value >= lo && value <= hi};
    suite.rows.push_back(std::move(row));
}

// acceptance-style closed-form rows; values are ratios to the exact answer
void suite_brownian(SuiteResult& s) {
    LevyModel bm = LevyModel::brownian();
    for (double lambda : {0.25, 1.0, 4.0})
        push(s, "u_lambda(0) ratio lambda=" + format_double(lambda),
             u_lambda(bm, lambda, 0.0).value / (0.5 / std::sqrt(lambda)), 1.0 - 1e-8, 1.0 + 1e-8);
    for (double x : {0.5, 1.0, 2.0}) {
        push(s, "H(x)/x x=" + format_double(x), H_sym(bm, x).value / x, 1.0 - 1e-6, 1.0 + 1e-6);
        push(s, "2K(x)/x x=" + format_double(x), 2.0 * K_compensated(bm, x).value / x,
             1.0 - 1e-6, 1.0 + 1e-6);
    }
    push(s, "2C(alpha=2)", 2.0 * C_of_alpha(2.0, 0.0), 1.0 - 1e-8, 1.0 + 1e-8);
    for (double x : {0.5, 1.0, 2.0})
        push(s, "asymptote(x) sqrt(pi)/x x=" + format_double(x),
             point_hitting_asymptote(bm, x) * std::sqrt(kPi) / x, 1.0 - 1e-6, 1.0 + 1e-6);
}

void suite_stable(SuiteResult& s) {
    for (double alpha : {1.2, 1.5, 1.8}) {
        LevyModel m = LevyModel::symmetric_stable(alpha);
        double closed = 2.0 / kPi * one_minus_cos_moment(alpha);
        push(s, "H(1) ratio alpha=" + format_double(alpha), H_sym(m, 1.0).value / closed,
             1.0 - 1e-5, 1.0 + 1e-5);
        for (int k = 0; k <= 12; ++k) {
            double r = 1e-3 * std::pow(10.0, 0.5 * k);
            push(s, "r h H alpha=" + format_double(alpha) + " r=" + format_double(r),
                 r * m.concentration_h(r) * H_sym(m, r).value, 1.0 / 16.0, 16.0);
        }
    }
}

void suite_constants(SuiteResult& s) {
    for (double alpha : {0.25, 0.75, 1.25, 1.75}) {
        double a = tail_constant(alpha);
        double b = 2.0 * std::tgamma(alpha) * std::sin(kPi * alpha / 2.0) / kPi;
        push(s, "tail_constant forms alpha=" + format_double(alpha), std::abs(a - b) / a, 0.0,
             1e-10);
    }
    for (const char* name : {"stable-sym-1.5", "stable-specneg-1.5"}) {
        AsymptoticReport rep = nu_tail_asymptotic_check(make_preset(name));
        double last = rep.empirical_ratio_curve.back().second;
        push(s, std::string("nu_tail ratio ") + name, last / rep.predicted_constant, 0.98, 1.02);
    }
    AsymptoticReport pw = nu_tail_asymptotic_check(make_preset("factorized-beta0.4-0.6"));
    push(s, "nu_tail ratio factorized-beta0.4-0.6",
         pw.empirical_ratio_curve.back().second / pw.predicted_constant, 0.95, 1.05);

    LevyModel sn = make_preset("stable-specneg-1.5");
    double worst = 0.0;
    AsymptoticReport imre = im_re_limit(sn);
    for (const auto& [xi, ratio] : imre.empirical_ratio_curve)
        worst = std::max(worst, std::abs(ratio - imre.predicted_constant));
    push(s, "Im/Re drift from -1 stable-specneg-1.5", worst, 0.0, 1e-10);

    LevyModel fa = make_preset("factorized-cu2-cd1-alpha1.5");
    push(s, "|Im/Re|(1e-4) ratio factorized-cu2-cd1-alpha1.5",
         std::abs(fa.im_psi(1e-4) / fa.re_psi(1e-4)) * 3.0, 0.98, 1.02);
}

void suite_resolvent(SuiteResult& s) {
    for (const char* name : {"stable-sym-1.5", "stable-specneg-1.5"}) {
        LevyModel m = make_preset(name);
        auto [alpha, ci] = stability_exponents(m);
        double c = C_of_alpha(alpha, ci);
        for (double lambda : {0.01, 1.0, 100.0})
            push(s, std::string("resolvent scale ") + name + " lambda=" + format_double(lambda),
                 lambda * u_lambda(m, lambda, 0.0).value / (m.inv_re_psi(lambda) * c),
                 1.0 - 1e-4, 1.0 + 1e-4);
    }
}

void suite_comparability(SuiteResult& s, const LevyModel& model) {
    PsiComparability c = psi_comparability(model);
    push(s, "a = inf Re psi/psi*", c.a, 1e-3, 1.0 + 1e-9);
    push(s, "b = sup |Im psi|/Re psi", c.b, 0.0, 100.0);
    KLowerReport k = verify_K_lower(model, {1.0, 2.0});
    push(s, "min K^lambda/H near h(x)", k.min_ratio, k.floor, 1.0);
}

}  // namespace

std::vector<double> parse_log_grid(const std::string& text) {
    std::size_t c1 = text.find(':');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("grid '" + text + "' is not lo:hi:n");
    double lo = parse_double(text.substr(0, c1), "grid lo");
    double hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid hi");
    long n = parse_count(text.substr(c2 + 1), "grid n");
    if (!(lo > 0.0) || !(hi >= lo) || n < 1)
        throw std::invalid_argument("grid '" + text + "' needs 0 < lo <= hi and n >= 1");
    std::vector<double> grid;
    if (n == 1) {
        grid.push_back(lo);
        return grid;
    }
    double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (long i = 0; i < n; ++i) grid.push_back(lo * std::exp(step * static_cast<double>(i)));
    grid.back() = hi;
    return grid;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "brownian-closed-forms", "stable-kernels", "constants", "resolvent-scale",
        "hitting-comparability"};
    return names;
}

SuiteResult run_verify_suite(const std::string& suite, const LevyModel& model) {
    SuiteResult result;
    result.suite = suite;
    if (suite == "brownian-closed-forms")
        suite_brownian(result);
    else if (suite == "stable-kernels")
        suite_stable(result);
    else if (suite == "constants")
        suite_constants(result);
    else if (suite == "resolvent-scale")
        suite_resolvent(result);
    else if (suite == "hitting-comparability")
        suite_comparability(result, model);
    else
        throw std::invalid_argument("unknown suite '" + suite + "'");
    result.passed = true;
    for (const SuiteRow& row : result.rows)
        if (!row.pass) result.passed = false;
    return result;
}

namespace {

int cmd_verify(const RunSpec& spec, std::ostream& out) {
    check_overrides(spec.overrides, {"suite"});
    std::string suite = get_or(spec.overrides, "suite", "brownian-closed-forms");
    LevyModel model = resolve_model(spec.model_file);

    std::vector<SuiteResult> results;
    if (suite == "all") {
        for (const std::string& name : verify_suite_names())
            results.push_back(run_verify_suite(name, model));
    } else {
        results.push_back(run_verify_suite(suite, model));
    }

    CsvWriter csv({"suite", "row", "value", "lo", "hi", "pass"});
    csv.set_meta("command", "verify");
    csv.set_meta("model", spec.model_file);
    bool all_pass = true;
    for (const SuiteResult& r : results) {
        int failed = 0;
        for (const SuiteRow& row : r.rows) {
            if (!row.pass) ++failed;
            csv.add_row({r.suite, row.name, format_double(row.value), format_double(row.lo),
                         format_double(row.hi), row.pass ? "1" : "0"});
        }
        out << r.suite << ": " << r.rows.size() << " rows, " << failed << " failed\n";
        for (const SuiteRow& row : r.rows)
            if (!row.pass)
                out << "  FAIL " << row.name << ": " << format_double(row.value) << " outside ["
                    << format_double(row.lo) << ", " << format_double(row.hi) << "]\n";
        if (!r.passed) all_pass = false;
    }
    if (!spec.output.empty()) emit(csv, spec, out);
    return all_pass ? 0 : 2;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out) {
    try {
        switch (spec.command) {
            case RunSpec::Command::psi: return cmd_psi(spec, out);
            case RunSpec::Command::kernel: return cmd_kernel(spec, out);
            case RunSpec::Command::asymp: return cmd_asymp(spec, out);
            case RunSpec::Command::fluct: return cmd_fluct(spec, out);
            case RunSpec::Command::hit: return cmd_hit(spec, out);
            case RunSpec::Command::verify: return cmd_verify(spec, out);
        }
        throw std::invalid_argument("unknown command");
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace levyhit
