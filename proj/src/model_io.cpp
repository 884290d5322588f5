#include "levyhit/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace levyhit {

using nlohmann::json;

namespace {

json profile_to_json(const FactorProfile& p) {
    if (const auto* pw = std::get_if<PowerF>(&p)) return {{"form", "power"}, {"beta", pw->beta}};
    if (const auto* pp = std::get_if<PiecewisePowerF>(&p))
        return {{"form", "piecewise-power"},
                {"beta_small", pp->beta_small},
                {"beta_large", pp->beta_large},
                {"break", pp->brk}};
    throw std::runtime_error("custom factor profiles are not representable in a model file");
}

FactorProfile profile_from_json(const json& j) {
    std::string form = j.at("form").get<std::string>();
    if (form == "power") return PowerF{j.at("beta").get<double>()};
    if (form == "piecewise-power")
        return PiecewisePowerF{j.at("beta_small").get<double>(), j.at("beta_large").get<double>(),
                               j.at("break").get<double>()};
    throw std::runtime_error("unknown factor profile form: " + form);
}

}  // namespace

json model_to_json(const LevyModel& model) {
    json j;
    j["sigma"] = model.sigma();
    j["gamma"] = model.gamma();
    j["centered"] = model.centered();
    const MeasureSpec& m = model.measure();
    if (std::holds_alternative<std::monostate>(m)) {
        j["measure"] = {{"kind", "none"}};
    } else if (const auto* s = std::get_if<StableSpec>(&m)) {
        j["measure"] = {{"kind", "stable"}, {"alpha", s->alpha}, {"c_u", s->c_u}, {"c_d", s->c_d}};
    } else if (const auto* f = std::get_if<FactorizedSpec>(&m)) {
        j["measure"] = {{"kind", "factorized"}, {"c_u", f->c_u},   {"c_d", f->c_d},
                        {"f", profile_to_json(f->profile)},        {"beta1", f->beta1},
                        {"beta2", f->beta2}, {"a1", f->a1},        {"a2", f->a2}};
    } else {
        throw std::runtime_error("tabulated measures are not representable in a model file");
    }
    return j;
}

LevyModel model_from_json(const json& j, const ToleranceProfile& tol) {
    double sigma = j.at("sigma").get<double>();
    double gamma = j.at("gamma").get<double>();
    bool centered = j.value("centered", false);
    const json& jm = j.at("measure");
    std::string kind = jm.at("kind").get<std::string>();
    MeasureSpec m;
    if (kind == "none") {
        m = std::monostate{};
    } else if (kind == "stable") {
        m = StableSpec{jm.at("alpha").get<double>(), jm.at("c_u").get<double>(),
                       jm.at("c_d").get<double>()};
    } else if (kind == "factorized") {
        FactorizedSpec f;
        f.c_u = jm.at("c_u").get<double>();
        f.c_d = jm.at("c_d").get<double>();
        f.profile = profile_from_json(jm.at("f"));
        f.beta1 = jm.at("beta1").get<double>();
        f.beta2 = jm.at("beta2").get<double>();
        f.a1 = jm.value("a1", 1.0);
        f.a2 = jm.value("a2", 1.0);
        m = std::move(f);
    } else {
        throw std::runtime_error("unknown measure kind: " + kind);
    }
    return LevyModel::make(sigma, gamma, std::move(m), centered, tol);
}

LevyModel load_model_file(const std::string& path, const ToleranceProfile& tol) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("model file " + path + " is not valid JSON: " + e.what());
    }
    return model_from_json(j, tol);
}

void save_model_file(const LevyModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << model_to_json(model).dump(2) << "\n";
}

namespace {

LevyModel build_preset(const std::string& name, const ToleranceProfile& tol) {
    if (name == "brownian") return LevyModel::brownian(1.0, tol);
    if (name == "stable-sym-1.2") return LevyModel::symmetric_stable(1.2, tol);
    if (name == "stable-sym-1.5") return LevyModel::symmetric_stable(1.5, tol);
    if (name == "stable-sym-1.8") return LevyModel::symmetric_stable(1.8, tol);
    if (name == "stable-specneg-1.5") return LevyModel::spectrally_negative_stable(1.5, tol);
    if (name == "factorized-beta0.4-0.6") {
        FactorizedSpec f;
        f.c_u = 2.0;
        f.c_d = 1.0;
        f.profile = PiecewisePowerF{0.4, 0.6, 1.0};
        f.beta1 = 0.4;
        f.beta2 = 0.6;
        return LevyModel::make(0.0, 0.0, std::move(f), true, tol);
    }
    if (name == "factorized-cu2-cd1-alpha1.5") {
        FactorizedSpec f;
        f.c_u = 2.0;
        f.c_d = 1.0;
        f.profile = PowerF{0.5};
        f.beta1 = 0.5;
        f.beta2 = 0.5;
        return LevyModel::make(0.0, 0.0, std::move(f), true, tol);
    }
    throw std::runtime_error("unknown model preset: " + name);
}

}  // namespace

const std::vector<PresetInfo>& model_presets() {
    static const std::vector<PresetInfo> presets = {
        {"brownian", "Brownian motion, sigma=1 (Re psi = xi^2), zero mean"},
        {"stable-sym-1.2", "symmetric stable, alpha=1.2, unit scale (Re psi = |xi|^1.2)"},
        {"stable-sym-1.5", "symmetric stable, alpha=1.5, unit scale"},
        {"stable-sym-1.8", "symmetric stable, alpha=1.8, unit scale"},
        {"stable-specneg-1.5", "spectrally negative stable, alpha=1.5, unit scale, zero mean"},
        {"factorized-beta0.4-0.6",
         "two-sided factorized measure f(z)/z^2 with f piecewise z^-0.4 / z^-0.6, c_u=2, c_d=1"},
        {"factorized-cu2-cd1-alpha1.5",
         "factorized measure with pure power factor z^-0.5 (alpha=1.5 analogue), c_u=2, c_d=1"},
    };
    return presets;
}

bool is_model_preset(const std::string& name) {
    for (const auto& p : model_presets())
        if (p.name == name) return true;
    return false;
}

LevyModel make_preset(const std::string& name, const ToleranceProfile& tol) {
    return build_preset(name, tol);
}

LevyModel resolve_model(const std::string& name_or_path, const ToleranceProfile& tol) {
    if (is_model_preset(name_or_path)) return make_preset(name_or_path, tol);
    return load_model_file(name_or_path, tol);
}

}  // namespace levyhit
