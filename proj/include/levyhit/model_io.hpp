#pragma once

#include <string>
#include <vector>

#include "levyhit/levy_model.hpp"
#include "json.hpp"

namespace levyhit {

// JSON form of a model. Stable and factorized measures with the built-in
// factor profiles round-trip bit-exactly; custom profiles and tabulated
// measures are runtime-only and make model_to_json throw.
nlohmann::json model_to_json(const LevyModel& model);
LevyModel model_from_json(const nlohmann::json& j, const ToleranceProfile& tol = {});

LevyModel load_model_file(const std::string& path, const ToleranceProfile& tol = {});
void save_model_file(const LevyModel& model, const std::string& path);

struct PresetInfo {
    std::string name;
    std::string summary;
};

const std::vector<PresetInfo>& model_presets();
bool is_model_preset(const std::string& name);
LevyModel make_preset(const std::string& name, const ToleranceProfile& tol = {});

// Accepts either a preset name or a path to a model file.
LevyModel resolve_model(const std::string& name_or_path, const ToleranceProfile& tol = {});

}  // namespace levyhit
