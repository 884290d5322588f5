#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "levyhit/model_io.hpp"
#include "levyhit/runner.hpp"

namespace {

// registers a flag whose value is forwarded verbatim; the runner validates
void forward(CLI::App* sub, std::map<std::string, std::string>& sink, const std::string& flag,
             const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + flag, [&sink, flag](const std::string& value) { sink[flag] = value; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"potential kernels, asymptotic constants and sharp hitting-time comparators\n"
                 "for one-dimensional Levy processes"};
    app.require_subcommand(1);

    levyhit::RunSpec spec;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", spec.model_file, "preset name or model config file")
            ->capture_default_str();
        sub->add_option("--output", spec.output, "write the CSV here (atomic rename)");
        return sub;
    };

    CLI::App* psi = add_common(app.add_subcommand("psi", "characteristic exponent on a grid"));
    forward(psi, spec.overrides, "xi-grid", "frequency grid lo:hi:n, log spaced (1e-3:1e3:64)");

    CLI::App* kernel =
        add_common(app.add_subcommand("kernel", "potential kernels u^lambda, K^lambda, H"));
    forward(kernel, spec.overrides, "lambda", "resolvent parameter (1)");
    forward(kernel, spec.overrides, "x-grid", "spatial grid lo:hi:n, log spaced (0.25:8:12)");

    add_common(app.add_subcommand("asymp", "tail and Im/Re asymptotic checks"));

    CLI::App* fluct =
        add_common(app.add_subcommand("fluct", "renewal pair and half-line Green comparator"));
    forward(fluct, spec.overrides, "x-grid", "grid lo:hi:n for the Green check (0.25:8:7)");
    forward(fluct, spec.overrides, "seed", "ladder MC seed (models without closed forms)");
    forward(fluct, spec.overrides, "mc-paths", "ladder MC path count");

    CLI::App* hit =
        add_common(app.add_subcommand("hit", "hitting-time comparators, optionally vs MC"));
    forward(hit, spec.overrides, "x", "starting point (required)");
    forward(hit, spec.overrides, "R", "target half-width, target is [-R, R] (1)");
    forward(hit, spec.overrides, "t-grid", "time grid lo:hi:n, log spaced (0.1:100:10)");
    forward(hit, spec.overrides, "mc-paths", "simulate this many paths (0 = comparator only)");
    forward(hit, spec.overrides, "seed", "MC seed (20240518)");
    forward(hit, spec.overrides, "dt", "skeleton step (0 = auto from the target width)");
    forward(hit, spec.overrides, "t-max", "simulation horizon (0 = max of t-grid)");

    CLI::App* verify = add_common(app.add_subcommand("verify", "built-in verification suites"));
    std::string suites;
    for (const std::string& name : levyhit::verify_suite_names()) suites += " " + name;
    forward(verify, spec.overrides, "suite", "one of:" + suites + " all");

    CLI::App* list = app.add_subcommand("list-models", "built-in model presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cout << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    if (list->parsed()) {
        for (const auto& preset : levyhit::model_presets())
            std::cout << preset.name << "\n    " << preset.summary << "\n";
        return 0;
    }
    if (psi->parsed()) spec.command = levyhit::RunSpec::Command::psi;
    if (kernel->parsed()) spec.command = levyhit::RunSpec::Command::kernel;
    if (app.got_subcommand("asymp")) spec.command = levyhit::RunSpec::Command::asymp;
    if (fluct->parsed()) spec.command = levyhit::RunSpec::Command::fluct;
    if (hit->parsed()) spec.command = levyhit::RunSpec::Command::hit;
    if (verify->parsed()) spec.command = levyhit::RunSpec::Command::verify;
    return levyhit::run(spec, std::cout);
}
