#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "resonet/config.hpp"
#include "resonet/errors.hpp"
#include "resonet/experiment.hpp"
#include "resonet/output.hpp"
#include "resonet/version.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, SubArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--format", args.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run(const std::string& subcommand, const SubArgs& args) {
    const resonet::ExperimentConfig cfg = resonet::parse_config_file(args.config_path);
    if (resonet::to_string(cfg.kind) != subcommand)
        throw resonet::validation_error("config declares experiment '" +
                                        resonet::to_string(cfg.kind) +
                                        "' but subcommand is '" + subcommand + "'");
    const resonet::ResultBundle bundle = resonet::run_experiment(cfg);
    resonet::emit_results(bundle, args.out_dir,
                          resonet::parse_output_format(args.format));
    for (const auto& [key, value] : bundle.summary)
        std::printf("%s = %.12g\n", key.c_str(), value);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parametrically coupled resonator network toolkit"};
    app.set_version_flag("--version", resonet::version_string);
    app.require_subcommand(1);

    const char* names[] = {"synth",    "evolve-rwa", "evolve-full",
                           "spectrum", "parity",     "calibrate"};
    const char* descs[] = {
        "emit an engineered coupling profile",
        "integrate the slow-envelope dynamics",
        "integrate the full mechanical equations of motion",
        "compute a steady-state frequency response",
        "round-trip phase of an envelope evolution",
        "fit the voltage-to-coupling calibration"};

    SubArgs args;
    std::string chosen;
    for (int i = 0; i < 6; ++i) {
        CLI::App* cmd = app.add_subcommand(names[i], descs[i]);
        add_common(cmd, args);
        cmd->callback([&chosen, name = names[i]]() { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        return run(chosen, args);
    } catch (const resonet::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const resonet::numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 2;
    }
}
