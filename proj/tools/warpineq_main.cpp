#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "warpineq/runner.hpp"

namespace {

void print_inequality_catalog() {
    std::printf("%-22s %-4s %-10s %s\n", "id", "N>=", "needs", "description");
    for (const auto& info : warpineq::inequality_catalog()) {
        std::string needs;
        if (info.needs_con2) needs += "con2";
        if (info.needs_con3) needs += needs.empty() ? "con3" : "+con3";
        if (needs.empty()) needs = "-";
        std::printf("%-22s %-4d %-10s %s\n", warpineq::to_string(info.id), info.min_dimension,
                    needs.c_str(), info.description);
    }
}

int run_kind(const std::string& config_path, const std::string& out_dir,
             warpineq::ExperimentKind kind) {
    const auto config = warpineq::load_run_config(config_path);
    const auto summary = warpineq::run(config, kind, out_dir);
    for (const auto& msg : summary.messages) std::cerr << "FAIL: " << msg << "\n";
    std::cerr << "ran " << summary.experiments_run << " experiment(s), " << summary.checks
              << " check(s), " << summary.failures << " failure(s)\n";
    for (const auto& f : summary.written_files) std::cerr << "wrote " << f << "\n";
    return summary.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of curvature-improved Poincare/Hardy/Rellich "
                 "inequalities on rotationally symmetric model manifolds"};
    app.require_subcommand(0, 1);

    bool list_ids = false;
    app.add_flag("--list-inequalities", list_ids, "print the inequality catalog and exit");

    struct SubArgs {
        std::string config;
        std::string out;
    };
    std::map<std::string, std::pair<CLI::App*, SubArgs>> subs;
    for (auto kind : {warpineq::ExperimentKind::verify, warpineq::ExperimentKind::sharpness,
                      warpineq::ExperimentKind::sequence, warpineq::ExperimentKind::curvature}) {
        const char* name = warpineq::to_string(kind);
        CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name +
                                                     " experiments from a config file");
        auto& args = subs[name];
        args.first = sub;
        sub->add_option("--config", args.second.config, "path to the JSON run configuration")
            ->required();
        sub->add_option("--out", args.second.out, "output directory (overrides the config)");
    }

    CLI11_PARSE(app, argc, argv);

    if (list_ids) {
        print_inequality_catalog();
        return 0;
    }

    try {
        for (auto& [name, entry] : subs) {
            if (entry.first->parsed()) {
                warpineq::ExperimentKind kind = warpineq::ExperimentKind::verify;
                if (name == "sharpness") kind = warpineq::ExperimentKind::sharpness;
                if (name == "sequence") kind = warpineq::ExperimentKind::sequence;
                if (name == "curvature") kind = warpineq::ExperimentKind::curvature;
                return run_kind(entry.second.config, entry.second.out, kind);
            }
        }
        std::cerr << app.help();
        return 0;
    } catch (const warpineq::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
