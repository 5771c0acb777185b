// Experiment runner: wires the library modules into named, reproducible
// experiments with flat-file configs and CSV/JSON outputs.
//
// Exit codes: 0 all declared tolerances pass, 1 a tolerance failed or a
// module reported an error, 2 usage/config problems.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bklab/experiments.hpp"
#include "bklab/report.hpp"

namespace {

const char* kSubcommands[] = {"curvature-check", "heat-model",       "miller",
                              "gram",            "bergman-scan",     "bergman-fit",
                              "oracle-compare",  "equidist",         "hilbert-dims",
                              "hilbert-eisenstein", "hilbert-invariance"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bklab: Bergman kernel laboratory for modular and Hilbert modular cusp forms"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    long seed = 20260810L;
    int jobs = 1;
    std::vector<std::string> overrides;

    for (const char* name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, "run the experiment");
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--out", out_dir, "output directory (CSV + JSON)");
        sub->add_option("--seed", seed, "RNG seed recorded in every output");
        sub->add_option("--jobs", jobs, "parallel fan-out over weights/points");
        sub->add_option("--set", overrides, "override a config key, KEY=VALUE")
            ->take_all();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();

    try {
        bklab::Config cfg;
        if (!config_path.empty()) cfg = bklab::Config::from_file(config_path);
        cfg.set("seed", std::to_string(seed));
        cfg.set("jobs", std::to_string(jobs));
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw bklab::ConfigError("--set expects KEY=VALUE: " + kv);
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }

        bklab::ExperimentFn fn = bklab::find_experiment(name);
        if (fn == nullptr) throw bklab::ConfigError("unknown experiment: " + name);

        const bklab::ExperimentReport report = fn(cfg);
        report.save(out_dir);
        std::cout << report.name << ": " << (report.pass ? "PASS" : "FAIL") << " ("
                  << report.csv_rows.size() << " rows -> " << out_dir << ")\n";
        return report.pass ? 0 : 1;
    } catch (const bklab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
