#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "listlab/error.hpp"
#include "listlab/scenario.hpp"

using namespace listlab;

namespace {

// CLI flag values override config-file values; everything funnels into one
// ScenarioConfig so runs are reproducible from the echoed header alone.
struct CommonArgs {
    std::string config_path;
    std::string out_path;
    uint64_t seed = 0;
    bool seed_set = false;
    long long workers = -1;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (key = value lines)");
    cmd->add_option("--out", args.out_path, "output CSV path (default stdout)");
    cmd->add_option_function<uint64_t>(
        "--seed",
        [&args](uint64_t v) {
            args.seed = v;
            args.seed_set = true;
        },
        "master seed");
    cmd->add_option("--workers", args.workers, "worker threads (default: all cores)");
}

ScenarioConfig build_config(const std::string& scenario, const CommonArgs& args) {
    ScenarioConfig cfg = args.config_path.empty() ? ScenarioConfig(scenario)
                                                  : ScenarioConfig::from_file(args.config_path);
    if (cfg.scenario().empty()) cfg.set_scenario(scenario);
    if (cfg.scenario() != scenario)
        throw ConfigError("config file is for scenario '" + cfg.scenario() +
                          "', command line asked for '" + scenario + "'");
    if (args.seed_set) cfg.set("seed", std::to_string(args.seed));
    if (args.workers >= 0) cfg.set("workers", std::to_string(args.workers));
    for (const auto& [key, value] : args.overrides) cfg.set(key, value);
    return cfg;
}

int emit(const ScenarioReport& report, const CommonArgs& args) {
    if (args.out_path.empty()) {
        write_csv(std::cout, report);
    } else {
        std::ofstream out(args.out_path);
        if (!out) throw ConfigError("cannot open output file: " + args.out_path);
        write_csv(out, report);
    }
    return report.assertions_ok ? 0 : 1;
}

void add_override_option(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                         const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&args, key](const std::string& v) { args.overrides.emplace_back(key, v); },
        help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laboratory for list-decoding combinatorics in Hamming space"};
    app.require_subcommand(1);

    CommonArgs check_args, construct_args, bounds_args, mc_args, verify_args;

    auto* check = app.add_subcommand("check", "decide (p, L) decodability of a code file");
    add_common(check, check_args);
    add_override_option(check, check_args, "--code", "code", "code file");
    add_override_option(check, check_args, "--p", "p", "error fraction, e.g. 1/4");
    add_override_option(check, check_args, "--L", "L", "list size");
    add_override_option(check, check_args, "--mode", "mode", "max | avg | erasure");

    auto* construct = app.add_subcommand("construct", "run an adversarial construction");
    add_common(construct, construct_args);
    add_override_option(construct, construct_args, "--construction", "construction",
                        "lemma13 | thm11 | thm15 | thm16 | lemma12 | thm18 | lemma19");
    add_override_option(construct, construct_args, "--code", "code", "code file");
    add_override_option(construct, construct_args, "--p", "p", "error fraction");
    add_override_option(construct, construct_args, "--lambda", "lambda", "weight fraction");
    add_override_option(construct, construct_args, "--L", "L", "list size");
    add_override_option(construct, construct_args, "--n", "n", "blocklength");
    add_override_option(construct, construct_args, "--trials", "trials", "seeded repetitions");

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds and inequality sweeps");
    add_common(bounds, bounds_args);
    add_override_option(bounds, bounds_args, "--bound", "bound", "bound id");
    add_override_option(bounds, bounds_args, "--fact", "fact",
                        "fact23 | fact24 | lemma25 | lemma26 | lemma30_exact");
    add_override_option(bounds, bounds_args, "--p", "p", "error fraction");
    add_override_option(bounds, bounds_args, "--lambda", "lambda", "weight fraction");
    add_override_option(bounds, bounds_args, "--gamma", "gamma", "capacity gap");
    add_override_option(bounds, bounds_args, "--L", "L", "list size");
    add_override_option(bounds, bounds_args, "--step", "step", "grid step, e.g. 1/100");
    add_override_option(bounds, bounds_args, "--n-ladder", "n_ladder",
                        "comma-separated lengths");

    auto* mc = app.add_subcommand("montecarlo", "random-code witness campaigns");
    add_common(mc, mc_args);
    add_override_option(mc, mc_args, "--kind", "kind", "general | linear");
    add_override_option(mc, mc_args, "--mode", "mode", "error | erasure");
    add_override_option(mc, mc_args, "--q", "q", "alphabet size");
    add_override_option(mc, mc_args, "--n", "n", "blocklength");
    add_override_option(mc, mc_args, "--k", "k", "message length");
    add_override_option(mc, mc_args, "--gamma", "gamma", "rate gap (derives k)");
    add_override_option(mc, mc_args, "--p", "p", "error fraction");
    add_override_option(mc, mc_args, "--L", "L", "list size");
    add_override_option(mc, mc_args, "--L-max", "L_max", "sweep list sizes 1..L_max");
    add_override_option(mc, mc_args, "--trials", "trials", "number of sampled codes");

    auto* verify = app.add_subcommand("verify-facts", "run the full invariant suite");
    add_common(verify, verify_args);
    add_override_option(verify, verify_args, "--trials", "trials", "centroid trials");
    add_override_option(verify, verify_args, "--step", "step", "sweep grid step");
    add_override_option(verify, verify_args, "--hyper-n-max", "hyper_n_max",
                        "hypergeometric exhaustive range");

    std::string plot_in, plot_x, plot_out;
    std::vector<std::string> plot_y;
    auto* plot = app.add_subcommand("plot", "project CSV columns into plot data");
    plot->add_option("--in", plot_in, "input CSV file")->required();
    plot->add_option("-x", plot_x, "x column")->required();
    plot->add_option("-y", plot_y, "y columns")->required();
    plot->add_option("--out", plot_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plot->parsed()) {
            std::ifstream in(plot_in);
            if (!in) throw ConfigError("cannot open input file: " + plot_in);
            if (plot_out.empty()) {
                emit_plotdata_csv(in, plot_x, plot_y, std::cout);
            } else {
                std::ofstream out(plot_out);
                if (!out) throw ConfigError("cannot open output file: " + plot_out);
                emit_plotdata_csv(in, plot_x, plot_y, out);
            }
            return 0;
        }
        if (check->parsed())
            return emit(run_scenario(build_config("check", check_args)), check_args);
        if (construct->parsed())
            return emit(run_scenario(build_config("construct", construct_args)), construct_args);
        if (bounds->parsed())
            return emit(run_scenario(build_config("bounds", bounds_args)), bounds_args);
        if (mc->parsed())
            return emit(run_scenario(build_config("montecarlo", mc_args)), mc_args);
        if (verify->parsed())
            return emit(run_scenario(build_config("verify-facts", verify_args)), verify_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
