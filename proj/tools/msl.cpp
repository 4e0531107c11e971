#include "msl/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"matroid secretary lab"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run an experiment described by a key=value config");
    run->add_option("config", config_path, "config file")->required();

    std::string matroid_path, alg_spec = "rb", weights_model = "uniform";
    std::string eval_csv, eval_json;
    std::uint64_t eval_trials = 10000, eval_seed = 0;
    bool eval_exact = false, eval_seed_set = false;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one algorithm on one matroid");
    eval->add_option("--matroid", matroid_path, "matroid description file")->required();
    eval->add_option("--alg", alg_spec, "algorithm spec (classical[s] rb uni[r] pav tgreedy[rho])");
    eval->add_option("--trials", eval_trials, "Monte Carlo trials");
    eval->add_option("--seed", eval_seed, "random seed (mandatory)")
        ->required()
        ->each([&eval_seed_set](const std::string&) { eval_seed_set = true; });
    eval->add_flag("--exact", eval_exact, "exact evaluation over all orders and coins");
    eval->add_option("--weights", weights_model, "weight model: uniform | singleheavy");
    eval->add_option("--csv", eval_csv, "CSV output path");
    eval->add_option("--json", eval_json, "JSON output path");

    std::string ledger_csv, ledger_json;
    std::uint64_t ledger_trials = 10000, ledger_seed = 0;
    CLI::App* ledger = app.add_subcommand("ledger", "verify the wrapper ratio ledger");
    ledger->add_option("--seed", ledger_seed, "random seed (mandatory)")->required();
    ledger->add_option("--trials", ledger_trials, "Monte Carlo trials per measurement");
    ledger->add_option("--csv", ledger_csv, "CSV output path");
    ledger->add_option("--json", ledger_json, "JSON output path");

    CLI11_PARSE(app, argc, argv);

    std::map<std::string, std::string> config;
    if (run->parsed()) {
        try {
            config = msl::parse_config_file(config_path);
        } catch (const std::exception& err) {
            std::cerr << "config error: " << err.what() << '\n';
            return 2;
        }
    } else if (eval->parsed()) {
        config["experiment"] = "eval";
        config["matroid"] = matroid_path;
        config["alg"] = alg_spec;
        config["trials"] = std::to_string(eval_trials);
        config["seed"] = std::to_string(eval_seed);
        config["weights"] = weights_model;
        if (eval_exact) config["exact"] = "1";
        if (!eval_csv.empty()) config["out_csv"] = eval_csv;
        if (!eval_json.empty()) config["out_json"] = eval_json;
    } else {
        config["experiment"] = "ledger";
        config["seed"] = std::to_string(ledger_seed);
        config["trials"] = std::to_string(ledger_trials);
        if (!ledger_csv.empty()) config["out_csv"] = ledger_csv;
        if (!ledger_json.empty()) config["out_json"] = ledger_json;
    }

    return msl::run_experiment(config, std::cout);
}
