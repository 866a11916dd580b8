#include "befp/config.hpp"
#include "befp/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv)
{
    CLI::App app{"Bose-Einstein-Fokker-Planck experiment runner"};
    app.footer(befp::describe_defaults());
    app.set_version_flag("--version", std::string(befp::tool_version));

    std::string config_path;
    app.add_option("--config", config_path, "key = value config file");

    std::map<std::string, std::string> flags;
    const std::map<std::string, std::string> help{
        {"mode", "experiment mode"},
        {"ic", "initial condition"},
        {"mass", "BEFP mass of the initial data"},
        {"beta", "equilibrium parameter"},
        {"grid-n", "2D cells per side"},
        {"grid-l", "2D half-width"},
        {"radial-n", "radial intervals"},
        {"radial-rmax", "radial cutoff"},
        {"times", "snapshot times: a,b,c or start:stop:step"},
        {"dt", "2D time step (0 = automatic)"},
        {"t-end", "final time (0 = last snapshot)"},
        {"out", "output directory"},
        {"seed", "seed for random initial data"},
        {"tol", "validation tolerance"},
    };
    for (const auto& key : befp::config_keys())
        app.add_option("--" + key, flags[key], help.at(key));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? befp::exit_ok : befp::exit_config_error;
    }

    try {
        befp::KeyValues file_values, flag_values;
        if (!config_path.empty())
            file_values = befp::read_config_file(config_path);
        for (const auto& key : befp::config_keys())
            if (app.count("--" + key) > 0)
                flag_values.emplace_back(key, flags[key]);
        const auto cfg = befp::resolve_config(file_values, flag_values);
        return befp::run(cfg, std::cout);
    } catch (const befp::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return befp::exit_config_error;
    }
}
