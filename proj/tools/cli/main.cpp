#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace thermo::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Pressure estimation and variational-principle checks on finite scaffolds"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode;
    std::string out_dir;
    std::uint64_t seed = 0;
    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
        sub->add_option("--mode", mode, "solver mode")->check(CLI::IsMember({"exact", "greedy"}));
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--seed", seed, "recorded in the outputs");
    };

    auto* zoo = app.add_subcommand("zoo", "registered systems");
    zoo->require_subcommand(1);
    auto* zoo_list = zoo->add_subcommand("list", "print entry names");
    std::string zoo_name;
    auto* zoo_describe = zoo->add_subcommand("describe", "print one entry");
    zoo_describe->add_option("name", zoo_name)->required();

    auto* estimate = app.add_subcommand("estimate", "topological pressure table and summary");
    auto* verify = app.add_subcommand("verify-vp", "topological pressure against measure-pressure witnesses");
    auto* properties = app.add_subcommand("properties", "finite-level property suite");
    for (auto* sub : {estimate, verify, properties})
        add_run_flags(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (zoo_list->parsed())
            return cmd_zoo_list(std::cout);
        if (zoo_describe->parsed())
            return cmd_zoo_describe(zoo_name, std::cout);

        auto config = load_run_config(config_path);
        if (!mode.empty()) {
            config.mode = parse_mode(mode);
            config.properties.mode = config.mode;
        }
        if (!out_dir.empty())
            config.out = out_dir;
        for (auto* sub : {estimate, verify, properties})
            if (sub->count("--seed") > 0)
                config.seed = seed;

        if (estimate->parsed())
            return cmd_estimate(config, std::cout);
        if (verify->parsed())
            return cmd_verify_vp(config, std::cout);
        return cmd_properties(config, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const thermo::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}
