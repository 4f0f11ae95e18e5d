#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include "alphafuse/common/errors.hpp"
#include "cli/commands.hpp"
#include "cli/run_config.hpp"

extern char** environ;

namespace {

struct Options {
    std::string config;
    std::string out = "out";
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::string ablation;
    std::string simulator;
    bool dump = false;
};

void report(const std::string& kind, const std::string& command, const std::string& message) {
    std::cerr << "error kind=" << kind << " command=" << (command.empty() ? "-" : command)
              << " message=" << nlohmann::json(message).dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace alphafuse;
    CLI::App app{"alphafuse: news and price fusion forecasting pipeline"};
    app.require_subcommand(1);
    Options opt;

    for (const auto& name : cli::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config, "JSON config file");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--set", opt.sets, "override a config key: section.key=value");
        sub->add_flag("--dump-config", opt.dump, "print the effective config and exit");
        if (name == "train") sub->add_option("--ablation", opt.ablation, "News, Tech, Tech+News, Graph+Tech, Graph+News, Full");
        if (name == "backtest") sub->add_option("--simulator", opt.simulator, "longshort or markowitz");
    }

    std::string command;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report("usage", command, e.what());
        return 1;
    }
    command = app.get_subcommands().front()->get_name();

    try {
        cli::RunConfig cfg;
        if (!opt.config.empty()) cfg.merge_file(opt.config);
        std::vector<std::string> env;
        for (char** e = environ; e != nullptr && *e != nullptr; ++e) env.emplace_back(*e);
        cfg.merge_environment(env);
        for (const auto& s : opt.sets) cfg.set(s);
        if (opt.seed) cfg.merge(nlohmann::json{{"seed", *opt.seed}}, "--seed");
        if (!opt.ablation.empty()) cfg.set("model.ablation=" + opt.ablation);
        if (!opt.simulator.empty()) cfg.set("backtest.simulator=" + opt.simulator);
        if (opt.dump) {
            std::cout << cfg.dump() << '\n';
            return 0;
        }
        cli::run_command(command, cfg, opt.out);
    } catch (const Error& e) {
        report(e.kind(), command, e.what());
        return cli::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        report("internal", command, e.what());
        return 2;
    }
    return 0;
}
