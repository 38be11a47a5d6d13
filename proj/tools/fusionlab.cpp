#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fusionlab/cli.hpp"
#include "fusionlab/error.hpp"

namespace {

using fusionlab::cli::RunConfig;
using fusionlab::cli::Subcommand;

void add_inputs(CLI::App& sub, RunConfig& config, bool machine) {
    sub.add_option("--ratings", config.ratings_path, "ratings.csv (observer_id,item_id,response)")->required();
    sub.add_option("--items", config.items_path, "items.csv (item_id,label)")->required();
    auto* m = sub.add_option("--machine", config.machine_path, "machine.csv (item_id,score)");
    if (machine) m->required();
}

void add_scale(CLI::App& sub, RunConfig& config, std::string& polarity) {
    sub.add_option("--scale-min", config.scale.min, "lowest rating on the scale")->capture_default_str();
    sub.add_option("--scale-max", config.scale.max, "highest rating on the scale")->capture_default_str();
    sub.add_option("--polarity", polarity, "which end of the scale means 'same identity'")
        ->check(CLI::IsMember({"higher-same", "higher-different"}))
        ->capture_default_str();
}

void add_output(CLI::App& sub, RunConfig& config, bool required) {
    auto* o = sub.add_option("--out", config.out_dir, "output directory (created if absent)");
    if (required) o->required();
    sub.add_flag("--force", config.force, "overwrite existing files");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusionlab: decision fusion analysis for rater populations"};
    app.require_subcommand(1);
    RunConfig config;
    std::string polarity = "higher-same";

    struct CommandInfo {
        Subcommand command;
        const char* help;
        bool machine;
        bool out_required;
    };
    const CommandInfo commands[] = {
        {Subcommand::Auc, "per-observer AUC table", false, false},
        {Subcommand::Pairs, "fuse every observer pair", false, false},
        {Subcommand::MachinePairs, "fuse every observer with the machine", true, false},
        {Subcommand::Par, "benefit vs. ability difference correlations and bins", false, false},
        {Subcommand::Sweep, "system AUC across fusion thresholds", true, false},
        {Subcommand::Match, "optimal observer pairing", false, false},
        {Subcommand::Baseline, "optimal pairing vs. random pairings", false, false},
        {Subcommand::Compare, "policy medians and paired tests", true, false},
        {Subcommand::Report, "run every stage into one directory with a manifest", true, true},
    };
    for (const auto& info : commands) {
        auto* sub = app.add_subcommand(std::string(fusionlab::cli::to_string(info.command)), info.help);
        add_inputs(*sub, config, info.machine);
        add_scale(*sub, config, polarity);
        add_output(*sub, config, info.out_required);
        sub->callback([&config, c = info.command] { config.subcommand = c; });
        if (info.command == Subcommand::Sweep || info.command == Subcommand::Report) {
            sub->add_option("--lambda", config.lambda, "also evaluate this fusion threshold")
                ->check(CLI::NonNegativeNumber);
        }
        if (info.command == Subcommand::Match || info.command == Subcommand::Report) {
            sub->add_flag("--include-unmatched", config.include_unmatched,
                          "count the unmatched observer's solo AUC in the system AUC (odd N)");
        }
        if (info.command == Subcommand::Baseline || info.command == Subcommand::Report) {
            sub->add_option("--replications", config.replications, "random pairings to draw")
                ->capture_default_str();
            sub->add_option("--seed", config.seed, "root seed")->capture_default_str();
        }
    }

    auto* sim = app.add_subcommand("simulate", "write a synthetic rater population");
    auto& g = config.generator;
    sim->add_option("--observers", g.n_observers, "number of observers")->capture_default_str();
    sim->add_option("--items", g.n_items, "number of items")->capture_default_str();
    sim->add_option("--same-fraction", g.same_fraction, "fraction of same-identity items")->capture_default_str();
    sim->add_option("--dprime-low", g.dprime_low, "lowest observer sensitivity")->capture_default_str();
    sim->add_option("--dprime-high", g.dprime_high, "highest observer sensitivity")->capture_default_str();
    sim->add_option("--item-sd", g.item_difficulty_sd, "sd of the shared item difficulty term")
        ->capture_default_str();
    sim->add_option("--machine-dprime", g.machine_dprime, "machine sensitivity")->capture_default_str();
    sim->add_option("--seed", config.seed, "root seed")->capture_default_str();
    add_scale(*sim, config, polarity);
    add_output(*sim, config, true);
    sim->callback([&config] { config.subcommand = Subcommand::Simulate; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << fusionlab::to_string(fusionlab::ErrorCode::Usage) << ": " << e.what() << '\n';
        return fusionlab::exit_status(fusionlab::ErrorCode::Usage);
    }
    config.scale.polarity = polarity == "higher-same" ? fusionlab::Polarity::HigherMeansSame
                                                      : fusionlab::Polarity::HigherMeansDifferent;
    return fusionlab::cli::run(config, std::cout, std::cerr);
}
