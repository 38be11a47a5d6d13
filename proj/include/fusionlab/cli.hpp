#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "fusionlab/dataset.hpp"
#include "fusionlab/synth.hpp"

namespace fusionlab::cli {

enum class Subcommand { Auc, Pairs, MachinePairs, Par, Sweep, Match, Baseline, Compare, Simulate, Report };

std::string_view to_string(Subcommand command) noexcept;
// Throws Usage.
Subcommand parse_subcommand(std::string_view name);

struct RunConfig {
    Subcommand subcommand = Subcommand::Auc;
    std::string ratings_path;
    std::string items_path;
    std::string machine_path;  // empty when absent
    std::string out_dir;       // empty: primary table goes to standard output
    RatingScale scale;
    std::uint64_t seed = 1;
    bool force = false;
    std::optional<double> lambda;  // sweep: evaluate this threshold as well
    bool include_unmatched = false;
    std::size_t replications = 100;
    GeneratorConfig generator;  // simulate; its seed is overwritten by `seed`
};

// Executes one subcommand. Every file is rendered in memory first and written
// only after checking that none of the targets exists (unless force), so a
// refused run leaves the directory untouched. On failure prints one line
// "error: <Code>: <message>" to err and returns 2 or 3.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fusionlab::cli
