#include "fusionlab/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"
#include "fusionlab/fusion.hpp"
#include "fusionlab/matching.hpp"
#include "fusionlab/par.hpp"
#include "fusionlab/roc.hpp"
#include "fusionlab/svg.hpp"
#include "fusionlab/system.hpp"

namespace fusionlab::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr std::array<std::pair<Subcommand, std::string_view>, 10> kNames{{
    {Subcommand::Auc, "auc"},
    {Subcommand::Pairs, "pairs"},
    {Subcommand::MachinePairs, "machine-pairs"},
    {Subcommand::Par, "par"},
    {Subcommand::Sweep, "sweep"},
    {Subcommand::Match, "match"},
    {Subcommand::Baseline, "baseline"},
    {Subcommand::Compare, "compare"},
    {Subcommand::Simulate, "simulate"},
    {Subcommand::Report, "report"},
}};

// Files rendered in memory, committed together.
class Artifacts {
public:
    std::ostringstream& add(std::string name, json summary = json::object()) {
        entries_.push_back({std::move(name), std::move(summary), std::make_unique<std::ostringstream>()});
        return *entries_.back().body;
    }

    json& summary_of(std::string_view name) {
        for (auto& e : entries_) {
            if (e.name == name) return e.summary;
        }
        throw Error(ErrorCode::InvalidConfig, "no artifact named " + std::string(name));
    }

    std::string body_of(std::string_view name) const {
        for (const auto& e : entries_) {
            if (e.name == name) return e.body->str();
        }
        return {};
    }

    json manifest_files() const {
        json files = json::array();
        for (const auto& e : entries_) {
            const auto text = e.body->str();
            json entry;
            entry["file"] = e.name;
            entry["bytes"] = text.size();
            if (e.name.ends_with(".csv")) entry["rows"] = std::max<std::ptrdiff_t>(0, std::count(text.begin(), text.end(), '\n') - 1);
            entry["summary"] = e.summary;
            files.push_back(std::move(entry));
        }
        return files;
    }

    void commit(const std::string& dir, bool force) const {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create directory '" + dir + "': " + ec.message());
        if (!force) {
            for (const auto& e : entries_) {
                if (fs::exists(fs::path(dir) / e.name)) {
                    throw Error(ErrorCode::FileExists,
                                "'" + (fs::path(dir) / e.name).string() + "' exists; pass --force to overwrite");
                }
            }
        }
        for (const auto& e : entries_) {
            const auto path = fs::path(dir) / e.name;
            std::ofstream file(path, std::ios::binary | std::ios::trunc);
            file << e.body->str();
            if (!file) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
        }
    }

private:
    struct Entry {
        std::string name;
        json summary;
        std::unique_ptr<std::ostringstream> body;
    };
    std::vector<Entry> entries_;
};

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void require(bool ok, std::string_view what) {
    if (!ok) throw Error(ErrorCode::Usage, std::string(what));
}

struct Inputs {
    RatingDataset dataset;
    std::optional<Performer> machine;
    double machine_auc = 0.0;
};

Inputs load_inputs(const RunConfig& config, bool need_machine) {
    require(!config.ratings_path.empty() && !config.items_path.empty(), "--ratings and --items are required");
    require(!need_machine || !config.machine_path.empty(), "--machine is required for this subcommand");
    Inputs in{load_dataset(config.ratings_path, config.items_path, config.scale), std::nullopt, 0.0};
    if (!config.machine_path.empty()) {
        auto scores = load_machine_scores(config.machine_path, in.dataset);
        in.machine = scale_machine(scores, human_grand_mean(in.dataset));
        in.machine_auc = labeled_auc(in.machine->responses, in.dataset.labels()).value;
    }
    return in;
}

// --- stage renderers -------------------------------------------------------

void render_auc(const Inputs& in, Artifacts& art) {
    auto& out = art.add("auc.csv");
    out << "performer_id,auc,n_same,n_different\n";
    std::vector<double> values;
    for (std::size_t o = 0; o < in.dataset.observer_count(); ++o) {
        const auto a = labeled_auc(in.dataset.row(o), in.dataset.labels());
        values.push_back(a.value);
        out << in.dataset.observer_ids()[o] << ',' << format_double(a.value) << ',' << a.n_same << ','
            << a.n_different << '\n';
    }
    json summary{{"observers", values.size()},
                 {"items", in.dataset.item_count()},
                 {"median_auc", stats::median(values)},
                 {"min_auc", *std::min_element(values.begin(), values.end())},
                 {"max_auc", *std::max_element(values.begin(), values.end())}};
    if (in.machine) {
        out << in.machine->id << ',' << format_double(in.machine_auc) << ',' << in.dataset.same_count() << ','
            << in.dataset.different_count() << '\n';
        summary["machine_auc"] = in.machine_auc;
    }
    art.summary_of("auc.csv") = std::move(summary);
}

void render_pairs(std::span<const DyadRecord> dyads, Artifacts& art) {
    auto& out = art.add("pairs.csv");
    write_dyads_csv(out, dyads);
    std::size_t positive = 0;
    for (const auto& d : dyads) positive += d.benefit > 0.0 ? 1 : 0;
    art.summary_of("pairs.csv") = json{{"dyads", dyads.size()}, {"positive_benefit", positive}};
}

void render_machine_pairs(std::span<const DyadRecord> dyads, double machine_auc, Artifacts& art) {
    auto& out = art.add("machine_pairs.csv");
    write_dyads_csv(out, dyads);
    std::size_t positive = 0;
    for (const auto& d : dyads) positive += d.benefit > 0.0 ? 1 : 0;
    art.summary_of("machine_pairs.csv") =
        json{{"dyads", dyads.size()}, {"machine_auc", machine_auc}, {"positive_benefit", positive}};
}

json correlation_json(const ParCorrelation& c) {
    return json{{"r", c.r}, {"n", c.n}, {"ci_low", c.ci_low}, {"ci_high", c.ci_high}, {"p_value", c.p_value}};
}

void render_par(std::span<const DyadRecord> dyads, const Inputs& in, std::span<const DyadRecord> machine_dyads,
                Artifacts& art) {
    const auto overall = par_correlation(dyads);
    json summary{{"all_pairs", correlation_json(overall)}};

    auto& bins_out = art.add("par_bins.csv");
    bool header_done = false;
    for (const auto extreme : {Extreme::WorstPerformer, Extreme::BestPerformer}) {
        std::ostringstream tmp;
        const auto bins = bin_by_extreme(dyads, extreme);
        write_bins_csv(tmp, bins, extreme);
        auto text = tmp.str();
        if (header_done) text.erase(0, text.find('\n') + 1);
        bins_out << text;
        header_done = true;
    }

    // Scatter: x = |dAUC|, y = benefit, color = better partner's AUC.
    svg::ScatterChart chart;
    chart.title = "Fusion benefit vs. ability difference";
    chart.x_label = "|AUC difference|";
    chart.y_label = "fusion benefit";
    chart.color_label = "better AUC";
    auto& csv = art.add("par_scatter.csv");
    csv << "delta,benefit,better_auc\n";
    for (const auto& d : dyads) {
        const double better = std::max(d.auc_a, d.auc_b);
        chart.points.push_back({d.delta, d.benefit, better});
        csv << format_double(d.delta) << ',' << format_double(d.benefit) << ',' << format_double(better) << '\n';
    }
    art.add("par_scatter.svg") << svg::render(chart);

    if (in.machine) {
        const auto critical = critical_fusion_difference(machine_dyads, in.machine_auc);
        json c{{"lambda", critical.lambda}, {"advantage_dyads", critical.advantage_dyads}};
        c["signal"] = critical.signal ? json(std::string(to_string(*critical.signal))) : json(nullptr);
        if (machine_dyads.size() >= 3) {
            try {
                summary["human_machine"] = correlation_json(par_correlation(machine_dyads));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ConstantInput) throw;
                summary["human_machine"] = nullptr;
            }
        }
        summary["critical_fusion_difference"] = std::move(c);
    }
    art.summary_of("par_bins.csv") = std::move(summary);
}

void render_sweep(std::span<const DyadRecord> machine_dyads, double machine_auc, std::optional<double> lambda,
                  Artifacts& art) {
    const auto sweep = lambda_sweep(machine_dyads, machine_auc);
    const double generic = system_auc(machine_dyads, FusionPolicy::generic_fusion(), machine_auc);
    write_sweep_csv(art.add("sweep.csv"), sweep);

    json summary{{"points", sweep.lambdas.size()},
                 {"machine_auc", machine_auc},
                 {"generic_fusion_auc", generic},
                 {"lambda_star", sweep.lambda_star},
                 {"auc_at_lambda_star", sweep.auc_at_star},
                 {"fused_at_lambda_star", fused_count(machine_dyads, sweep.lambda_star)},
                 {"humans", machine_dyads.size()}};
    if (lambda) {
        summary["lambda"] = *lambda;
        summary["auc_at_lambda"] = system_auc(machine_dyads, FusionPolicy::intelligent(*lambda), machine_auc);
        summary["fused_at_lambda"] = fused_count(machine_dyads, *lambda);
    }
    art.summary_of("sweep.csv") = std::move(summary);

    svg::LineChart chart;
    chart.title = "System AUC vs. fusion threshold";
    chart.x_label = "lambda";
    chart.y_label = "system AUC";
    chart.xs = sweep.lambdas;
    chart.ys = sweep.system_aucs;
    chart.references = {{machine_auc, "machine alone", "#d62728", true},
                        {generic, "generic fusion", "#2ca02c", true}};
    chart.marker_x = sweep.lambda_star;
    auto& csv = art.add("sweep_figure.csv");
    csv << "series,x,y\n";
    for (std::size_t k = 0; k < sweep.lambdas.size(); ++k) {
        csv << "system," << format_double(sweep.lambdas[k]) << ',' << format_double(sweep.system_aucs[k]) << '\n';
    }
    csv << "machine_alone,," << format_double(machine_auc) << '\n';
    csv << "generic_fusion,," << format_double(generic) << '\n';
    csv << "lambda_star," << format_double(sweep.lambda_star) << ",\n";
    art.add("sweep.svg") << svg::render(chart);
}

MatchingResult render_match(const WeightMatrix& weights, const Inputs& in, bool include_unmatched, Artifacts& art) {
    auto result = optimal_matching(weights);
    write_matching_csv(art.add("matching.csv"), result);
    json summary{{"pairs", result.pairs.size()},
                 {"total_weight", result.total_weight},
                 {"system_auc", result.system_auc}};
    summary["unmatched"] = result.unmatched ? json(*result.unmatched) : json(nullptr);
    if (include_unmatched && result.unmatched) {
        const double solo = observer_auc(in.dataset, *result.unmatched).value;
        summary["unmatched_auc"] = solo;
        summary["system_auc_with_unmatched"] = system_auc_with_unmatched(result, solo);
    }
    art.summary_of("matching.csv") = std::move(summary);
    return result;
}

void render_baseline(const WeightMatrix& weights, std::size_t replications, std::uint64_t seed, Artifacts& art) {
    const auto report = random_baseline(weights, replications, seed);
    write_baseline_csv(art.add("baseline.csv"), report);
    art.summary_of("baseline.csv") = json{{"replications", replications},
                                          {"seed", seed},
                                          {"optimal_system_auc", report.optimal},
                                          {"random_mean", report.mean},
                                          {"random_sd", report.sd},
                                          {"z", report.z ? number(*report.z) : json(nullptr)}};
}

json test_json(const NamedTest& t) {
    json j{{"test", t.name},
           {"method", std::string(stats::to_string(t.result.method))},
           {"statistic", t.result.statistic},
           {"n", t.result.n},
           {"p_value", t.result.p_value},
           {"exact", t.result.exact},
           {"identical_samples", t.identical_samples}};
    j["corrected_p"] = t.result.corrected_p ? json(*t.result.corrected_p) : json(nullptr);
    return j;
}

void render_compare(std::span<const DyadRecord> machine_dyads, const Inputs& in,
                    const std::optional<MatchingResult>& matching, Artifacts& art) {
    std::vector<double> individual;
    for (const auto& d : machine_dyads) individual.push_back(d.auc_a);
    std::vector<double> optimal;
    if (matching) {
        for (const auto& p : matching->pairs) optimal.push_back(p.weight);
    }
    const auto cmp = compare_policies(machine_dyads, in.machine_auc, individual, optimal);

    auto& per_human = art.add("compare.csv");
    per_human << "observer_id,individual,generic_fusion,intelligent_fusion\n";
    for (std::size_t i = 0; i < cmp.human_ids.size(); ++i) {
        per_human << cmp.human_ids[i] << ',' << format_double(cmp.individual[i]) << ','
                  << format_double(cmp.generic[i]) << ',' << format_double(cmp.intelligent[i]) << '\n';
    }

    auto& tests = art.add("compare_tests.csv");
    tests << "test,method,statistic,n,p_value,corrected_p,exact\n";
    json test_list = json::array();
    auto emit = [&](const NamedTest& t) {
        tests << t.name << ',' << stats::to_string(t.result.method) << ',' << format_double(t.result.statistic) << ','
              << t.result.n << ',' << format_double(t.result.p_value) << ','
              << (t.result.corrected_p ? format_double(*t.result.corrected_p) : std::string()) << ','
              << (t.result.exact ? "true" : "false") << '\n';
        test_list.push_back(test_json(t));
    };
    for (const auto& t : cmp.paired_tests) emit(t);
    if (cmp.optimal_vs_individual) emit(*cmp.optimal_vs_individual);

    json summary{{"machine_auc", cmp.machine_auc},
                 {"lambda_star", cmp.lambda_star},
                 {"median_individual", cmp.median_individual},
                 {"median_generic_fusion", cmp.median_generic},
                 {"median_intelligent_fusion", cmp.median_intelligent}};
    summary["median_optimal_pairs"] = cmp.median_optimal ? json(*cmp.median_optimal) : json(nullptr);
    summary["tests"] = std::move(test_list);
    art.summary_of("compare.csv") = std::move(summary);
}

void render_simulate(const RunConfig& config, Artifacts& art) {
    auto generator = config.generator;
    generator.seed = config.seed;
    generator.scale = config.scale;
    const auto pop = generate(generator);
    write_ratings(art.add("ratings.csv"), pop.dataset);
    write_items(art.add("items.csv"), pop.dataset);
    write_machine_scores(art.add("machine.csv"), pop.machine);
    write_abilities_csv(art.add("abilities.csv"), pop.abilities);
    art.summary_of("ratings.csv") =
        json{{"observers", pop.dataset.observer_count()}, {"items", pop.dataset.item_count()}, {"seed", config.seed}};
    art.summary_of("items.csv") =
        json{{"same", pop.dataset.same_count()}, {"different", pop.dataset.different_count()}};
}

// Prints a file body when no output directory was given, else commits.
void finish(const RunConfig& config, const Artifacts& art, std::string_view primary, std::ostream& out) {
    if (config.out_dir.empty()) {
        out << art.body_of(primary);
        return;
    }
    art.commit(config.out_dir, config.force);
}

void print_summary(std::ostream& out, std::string_view label, const json& summary) {
    out << label << ' ' << summary.dump() << '\n';
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Artifacts art;
    switch (config.subcommand) {
        case Subcommand::Auc: {
            const auto in = load_inputs(config, false);
            render_auc(in, art);
            finish(config, art, "auc.csv", out);
            break;
        }
        case Subcommand::Pairs: {
            const auto in = load_inputs(config, false);
            render_pairs(all_pairs(in.dataset), art);
            finish(config, art, "pairs.csv", out);
            break;
        }
        case Subcommand::MachinePairs: {
            const auto in = load_inputs(config, true);
            render_machine_pairs(machine_pairs(in.dataset, *in.machine), in.machine_auc, art);
            finish(config, art, "machine_pairs.csv", out);
            break;
        }
        case Subcommand::Par: {
            const auto in = load_inputs(config, false);
            const auto dyads = all_pairs(in.dataset);
            const auto mdyads = in.machine ? machine_pairs(in.dataset, *in.machine) : std::vector<DyadRecord>{};
            render_par(dyads, in, mdyads, art);
            finish(config, art, "par_bins.csv", out);
            if (!config.out_dir.empty()) print_summary(out, "par", art.summary_of("par_bins.csv"));
            break;
        }
        case Subcommand::Sweep: {
            const auto in = load_inputs(config, true);
            render_sweep(machine_pairs(in.dataset, *in.machine), in.machine_auc, config.lambda, art);
            finish(config, art, "sweep.csv", out);
            if (!config.out_dir.empty()) print_summary(out, "sweep", art.summary_of("sweep.csv"));
            break;
        }
        case Subcommand::Match: {
            const auto in = load_inputs(config, false);
            render_match(WeightMatrix::from_dataset(in.dataset), in, config.include_unmatched, art);
            finish(config, art, "matching.csv", out);
            print_summary(config.out_dir.empty() ? err : out, "match", art.summary_of("matching.csv"));
            break;
        }
        case Subcommand::Baseline: {
            const auto in = load_inputs(config, false);
            render_baseline(WeightMatrix::from_dataset(in.dataset), config.replications, config.seed, art);
            finish(config, art, "baseline.csv", out);
            print_summary(config.out_dir.empty() ? err : out, "baseline", art.summary_of("baseline.csv"));
            break;
        }
        case Subcommand::Compare: {
            const auto in = load_inputs(config, true);
            const auto mdyads = machine_pairs(in.dataset, *in.machine);
            std::optional<MatchingResult> matching;
            if (in.dataset.observer_count() >= 2) matching = optimal_matching(WeightMatrix::from_dataset(in.dataset));
            render_compare(mdyads, in, matching, art);
            finish(config, art, "compare_tests.csv", out);
            break;
        }
        case Subcommand::Simulate: {
            require(!config.out_dir.empty(), "simulate needs --out");
            render_simulate(config, art);
            finish(config, art, "ratings.csv", out);
            break;
        }
        case Subcommand::Report: {
            require(!config.out_dir.empty(), "report needs --out");
            const auto in = load_inputs(config, true);
            const auto dyads = all_pairs(in.dataset);
            const auto mdyads = machine_pairs(in.dataset, *in.machine);
            const auto weights = WeightMatrix::from_dyads(in.dataset.observer_ids(), dyads);
            render_auc(in, art);
            render_pairs(dyads, art);
            render_machine_pairs(mdyads, in.machine_auc, art);
            render_par(dyads, in, mdyads, art);
            render_sweep(mdyads, in.machine_auc, config.lambda, art);
            const auto matching = render_match(weights, in, config.include_unmatched, art);
            render_baseline(weights, config.replications, config.seed, art);
            render_compare(mdyads, in, matching, art);

            json manifest;
            manifest["tool"] = "fusionlab";
            manifest["config"] = json{{"seed", config.seed},
                                      {"replications", config.replications},
                                      {"scale_min", config.scale.min},
                                      {"scale_max", config.scale.max},
                                      {"polarity", std::string(to_string(config.scale.polarity))},
                                      {"include_unmatched", config.include_unmatched}};
            manifest["config"]["lambda"] = config.lambda ? json(*config.lambda) : json(nullptr);
            manifest["files"] = art.manifest_files();
            art.add("manifest.json") << manifest.dump(2) << '\n';
            art.commit(config.out_dir, config.force);
            const auto& sweep = art.summary_of("sweep.csv");
            const auto& match = art.summary_of("matching.csv");
            out << "report: " << art.manifest_files().size() << " files in " << config.out_dir << '\n'
                << "machine AUC " << format_fixed(in.machine_auc, 4) << ", lambda* "
                << format_fixed(sweep["lambda_star"].get<double>(), 4) << ", optimal pairing system AUC "
                << format_fixed(match["system_auc"].get<double>(), 4) << '\n';
            break;
        }
    }
    return 0;
}

}  // namespace

std::string_view to_string(Subcommand command) noexcept {
    for (const auto& [c, name] : kNames) {
        if (c == command) return name;
    }
    return "unknown";
}

Subcommand parse_subcommand(std::string_view name) {
    for (const auto& [c, n] : kNames) {
        if (n == name) return c;
    }
    throw Error(ErrorCode::Usage, "unknown subcommand '" + std::string(name) + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(config, out, err);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_status(e.code());
    } catch (const std::exception& e) {
        err << "error: " << to_string(ErrorCode::IoError) << ": " << e.what() << '\n';
        return exit_status(ErrorCode::IoError);
    }
}

}  // namespace fusionlab::cli
