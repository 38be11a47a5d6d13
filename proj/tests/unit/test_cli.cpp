#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fusionlab/cli.hpp"
#include "fusionlab/csv.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"
#include "json.hpp"

using namespace fusionlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

Outcome run_cli(const cli::RunConfig& config) {
    std::ostringstream out, err;
    const int status = cli::run(config, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Fresh scratch directory per test case.
struct Scratch {
    fs::path root;
    explicit Scratch(const std::string& name) : root(fs::temp_directory_path() / ("fusionlab_cli_" + name)) {
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~Scratch() { fs::remove_all(root); }
};

cli::RunConfig simulate_into(const fs::path& dir, std::size_t observers = 12) {
    cli::RunConfig c;
    c.subcommand = cli::Subcommand::Simulate;
    c.out_dir = dir.string();
    c.generator.n_observers = observers;
    c.generator.n_items = 40;
    return c;
}

cli::RunConfig on_data(const fs::path& data, cli::Subcommand sub) {
    cli::RunConfig c;
    c.subcommand = sub;
    c.ratings_path = (data / "ratings.csv").string();
    c.items_path = (data / "items.csv").string();
    c.machine_path = (data / "machine.csv").string();
    return c;
}

}  // namespace

TEST_CASE("subcommand names round-trip") {
    for (auto s : {cli::Subcommand::Auc, cli::Subcommand::MachinePairs, cli::Subcommand::Report}) {
        CHECK(cli::parse_subcommand(cli::to_string(s)) == s);
    }
    CHECK_THROWS_AS(cli::parse_subcommand("nope"), Error);
}

TEST_CASE("auc prints a per-observer table to standard output") {
    Scratch s("auc");
    REQUIRE(run_cli(simulate_into(s.root / "data")).status == 0);
    auto c = on_data(s.root / "data", cli::Subcommand::Auc);
    c.machine_path.clear();
    const auto r = run_cli(c);
    REQUIRE(r.status == 0);
    std::istringstream table(r.out);
    const auto t = csv::read(table, {"performer_id", "auc", "n_same", "n_different"}, "stdout");
    CHECK(t.rows.size() == 12);
    CHECK(t.rows[0][0] == "obs001");
}

TEST_CASE("sweep endpoints equal machine and generic-fusion AUC") {
    Scratch s("sweep");
    REQUIRE(run_cli(simulate_into(s.root / "data", 20)).status == 0);
    auto c = on_data(s.root / "data", cli::Subcommand::Sweep);
    const auto sweep = run_cli(c);
    REQUIRE(sweep.status == 0);
    c.subcommand = cli::Subcommand::MachinePairs;
    const auto pairs = run_cli(c);
    REQUIRE(pairs.status == 0);

    std::istringstream sweep_in(sweep.out), pairs_in(pairs.out);
    const auto st = csv::read(sweep_in, {"lambda", "system_auc"}, "sweep");
    const auto pt = csv::read(pairs_in, {"a", "b", "auc_a", "auc_b", "auc_fused", "delta", "benefit"}, "pairs");
    const double machine_auc = parse_double(pt.rows[0][3], "auc_b");
    double offset = 0.0;
    for (const auto& row : pt.rows) offset += parse_double(row[4], "fused") - machine_auc;
    const double generic = machine_auc + offset / static_cast<double>(pt.rows.size());
    CHECK(parse_double(st.rows.front()[1], "first") == machine_auc);
    CHECK(parse_double(st.rows.back()[1], "last") == generic);
}

TEST_CASE("simulate + report is byte-identical across reruns and lists every file") {
    Scratch s("report");
    REQUIRE(run_cli(simulate_into(s.root / "data")).status == 0);
    auto c = on_data(s.root / "data", cli::Subcommand::Report);
    c.replications = 30;
    c.out_dir = (s.root / "r1").string();
    REQUIRE(run_cli(c).status == 0);
    c.out_dir = (s.root / "r2").string();
    REQUIRE(run_cli(c).status == 0);

    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(s.root / "r1")) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) CHECK(slurp(s.root / "r1" / n) == slurp(s.root / "r2" / n));

    const auto manifest = nlohmann::json::parse(slurp(s.root / "r1" / "manifest.json"));
    std::vector<std::string> listed;
    for (const auto& f : manifest["files"]) listed.push_back(f["file"].get<std::string>());
    listed.push_back("manifest.json");
    std::sort(listed.begin(), listed.end());
    CHECK(listed == names);

    // every figure has a sibling table
    for (const auto& n : names) {
        if (n.ends_with(".svg")) {
            const auto stem = n.substr(0, n.size() - 4);
            const bool sibling = std::find(names.begin(), names.end(), stem + ".csv") != names.end() ||
                                 std::find(names.begin(), names.end(), stem + "_figure.csv") != names.end();
            CHECK(sibling);
            CHECK(slurp(s.root / "r1" / n).starts_with("<svg"));
        }
    }
    CHECK(slurp(s.root / "r1" / "manifest.json").find(s.root.string()) == std::string::npos);
}

TEST_CASE("existing files are never overwritten without --force") {
    Scratch s("force");
    auto c = simulate_into(s.root / "data");
    REQUIRE(run_cli(c).status == 0);
    const auto before = slurp(s.root / "data" / "ratings.csv");
    c.seed = 2;
    const auto refused = run_cli(c);
    CHECK(refused.status == 2);
    CHECK(refused.err.starts_with("error: FileExists: "));
    CHECK(std::count(refused.err.begin(), refused.err.end(), '\n') == 1);
    CHECK(slurp(s.root / "data" / "ratings.csv") == before);
    c.force = true;
    CHECK(run_cli(c).status == 0);
    CHECK(slurp(s.root / "data" / "ratings.csv") != before);
}

TEST_CASE("errors map to one line and the documented exit status") {
    Scratch s("errors");
    REQUIRE(run_cli(simulate_into(s.root / "data")).status == 0);

    SECTION("missing input file") {
        auto c = on_data(s.root / "nowhere", cli::Subcommand::Auc);
        const auto r = run_cli(c);
        CHECK(r.status == 2);
        CHECK(r.err.starts_with("error: IoError: "));
    }
    SECTION("missing cell") {
        auto text = slurp(s.root / "data" / "ratings.csv");
        text.erase(text.rfind("obs012"));
        std::ofstream(s.root / "data" / "ratings.csv", std::ios::trunc) << text;
        const auto r = run_cli(on_data(s.root / "data", cli::Subcommand::Pairs));
        CHECK(r.status == 2);
        CHECK(r.err.starts_with("error: MissingCell: "));
    }
    SECTION("constant machine") {
        std::ofstream m(s.root / "data" / "machine.csv", std::ios::trunc);
        m << "item_id,score\n";
        for (int j = 1; j <= 40; ++j) m << "item" << (j < 10 ? "00" : "0") << j << ",1\n";
        m.close();
        const auto r = run_cli(on_data(s.root / "data", cli::Subcommand::Sweep));
        CHECK(r.status == 3);
        CHECK(r.err.starts_with("error: ZeroVariance: "));
    }
    SECTION("machine required") {
        auto c = on_data(s.root / "data", cli::Subcommand::Sweep);
        c.machine_path.clear();
        const auto r = run_cli(c);
        CHECK(r.status == 2);
        CHECK(r.err.starts_with("error: Usage: "));
    }
    SECTION("single observer cannot be paired") {
        auto c = simulate_into(s.root / "one", 1);
        REQUIRE(run_cli(c).status == 0);
        const auto r = run_cli(on_data(s.root / "one", cli::Subcommand::Match));
        CHECK(r.status == 3);
        CHECK(r.err.starts_with("error: TooFewObservers: "));
    }
}

TEST_CASE("match and baseline honour their flags") {
    Scratch s("match");
    REQUIRE(run_cli(simulate_into(s.root / "data", 11)).status == 0);
    auto c = on_data(s.root / "data", cli::Subcommand::Match);
    c.include_unmatched = true;
    const auto r = run_cli(c);
    REQUIRE(r.status == 0);
    CHECK(r.err.find("system_auc_with_unmatched") != std::string::npos);
    std::istringstream in(r.out);
    CHECK(csv::read(in, {"a", "b", "fused_auc"}, "match").rows.size() == 5);

    c.subcommand = cli::Subcommand::Baseline;
    c.replications = 7;
    const auto b = run_cli(c);
    REQUIRE(b.status == 0);
    std::istringstream bin(b.out);
    CHECK(csv::read(bin, {"replication", "system_auc"}, "baseline").rows.size() == 7);
}

TEST_CASE("sweep --lambda evaluates the requested threshold") {
    Scratch s("lambda");
    REQUIRE(run_cli(simulate_into(s.root / "data")).status == 0);
    auto c = on_data(s.root / "data", cli::Subcommand::Sweep);
    c.lambda = 0.05;
    c.out_dir = (s.root / "out").string();
    const auto r = run_cli(c);
    REQUIRE(r.status == 0);
    CHECK(r.out.find("\"auc_at_lambda\"") != std::string::npos);
    CHECK(fs::exists(s.root / "out" / "sweep.svg"));
    CHECK(fs::exists(s.root / "out" / "sweep_figure.csv"));
}
