#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "fusionlab/roc.hpp"
#include "fusionlab/synth.hpp"
#include "oracles.hpp"

using namespace fusionlab;

namespace {

double continuous_auc(const LatentPopulation& pop, std::size_t observer) {
    const std::size_t n = pop.item_ids.size();
    std::span<const double> row(pop.latent.data() + observer * n, n);
    return labeled_auc(row, pop.labels).value;
}

std::string serialize(const SyntheticPopulation& pop) {
    std::ostringstream out;
    write_ratings(out, pop.dataset);
    write_items(out, pop.dataset);
    write_machine_scores(out, pop.machine);
    write_abilities_csv(out, pop.abilities);
    return out.str();
}

}  // namespace

TEST_CASE("config validation") {
    auto bad = [](auto mutate) {
        GeneratorConfig c;
        mutate(c);
        CHECK_ERROR_CODE(c.validate(), ErrorCode::InvalidConfig);
    };
    bad([](GeneratorConfig& c) { c.n_items = 1; });
    bad([](GeneratorConfig& c) { c.n_observers = 0; });
    bad([](GeneratorConfig& c) { c.same_fraction = 1.0; });
    bad([](GeneratorConfig& c) { c.same_fraction = 0.005; });  // 0.4 of 80 items rounds to none
    bad([](GeneratorConfig& c) { c.dprime_low = 2, c.dprime_high = 1; });
    bad([](GeneratorConfig& c) { c.dprime_low = -1; });
    bad([](GeneratorConfig& c) { c.item_difficulty_sd = -0.1; });
    bad([](GeneratorConfig& c) { c.scale = {1, 4.5, Polarity::HigherMeansSame}; });
    CHECK_NOTHROW(GeneratorConfig{}.validate());
}

TEST_CASE("label balance uses largest remainder") {
    CHECK(same_item_count(80, 0.5) == 40);
    CHECK(same_item_count(84, 0.5) == 42);
    CHECK(same_item_count(20, 0.6) == 12);
    CHECK(same_item_count(7, 0.5) == 4);   // tie goes to same
    CHECK(same_item_count(10, 0.34) == 3);
    CHECK(same_item_count(10, 0.36) == 4);
    GeneratorConfig c;
    c.n_items = 20;
    c.same_fraction = 0.6;
    const auto pop = generate(c);
    CHECK(pop.dataset.same_count() == 12);
}

TEST_CASE("generation is deterministic and independent of worker count") {
    GeneratorConfig c;
    c.seed = 99;
    const auto a = serialize(generate(c));
    CHECK(a == serialize(generate(c)));
    ::setenv("FUSIONLAB_THREADS", "1", 1);
    const auto single = serialize(generate(c));
    ::setenv("FUSIONLAB_THREADS", "7", 1);
    const auto seven = serialize(generate(c));
    ::unsetenv("FUSIONLAB_THREADS");
    CHECK(a == single);
    CHECK(a == seven);
    c.seed = 100;
    CHECK(a != serialize(generate(c)));
}

TEST_CASE("ratings are integer levels that use the whole scale") {
    GeneratorConfig c;
    c.scale = {1, 7, Polarity::HigherMeansDifferent};
    const auto pop = generate(c);
    std::vector<int> used(8, 0);
    for (std::size_t o = 0; o < pop.dataset.observer_count(); ++o) {
        for (double v : pop.dataset.row(o)) {
            CHECK(v == std::floor(v));
            ++used[static_cast<std::size_t>(v)];
        }
    }
    for (int level = 1; level <= 7; ++level) CHECK(used[static_cast<std::size_t>(level)] > 0);
}

TEST_CASE("thresholds split the theoretical marginal into equal masses") {
    const double d = 1.7, sd = 0.5, p = 0.4;
    const auto t = rating_thresholds(d, sd, p, 5);
    REQUIRE(t.size() == 4);
    const double v = std::sqrt(1 + sd * sd);
    for (std::size_t k = 0; k < 4; ++k) {
        const double mass = p * oracle::phi((t[k] - d) / v) + (1 - p) * oracle::phi(t[k] / v);
        CHECK(mass == Catch::Approx((k + 1) / 5.0).margin(1e-10));
    }
}

TEST_CASE("zero sensitivity gives chance AUC") {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GeneratorConfig c;
        c.seed = seed;
        c.n_observers = 1;
        c.dprime_low = c.dprime_high = 0.0;
        sum += labeled_auc(generate(c).dataset.row(0), generate(c).dataset.labels()).value;
    }
    CHECK(std::abs(sum / 200 - 0.5) <= 0.02);
}

TEST_CASE("continuous readout matches the closed-form AUC") {
    for (double d : {0.5, 1.0, 2.0}) {
        double sum = 0.0;
        int count = 0;
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            GeneratorConfig c;
            c.seed = seed;
            c.n_observers = 10;
            c.n_items = 100;
            c.item_difficulty_sd = 0.0;
            c.dprime_low = c.dprime_high = d;
            const auto pop = generate_latent(c);
            for (std::size_t o = 0; o < 10; ++o, ++count) sum += continuous_auc(pop, o);
        }
        CHECK(closed_form_auc(d, 0.0) == Catch::Approx(oracle::phi(d / std::sqrt(2.0))).margin(1e-15));
        CHECK(std::abs(sum / count - oracle::phi(d / std::sqrt(2.0))) <= 0.02);
    }
}

TEST_CASE("mean realized AUC is non-decreasing in sensitivity") {
    double previous = 0.0;
    for (double d : {0.0, 0.75, 1.5, 2.25, 3.0}) {
        double sum = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            GeneratorConfig c;
            c.seed = seed;
            c.n_observers = 5;
            c.dprime_low = c.dprime_high = d;
            const auto pop = generate(c);
            for (std::size_t o = 0; o < 5; ++o) sum += labeled_auc(pop.dataset.row(o), pop.dataset.labels()).value;
        }
        const double mean = sum / 250.0;
        CHECK(mean >= previous);
        previous = mean;
    }
}

TEST_CASE("discretization never raises AUC in expectation") {
    for (double top : {5.0, 7.0}) {
        int lowered = 0, raised = 0;
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            GeneratorConfig c;
            c.seed = seed;
            c.n_observers = 20;
            c.scale = {1, top, Polarity::HigherMeansSame};
            const auto latent = generate_latent(c);
            const auto pop = generate(c);
            double cont = 0.0, disc = 0.0;
            for (std::size_t o = 0; o < 20; ++o) {
                cont += continuous_auc(latent, o);
                disc += labeled_auc(pop.dataset.row(o), pop.dataset.labels()).value;
            }
            (disc < cont ? lowered : raised) += 1;
        }
        // sign test: P(>= 32 of 40 | p = 1/2) < 1e-4
        CHECK(lowered >= 32);
    }
}

TEST_CASE("abilities carry the closed-form AUC") {
    const auto pop = generate(GeneratorConfig{});
    REQUIRE(pop.abilities.size() == 50);
    for (const auto& a : pop.abilities) {
        CHECK(a.dprime >= 0.4);
        CHECK(a.dprime <= 3.0);
        CHECK(a.true_auc_closed_form == closed_form_auc(a.dprime, 0.5));
    }
    CHECK(pop.machine.scores.size() == 80);
    CHECK(pop.machine.item_ids == pop.dataset.item_ids());
}
