#include "fusionlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"
#include "fusionlab/parallel.hpp"
#include "fusionlab/random.hpp"
#include "fusionlab/stats.hpp"

namespace fusionlab {

void GeneratorConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (n_observers < 1) fail("n_observers must be >= 1");
    if (n_items < 2) fail("n_items must be >= 2");
    if (!(same_fraction > 0.0 && same_fraction < 1.0)) fail("same_fraction must lie in (0, 1)");
    if (!(dprime_low >= 0.0) || !(dprime_low <= dprime_high) || !std::isfinite(dprime_high)) {
        fail("dprime range must satisfy 0 <= low <= high");
    }
    if (!(item_difficulty_sd >= 0.0) || !std::isfinite(item_difficulty_sd)) fail("item_difficulty_sd must be >= 0");
    if (!(machine_dprime >= 0.0) || !std::isfinite(machine_dprime)) fail("machine_dprime must be >= 0");
    try {
        scale.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    if (scale.min != std::floor(scale.min) || scale.max != std::floor(scale.max)) {
        fail("generator scale bounds must be integers");
    }
    const std::size_t same = same_item_count(n_items, same_fraction);
    if (same == 0 || same == n_items) fail("same_fraction leaves one label class empty");
}

std::size_t GeneratorConfig::levels() const { return static_cast<std::size_t>(scale.max - scale.min) + 1; }

std::size_t same_item_count(std::size_t n_items, double same_fraction) {
    const double same_quota = same_fraction * static_cast<double>(n_items);
    const double diff_quota = static_cast<double>(n_items) - same_quota;
    auto same = static_cast<std::size_t>(std::floor(same_quota));
    auto diff = static_cast<std::size_t>(std::floor(diff_quota));
    if (same + diff < n_items) {
        // one seat left; larger remainder wins, ties go to the same class
        if (same_quota - std::floor(same_quota) >= diff_quota - std::floor(diff_quota)) ++same;
    }
    return same;
}

double closed_form_auc(double dprime, double item_difficulty_sd) {
    return stats::normal_cdf(dprime / std::sqrt(2.0 * (1.0 + item_difficulty_sd * item_difficulty_sd)));
}

std::vector<double> rating_thresholds(double dprime, double item_difficulty_sd, double same_fraction,
                                      std::size_t levels) {
    const double sd = std::sqrt(1.0 + item_difficulty_sd * item_difficulty_sd);
    auto marginal = [&](double x) {
        return same_fraction * stats::normal_cdf((x - dprime) / sd) + (1.0 - same_fraction) * stats::normal_cdf(x / sd);
    };
    std::vector<double> out;
    for (std::size_t k = 1; k < levels; ++k) {
        const double target = static_cast<double>(k) / static_cast<double>(levels);
        double lo = -10.0 * sd;
        double hi = dprime + 10.0 * sd;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            (marginal(mid) < target ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

namespace {

std::string padded_id(const char* prefix, std::size_t index, std::size_t count) {
    std::string digits = std::to_string(index + 1);
    const std::size_t width = std::max<std::size_t>(3, std::to_string(count).size());
    return prefix + std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace

LatentPopulation generate_latent(const GeneratorConfig& config) {
    config.validate();
    LatentPopulation pop;
    const std::size_t n_obs = config.n_observers;
    const std::size_t n_items = config.n_items;
    const std::size_t n_same = same_item_count(n_items, config.same_fraction);

    for (std::size_t j = 0; j < n_items; ++j) {
        pop.item_ids.push_back(padded_id("item", j, n_items));
        pop.labels.push_back(j < n_same ? ItemLabel::SameIdentity : ItemLabel::DifferentIdentity);
        auto rng = make_stream(config.seed, stream_tag::kItem, j);
        std::normal_distribution<double> shift(0.0, 1.0);
        pop.item_shift.push_back(config.item_difficulty_sd * shift(rng));
    }
    for (std::size_t i = 0; i < n_obs; ++i) pop.observer_ids.push_back(padded_id("obs", i, n_obs));

    pop.dprimes.resize(n_obs);
    pop.latent.resize(n_obs * n_items);
    parallel_for(n_obs, [&](std::size_t i) {
        auto rng = make_stream(config.seed, stream_tag::kObserver, i);
        std::uniform_real_distribution<double> ability(config.dprime_low, config.dprime_high);
        std::normal_distribution<double> noise(0.0, 1.0);
        const double d = config.dprime_low == config.dprime_high ? config.dprime_low : ability(rng);
        pop.dprimes[i] = d;
        for (std::size_t j = 0; j < n_items; ++j) {
            const double signal = pop.labels[j] == ItemLabel::SameIdentity ? d : 0.0;
            pop.latent[i * n_items + j] = signal + pop.item_shift[j] + noise(rng);
        }
    });

    auto rng = make_stream(config.seed, stream_tag::kMachine);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t j = 0; j < n_items; ++j) {
        const double signal = pop.labels[j] == ItemLabel::SameIdentity ? config.machine_dprime : 0.0;
        pop.machine.push_back(signal + pop.item_shift[j] + noise(rng));
    }
    return pop;
}

SyntheticPopulation generate(const GeneratorConfig& config) {
    auto latent = generate_latent(config);
    const std::size_t n_obs = config.n_observers;
    const std::size_t n_items = config.n_items;
    const double same_fraction =
        static_cast<double>(same_item_count(n_items, config.same_fraction)) / static_cast<double>(n_items);

    // Ratings in the internal convention (higher = same); the dataset's scale
    // records the file polarity used when writing.
    std::vector<double> ratings(n_obs * n_items);
    parallel_for(n_obs, [&](std::size_t i) {
        auto thresholds =
            rating_thresholds(latent.dprimes[i], config.item_difficulty_sd, same_fraction, config.levels());
        for (std::size_t j = 0; j < n_items; ++j) {
            const double x = latent.latent[i * n_items + j];
            const auto level = std::upper_bound(thresholds.begin(), thresholds.end(), x) - thresholds.begin();
            ratings[i * n_items + j] = config.scale.min + static_cast<double>(level);
        }
    });

    std::vector<ObserverAbility> abilities;
    for (std::size_t i = 0; i < n_obs; ++i) {
        abilities.push_back(
            {latent.observer_ids[i], latent.dprimes[i], closed_form_auc(latent.dprimes[i], config.item_difficulty_sd)});
    }
    MachineScores machine{"machine", latent.item_ids, latent.machine};
    RatingDataset dataset(latent.observer_ids, latent.item_ids, latent.labels, std::move(ratings), config.scale);
    return SyntheticPopulation{std::move(dataset), std::move(machine), std::move(abilities)};
}

void write_abilities_csv(std::ostream& out, const std::vector<ObserverAbility>& abilities) {
    out << "observer_id,dprime,true_auc_closed_form\n";
    for (const auto& a : abilities) {
        out << a.observer_id << ',' << format_double(a.dprime) << ',' << format_double(a.true_auc_closed_form) << '\n';
    }
}

}  // namespace fusionlab
