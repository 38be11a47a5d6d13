#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fusionlab/dataset.hpp"

namespace fusionlab {

// Equal-variance Gaussian rater population.
//
// Item j carries a shared difficulty term eps_j ~ N(0, item_difficulty_sd^2).
// Observer i with sensitivity d'_i ~ U[dprime_low, dprime_high] perceives
//
//     x_ij = d'_i * [item j is same] + eps_j + eta_ij,    eta_ij ~ N(0, 1)
//
// and reports the level of x_ij under equal-mass thresholds of its own
// theoretical marginal. The machine perceives the same model with
// machine_dprime and reports x directly. eps_j is shared by every rater, so
// errors are correlated the way real raters' are on hard items.
struct GeneratorConfig {
    std::size_t n_observers = 50;
    std::size_t n_items = 80;
    double same_fraction = 0.5;
    double dprime_low = 0.4;
    double dprime_high = 3.0;
    double item_difficulty_sd = 0.5;
    RatingScale scale{1.0, 5.0, Polarity::HigherMeansSame};  // integer levels min..max
    double machine_dprime = 2.6;
    std::uint64_t seed = 1;

    // Throws InvalidConfig.
    void validate() const;
    std::size_t levels() const;
};

struct ObserverAbility {
    std::string observer_id;
    double dprime = 0.0;
    double true_auc_closed_form = 0.5;
};

// Continuous readouts before discretization.
struct LatentPopulation {
    std::vector<std::string> observer_ids;
    std::vector<std::string> item_ids;
    std::vector<ItemLabel> labels;
    std::vector<double> dprimes;
    std::vector<double> item_shift;  // eps_j
    std::vector<double> latent;      // observer-major, observers x items
    std::vector<double> machine;     // per item
};

struct SyntheticPopulation {
    RatingDataset dataset;
    MachineScores machine;
    std::vector<ObserverAbility> abilities;
};

// Same-identity item count by largest-remainder rounding of same_fraction * n_items.
std::size_t same_item_count(std::size_t n_items, double same_fraction);

// Phi(d' / sqrt(2 (1 + sd^2))): expected AUC of a continuous reader.
double closed_form_auc(double dprime, double item_difficulty_sd);

// Equal-mass thresholds (levels - 1, ascending) of the observer's marginal
// same_fraction N(d', v) + (1 - same_fraction) N(0, v), v = 1 + sd^2.
std::vector<double> rating_thresholds(double dprime, double item_difficulty_sd, double same_fraction,
                                      std::size_t levels);

// Draws are keyed by (seed, item) and (seed, observer), so output does not
// depend on generation order or worker count.
LatentPopulation generate_latent(const GeneratorConfig& config);
SyntheticPopulation generate(const GeneratorConfig& config);

// observer_id,dprime,true_auc_closed_form
void write_abilities_csv(std::ostream& out, const std::vector<ObserverAbility>& abilities);

}  // namespace fusionlab
