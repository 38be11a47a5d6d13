#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fusionlab/dataset.hpp"

namespace fusionlab {

enum class PerformerKind { Human, Machine };

// One decision-maker's responses over a dataset's items, in the internal
// "higher = same" convention. Machines are already rescaled.
struct Performer {
    std::string id;
    PerformerKind kind = PerformerKind::Human;
    std::vector<double> responses;
};

// delta = |auc_a - auc_b|, benefit = auc_fused - max(auc_a, auc_b).
struct DyadRecord {
    std::string performer_a;
    std::string performer_b;
    double auc_a = 0.0;
    double auc_b = 0.0;
    double auc_fused = 0.0;
    double delta = 0.0;
    double benefit = 0.0;

    bool operator==(const DyadRecord&) const = default;
};

DyadRecord make_dyad(std::string a, std::string b, double auc_a, double auc_b, double auc_fused);

Performer human_performer(const RatingDataset& dataset, std::size_t observer);

// Grand mean over every human response in the dataset.
double human_grand_mean(const RatingDataset& dataset);

// s_hat = (s - mean) / sd + human_mean, with the population sd of the machine scores.
// The result has mean human_mean and unit sd. Throws TooFewItems, ZeroVariance.
Performer scale_machine(const MachineScores& scores, double human_mean);

// Item-wise mean of the two response vectors.
std::vector<double> fuse_responses(std::span<const double> a, std::span<const double> b);

// Throws ItemMismatch when either performer is not aligned with the dataset.
DyadRecord fuse_pair(const Performer& a, const Performer& b, const RatingDataset& dataset);

// Every unordered observer pair once. Within a record performer_a < performer_b,
// and records are sorted by (performer_a, performer_b). Throws TooFewObservers.
std::vector<DyadRecord> all_pairs(const RatingDataset& dataset);

// One record per human in dataset order; the human is performer_a, the machine performer_b.
std::vector<DyadRecord> machine_pairs(const RatingDataset& dataset, const Performer& machine);

// a,b,auc_a,auc_b,auc_fused,delta,benefit
void write_dyads_csv(std::ostream& out, std::span<const DyadRecord> dyads);

}  // namespace fusionlab
