#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fusionlab/fusion.hpp"
#include "fusionlab/stats.hpp"

namespace fusionlab {

enum class PolicyKind { MachineAlone, GenericFusion, IntelligentFusion, HumansAlone };

struct FusionPolicy {
    PolicyKind kind = PolicyKind::MachineAlone;
    double lambda = 0.0;  // only meaningful for IntelligentFusion

    static FusionPolicy machine_alone() { return {PolicyKind::MachineAlone, 0.0}; }
    static FusionPolicy generic_fusion() { return {PolicyKind::GenericFusion, 0.0}; }
    static FusionPolicy humans_alone() { return {PolicyKind::HumansAlone, 0.0}; }
    // Throws OutOfRange for a negative or non-finite threshold.
    static FusionPolicy intelligent(double lambda);
};

// The AUC a single human-machine dyad contributes under `policy`.
// Dyads come from machine_pairs(): the human is performer_a.
double contributing_auc(const DyadRecord& dyad, const FusionPolicy& policy, double machine_auc);

// Unweighted mean of the contributing AUCs. Accumulated as offsets from
// machine_auc in dyad order, so the no-fusion case returns machine_auc exactly
// and every policy that selects the same contributions returns the same bits.
// Throws EmptyDyads.
double system_auc(std::span<const DyadRecord> dyads, const FusionPolicy& policy, double machine_auc);

struct SweepResult {
    std::vector<double> lambdas;  // ascending
    std::vector<double> system_aucs;
    double lambda_star = 0.0;     // smallest lambda attaining the maximum
    double auc_at_star = 0.0;
};

// Offset of the final grid point past the largest delta.
inline constexpr double kSweepEndOffset = 1e-6;

// Grid {0} u distinct deltas u {max delta + kSweepEndOffset}. When some delta
// is exactly 0 the leading point is -kSweepEndOffset instead, so the first
// point always fuses nobody. Throws EmptyDyads.
SweepResult lambda_sweep(std::span<const DyadRecord> dyads, double machine_auc);

// Number of humans fused with the machine at threshold `lambda`.
std::size_t fused_count(std::span<const DyadRecord> dyads, double lambda);

struct NamedTest {
    std::string name;
    stats::TestResult result;
    bool identical_samples = false;  // paired samples equal: reported as W = 0, p = 1
};

struct PolicyComparison {
    std::vector<std::string> human_ids;
    std::vector<double> individual;   // each human alone
    std::vector<double> generic;      // every human fused with the machine
    std::vector<double> intelligent;  // fused at lambda*, machine otherwise
    std::vector<double> optimal_pairs;  // optional human-human matching dyads
    double machine_auc = 0.0;
    double lambda_star = 0.0;
    double median_individual = 0.0;
    double median_generic = 0.0;
    double median_intelligent = 0.0;
    std::optional<double> median_optimal;
    // Paired Wilcoxon tests, Bonferroni-corrected over these three:
    // intelligent vs generic, intelligent vs individual, generic vs individual.
    std::vector<NamedTest> paired_tests;
    // Unpaired Mann-Whitney U: optimal human-human dyads vs individuals.
    std::optional<NamedTest> optimal_vs_individual;
};

// individual_aucs[i] belongs to the human of dyads[i]. Throws LengthMismatch, EmptyDyads.
PolicyComparison compare_policies(std::span<const DyadRecord> dyads, double machine_auc,
                                  std::span<const double> individual_aucs,
                                  std::span<const double> optimal_pair_aucs = {});

// lambda,system_auc
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

std::string_view to_string(PolicyKind kind) noexcept;

}  // namespace fusionlab
