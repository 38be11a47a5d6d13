#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "fusionlab/error.hpp"
#include "fusionlab/fusion.hpp"

namespace fusionlab {

// Pearson correlation between |dAUC| and fusion benefit across dyads.
struct ParCorrelation {
    double r = 0.0;
    std::size_t n = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double p_value = 1.0;
};

// Throws TooFewDyads (< 3), ConstantInput.
ParCorrelation par_correlation(std::span<const DyadRecord> dyads);

enum class PerformanceLevel { Low, Medium, High };
enum class Extreme { WorstPerformer, BestPerformer };

struct PerformanceBin {
    PerformanceLevel level = PerformanceLevel::Low;
    double range_low = 0.0;
    double range_high = 0.0;
    std::vector<DyadRecord> dyads;
    std::optional<ParCorrelation> correlation;  // null below 3 dyads or for constant input
};

// Anchor = min (worst) or max (best) of the two baseline AUCs.
double anchor(const DyadRecord& dyad, Extreme extreme) noexcept;

// Splits the occupied anchor range [lo, hi] into three equal-width bins:
// Low [lo, e1], Medium (e1, e2], High (e2, hi]. With lo == hi every dyad lands
// in Low and the other two bins are empty. Throws TooFewDyads (< 9).
std::vector<PerformanceBin> bin_by_extreme(std::span<const DyadRecord> dyads, Extreme extreme);

struct CriticalFusionDifference {
    double lambda = 0.0;
    std::size_t advantage_dyads = 0;  // dyads with auc_human < machine_auc
    // Set instead of throwing when fewer than 2 dyads have a machine advantage;
    // lambda is then 0.
    std::optional<ErrorCode> signal;
};

// lambda* of the sweep over the machine-advantage dyads (human in slot a, as
// produced by machine_pairs): the largest machine advantage up to which fusing
// still maximizes system AUC.
CriticalFusionDifference critical_fusion_difference(std::span<const DyadRecord> dyads, double machine_auc);

// extreme,level,range_low,range_high,n,r,ci_low,ci_high,p_value (blank cells for null correlations)
void write_bins_csv(std::ostream& out, std::span<const PerformanceBin> bins, Extreme extreme);

std::string_view to_string(PerformanceLevel level) noexcept;
std::string_view to_string(Extreme extreme) noexcept;

}  // namespace fusionlab
