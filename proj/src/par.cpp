#include "fusionlab/par.hpp"

#include <algorithm>

#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"
#include "fusionlab/stats.hpp"
#include "fusionlab/system.hpp"

namespace fusionlab {

std::string_view to_string(PerformanceLevel level) noexcept {
    switch (level) {
        case PerformanceLevel::Low: return "low";
        case PerformanceLevel::Medium: return "medium";
        case PerformanceLevel::High: return "high";
    }
    return "unknown";
}

std::string_view to_string(Extreme extreme) noexcept {
    return extreme == Extreme::WorstPerformer ? "worst" : "best";
}

ParCorrelation par_correlation(std::span<const DyadRecord> dyads) {
    if (dyads.size() < 3) throw Error(ErrorCode::TooFewDyads, "benefit correlation needs at least 3 dyads");
    std::vector<double> delta;
    std::vector<double> benefit;
    delta.reserve(dyads.size());
    benefit.reserve(dyads.size());
    for (const auto& d : dyads) {
        delta.push_back(d.delta);
        benefit.push_back(d.benefit);
    }
    auto res = stats::pearson_r(delta, benefit);
    return ParCorrelation{res.r, dyads.size(), std::min(res.ci.low, res.r), std::max(res.ci.high, res.r),
                          res.test.p_value};
}

double anchor(const DyadRecord& dyad, Extreme extreme) noexcept {
    return extreme == Extreme::WorstPerformer ? std::min(dyad.auc_a, dyad.auc_b) : std::max(dyad.auc_a, dyad.auc_b);
}

std::vector<PerformanceBin> bin_by_extreme(std::span<const DyadRecord> dyads, Extreme extreme) {
    if (dyads.size() < 9) throw Error(ErrorCode::TooFewDyads, "binning needs at least 9 dyads");
    double lo = anchor(dyads.front(), extreme);
    double hi = lo;
    for (const auto& d : dyads) {
        lo = std::min(lo, anchor(d, extreme));
        hi = std::max(hi, anchor(d, extreme));
    }
    const double width = (hi - lo) / 3.0;
    const double e1 = lo + width;
    const double e2 = lo + 2.0 * width;

    std::vector<PerformanceBin> bins(3);
    bins[0] = {PerformanceLevel::Low, lo, e1, {}, std::nullopt};
    bins[1] = {PerformanceLevel::Medium, e1, e2, {}, std::nullopt};
    bins[2] = {PerformanceLevel::High, e2, hi, {}, std::nullopt};
    for (const auto& d : dyads) {
        const double a = anchor(d, extreme);
        std::size_t k = a <= e1 ? 0 : (a <= e2 ? 1 : 2);
        bins[k].dyads.push_back(d);
    }
    for (auto& bin : bins) {
        if (bin.dyads.size() < 3) continue;
        try {
            bin.correlation = par_correlation(bin.dyads);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ConstantInput) throw;
        }
    }
    return bins;
}

CriticalFusionDifference critical_fusion_difference(std::span<const DyadRecord> dyads, double machine_auc) {
    std::vector<DyadRecord> advantage;
    for (const auto& d : dyads) {
        if (d.auc_a < machine_auc) advantage.push_back(d);
    }
    CriticalFusionDifference out;
    out.advantage_dyads = advantage.size();
    if (advantage.size() < 2) {
        out.signal = ErrorCode::NoMachineAdvantageDyads;
        return out;
    }
    // every advantage dyad has delta > 0, so the sweep starts at lambda = 0
    out.lambda = lambda_sweep(advantage, machine_auc).lambda_star;
    return out;
}

void write_bins_csv(std::ostream& out, std::span<const PerformanceBin> bins, Extreme extreme) {
    out << "extreme,level,range_low,range_high,n,r,ci_low,ci_high,p_value\n";
    for (const auto& bin : bins) {
        out << to_string(extreme) << ',' << to_string(bin.level) << ',' << format_double(bin.range_low) << ','
            << format_double(bin.range_high) << ',' << bin.dyads.size() << ',';
        if (bin.correlation) {
            const auto& c = *bin.correlation;
            out << format_double(c.r) << ',' << format_double(c.ci_low) << ',' << format_double(c.ci_high) << ','
                << format_double(c.p_value);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

}  // namespace fusionlab
