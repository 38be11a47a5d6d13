#include "fusionlab/system.hpp"

#include <algorithm>
#include <cmath>

#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"

namespace fusionlab {

std::string_view to_string(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::MachineAlone: return "machine_alone";
        case PolicyKind::GenericFusion: return "generic_fusion";
        case PolicyKind::IntelligentFusion: return "intelligent_fusion";
        case PolicyKind::HumansAlone: return "humans_alone";
    }
    return "unknown";
}

FusionPolicy FusionPolicy::intelligent(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw Error(ErrorCode::OutOfRange, "intelligent fusion threshold must be finite and >= 0");
    }
    return {PolicyKind::IntelligentFusion, lambda};
}

double contributing_auc(const DyadRecord& dyad, const FusionPolicy& policy, double machine_auc) {
    switch (policy.kind) {
        case PolicyKind::MachineAlone: return machine_auc;
        case PolicyKind::GenericFusion: return dyad.auc_fused;
        case PolicyKind::HumansAlone: return dyad.auc_a;
        case PolicyKind::IntelligentFusion: return dyad.delta <= policy.lambda ? dyad.auc_fused : machine_auc;
    }
    return machine_auc;
}

namespace {

template <typename Contribution>
double mean_contribution(std::span<const DyadRecord> dyads, double machine_auc, Contribution&& contribution) {
    if (dyads.empty()) throw Error(ErrorCode::EmptyDyads, "system AUC needs at least one dyad");
    double offset = 0.0;
    for (const auto& d : dyads) offset += contribution(d) - machine_auc;
    return machine_auc + offset / static_cast<double>(dyads.size());
}

}  // namespace

double system_auc(std::span<const DyadRecord> dyads, const FusionPolicy& policy, double machine_auc) {
    return mean_contribution(dyads, machine_auc,
                             [&](const DyadRecord& d) { return contributing_auc(d, policy, machine_auc); });
}

std::size_t fused_count(std::span<const DyadRecord> dyads, double lambda) {
    return static_cast<std::size_t>(
        std::count_if(dyads.begin(), dyads.end(), [&](const DyadRecord& d) { return d.delta <= lambda; }));
}

SweepResult lambda_sweep(std::span<const DyadRecord> dyads, double machine_auc) {
    if (dyads.empty()) throw Error(ErrorCode::EmptyDyads, "lambda sweep needs at least one dyad");
    SweepResult out;
    double min_delta = dyads.front().delta;
    double max_delta = 0.0;
    for (const auto& d : dyads) {
        out.lambdas.push_back(d.delta);
        min_delta = std::min(min_delta, d.delta);
        max_delta = std::max(max_delta, d.delta);
    }
    // the first point must fuse nobody; with a zero delta that needs lambda < 0
    out.lambdas.push_back(min_delta > 0.0 ? 0.0 : -kSweepEndOffset);
    out.lambdas.push_back(max_delta + kSweepEndOffset);
    std::sort(out.lambdas.begin(), out.lambdas.end());
    out.lambdas.erase(std::unique(out.lambdas.begin(), out.lambdas.end()), out.lambdas.end());

    out.system_aucs.reserve(out.lambdas.size());
    for (double lambda : out.lambdas) {
        out.system_aucs.push_back(mean_contribution(dyads, machine_auc, [&](const DyadRecord& d) {
            return d.delta <= lambda ? d.auc_fused : machine_auc;
        }));
    }
    // strict > keeps the first (smallest) lambda on ties
    std::size_t best = 0;
    for (std::size_t k = 1; k < out.system_aucs.size(); ++k) {
        if (out.system_aucs[k] > out.system_aucs[best]) best = k;
    }
    out.lambda_star = out.lambdas[best];
    out.auc_at_star = out.system_aucs[best];
    return out;
}

namespace {

NamedTest paired_test(std::string name, std::span<const double> x, std::span<const double> y) {
    NamedTest t;
    t.name = std::move(name);
    if (std::equal(x.begin(), x.end(), y.begin(), y.end())) {
        t.identical_samples = true;
        t.result.statistic = 0.0;
        t.result.p_value = 1.0;
        t.result.n = 0;
        t.result.method = stats::TestMethod::WilcoxonSignedRank;
        t.result.exact = true;
        return t;
    }
    t.result = stats::wilcoxon_signed_rank(x, y);
    return t;
}

}  // namespace

PolicyComparison compare_policies(std::span<const DyadRecord> dyads, double machine_auc,
                                  std::span<const double> individual_aucs,
                                  std::span<const double> optimal_pair_aucs) {
    if (dyads.empty()) throw Error(ErrorCode::EmptyDyads, "policy comparison needs at least one dyad");
    if (individual_aucs.size() != dyads.size()) {
        throw Error(ErrorCode::LengthMismatch, "one individual AUC per dyad required");
    }
    PolicyComparison out;
    out.machine_auc = machine_auc;
    out.lambda_star = lambda_sweep(dyads, machine_auc).lambda_star;
    const auto generic = FusionPolicy::generic_fusion();
    // a negative lambda* (zero-delta corner) means "fuse nobody"
    const auto intelligent = out.lambda_star < 0.0 ? FusionPolicy::machine_alone()
                                                   : FusionPolicy::intelligent(out.lambda_star);
    for (std::size_t i = 0; i < dyads.size(); ++i) {
        out.human_ids.push_back(dyads[i].performer_a);
        out.individual.push_back(individual_aucs[i]);
        out.generic.push_back(contributing_auc(dyads[i], generic, machine_auc));
        out.intelligent.push_back(contributing_auc(dyads[i], intelligent, machine_auc));
    }
    out.median_individual = stats::median(out.individual);
    out.median_generic = stats::median(out.generic);
    out.median_intelligent = stats::median(out.intelligent);

    out.paired_tests.push_back(paired_test("intelligent_vs_generic", out.intelligent, out.generic));
    out.paired_tests.push_back(paired_test("intelligent_vs_individual", out.intelligent, out.individual));
    out.paired_tests.push_back(paired_test("generic_vs_individual", out.generic, out.individual));
    std::vector<double> raw;
    for (const auto& t : out.paired_tests) raw.push_back(t.result.p_value);
    auto corrected = stats::bonferroni(raw);
    for (std::size_t k = 0; k < corrected.size(); ++k) out.paired_tests[k].result.corrected_p = corrected[k];

    if (!optimal_pair_aucs.empty()) {
        out.optimal_pairs.assign(optimal_pair_aucs.begin(), optimal_pair_aucs.end());
        out.median_optimal = stats::median(out.optimal_pairs);
        NamedTest t;
        t.name = "optimal_pairs_vs_individual";
        t.result = stats::mann_whitney_u(out.optimal_pairs, out.individual);
        out.optimal_vs_individual = t;
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
    out << "lambda,system_auc\n";
    for (std::size_t k = 0; k < sweep.lambdas.size(); ++k) {
        out << format_double(sweep.lambdas[k]) << ',' << format_double(sweep.system_aucs[k]) << '\n';
    }
}

}  // namespace fusionlab
