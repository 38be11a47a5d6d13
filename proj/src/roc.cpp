#include "fusionlab/roc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fusionlab/error.hpp"

namespace fusionlab {

namespace {

struct Tagged {
    double score;
    bool same;
};

void check_classes(std::span<const double> same, std::span<const double> different) {
    if (same.empty() || different.empty()) {
        throw Error(ErrorCode::EmptyClass, "AUC needs at least one score in each class");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(same.begin(), same.end(), finite) || !std::all_of(different.begin(), different.end(), finite)) {
        throw Error(ErrorCode::OutOfRange, "AUC scores must be finite");
    }
}

// Pooled scores sorted descending; each tie group is contiguous.
std::vector<Tagged> pooled_descending(std::span<const double> same, std::span<const double> different) {
    std::vector<Tagged> pooled;
    pooled.reserve(same.size() + different.size());
    for (double s : same) pooled.push_back({s, true});
    for (double d : different) pooled.push_back({d, false});
    std::sort(pooled.begin(), pooled.end(), [](const Tagged& a, const Tagged& b) { return a.score > b.score; });
    return pooled;
}

}  // namespace

Auc auc(std::span<const double> scores_same, std::span<const double> scores_different) {
    check_classes(scores_same, scores_different);
    auto pooled = pooled_descending(scores_same, scores_different);

    // Twice the Mann-Whitney count, accumulated in integers so the result is exact.
    std::uint64_t twice_u = 0;
    std::uint64_t different_above = 0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        std::uint64_t same_in_group = 0;
        std::uint64_t different_in_group = 0;
        while (j < pooled.size() && pooled[j].score == pooled[i].score) {
            (pooled[j].same ? same_in_group : different_in_group) += 1;
            ++j;
        }
        // a same score beats every different score strictly below it
        std::uint64_t different_below = scores_different.size() - different_above - different_in_group;
        twice_u += 2 * same_in_group * different_below + same_in_group * different_in_group;
        different_above += different_in_group;
        i = j;
    }
    const double pairs = static_cast<double>(scores_same.size()) * static_cast<double>(scores_different.size());
    return Auc{static_cast<double>(twice_u) / (2.0 * pairs), scores_same.size(), scores_different.size()};
}

Auc labeled_auc(std::span<const double> responses, std::span<const ItemLabel> labels) {
    if (responses.size() != labels.size()) {
        throw Error(ErrorCode::ItemMismatch, "responses and labels differ in length");
    }
    std::vector<double> same;
    std::vector<double> different;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        (labels[i] == ItemLabel::SameIdentity ? same : different).push_back(responses[i]);
    }
    return auc(same, different);
}

RocCurve roc_curve(std::span<const double> scores_same, std::span<const double> scores_different) {
    check_classes(scores_same, scores_different);
    auto pooled = pooled_descending(scores_same, scores_different);
    const double n_same = static_cast<double>(scores_same.size());
    const double n_different = static_cast<double>(scores_different.size());

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].score == pooled[i].score) {
            (pooled[j].same ? tp : fp) += 1;
            ++j;
        }
        curve.thresholds.push_back(pooled[i].score);
        curve.points.push_back({static_cast<double>(fp) / n_different, static_cast<double>(tp) / n_same});
        i = j;
    }
    return curve;
}

double trapezoidal_area(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& a = curve.points[k - 1];
        const auto& b = curve.points[k];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    return area;
}

Auc observer_auc(const RatingDataset& dataset, std::string_view observer_id) {
    auto idx = dataset.observer_index(observer_id);
    return labeled_auc(dataset.row(idx), dataset.labels());
}

}  // namespace fusionlab
