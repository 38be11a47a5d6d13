#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fusionlab/dataset.hpp"

namespace fusionlab {

struct Auc {
    double value = 0.5;
    std::size_t n_same = 0;
    std::size_t n_different = 0;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;    // (0,0) ... (1,1)
    std::vector<double> thresholds;  // distinct scores, descending
};

// Tie-aware AUC: [#(s > d) + 0.5 #(s = d)] / (n_same n_different).
// Sort-and-rank, O(n log n). Throws EmptyClass.
Auc auc(std::span<const double> scores_same, std::span<const double> scores_different);

// Splits `responses` by label and calls auc().
Auc labeled_auc(std::span<const double> responses, std::span<const ItemLabel> labels);

// Descending-threshold sweep; tied scores advance both rates in one diagonal step.
RocCurve roc_curve(std::span<const double> scores_same, std::span<const double> scores_different);

double trapezoidal_area(const RocCurve& curve);

// Throws UnknownObserver.
Auc observer_auc(const RatingDataset& dataset, std::string_view observer_id);

}  // namespace fusionlab
