#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fusionlab::stats {

enum class TestMethod { WilcoxonSignedRank, MannWhitneyU, PearsonR };

std::string_view to_string(TestMethod method) noexcept;

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;  // two-sided
    std::size_t n = 0;
    TestMethod method = TestMethod::PearsonR;
    std::optional<double> corrected_p;  // Bonferroni, when applied
    bool exact = false;                 // exact null distribution rather than normal approximation
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

struct PearsonResult {
    double r = 0.0;
    Interval ci;  // 95% Fisher-z interval
    TestResult test;
};

// Normal-approximation cutoffs; at or below these the exact null distribution is used.
inline constexpr std::size_t kWilcoxonExactMaxN = 25;
inline constexpr std::size_t kMannWhitneyExactMaxProduct = 400;

double normal_cdf(double z) noexcept;

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> midranks(std::span<const double> values);

// Fisher z interval: tanh(atanh(r) +- z_crit / sqrt(n - 3)).
Interval fisher_interval(double r, std::size_t n, double confidence = 0.95);

// Throws LengthMismatch, TooFewDyads (n < 3), ConstantInput.
PearsonResult pearson_r(std::span<const double> x, std::span<const double> y);

// Paired test on d = x - y. Zero differences dropped, midranks on |d|,
// W = min(W+, W-). Throws LengthMismatch, AllZeroDifferences.
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

// #(x_i > y_j) + 0.5 #(x_i = y_j), from the pooled rank sum of x.
double u_count(std::span<const double> x, std::span<const double> y);

// U = min over orientation of the rank-sum statistic. Throws EmptyClass.
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y);

// min(1, p * m). Throws OutOfRange on an empty list or p outside [0, 1].
std::vector<double> bonferroni(std::span<const double> p_values);

double median(std::vector<double> values);

}  // namespace fusionlab::stats
