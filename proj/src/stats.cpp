#include "fusionlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "fusionlab/error.hpp"

namespace fusionlab::stats {

std::string_view to_string(TestMethod method) noexcept {
    switch (method) {
        case TestMethod::WilcoxonSignedRank: return "wilcoxon_signed_rank";
        case TestMethod::MannWhitneyU: return "mann_whitney_u";
        case TestMethod::PearsonR: return "pearson_r";
    }
    return "unknown";
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

namespace {

// Sum of t^3 - t over tie groups.
double tie_term(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        term += t * t * t - t;
        i = j;
    }
    return term;
}

// Two-sided normal tail with continuity correction.
double normal_two_sided(double statistic, double mean, double variance) {
    if (!(variance > 0.0)) return 1.0;
    const double z = std::max(0.0, std::abs(statistic - mean) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

void check_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) throw Error(ErrorCode::OutOfRange, "statistics input must be finite");
    }
}

}  // namespace

Interval fisher_interval(double r, std::size_t n, double confidence) {
    if (n < 4) throw Error(ErrorCode::TooFewDyads, "Fisher interval needs n >= 4");
    if (std::abs(r) >= 1.0) return {r, r};
    const boost::math::normal standard;
    const double z_crit = boost::math::quantile(standard, 0.5 + confidence / 2.0);
    const double z = std::atanh(r);
    const double se = 1.0 / std::sqrt(static_cast<double>(n) - 3.0);
    return {std::tanh(z - z_crit * se), std::tanh(z + z_crit * se)};
}

PearsonResult pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "pearson_r inputs differ in length");
    if (x.size() < 3) throw Error(ErrorCode::TooFewDyads, "pearson_r needs at least 3 pairs");
    check_finite(x);
    check_finite(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorCode::ConstantInput, "pearson_r input is constant");
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);

    PearsonResult out;
    out.r = r;
    out.test.statistic = r;
    out.test.n = x.size();
    out.test.method = TestMethod::PearsonR;
    if (std::abs(r) >= 1.0) {
        out.test.p_value = 0.0;
    } else {
        const double df = n - 2.0;
        const double t = r * std::sqrt(df / (1.0 - r * r));
        const boost::math::students_t dist(df);
        out.test.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
    }
    out.ci = x.size() >= 4 ? fisher_interval(r, x.size()) : Interval{-1.0, 1.0};
    return out;
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "wilcoxon inputs differ in length");
    check_finite(x);
    check_finite(y);
    std::vector<double> magnitude;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d == 0.0) continue;
        magnitude.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    if (magnitude.empty()) throw Error(ErrorCode::AllZeroDifferences, "all paired differences are zero");

    const auto ranks = midranks(magnitude);
    double w_plus = 0.0;
    double w_minus = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i) (positive[i] ? w_plus : w_minus) += ranks[i];

    TestResult out;
    out.statistic = std::min(w_plus, w_minus);
    out.n = magnitude.size();
    out.method = TestMethod::WilcoxonSignedRank;

    const std::size_t n = magnitude.size();
    if (n <= kWilcoxonExactMaxN) {
        // Null: each rank carries an independent fair sign. Doubled midranks are integers.
        std::vector<std::size_t> doubled(n);
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            doubled[i] = static_cast<std::size_t>(std::lround(2.0 * ranks[i]));
            total += doubled[i];
        }
        std::vector<double> ways(total + 1, 0.0);
        ways[0] = 1.0;
        for (auto r : doubled) {
            for (std::size_t s = total; s >= r; --s) {
                ways[s] += ways[s - r];
                if (s == r) break;
            }
        }
        const auto limit = static_cast<std::size_t>(std::lround(2.0 * out.statistic));
        double tail = 0.0;
        for (std::size_t s = 0; s <= limit && s <= total; ++s) tail += ways[s];
        out.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
        out.exact = true;
    } else {
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term(magnitude) / 48.0;
        out.p_value = normal_two_sided(out.statistic, mean, variance);
    }
    return out;
}

double u_count(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw Error(ErrorCode::EmptyClass, "U needs two non-empty samples");
    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    const auto ranks = midranks(pooled);
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rank_sum += ranks[i];
    const double nx = static_cast<double>(x.size());
    return rank_sum - nx * (nx + 1.0) / 2.0;
}

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw Error(ErrorCode::EmptyClass, "mann_whitney_u needs two non-empty samples");
    check_finite(x);
    check_finite(y);
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    const double u_xy = u_count(x, y);
    const double u_yx = nx * ny - u_xy;

    TestResult out;
    out.statistic = std::min(u_xy, u_yx);
    out.n = x.size() + y.size();
    out.method = TestMethod::MannWhitneyU;

    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());

    if (x.size() * y.size() <= kMannWhitneyExactMaxProduct) {
        // Null: the smaller group is a uniformly random subset of the pooled midranks.
        const auto ranks = midranks(pooled);
        const std::size_t m = std::min(x.size(), y.size());
        std::vector<std::size_t> doubled(ranks.size());
        std::size_t total = 0;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            doubled[i] = static_cast<std::size_t>(std::lround(2.0 * ranks[i]));
            total += doubled[i];
        }
        // ways[k][s]: subsets of size k with doubled rank sum s
        std::vector<std::vector<double>> ways(m + 1, std::vector<double>(total + 1, 0.0));
        ways[0][0] = 1.0;
        for (auto r : doubled) {
            for (std::size_t k = m; k >= 1; --k) {
                auto& to = ways[k];
                const auto& from = ways[k - 1];
                for (std::size_t s = total; s >= r; --s) {
                    to[s] += from[s - r];
                    if (s == r) break;
                }
            }
        }
        const double mm = static_cast<double>(m);
        // U_m <= U  <=>  2 R_m <= 2U + m(m+1)
        const auto limit = static_cast<std::size_t>(std::lround(2.0 * out.statistic + mm * (mm + 1.0)));
        double tail = 0.0;
        double all = 0.0;
        for (std::size_t s = 0; s <= total; ++s) {
            all += ways[m][s];
            if (s <= limit) tail += ways[m][s];
        }
        out.p_value = std::min(1.0, 2.0 * tail / all);
        out.exact = true;
    } else {
        const double n = nx + ny;
        const double mean = nx * ny / 2.0;
        const double variance = nx * ny / 12.0 * ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));
        out.p_value = normal_two_sided(out.statistic, mean, variance);
    }
    return out;
}

std::vector<double> bonferroni(std::span<const double> p_values) {
    if (p_values.empty()) throw Error(ErrorCode::OutOfRange, "bonferroni needs at least one p-value");
    const double m = static_cast<double>(p_values.size());
    std::vector<double> out;
    out.reserve(p_values.size());
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::OutOfRange, "p-value outside [0, 1]");
        out.push_back(std::min(1.0, p * m));
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyDyads, "median of empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace fusionlab::stats
