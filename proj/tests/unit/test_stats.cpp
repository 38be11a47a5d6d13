#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "fusionlab/roc.hpp"
#include "fusionlab/stats.hpp"
#include "oracles.hpp"

using namespace fusionlab;
using namespace fusionlab::stats;
using V = std::vector<double>;

TEST_CASE("pearson examples") {
    CHECK(pearson_r(V{1, 2, 3}, V{2, 4, 6}).r == Catch::Approx(1.0).margin(1e-15));
    CHECK(pearson_r(V{1, 2, 3}, V{3, 2, 1}).r == Catch::Approx(-1.0).margin(1e-15));
    CHECK_ERROR_CODE(pearson_r(V{1, 2, 3}, V{1, 2}), ErrorCode::LengthMismatch);
    CHECK_ERROR_CODE(pearson_r(V{1, 1, 1}, V{1, 2, 3}), ErrorCode::ConstantInput);
    CHECK_ERROR_CODE(pearson_r(V{1, 2}, V{1, 2}), ErrorCode::TooFewDyads);
}

TEST_CASE("Fisher interval for r = 0.5, n = 103") {
    const auto ci = fisher_interval(0.5, 103);
    CHECK(ci.low == Catch::Approx(0.339308).margin(1e-5));
    CHECK(ci.high == Catch::Approx(0.632338).margin(1e-5));
    // independent evaluation: tanh(atanh(0.5) -+ 1.959964 / 10)
    CHECK(ci.low == Catch::Approx(std::tanh(std::atanh(0.5) - 0.1959963985)).margin(1e-9));
    CHECK(ci.high == Catch::Approx(std::tanh(std::atanh(0.5) + 0.1959963985)).margin(1e-9));
}

TEST_CASE("pearson p-value against known t quantiles") {
    // r chosen so that t = 2.010635 with 48 df, the two-sided 5% point
    const double df = 48.0;
    const double t = 2.0106347546;
    const double r = t / std::sqrt(df + t * t);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0, 1);
    V x(50), e(50);
    for (auto& v : x) v = n(rng);
    for (auto& v : e) v = n(rng);
    // orthogonalize e against x, then mix to hit r exactly
    const double mx = oracle::mean(x), me = oracle::mean(e);
    double sxe = 0, sxx = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        sxe += (x[i] - mx) * (e[i] - me);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    for (std::size_t i = 0; i < 50; ++i) e[i] = (e[i] - me) - sxe / sxx * (x[i] - mx);
    const double sx = std::sqrt(sxx), se = std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0));
    V y(50);
    for (std::size_t i = 0; i < 50; ++i) y[i] = r * (x[i] - mx) / sx + std::sqrt(1 - r * r) * e[i] / se;
    const auto res = pearson_r(x, y);
    CHECK(res.r == Catch::Approx(r).margin(1e-12));
    CHECK(res.test.p_value == Catch::Approx(0.05).margin(1e-6));
}

TEST_CASE("pearson is invariant under positive affine maps") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n(0, 1);
    for (int k = 0; k < 100; ++k) {
        V x(20), y(20);
        for (std::size_t i = 0; i < 20; ++i) {
            x[i] = n(rng);
            y[i] = 0.3 * x[i] + n(rng);
        }
        V x2 = x, y2 = y;
        for (auto& v : x2) v = 3 * v + 1;
        for (auto& v : y2) v = 0.5 * v - 8;
        CHECK(pearson_r(x2, y2).r == Catch::Approx(pearson_r(x, y).r).margin(1e-12));
        const auto res = pearson_r(x, y);
        CHECK(res.ci.low <= res.r);
        CHECK(res.r <= res.ci.high);
        CHECK(res.test.p_value >= 0.0);
        CHECK(res.test.p_value <= 1.0);
    }
}

TEST_CASE("wilcoxon examples") {
    const auto w = wilcoxon_signed_rank(V{1, -2, 3}, V{0, 0, 0});
    CHECK(w.statistic == 2.0);
    CHECK(w.n == 3);
    CHECK(w.exact);
    CHECK(w.p_value == Catch::Approx(0.75).margin(1e-15));  // 2 * 3/8

    CHECK(wilcoxon_signed_rank(V{1, 2, 3, 4}, V{2, 3, 4, 6}).statistic == 0.0);
    CHECK_ERROR_CODE(wilcoxon_signed_rank(V{1, 2}, V{1, 2}), ErrorCode::AllZeroDifferences);
    CHECK_ERROR_CODE(wilcoxon_signed_rank(V{1, 2}, V{1}), ErrorCode::LengthMismatch);
}

TEST_CASE("wilcoxon exact p matches sign enumeration, zero differences dropped") {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<std::size_t> size(1, 14);
    for (int k = 0; k < 300; ++k) {
        const auto x = oracle::random_scores(rng, size(rng), -4, 4);
        V y(x.size(), 0.0);
        V nonzero;
        for (double v : x) {
            if (v != 0.0) nonzero.push_back(std::abs(v));
        }
        if (nonzero.empty()) continue;
        const auto res = wilcoxon_signed_rank(x, y);
        const auto ranks = oracle::midranks(nonzero);
        CHECK(res.n == nonzero.size());
        CHECK(res.p_value == Catch::Approx(oracle::wilcoxon_exact_p(ranks, res.statistic)).margin(1e-12));
    }
}

TEST_CASE("wilcoxon is shift invariant and approximates above 25 pairs") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> n(0, 1);
    V x(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        x[i] = std::round(4 * n(rng)) / 4;
        y[i] = std::round(4 * (n(rng) + 0.4)) / 4;
    }
    const auto a = wilcoxon_signed_rank(x, y);
    V xs = x, ys = y;
    for (auto& v : xs) v += 1024;
    for (auto& v : ys) v += 1024;
    const auto b = wilcoxon_signed_rank(xs, ys);
    CHECK(a.statistic == b.statistic);
    CHECK(a.p_value == b.p_value);
    CHECK_FALSE(a.exact);
    CHECK(a.p_value > 0.0);
    CHECK(a.p_value < 1.0);
}

TEST_CASE("wilcoxon normal approximation against a hand-computed case") {
    // d = 1..30, all positive: W = 0, mean 232.5, var 30*31*61/24 = 2363.75
    V x(30), y(30, 0.0);
    std::iota(x.begin(), x.end(), 1.0);
    const auto res = wilcoxon_signed_rank(x, y);
    CHECK(res.statistic == 0.0);
    const double z = (232.5 - 0.5) / std::sqrt(2363.75);
    CHECK(res.p_value == Catch::Approx(std::erfc(z / std::sqrt(2.0))).margin(1e-15));
}

TEST_CASE("mann-whitney examples") {
    CHECK(mann_whitney_u(V{1, 2}, V{3}).statistic == 0.0);
    CHECK(mann_whitney_u(V{1, 2, 2, 5}, V{5, 2, 1, 2}).statistic == 8.0);
    CHECK(mann_whitney_u(V{5}, V{5}).statistic == 0.5);
    CHECK_ERROR_CODE(mann_whitney_u(V{}, V{1}), ErrorCode::EmptyClass);
}

TEST_CASE("U identities against the pair loop and AUC") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> size(1, 25);
    for (int k = 0; k < 500; ++k) {
        const auto x = oracle::random_scores(rng, size(rng), 0, 6);
        const auto y = oracle::random_scores(rng, size(rng), 0, 6);
        const double nxy = static_cast<double>(x.size() * y.size());
        const double uxy = u_count(x, y);
        CHECK(uxy == oracle::pair_u(x, y));
        CHECK(uxy + u_count(y, x) == nxy);
        CHECK(std::abs(auc(x, y).value - uxy / nxy) <= 1e-12);
        CHECK(mann_whitney_u(x, y).statistic == std::min(uxy, nxy - uxy));
    }
}

TEST_CASE("mann-whitney exact p matches subset enumeration") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    for (int k = 0; k < 200; ++k) {
        const auto x = oracle::random_scores(rng, size(rng), 0, 5);
        const auto y = oracle::random_scores(rng, size(rng), 0, 5);
        const auto res = mann_whitney_u(x, y);
        CHECK(res.exact);
        CHECK(res.p_value == Catch::Approx(oracle::mann_whitney_exact_p(x, y, res.statistic)).margin(1e-12));
    }
}

TEST_CASE("mann-whitney normal approximation beyond the exact cutoff") {
    V x(21), y(20);
    std::iota(x.begin(), x.end(), 0.0);
    std::iota(y.begin(), y.end(), 100.0);
    const auto res = mann_whitney_u(x, y);
    CHECK_FALSE(res.exact);
    CHECK(res.statistic == 0.0);
    const double mean = 210.0, var = 21.0 * 20.0 * 42.0 / 12.0;
    CHECK(res.p_value == Catch::Approx(std::erfc((mean - 0.5) / std::sqrt(var) / std::sqrt(2.0))).margin(1e-15));
}

TEST_CASE("bonferroni examples") {
    CHECK(bonferroni(V{0.01}) == V{0.01});
    CHECK(bonferroni(V{0.01, 0.02, 0.5}) == V{0.03, 0.06, 1.0});
    CHECK(bonferroni(V{0.4, 0.4}) == V{0.8, 0.8});
    CHECK_ERROR_CODE(bonferroni(V{}), ErrorCode::OutOfRange);
    CHECK_ERROR_CODE(bonferroni(V{1.5}), ErrorCode::OutOfRange);
}

TEST_CASE("midranks and median") {
    CHECK(midranks(V{10, 20, 20, 5}) == V{2, 3.5, 3.5, 1});
    CHECK(median(V{3, 1, 2}) == 2);
    CHECK(median(V{4, 1, 2, 3}) == 2.5);
}
