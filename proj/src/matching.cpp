#include "fusionlab/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"
#include "fusionlab/parallel.hpp"
#include "fusionlab/random.hpp"
#include "fusionlab/roc.hpp"

namespace fusionlab {

WeightMatrix::WeightMatrix(std::vector<std::string> ids, std::vector<double> row_major)
    : ids_(std::move(ids)), values_(std::move(row_major)) {
    const std::size_t n = ids_.size();
    if (n < 2) throw Error(ErrorCode::TooFewObservers, "matching needs at least 2 observers");
    if (values_.size() != n * n) throw Error(ErrorCode::LengthMismatch, "weight matrix is not N x N");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = values_[i * n + j];
            if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
                throw Error(ErrorCode::OutOfRange, "edge weight outside [0, 1] between '" + ids_[i] + "' and '" +
                                                       ids_[j] + "'");
            }
            if (w != values_[j * n + i]) {
                throw Error(ErrorCode::AsymmetricWeights,
                            "weights differ between (" + ids_[i] + "," + ids_[j] + ") and its transpose");
            }
        }
    }
}

WeightMatrix WeightMatrix::from_dataset(const RatingDataset& dataset) {
    const std::size_t n = dataset.observer_count();
    if (n < 2) throw Error(ErrorCode::TooFewObservers, "matching needs at least 2 observers");
    std::vector<double> values(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            values[i * n + j] = labeled_auc(fuse_responses(dataset.row(i), dataset.row(j)), dataset.labels()).value;
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) values[i * n + j] = values[j * n + i];
    }
    return WeightMatrix(dataset.observer_ids(), std::move(values));
}

WeightMatrix WeightMatrix::from_dyads(std::vector<std::string> ids, std::span<const DyadRecord> dyads) {
    const std::size_t n = ids.size();
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);
    const double nan = std::nan("");
    std::vector<double> values(n * n, nan);
    for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 0.0;
    for (const auto& d : dyads) {
        auto a = index.find(d.performer_a);
        auto b = index.find(d.performer_b);
        if (a == index.end() || b == index.end()) {
            throw Error(ErrorCode::UnknownObserver, "dyad (" + d.performer_a + "," + d.performer_b + ") not in id list");
        }
        values[a->second * n + b->second] = d.auc_fused;
        values[b->second * n + a->second] = d.auc_fused;
    }
    if (std::any_of(values.begin(), values.end(), [](double v) { return std::isnan(v); })) {
        throw Error(ErrorCode::MissingCell, "dyad list does not cover every observer pair");
    }
    return WeightMatrix(std::move(ids), std::move(values));
}

MatchingResult make_matching_result(const WeightMatrix& weights,
                                    std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    for (auto& [a, b] : pairs) {
        if (a > b) std::swap(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used(weights.size(), false);
    MatchingResult out;
    for (auto [a, b] : pairs) {
        if (a == b || used[a] || used[b]) throw Error(ErrorCode::OutOfRange, "pairs are not vertex-disjoint");
        used[a] = used[b] = true;
        const double w = weights.at(a, b);
        out.pairs.push_back({a, b, weights.ids()[a], weights.ids()[b], w});
        out.total_weight += w;
    }
    for (std::size_t v = 0; v < weights.size(); ++v) {
        if (!used[v]) {
            if (out.unmatched) throw Error(ErrorCode::OutOfRange, "matching leaves more than one observer unmatched");
            out.unmatched = weights.ids()[v];
        }
    }
    out.system_auc = out.pairs.empty() ? 0.0 : out.total_weight / static_cast<double>(out.pairs.size());
    return out;
}

MatchingResult optimal_matching(const WeightMatrix& weights) {
    const std::size_t n = weights.size();
    std::vector<blossom::Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, weights.at(i, j)});
    }
    auto mate = blossom::maximum_weight_matching(n, edges, true);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 0; v < n; ++v) {
        if (mate[v] > static_cast<long>(v)) pairs.emplace_back(v, static_cast<std::size_t>(mate[v]));
    }
    return make_matching_result(weights, std::move(pairs));
}

MatchingResult matching_dp(const WeightMatrix& weights) {
    const std::size_t n = weights.size();
    if (n > kMaxDpVertices) {
        throw Error(ErrorCode::OutOfRange, "bitmask matching supports at most " + std::to_string(kMaxDpVertices) +
                                               " observers");
    }
    const bool odd = n % 2 == 1;
    const std::size_t full = (std::size_t{1} << n) - 1;
    // best[mask * 2 + skipped]: max weight of matching the vertices outside mask,
    // where `skipped` records whether the single allowed gap (odd N) is spent.
    const double unset = -1.0;
    std::vector<double> best((full + 1) * 2, unset);
    std::vector<signed char> choice((full + 1) * 2, -1);

    auto solve = [&](auto&& self, std::size_t mask, int skipped) -> double {
        if (mask == full) return 0.0;
        const std::size_t key = mask * 2 + static_cast<std::size_t>(skipped);
        if (best[key] != unset) return best[key];
        std::size_t i = 0;
        while (mask & (std::size_t{1} << i)) ++i;
        double value = -1.0;
        signed char pick = -1;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            double w = weights.at(i, j) +
                       self(self, mask | (std::size_t{1} << i) | (std::size_t{1} << j), skipped);
            if (w > value) {
                value = w;
                pick = static_cast<signed char>(j);
            }
        }
        if (odd && !skipped) {
            double w = self(self, mask | (std::size_t{1} << i), 1);
            if (w > value) {
                value = w;
                pick = static_cast<signed char>(i);  // i left unmatched
            }
        }
        best[key] = value;
        choice[key] = pick;
        return value;
    };
    solve(solve, 0, 0);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t mask = 0;
    int skipped = 0;
    while (mask != full) {
        std::size_t i = 0;
        while (mask & (std::size_t{1} << i)) ++i;
        const auto j = static_cast<std::size_t>(choice[mask * 2 + static_cast<std::size_t>(skipped)]);
        if (j == i) {
            mask |= std::size_t{1} << i;
            skipped = 1;
        } else {
            pairs.emplace_back(i, j);
            mask |= (std::size_t{1} << i) | (std::size_t{1} << j);
        }
    }
    return make_matching_result(weights, std::move(pairs));
}

std::vector<std::pair<std::size_t, std::size_t>> random_pairing(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorCode::TooFewObservers, "random matching needs at least 2 observers");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto rng = make_stream(seed, stream_tag::kRandomMatching);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k + 1 < n; k += 2) pairs.emplace_back(order[k], order[k + 1]);
    return pairs;
}

MatchingResult random_matching(const WeightMatrix& weights, std::uint64_t seed) {
    return make_matching_result(weights, random_pairing(weights.size(), seed));
}

BaselineReport random_baseline(const WeightMatrix& weights, std::size_t replications, std::uint64_t seed) {
    if (replications < 2) throw Error(ErrorCode::TooFewReplications, "random baseline needs at least 2 replications");
    BaselineReport out;
    const auto optimal = optimal_matching(weights);
    out.optimal = optimal.system_auc;
    out.system_aucs.resize(replications);
    parallel_for(replications, [&](std::size_t r) {
        auto m = random_matching(weights, derive_seed(seed, stream_tag::kReplication, r));
        if (m.total_weight > optimal.total_weight) {
            throw Error(ErrorCode::OutOfRange, "random matching outweighs the optimum");
        }
        out.system_aucs[r] = m.system_auc;
    });
    // Welford: identical replications give a mean equal to the value and sd exactly 0
    double ss = 0.0;
    double k = 0.0;
    out.mean = 0.0;
    for (double v : out.system_aucs) {
        k += 1.0;
        const double before = out.mean;
        out.mean += (v - before) / k;
        ss += (v - before) * (v - out.mean);
    }
    out.sd = std::sqrt(ss / (k - 1.0));
    if (out.sd > 0.0) out.z = (out.optimal - out.mean) / out.sd;
    return out;
}

double system_auc_with_unmatched(const MatchingResult& result, double unmatched_solo_auc) {
    if (!result.unmatched) return result.system_auc;
    return (result.total_weight + unmatched_solo_auc) / static_cast<double>(result.pairs.size() + 1);
}

void write_matching_csv(std::ostream& out, const MatchingResult& result) {
    out << "a,b,fused_auc\n";
    for (const auto& p : result.pairs) out << p.id_a << ',' << p.id_b << ',' << format_double(p.weight) << '\n';
}

void write_baseline_csv(std::ostream& out, const BaselineReport& report) {
    out << "replication,system_auc\n";
    for (std::size_t r = 0; r < report.system_aucs.size(); ++r) {
        out << r << ',' << format_double(report.system_aucs[r]) << '\n';
    }
}

}  // namespace fusionlab
