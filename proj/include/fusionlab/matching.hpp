#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fusionlab/dataset.hpp"
#include "fusionlab/fusion.hpp"

namespace fusionlab {

// Symmetric matrix of fused-AUC edge weights over a set of observers.
class WeightMatrix {
public:
    // Validates: n >= 2 (TooFewObservers), square, finite, in [0, 1] off the
    // diagonal (OutOfRange), exactly symmetric (AsymmetricWeights). Diagonal ignored.
    WeightMatrix(std::vector<std::string> ids, std::vector<double> row_major);

    // Fused AUC of every observer pair in the dataset.
    static WeightMatrix from_dataset(const RatingDataset& dataset);
    // From all_pairs() output; ids give the vertex order.
    static WeightMatrix from_dyads(std::vector<std::string> ids, std::span<const DyadRecord> dyads);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }

private:
    std::vector<std::string> ids_;
    std::vector<double> values_;
};

struct MatchedPair {
    std::size_t a = 0;  // vertex indices, a < b
    std::size_t b = 0;
    std::string id_a;
    std::string id_b;
    double weight = 0.0;
};

struct MatchingResult {
    std::vector<MatchedPair> pairs;
    std::optional<std::string> unmatched;
    double total_weight = 0.0;
    double system_auc = 0.0;  // mean fused AUC over pairs; unmatched excluded
};

// Builds a result from vertex pairs: orients each pair a < b, orders pairs by a,
// and sums weights in that order so equal matchings give bit-equal totals.
MatchingResult make_matching_result(const WeightMatrix& weights,
                                    std::vector<std::pair<std::size_t, std::size_t>> pairs);

// Exact maximum-weight matching (blossom method) restricted to maximum
// cardinality, which on a complete graph with non-negative weights loses no weight.
MatchingResult optimal_matching(const WeightMatrix& weights);

// Bitmask dynamic program over all (near-)perfect matchings. Exact; N <= 20.
inline constexpr std::size_t kMaxDpVertices = 20;
MatchingResult matching_dp(const WeightMatrix& weights);

// Shuffle-then-pair; uniform over (near-)perfect matchings, reproducible per seed.
std::vector<std::pair<std::size_t, std::size_t>> random_pairing(std::size_t n, std::uint64_t seed);
MatchingResult random_matching(const WeightMatrix& weights, std::uint64_t seed);

struct BaselineReport {
    std::vector<double> system_aucs;  // one per replication
    double mean = 0.0;
    double sd = 0.0;  // sample (n - 1)
    double optimal = 0.0;
    std::optional<double> z;  // (optimal - mean) / sd; absent when sd == 0
};

// Replication r uses the stream derived from (seed, r). Throws TooFewReplications.
BaselineReport random_baseline(const WeightMatrix& weights, std::size_t replications, std::uint64_t seed);

// Adds the unmatched observer's solo AUC as one more term in the mean.
double system_auc_with_unmatched(const MatchingResult& result, double unmatched_solo_auc);

// a,b,fused_auc
void write_matching_csv(std::ostream& out, const MatchingResult& result);
// replication,system_auc
void write_baseline_csv(std::ostream& out, const BaselineReport& report);

namespace blossom {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;
};

// General-graph maximum-weight matching by the primal-dual blossom method.
// Returns mate[v] (vertex index) or -1. With max_cardinality set, only
// maximum-cardinality matchings are considered.
std::vector<long> maximum_weight_matching(std::size_t vertex_count, std::span<const Edge> edges,
                                          bool max_cardinality);

}  // namespace blossom

}  // namespace fusionlab
