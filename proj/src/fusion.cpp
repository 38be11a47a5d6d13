#include "fusionlab/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"
#include "fusionlab/parallel.hpp"
#include "fusionlab/roc.hpp"

namespace fusionlab {

DyadRecord make_dyad(std::string a, std::string b, double auc_a, double auc_b, double auc_fused) {
    DyadRecord d;
    d.performer_a = std::move(a);
    d.performer_b = std::move(b);
    d.auc_a = auc_a;
    d.auc_b = auc_b;
    d.auc_fused = auc_fused;
    d.delta = std::abs(auc_a - auc_b);
    d.benefit = auc_fused - std::max(auc_a, auc_b);
    return d;
}

Performer human_performer(const RatingDataset& dataset, std::size_t observer) {
    auto row = dataset.row(observer);
    return Performer{dataset.observer_ids().at(observer), PerformerKind::Human, {row.begin(), row.end()}};
}

double human_grand_mean(const RatingDataset& dataset) {
    double sum = 0.0;
    for (std::size_t o = 0; o < dataset.observer_count(); ++o) {
        for (double v : dataset.row(o)) sum += v;
    }
    return sum / static_cast<double>(dataset.observer_count() * dataset.item_count());
}

Performer scale_machine(const MachineScores& scores, double human_mean) {
    const auto& s = scores.scores;
    if (s.size() < 2) throw Error(ErrorCode::TooFewItems, "machine scaling needs at least 2 items");
    const double n = static_cast<double>(s.size());
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : s) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / n);
    if (!(sd > 0.0)) throw Error(ErrorCode::ZeroVariance, "machine scores are constant");

    Performer out{scores.machine_id, PerformerKind::Machine, {}};
    out.responses.reserve(s.size());
    for (double v : s) out.responses.push_back((v - mean) / sd + human_mean);
    return out;
}

std::vector<double> fuse_responses(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::ItemMismatch, "fused performers differ in item count");
    std::vector<double> fused(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) fused[i] = (a[i] + b[i]) / 2.0;
    return fused;
}

namespace {

void check_aligned(const Performer& p, const RatingDataset& dataset) {
    if (p.responses.size() != dataset.item_count()) {
        throw Error(ErrorCode::ItemMismatch, "performer '" + p.id + "' has " + std::to_string(p.responses.size()) +
                                                 " responses, dataset has " +
                                                 std::to_string(dataset.item_count()) + " items");
    }
}

}  // namespace

DyadRecord fuse_pair(const Performer& a, const Performer& b, const RatingDataset& dataset) {
    check_aligned(a, dataset);
    check_aligned(b, dataset);
    const auto& labels = dataset.labels();
    const double auc_a = labeled_auc(a.responses, labels).value;
    const double auc_b = labeled_auc(b.responses, labels).value;
    const double auc_fused = labeled_auc(fuse_responses(a.responses, b.responses), labels).value;
    return make_dyad(a.id, b.id, auc_a, auc_b, auc_fused);
}

std::vector<DyadRecord> all_pairs(const RatingDataset& dataset) {
    const std::size_t n = dataset.observer_count();
    if (n < 2) throw Error(ErrorCode::TooFewObservers, "all_pairs needs at least 2 observers");
    const auto& ids = dataset.observer_ids();
    const auto& labels = dataset.labels();

    std::vector<double> solo(n);
    parallel_for(n, [&](std::size_t o) { solo[o] = labeled_auc(dataset.row(o), labels).value; });

    // (i, j) index pairs in output order: lexicographic by id
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(ids[i] < ids[j] ? std::pair{i, j} : std::pair{j, i});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        if (ids[x.first] != ids[y.first]) return ids[x.first] < ids[y.first];
        return ids[x.second] < ids[y.second];
    });

    std::vector<DyadRecord> records(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        auto [i, j] = pairs[k];
        double fused = labeled_auc(fuse_responses(dataset.row(i), dataset.row(j)), labels).value;
        records[k] = make_dyad(ids[i], ids[j], solo[i], solo[j], fused);
    });
    return records;
}

std::vector<DyadRecord> machine_pairs(const RatingDataset& dataset, const Performer& machine) {
    check_aligned(machine, dataset);
    const auto& labels = dataset.labels();
    const double machine_auc = labeled_auc(machine.responses, labels).value;
    std::vector<DyadRecord> records(dataset.observer_count());
    parallel_for(records.size(), [&](std::size_t o) {
        auto row = dataset.row(o);
        double human_auc = labeled_auc(row, labels).value;
        double fused = labeled_auc(fuse_responses(row, machine.responses), labels).value;
        records[o] = make_dyad(dataset.observer_ids()[o], machine.id, human_auc, machine_auc, fused);
    });
    return records;
}

void write_dyads_csv(std::ostream& out, std::span<const DyadRecord> dyads) {
    out << "a,b,auc_a,auc_b,auc_fused,delta,benefit\n";
    for (const auto& d : dyads) {
        out << d.performer_a << ',' << d.performer_b << ',' << format_double(d.auc_a) << ','
            << format_double(d.auc_b) << ',' << format_double(d.auc_fused) << ',' << format_double(d.delta) << ','
            << format_double(d.benefit) << '\n';
    }
}

}  // namespace fusionlab
