#include "fusionlab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "fusionlab/csv.hpp"
#include "fusionlab/error.hpp"
#include "fusionlab/format.hpp"

namespace fusionlab {

void RatingScale::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw Error(ErrorCode::InvalidConfig,
                    "rating scale requires finite min < max, got [" + format_double(min) + ", " +
                        format_double(max) + "]");
    }
}

double normalize_polarity(double value, const RatingScale& scale) {
    if (!scale.contains(value)) {
        throw Error(ErrorCode::OutOfScale, "response " + format_double(value) + " outside scale [" +
                                               format_double(scale.min) + ", " + format_double(scale.max) +
                                               "]");
    }
    if (scale.polarity == Polarity::HigherMeansSame) return value;
    return scale.min + scale.max - value;
}

std::string_view to_string(ItemLabel label) noexcept {
    return label == ItemLabel::SameIdentity ? "same" : "different";
}

std::string_view to_string(Polarity polarity) noexcept {
    return polarity == Polarity::HigherMeansSame ? "higher-means-same" : "higher-means-different";
}

namespace {

void check_unique(const std::vector<std::string>& ids, std::string_view what) {
    std::unordered_map<std::string_view, int> seen;
    for (const auto& id : ids) {
        if (id.empty()) throw Error(ErrorCode::ParseError, std::string(what) + " id is empty");
        if (!seen.emplace(id, 0).second) {
            throw Error(ErrorCode::DuplicateId, "duplicate " + std::string(what) + " id '" + id + "'");
        }
    }
}

}  // namespace

RatingDataset::RatingDataset(std::vector<std::string> observer_ids, std::vector<std::string> item_ids,
                             std::vector<ItemLabel> labels, std::vector<double> normalized_responses,
                             RatingScale scale)
    : observer_ids_(std::move(observer_ids)),
      item_ids_(std::move(item_ids)),
      labels_(std::move(labels)),
      responses_(std::move(normalized_responses)),
      scale_(scale) {
    scale_.validate();
    check_unique(observer_ids_, "observer");
    check_unique(item_ids_, "item");
    if (labels_.size() != item_ids_.size()) {
        throw Error(ErrorCode::LengthMismatch, "one label per item required");
    }
    if (responses_.size() != observer_ids_.size() * item_ids_.size()) {
        throw Error(ErrorCode::MissingCell, "response matrix is not observers x items");
    }
    for (double v : responses_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::MissingCell, "non-finite response");
        if (!scale_.contains(v)) {
            throw Error(ErrorCode::OutOfScale, "response " + format_double(v) + " outside scale");
        }
    }
    auto same = same_count();
    if (same == 0 || same == labels_.size()) {
        throw Error(ErrorCode::DegenerateLabels, "dataset needs at least one same and one different item");
    }
}

std::span<const double> RatingDataset::row(std::size_t observer) const {
    return std::span<const double>(responses_).subspan(observer * item_count(), item_count());
}

std::optional<std::size_t> RatingDataset::find_observer(std::string_view id) const {
    auto it = std::find(observer_ids_.begin(), observer_ids_.end(), id);
    if (it == observer_ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - observer_ids_.begin());
}

std::size_t RatingDataset::observer_index(std::string_view id) const {
    auto idx = find_observer(id);
    if (!idx) throw Error(ErrorCode::UnknownObserver, "unknown observer '" + std::string(id) + "'");
    return *idx;
}

std::size_t RatingDataset::same_count() const noexcept {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), ItemLabel::SameIdentity));
}

RatingDataset load_dataset(std::istream& ratings, std::istream& items, const RatingScale& scale) {
    scale.validate();

    auto item_table = csv::read(items, {"item_id", "label"}, "items.csv");
    std::vector<std::string> item_ids;
    std::vector<ItemLabel> labels;
    std::unordered_map<std::string, std::size_t> item_index;
    for (std::size_t r = 0; r < item_table.rows.size(); ++r) {
        const auto& row = item_table.rows[r];
        if (!item_index.emplace(row[0], item_ids.size()).second) {
            throw Error(ErrorCode::DuplicateId, "duplicate item id '" + row[0] + "' in items.csv");
        }
        if (row[1] == "same") {
            labels.push_back(ItemLabel::SameIdentity);
        } else if (row[1] == "different") {
            labels.push_back(ItemLabel::DifferentIdentity);
        } else {
            throw Error(ErrorCode::UnknownLabel, "items.csv:" + std::to_string(item_table.line_numbers[r]) +
                                                     ": label must be 'same' or 'different', got '" +
                                                     row[1] + "'");
        }
        item_ids.push_back(row[0]);
    }

    auto rating_table = csv::read(ratings, {"observer_id", "item_id", "response"}, "ratings.csv");
    std::vector<std::string> observer_ids;
    std::unordered_map<std::string, std::size_t> observer_index;
    for (const auto& row : rating_table.rows) {
        if (observer_index.emplace(row[0], observer_ids.size()).second) observer_ids.push_back(row[0]);
    }

    const double nan = std::nan("");
    std::vector<double> responses(observer_ids.size() * item_ids.size(), nan);
    for (std::size_t r = 0; r < rating_table.rows.size(); ++r) {
        const auto& row = rating_table.rows[r];
        const auto where = "ratings.csv:" + std::to_string(rating_table.line_numbers[r]);
        auto item = item_index.find(row[1]);
        if (item == item_index.end()) {
            throw Error(ErrorCode::ItemMismatch, where + ": item '" + row[1] + "' not in items.csv");
        }
        double raw = parse_double(row[2], where);
        double& cell = responses[observer_index.at(row[0]) * item_ids.size() + item->second];
        if (!std::isnan(cell)) {
            throw Error(ErrorCode::DuplicateId,
                        where + ": duplicate response for observer '" + row[0] + "', item '" + row[1] + "'");
        }
        if (!scale.contains(raw)) {
            throw Error(ErrorCode::OutOfScale, where + ": response " + row[2] + " outside scale [" +
                                                   format_double(scale.min) + ", " +
                                                   format_double(scale.max) + "]");
        }
        cell = normalize_polarity(raw, scale);
    }
    for (std::size_t o = 0; o < observer_ids.size(); ++o) {
        for (std::size_t i = 0; i < item_ids.size(); ++i) {
            if (std::isnan(responses[o * item_ids.size() + i])) {
                throw Error(ErrorCode::MissingCell, "observer '" + observer_ids[o] + "' has no response for item '" +
                                                        item_ids[i] + "'");
            }
        }
    }
    return RatingDataset(std::move(observer_ids), std::move(item_ids), std::move(labels), std::move(responses),
                         scale);
}

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    return in;
}

}  // namespace

RatingDataset load_dataset(const std::string& ratings_path, const std::string& items_path,
                           const RatingScale& scale) {
    auto ratings = open_input(ratings_path);
    auto items = open_input(items_path);
    return load_dataset(ratings, items, scale);
}

MachineScores load_machine_scores(std::istream& in, const RatingDataset& dataset, std::string machine_id) {
    auto table = csv::read(in, {"item_id", "score"}, "machine.csv");
    std::unordered_map<std::string, std::size_t> item_index;
    for (std::size_t i = 0; i < dataset.item_count(); ++i) item_index.emplace(dataset.item_ids()[i], i);

    const double nan = std::nan("");
    std::vector<double> scores(dataset.item_count(), nan);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto where = "machine.csv:" + std::to_string(table.line_numbers[r]);
        auto it = item_index.find(row[0]);
        if (it == item_index.end()) {
            throw Error(ErrorCode::ItemMismatch, where + ": item '" + row[0] + "' not in dataset");
        }
        if (!std::isnan(scores[it->second])) {
            throw Error(ErrorCode::DuplicateId, where + ": duplicate score for item '" + row[0] + "'");
        }
        scores[it->second] = parse_double(row[1], where);
    }
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (std::isnan(scores[i])) {
            throw Error(ErrorCode::ItemMismatch, "machine.csv has no score for item '" + dataset.item_ids()[i] + "'");
        }
    }
    return MachineScores{std::move(machine_id), dataset.item_ids(), std::move(scores)};
}

MachineScores load_machine_scores(const std::string& path, const RatingDataset& dataset, std::string machine_id) {
    auto in = open_input(path);
    return load_machine_scores(in, dataset, std::move(machine_id));
}

void write_ratings(std::ostream& out, const RatingDataset& dataset) {
    const auto& scale = dataset.scale();
    out << "observer_id,item_id,response\n";
    for (std::size_t o = 0; o < dataset.observer_count(); ++o) {
        auto row = dataset.row(o);
        for (std::size_t i = 0; i < dataset.item_count(); ++i) {
            // reflection is an involution, so this restores the file polarity
            double raw = normalize_polarity(row[i], scale);
            out << dataset.observer_ids()[o] << ',' << dataset.item_ids()[i] << ',' << format_double(raw) << '\n';
        }
    }
}

void write_items(std::ostream& out, const RatingDataset& dataset) {
    out << "item_id,label\n";
    for (std::size_t i = 0; i < dataset.item_count(); ++i) {
        out << dataset.item_ids()[i] << ',' << to_string(dataset.labels()[i]) << '\n';
    }
}

void write_machine_scores(std::ostream& out, const MachineScores& machine) {
    out << "item_id,score\n";
    for (std::size_t i = 0; i < machine.scores.size(); ++i) {
        out << machine.item_ids[i] << ',' << format_double(machine.scores[i]) << '\n';
    }
}

}  // namespace fusionlab
