#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusionlab {

enum class ItemLabel { SameIdentity, DifferentIdentity };

enum class Polarity {
    HigherMeansSame,       // internal convention
    HigherMeansDifferent,  // e.g. "1: sure same ... 5: sure different"
};

struct RatingScale {
    double min = 1.0;
    double max = 5.0;
    Polarity polarity = Polarity::HigherMeansSame;

    // Throws InvalidConfig unless min < max (both finite).
    void validate() const;
    bool contains(double value) const noexcept { return value >= min && value <= max; }
    bool operator==(const RatingScale&) const = default;
};

// Maps a raw rating into the "higher = more confident same" convention.
// Identity for HigherMeansSame, reflection min + max - value otherwise.
// Throws OutOfScale when the value lies outside [min, max].
double normalize_polarity(double value, const RatingScale& scale);

// Observers x items matrix of polarity-normalized ratings with per-item labels.
// Immutable once constructed; every invariant is checked by the constructor.
class RatingDataset {
public:
    RatingDataset(std::vector<std::string> observer_ids,
                  std::vector<std::string> item_ids,
                  std::vector<ItemLabel> labels,
                  std::vector<double> normalized_responses,  // row-major, observer-major
                  RatingScale scale);

    std::size_t observer_count() const noexcept { return observer_ids_.size(); }
    std::size_t item_count() const noexcept { return item_ids_.size(); }

    const std::vector<std::string>& observer_ids() const noexcept { return observer_ids_; }
    const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }
    const std::vector<ItemLabel>& labels() const noexcept { return labels_; }
    const RatingScale& scale() const noexcept { return scale_; }

    std::span<const double> row(std::size_t observer) const;
    double at(std::size_t observer, std::size_t item) const { return row(observer)[item]; }

    std::optional<std::size_t> find_observer(std::string_view id) const;
    // Throws UnknownObserver.
    std::size_t observer_index(std::string_view id) const;

    std::size_t same_count() const noexcept;
    std::size_t different_count() const noexcept { return item_count() - same_count(); }

    bool operator==(const RatingDataset&) const = default;

private:
    std::vector<std::string> observer_ids_;
    std::vector<std::string> item_ids_;
    std::vector<ItemLabel> labels_;
    std::vector<double> responses_;
    RatingScale scale_;
};

// Continuous similarity scores for one machine, aligned to a dataset's item order.
struct MachineScores {
    std::string machine_id;
    std::vector<std::string> item_ids;
    std::vector<double> scores;
};

// ratings.csv (observer_id,item_id,response) + items.csv (item_id,label).
// Observer order is first appearance in the ratings file; item order follows items.csv.
RatingDataset load_dataset(std::istream& ratings, std::istream& items, const RatingScale& scale);
RatingDataset load_dataset(const std::string& ratings_path, const std::string& items_path,
                           const RatingScale& scale);

// machine.csv (item_id,score); rows may come in any order, output follows the dataset.
MachineScores load_machine_scores(std::istream& in, const RatingDataset& dataset,
                                  std::string machine_id = "machine");
MachineScores load_machine_scores(const std::string& path, const RatingDataset& dataset,
                                  std::string machine_id = "machine");

// Writers emit raw (file-polarity) values so that load(write(d)) == d.
void write_ratings(std::ostream& out, const RatingDataset& dataset);
void write_items(std::ostream& out, const RatingDataset& dataset);
void write_machine_scores(std::ostream& out, const MachineScores& machine);

std::string_view to_string(ItemLabel label) noexcept;
std::string_view to_string(Polarity polarity) noexcept;

}  // namespace fusionlab
