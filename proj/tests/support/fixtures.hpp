#pragma once

#include <string>
#include <vector>

#include "fusionlab/dataset.hpp"
#include "fusionlab/error.hpp"

namespace fixture {

// Dataset with observers "o1".."oN" and items "i1".."iM"; `same` marks labels.
inline fusionlab::RatingDataset dataset(const std::vector<std::vector<double>>& rows, const std::vector<bool>& same,
                                        fusionlab::RatingScale scale = {0.0, 10.0,
                                                                        fusionlab::Polarity::HigherMeansSame}) {
    std::vector<std::string> observers;
    std::vector<std::string> items;
    std::vector<fusionlab::ItemLabel> labels;
    std::vector<double> values;
    for (std::size_t o = 0; o < rows.size(); ++o) {
        observers.push_back("o" + std::to_string(o + 1));
        values.insert(values.end(), rows[o].begin(), rows[o].end());
    }
    for (std::size_t j = 0; j < same.size(); ++j) {
        items.push_back("i" + std::to_string(j + 1));
        labels.push_back(same[j] ? fusionlab::ItemLabel::SameIdentity : fusionlab::ItemLabel::DifferentIdentity);
    }
    return fusionlab::RatingDataset(observers, items, labels, values, scale);
}

}  // namespace fixture

// Catch2 matcher-free helper: runs `expr` and checks the thrown error code.
#define CHECK_ERROR_CODE(expr, expected)                                        \
    do {                                                                        \
        bool thrown_ = false;                                                   \
        try {                                                                   \
            (void)(expr);                                                       \
        } catch (const fusionlab::Error& e_) {                                  \
            thrown_ = true;                                                     \
            CHECK(e_.code() == (expected));                                     \
        }                                                                       \
        CHECK(thrown_);                                                         \
    } while (false)
