#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "fusionlab/csv.hpp"
#include "fusionlab/dataset.hpp"
#include "fusionlab/format.hpp"

using namespace fusionlab;

namespace {

RatingDataset load(const std::string& ratings, const std::string& items, RatingScale scale = {}) {
    std::istringstream r(ratings);
    std::istringstream i(items);
    return load_dataset(r, i, scale);
}

const std::string kItems = "item_id,label\ni1,same\ni2,same\ni3,different\ni4,different\n";

std::string full_ratings() {
    return "observer_id,item_id,response\n"
           "B,i1,5\nB,i2,4\nB,i3,2\nB,i4,1\n"
           "A,i1,3\nA,i2,3\nA,i3,3\nA,i4,1\n";
}

}  // namespace

TEST_CASE("normalize_polarity examples") {
    CHECK(normalize_polarity(3, {1, 5, Polarity::HigherMeansSame}) == 3);
    CHECK(normalize_polarity(1, {1, 5, Polarity::HigherMeansDifferent}) == 5);
    CHECK(normalize_polarity(2, {-3, 3, Polarity::HigherMeansDifferent}) == -2);
    CHECK_ERROR_CODE(normalize_polarity(6, {1, 5, Polarity::HigherMeansSame}), ErrorCode::OutOfScale);
    CHECK_ERROR_CODE(normalize_polarity(0.5, {1, 5, Polarity::HigherMeansDifferent}), ErrorCode::OutOfScale);
}

TEST_CASE("normalize_polarity reflection reverses order and is an involution") {
    const RatingScale scale{1, 7, Polarity::HigherMeansDifferent};
    std::mt19937_64 rng(7);
    // quarter steps: reflection of these is exact in binary floating point
    std::uniform_int_distribution<int> q(4, 28);
    for (int k = 0; k < 1000; ++k) {
        double a = q(rng) / 4.0, b = q(rng) / 4.0;
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(normalize_polarity(a, scale) > normalize_polarity(b, scale));
        CHECK(normalize_polarity(normalize_polarity(a, scale), scale) == a);
    }
}

TEST_CASE("rating scale must have min < max") {
    CHECK_ERROR_CODE((RatingScale{5, 5, Polarity::HigherMeansSame}.validate()), ErrorCode::InvalidConfig);
    CHECK_ERROR_CODE(load(full_ratings(), kItems, {5, 1, Polarity::HigherMeansSame}), ErrorCode::InvalidConfig);
}

TEST_CASE("well-formed input loads in file order") {
    const auto d = load(full_ratings(), kItems);
    CHECK(d.observer_count() == 2);
    CHECK(d.item_count() == 4);
    CHECK(d.observer_ids() == std::vector<std::string>{"B", "A"});
    CHECK(d.item_ids() == std::vector<std::string>{"i1", "i2", "i3", "i4"});
    CHECK(d.same_count() == 2);
    CHECK(d.at(0, 0) == 5);
    CHECK(d.at(1, 3) == 1);
    CHECK(d.observer_index("A") == 1);
    CHECK_ERROR_CODE(d.observer_index("Z"), ErrorCode::UnknownObserver);
}

TEST_CASE("rows may arrive in any order") {
    const std::string shuffled =
        "observer_id,item_id,response\nA,i4,1\nB,i3,2\nA,i1,3\nB,i1,5\nA,i3,3\nB,i4,1\nA,i2,3\nB,i2,4\n";
    const auto d = load(shuffled, kItems);
    CHECK(d.observer_ids() == std::vector<std::string>{"A", "B"});
    CHECK(d.at(1, 1) == 4);
}

TEST_CASE("reversed polarity is normalized once at load") {
    const auto d = load(full_ratings(), kItems, {1, 5, Polarity::HigherMeansDifferent});
    CHECK(d.at(0, 0) == 1);  // B rated i1 a 5 = sure different
    CHECK(d.at(0, 3) == 5);
}

TEST_CASE("84-item balanced file on a reversed 5-point scale") {
    std::ostringstream items, ratings;
    items << "item_id,label\n";
    ratings << "observer_id,item_id,response\n";
    for (int j = 0; j < 84; ++j) {
        items << "p" << j << ',' << (j < 42 ? "same" : "different") << '\n';
        for (int o = 0; o < 3; ++o) ratings << "obs" << o << ",p" << j << ',' << 1 + (j + o) % 5 << '\n';
    }
    const auto d = load(ratings.str(), items.str(), {1, 5, Polarity::HigherMeansDifferent});
    CHECK(d.item_count() == 84);
    CHECK(d.same_count() == 42);
    CHECK(d.different_count() == 42);
    CHECK(d.scale().polarity == Polarity::HigherMeansDifferent);
}

TEST_CASE("load errors") {
    SECTION("missing cell") {
        const std::string r = "observer_id,item_id,response\nA,i1,1\nA,i2,1\nA,i4,1\nB,i1,1\nB,i2,1\nB,i3,1\nB,i4,1\n";
        CHECK_ERROR_CODE(load(r, kItems), ErrorCode::MissingCell);
    }
    SECTION("duplicate response") {
        CHECK_ERROR_CODE(load(full_ratings() + "A,i1,2\n", kItems), ErrorCode::DuplicateId);
    }
    SECTION("duplicate item") {
        CHECK_ERROR_CODE(load(full_ratings(), kItems + "i1,same\n"), ErrorCode::DuplicateId);
    }
    SECTION("out of scale") {
        CHECK_ERROR_CODE(load(full_ratings() + "C,i1,6\n", kItems), ErrorCode::OutOfScale);
    }
    SECTION("unknown label") {
        CHECK_ERROR_CODE(load(full_ratings(), "item_id,label\ni1,Same\ni2,same\ni3,different\ni4,different\n"),
                         ErrorCode::UnknownLabel);
    }
    SECTION("one label class") {
        CHECK_ERROR_CODE(load(full_ratings(), "item_id,label\ni1,same\ni2,same\ni3,same\ni4,same\n"),
                         ErrorCode::DegenerateLabels);
    }
    SECTION("rating for an unknown item") {
        CHECK_ERROR_CODE(load(full_ratings() + "A,i9,2\n", kItems), ErrorCode::ItemMismatch);
    }
    SECTION("bad header") {
        CHECK_ERROR_CODE(load("observer,item,response\nA,i1,1\n", kItems), ErrorCode::ParseError);
    }
    SECTION("non-numeric response") {
        CHECK_ERROR_CODE(load(full_ratings() + "C,i1,three\n", kItems), ErrorCode::ParseError);
    }
    SECTION("wrong field count") {
        CHECK_ERROR_CODE(load(full_ratings() + "C,i1\n", kItems), ErrorCode::ParseError);
    }
}

TEST_CASE("csv reader tolerates BOM, CRLF and blank lines") {
    const std::string r = "\xEF\xBB\xBFobserver_id,item_id,response\r\nB,i1,5\r\nB,i2,4\r\n\r\nB,i3,2\r\nB,i4,1\r\n";
    const auto d = load(r, kItems);
    CHECK(d.observer_count() == 1);
    CHECK(d.at(0, 2) == 2);
}

TEST_CASE("load -> write -> load is the identity and byte-stable") {
    for (auto polarity : {Polarity::HigherMeansSame, Polarity::HigherMeansDifferent}) {
        const RatingScale scale{1, 5, polarity};
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> q(8, 40);  // eighths in [1, 5]
        std::ostringstream ratings;
        ratings << "observer_id,item_id,response\n";
        for (int o = 0; o < 4; ++o) {
            for (int j = 1; j <= 4; ++j) ratings << "obs" << o << ",i" << j << ',' << format_double(q(rng) / 8.0) << '\n';
        }
        const auto first = load(ratings.str(), kItems, scale);
        std::ostringstream r2, i2;
        write_ratings(r2, first);
        write_items(i2, first);
        const auto second = load(r2.str(), i2.str(), scale);
        CHECK(first == second);
        CHECK(r2.str() == ratings.str());
        std::ostringstream r3;
        write_ratings(r3, second);
        CHECK(r3.str() == r2.str());
    }
}

TEST_CASE("machine scores follow dataset item order") {
    const auto d = load(full_ratings(), kItems);
    std::istringstream in("item_id,score\ni3,0.3\ni1,0.1\ni4,-4\ni2,2e-1\n");
    const auto m = load_machine_scores(in, d);
    CHECK(m.item_ids == d.item_ids());
    CHECK(m.scores == std::vector<double>{0.1, 0.2, 0.3, -4});

    std::istringstream missing("item_id,score\ni1,1\ni2,1\ni3,1\n");
    CHECK_ERROR_CODE(load_machine_scores(missing, d), ErrorCode::ItemMismatch);
    std::istringstream extra("item_id,score\ni1,1\ni2,1\ni3,1\ni4,1\ni5,1\n");
    CHECK_ERROR_CODE(load_machine_scores(extra, d), ErrorCode::ItemMismatch);
    std::istringstream dup("item_id,score\ni1,1\ni1,1\ni2,1\ni3,1\ni4,1\n");
    CHECK_ERROR_CODE(load_machine_scores(dup, d), ErrorCode::DuplicateId);
}

TEST_CASE("constructor rejects invalid matrices") {
    CHECK_ERROR_CODE(fixture::dataset({{1, 2}, {1}}, {true, false}), ErrorCode::MissingCell);
    CHECK_ERROR_CODE(fixture::dataset({{1, std::nan("")}}, {true, false}), ErrorCode::MissingCell);
    CHECK_ERROR_CODE(fixture::dataset({{1, 11}}, {true, false}), ErrorCode::OutOfScale);
    CHECK_ERROR_CODE(fixture::dataset({{1, 2}}, {true, true}), ErrorCode::DegenerateLabels);
}

TEST_CASE("format_double is shortest round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 0.875, 1e-300, -2.5, 123456789.0}) {
        CHECK(parse_double(format_double(v), "test") == v);
    }
    CHECK(format_double(0.875) == "0.875");
    CHECK(format_double(5.0) == "5");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_p_value(1e-20) == "< 1e-15");
    CHECK_ERROR_CODE(parse_double("1.5x", "test"), ErrorCode::ParseError);
    CHECK_ERROR_CODE(parse_double("inf", "test"), ErrorCode::ParseError);
}

TEST_CASE("error codes map to exit statuses") {
    CHECK(exit_status(ErrorCode::MissingCell) == 2);
    CHECK(exit_status(ErrorCode::FileExists) == 2);
    CHECK(exit_status(ErrorCode::EmptyClass) == 3);
    CHECK(exit_status(ErrorCode::NoMachineAdvantageDyads) == 3);
    CHECK(to_string(ErrorCode::ZeroVariance) == "ZeroVariance");
}
