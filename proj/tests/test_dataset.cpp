#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "narm/dataset.hpp"
#include "test_util.hpp"

using narm::DatasetError;
using narm::FeatureType;
using narm::TransactionDatabase;
using Kind = narm::DatasetError::Kind;

namespace {

Kind kind_of(const std::string& text) {
    try {
        narm::parse_dataset(text);
    } catch (const DatasetError& error) {
        return error.kind();
    }
    FAIL("expected a dataset error");
    return Kind::EmptyFile;
}

bool cell_in_domain(const narm::AttributeValue& cell, const narm::FeatureDescriptor& feature) {
    switch (feature.type) {
        case FeatureType::Categorical: {
            const auto& values = feature.categories();
            const auto& v = std::get<std::string>(cell.value);
            return std::find(values.begin(), values.end(), v) != values.end();
        }
        case FeatureType::Numerical: {
            const auto bounds = feature.int_bounds();
            const auto v = std::get<std::int64_t>(cell.value);
            return bounds.lo <= v && v <= bounds.hi;
        }
        case FeatureType::RealValued: {
            const auto bounds = feature.real_bounds();
            const auto v = std::get<double>(cell.value);
            return bounds.lo <= v && v <= bounds.hi;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("abalone sample rows parse with the expected shape and types") {
    const TransactionDatabase db = narm::parse_dataset(testutil::kAbaloneSampleCsv);
    CHECK(db.row_count() == 8);
    CHECK(db.feature_count() == 9);

    const auto& features = db.features();
    CHECK(features[0].name == "Sex");
    CHECK(features[0].type == FeatureType::Categorical);
    CHECK(features[0].categories() == std::vector<std::string>{"M", "F", "I"});

    CHECK(features[1].name == "Length");
    CHECK(features[1].type == FeatureType::RealValued);
    CHECK(features[1].real_bounds() == narm::RealBounds{0.33, 0.545});

    CHECK(features[8].name == "Rings");
    CHECK(features[8].type == FeatureType::Numerical);
    CHECK(features[8].int_bounds() == narm::IntBounds{7, 20});

    // Row 1 of the sample.
    CHECK(std::get<std::string>(db.rows()[0][0].value) == "M");
    CHECK(std::get<double>(db.rows()[0][1].value) == 0.455);
    CHECK(std::get<std::int64_t>(db.rows()[0][8].value) == 15);
}

TEST_CASE("single-row bounds collapse to the value itself") {
    const TransactionDatabase db = narm::parse_dataset("a,b\n1,2.5\n");
    CHECK(db.features()[0].type == FeatureType::Numerical);
    CHECK(db.features()[0].int_bounds() == narm::IntBounds{1, 1});
    CHECK(db.features()[1].type == FeatureType::RealValued);
    CHECK(db.features()[1].real_bounds() == narm::RealBounds{2.5, 2.5});
}

TEST_CASE("type inference covers integer, decimal and fallback columns") {
    using narm::infer_feature_type;
    const std::vector<std::string> ints = {"15", "7", "9"};
    const std::vector<std::string> reals = {"0.455", "0.35"};
    const std::vector<std::string> words = {"M", "F", "I"};
    const std::vector<std::string> mixed = {"1", "2.5"};
    const std::vector<std::string> scientific = {"1e2", "3.5e1"};
    const std::vector<std::string> not_finite = {"inf", "nan"};
    const std::vector<std::string> signed_plus = {"+5"};

    CHECK(infer_feature_type(ints) == FeatureType::Numerical);
    CHECK(infer_feature_type(reals) == FeatureType::RealValued);
    CHECK(infer_feature_type(words) == FeatureType::Categorical);
    CHECK(infer_feature_type(mixed) == FeatureType::RealValued);  // integers promote
    CHECK(infer_feature_type(scientific) == FeatureType::RealValued);
    CHECK(infer_feature_type(not_finite) == FeatureType::Categorical);
    CHECK(infer_feature_type(signed_plus) == FeatureType::Categorical);
}

TEST_CASE("domains are exact min/max or first-appearance category lists") {
    using narm::compute_domain;
    const std::vector<std::string> fives = {"5", "5", "5"};
    CHECK(std::get<narm::IntBounds>(compute_domain(FeatureType::Numerical, fives)) ==
          narm::IntBounds{5, 5});

    const std::vector<std::string> cats = {"b", "a", "b", "c", "a"};
    CHECK(std::get<std::vector<std::string>>(compute_domain(FeatureType::Categorical, cats)) ==
          std::vector<std::string>{"b", "a", "c"});

    const std::vector<std::string> reals = {"0.5", "-1.25", "0.125"};
    CHECK(std::get<narm::RealBounds>(compute_domain(FeatureType::RealValued, reals)) ==
          narm::RealBounds{-1.25, 0.5});
}

TEST_CASE("structural errors carry their kind") {
    CHECK(kind_of("") == Kind::EmptyFile);
    CHECK(kind_of("   \n \n") == Kind::EmptyFile);
    CHECK(kind_of("a,b\n") == Kind::HeaderOnly);
    CHECK(kind_of("a\n1\n2\n") == Kind::TooFewFeatures);
    CHECK(kind_of("a,b\n1,2\n3\n") == Kind::RaggedRow);
    CHECK(kind_of("a,b\n1,2,3\n") == Kind::RaggedRow);
    CHECK(kind_of("a,b\n,2\n,3\n") == Kind::EmptyColumn);
}

TEST_CASE("missing cells are excluded from typing and domains") {
    const TransactionDatabase db = narm::parse_dataset("a,b\n1,\n2,3\n");
    CHECK(db.features()[1].type == FeatureType::Numerical);
    CHECK(db.features()[1].int_bounds() == narm::IntBounds{3, 3});
    CHECK(!db.rows()[0][1].present());
    CHECK(db.rows()[1][1].present());
}

TEST_CASE("blank lines and surrounding whitespace are tolerated") {
    const TransactionDatabase db = narm::parse_dataset("  a , b \r\n\n 1 , x \r\n\n\n2,y\n   \n");
    CHECK(db.features()[0].name == "a");
    CHECK(db.features()[1].name == "b");
    CHECK(db.row_count() == 2);
    CHECK(std::get<std::string>(db.rows()[0][1].value) == "x");
}

TEST_CASE("every present cell lies in its feature domain") {
    testutil::TestRng rng(20260809);
    for (int round = 0; round < 200; ++round) {
        const std::string text = testutil::random_dataset_text(rng);
        CAPTURE(text);
        const TransactionDatabase db = narm::parse_dataset(text);
        for (const auto& row : db.rows()) {
            for (std::size_t j = 0; j < db.feature_count(); ++j) {
                if (row[j].present()) {
                    CHECK(cell_in_domain(row[j], db.features()[j]));
                }
            }
        }
    }
}

TEST_CASE("parsing the same bytes twice gives identical databases") {
    testutil::TestRng rng(99);
    for (int round = 0; round < 20; ++round) {
        const std::string text = testutil::random_dataset_text(rng);
        const TransactionDatabase first = narm::parse_dataset(text);
        const TransactionDatabase second = narm::parse_dataset(text);
        CHECK(first.features() == second.features());
        CHECK(first.rows() == second.rows());
    }
}

TEST_CASE("period loading follows the numbered-file scheme") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "narm_dataset_periods";
    fs::create_directories(dir);
    for (int i = 1; i <= 3; ++i) {
        std::ofstream out(dir / ("t" + std::to_string(i) + ".csv"));
        out << "a,b\n" << i << ",x\n";
    }
    std::ofstream(dir / "t.csv") << "a,b\n0,z\n";

    const auto single = narm::load_periods(dir / "t.csv", 1);
    REQUIRE(single.size() == 1);
    CHECK(std::get<std::string>(single[0].rows()[0][1].value) == "z");

    const auto periods = narm::load_periods(dir / "t.csv", 3);
    REQUIRE(periods.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::get<std::int64_t>(periods[i].rows()[0][0].value) == i + 1);
    }

    CHECK_THROWS_AS(narm::load_periods(dir / "missing.csv", 1), DatasetError);
    CHECK_THROWS_AS(narm::load_periods(dir / "t.csv", 4), DatasetError);  // t4.csv absent
    fs::remove_all(dir);
}
