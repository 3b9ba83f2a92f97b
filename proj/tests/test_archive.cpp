#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "narm/archive.hpp"
#include "test_util.hpp"

using narm::Archive;
using narm::ArchiveError;
using narm::Rule;
using narm::RuleCondition;

namespace {

Rule numbered_rule(int id, double fitness) {
    Rule rule = testutil::toy_rule("a" + std::to_string(id), "b" + std::to_string(id), 0.5, fitness);
    return rule;
}

}  // namespace

TEST_CASE("condition text and labels") {
    const RuleCondition cat{"Sex", narm::CategoricalEquals{"M"}};
    CHECK(narm::condition_text(cat) == "Sex = M");
    CHECK(narm::condition_label(cat) == "Sex_M");

    const RuleCondition ints{"Rings", narm::IntegerInterval{1, 29}};
    CHECK(narm::condition_text(ints) == "1 <= Rings <= 29");
    CHECK(narm::condition_label(ints) == "Rings_[1..29]");

    const RuleCondition reals{"Length", narm::RealInterval{0.075, 0.815}};
    CHECK(narm::condition_text(reals) == "0.075 <= Length <= 0.815");
    CHECK(narm::condition_label(reals) == "Length_[0.075..0.815]");

    // Integer-looking real bounds keep a decimal point.
    const RuleCondition whole{"Height", narm::RealInterval{0.0, 1.0}};
    CHECK(narm::condition_text(whole) == "0.0 <= Height <= 1.0");
}

TEST_CASE("make_rule resolves feature names") {
    const auto features = testutil::abalone_features();
    narm::CandidateRule candidate;
    candidate.antecedent.push_back({0, narm::CategoricalEquals{"F"}});
    candidate.consequent.push_back({8, narm::IntegerInterval{9, 20}});
    const Rule rule = narm::make_rule(candidate, features, {0.375, 1.0, 2.0 / 9.0, 0.5});
    REQUIRE(rule.antecedent.size() == 1);
    CHECK(rule.antecedent[0].feature == "Sex");
    CHECK(rule.consequent[0].feature == "Rings");
    CHECK(rule.quality.support == 0.375);
    CHECK(rule.labels() == std::vector<std::string>{"Rings_[9..20]", "Sex_F"});
}

TEST_CASE("consider keeps only strict improvements") {
    Archive archive;
    CHECK(archive.best_fitness() == 0.0);
    CHECK(archive.consider(numbered_rule(1, 0.3)));
    CHECK(archive.best_fitness() == 0.3);

    CHECK(!archive.consider(numbered_rule(2, 0.3)));  // tie rejected
    CHECK(!archive.consider(numbered_rule(3, 0.1)));
    CHECK(archive.size() == 1);

    Archive sequence;
    for (const double f : {0.2, 0.5, 0.4, 0.9}) {
        sequence.consider(numbered_rule(static_cast<int>(f * 100), f));
    }
    REQUIRE(sequence.size() == 3);
    CHECK(sequence.rules()[0].quality.fitness == 0.2);
    CHECK(sequence.rules()[1].quality.fitness == 0.5);
    CHECK(sequence.rules()[2].quality.fitness == 0.9);
    CHECK(sequence.best_fitness() == 0.9);
    CHECK(sequence.best_rule().quality.fitness == 0.9);
}

TEST_CASE("structurally identical rules are stored once") {
    Archive archive;
    Rule rule = testutil::toy_rule("a", "b", 0.5, 0.4);
    CHECK(archive.consider(rule));
    rule.quality.fitness = 0.8;  // same structure, higher fitness
    CHECK(!archive.consider(rule));
    CHECK(archive.size() == 1);

    // Condition order does not change structural identity.
    Rule two = testutil::toy_rule("x", "y", 0.5, 0.6);
    two.antecedent.push_back({"z", narm::CategoricalEquals{"v"}});
    Rule flipped = two;
    std::swap(flipped.antecedent[0], flipped.antecedent[1]);
    flipped.quality.fitness = 0.9;
    CHECK(archive.consider(two));
    CHECK(!archive.consider(flipped));
}

TEST_CASE("stored rules equal the strict running-max filter") {
    testutil::TestRng rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> len_dist(0, 60);
    for (int round = 0; round < 200; ++round) {
        const int count = len_dist(rng);
        std::vector<double> sequence(count);
        for (auto& f : sequence) {
            f = unit(rng);
        }

        Archive archive;
        for (int i = 0; i < count; ++i) {
            archive.consider(numbered_rule(i, sequence[i]));
        }

        std::vector<double> expected;
        double best = 0.0;
        for (const double f : sequence) {
            if (f > best) {
                best = f;
                expected.push_back(f);
            }
        }
        REQUIRE(archive.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(archive.rules()[i].quality.fitness == expected[i]);
        }
    }
}

TEST_CASE("export filter applies minimum support and confidence") {
    std::vector<Rule> rules;
    auto with_measures = [](int id, double support, double confidence) {
        Rule rule = testutil::toy_rule("a" + std::to_string(id), "b", support, 0.5);
        rule.quality.confidence = confidence;
        return rule;
    };
    rules.push_back(with_measures(0, 0.10, 0.90));
    rules.push_back(with_measures(1, 0.50, 0.40));
    rules.push_back(with_measures(2, 0.50, 0.95));

    CHECK(narm::filter_rules(rules, 0.0, 0.0).size() == 3);
    CHECK(narm::filter_rules(rules, 0.3, 0.0).size() == 2);
    CHECK(narm::filter_rules(rules, 0.3, 0.5).size() == 1);
    CHECK(narm::filter_rules(rules, 0.3, 0.5)[0].antecedent[0].feature == "a2");
    CHECK(narm::filter_rules(rules, 0.5, 0.95).size() == 1);  // thresholds are inclusive
    CHECK(narm::filter_rules(rules, 0.6, 0.99).empty());
}

TEST_CASE("serialize writes the documented record format") {
    Archive archive;
    Rule rule;
    rule.antecedent.push_back({"Shucked weight", narm::RealInterval{1.3163, 1.3576}});
    rule.consequent.push_back({"Rings", narm::IntegerInterval{4, 29}});
    rule.consequent.push_back({"Sex", narm::CategoricalEquals{"F"}});
    rule.quality = {1.0, 1.0, 6.0 / 9.0, 0.8889};
    archive.consider(rule);

    const std::string text = archive.serialize();
    CHECK(text ==
          "# antecedent => consequent\tsupport\tconfidence\tfitness\n"
          "1.3163 <= Shucked weight <= 1.3576 => 4 <= Rings <= 29 & Sex = F\t"
          "1.0000\t1.0000\t0.8889\n");

    CHECK(Archive().serialize() == "# antecedent => consequent\tsupport\tconfidence\tfitness\n");
}

TEST_CASE("save, load and re-save are stable") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "narm_archive_roundtrip";
    fs::create_directories(dir);

    Archive archive;
    Rule a;
    a.antecedent.push_back({"Length", narm::RealInterval{0.075, 0.815}});
    a.consequent.push_back({"Sex", narm::CategoricalEquals{"M"}});
    a.quality = {0.25, 0.5, 1.0, 0.5833};
    archive.consider(a);
    Rule b;
    b.antecedent.push_back({"Rings", narm::IntegerInterval{1, 13}});
    b.antecedent.push_back({"Height", narm::RealInterval{0.8817, 1.13}});
    b.consequent.push_back({"Diameter", narm::RealInterval{0.301, 0.5219}});
    b.quality = {1.0, 1.0, 7.0 / 9.0, 0.9259};
    archive.consider(b);

    const fs::path path = dir / "rules.txt";
    archive.save(path);

    const Archive loaded = Archive::load(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded.rules()[0].antecedent == archive.rules()[0].antecedent);
    CHECK(loaded.rules()[0].consequent == archive.rules()[0].consequent);
    CHECK(loaded.rules()[1].antecedent == archive.rules()[1].antecedent);
    CHECK(loaded.rules()[1].quality.support == doctest::Approx(1.0));
    CHECK(loaded.best_fitness() == doctest::Approx(0.9259));

    const fs::path again = dir / "rules2.txt";
    loaded.save(again);
    std::ifstream f1(path), f2(again);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    fs::remove_all(dir);
}

TEST_CASE("offline archives may be non-monotone; best becomes the max") {
    const std::string text =
        "# antecedent => consequent\tsupport\tconfidence\tfitness\n"
        "Sex = M => 1 <= Rings <= 10\t0.4000\t0.9000\t0.9000\n"
        "Sex = F => 1 <= Rings <= 10\t0.2000\t0.5000\t0.3000\n"
        "Sex = I => 1 <= Rings <= 10\t0.3000\t0.7000\t0.5000\n";
    const Archive archive = Archive::parse(text);
    REQUIRE(archive.size() == 3);
    CHECK(archive.best_fitness() == 0.9);
    CHECK(archive.best_rule().quality.fitness == 0.9);
    CHECK(archive.rules()[1].quality.fitness == 0.3);
}

TEST_CASE("format errors name the offending line") {
    const std::string text =
        "# header\n"
        "Sex = M => 1 <= Rings <= 10\t0.4000\t0.9000\t0.9000\n"
        "no separator here\t0.1\t0.1\t0.1\n";
    try {
        Archive::parse(text);
        FAIL("expected a format error");
    } catch (const ArchiveError& error) {
        CHECK(error.kind() == ArchiveError::Kind::Format);
        CHECK(error.line() == 3);
    }

    CHECK_THROWS_AS(Archive::parse("Sex = M => Sex = F\t2.0\t0.5\t0.5\n"), ArchiveError);  // bad measure
    CHECK_THROWS_AS(Archive::parse("Sex = M =>\t0.5\t0.5\t0.5\n"), ArchiveError);  // empty side
    CHECK_THROWS_AS(Archive::parse("9 <= Rings <= 1 => Sex = M\t0.5\t0.5\t0.5\n"), ArchiveError);
    CHECK_THROWS_AS(Archive::load("/nonexistent/narm/archive.txt"), ArchiveError);
}
