#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "narm/condition.hpp"
#include "narm/dataset.hpp"
#include "narm/encoding.hpp"
#include "narm/metrics.hpp"

namespace narm {

// Condition keyed by feature name so archives stay meaningful without the
// database they were mined from.
struct RuleCondition {
    std::string feature;
    ConditionPayload payload;

    bool operator==(const RuleCondition&) const = default;
};

// "feature_attribute" form, e.g. "Sex_M" or "Rings_[1..29]".
std::string condition_label(const RuleCondition& condition);

// Serialized form, e.g. "Sex = M" or "1 <= Rings <= 29".
std::string condition_text(const RuleCondition& condition);

struct Rule {
    std::vector<RuleCondition> antecedent;
    std::vector<RuleCondition> consequent;
    RuleQuality quality;

    // Sorted unique labels over both sides.
    std::vector<std::string> labels() const;

    bool operator==(const Rule&) const = default;
};

Rule make_rule(const CandidateRule& candidate, std::span<const FeatureDescriptor> features,
               const RuleQuality& quality);

// Optional export post-filter: keeps rules meeting classic minimum-support /
// minimum-confidence thresholds. Mining itself never applies these; the
// improve-only policy replaces them.
std::vector<Rule> filter_rules(std::span<const Rule> rules, double min_support, double min_confidence);

class ArchiveError : public std::runtime_error {
public:
    enum class Kind { Format, Io };

    ArchiveError(Kind kind, const std::string& message, std::size_t line = 0)
        : std::runtime_error(message), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }  // 1-based, 0 when not line-bound

private:
    Kind kind_;
    std::size_t line_;
};

// Improve-only rule store: a rule is kept only when its fitness strictly
// exceeds the best fitness seen so far, so stored fitness values strictly
// increase in insertion order. Structurally identical rules are never stored
// twice.
class Archive {
public:
    Archive() = default;

    // Offline archives (e.g. produced by traditional miners) bypass the
    // improve-only policy; best fitness becomes the maximum over the rules.
    static Archive from_rules(std::vector<Rule> rules);

    bool consider(Rule rule);

    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }
    double best_fitness() const { return best_fitness_; }

    // Highest-fitness rule, earliest insertion on ties. Archive must be
    // non-empty.
    const Rule& best_rule() const;

    // One record per rule: conditions joined by " & ", sides joined by
    // " => ", then tab-separated support/confidence/fitness at 4 decimals.
    std::string serialize() const;
    void save(const std::filesystem::path& path) const;

    static Archive parse(std::string_view text);
    static Archive load(const std::filesystem::path& path);

private:
    std::vector<Rule> rules_;
    double best_fitness_{0.0};
    std::unordered_set<std::string> structural_keys_;
};

}  // namespace narm
