#pragma once

#include <span>
#include <stdexcept>
#include <utility>

#include "narm/dataset.hpp"
#include "narm/encoding.hpp"

namespace narm {

struct FitnessWeights {
    double alpha{1.0};
    double beta{1.0};
    double gamma{1.0};
};

struct RuleQuality {
    double support{};
    double confidence{};
    double inclusion{};
    double fitness{};

    bool operator==(const RuleQuality&) const = default;
};

class MetricsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// True iff every condition holds on the row. Interval conditions are closed
// on both ends; a missing cell fails its condition; an empty condition list
// matches vacuously.
bool matches(const TransactionRow& row, std::span<const AttributeCondition> conditions);

// supp = |rows matching X and Y| / N, conf = same numerator / |rows matching
// X| (0 when nothing matches X).
std::pair<double, double> support_confidence(const TransactionDatabase& db,
                                             std::span<const AttributeCondition> antecedent,
                                             std::span<const AttributeCondition> consequent);

// Fraction of all features taking part in the rule.
double inclusion(std::size_t antecedent_size, std::size_t consequent_size, std::size_t feature_count);

// Weighted mean (alpha*supp + beta*conf + gamma*incl) / (alpha+beta+gamma).
// Throws MetricsError when the weights sum to zero.
double fitness(double support, double confidence, double inclusion, const FitnessWeights& weights = {});

// All four measures of one candidate rule in a single database pass.
RuleQuality score_rule(const TransactionDatabase& db, std::span<const AttributeCondition> antecedent,
                       std::span<const AttributeCondition> consequent, const FitnessWeights& weights = {});

}  // namespace narm
