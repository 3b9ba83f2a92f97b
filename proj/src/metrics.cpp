#include "narm/metrics.hpp"

namespace narm {

namespace {

bool condition_holds(const AttributeValue& cell, const ConditionPayload& payload) {
    if (const auto* cat = std::get_if<CategoricalEquals>(&payload)) {
        const auto* value = std::get_if<std::string>(&cell.value);
        return value != nullptr && *value == cat->value;
    }
    if (const auto* ii = std::get_if<IntegerInterval>(&payload)) {
        const auto* value = std::get_if<std::int64_t>(&cell.value);
        return value != nullptr && ii->lo <= *value && *value <= ii->hi;
    }
    const auto& ri = std::get<RealInterval>(payload);
    const auto* value = std::get_if<double>(&cell.value);
    return value != nullptr && ri.lo <= *value && *value <= ri.hi;
}

}  // namespace

bool matches(const TransactionRow& row, std::span<const AttributeCondition> conditions) {
    for (const AttributeCondition& condition : conditions) {
        const AttributeValue& cell = row[condition.feature];
        if (!cell.present() || !condition_holds(cell, condition.payload)) {
            return false;
        }
    }
    return true;
}

std::pair<double, double> support_confidence(const TransactionDatabase& db,
                                             std::span<const AttributeCondition> antecedent,
                                             std::span<const AttributeCondition> consequent) {
    std::size_t antecedent_hits = 0;
    std::size_t both_hits = 0;
    for (const TransactionRow& row : db.rows()) {
        if (!matches(row, antecedent)) {
            continue;
        }
        ++antecedent_hits;
        if (matches(row, consequent)) {
            ++both_hits;
        }
    }
    const double support = static_cast<double>(both_hits) / static_cast<double>(db.row_count());
    const double confidence =
        antecedent_hits == 0 ? 0.0 : static_cast<double>(both_hits) / static_cast<double>(antecedent_hits);
    return {support, confidence};
}

double inclusion(std::size_t antecedent_size, std::size_t consequent_size, std::size_t feature_count) {
    return static_cast<double>(antecedent_size + consequent_size) / static_cast<double>(feature_count);
}

double fitness(double support, double confidence, double inclusion, const FitnessWeights& weights) {
    const double total = weights.alpha + weights.beta + weights.gamma;
    if (!(total > 0)) {
        throw MetricsError("fitness weights must sum to a positive value");
    }
    return (weights.alpha * support + weights.beta * confidence + weights.gamma * inclusion) / total;
}

RuleQuality score_rule(const TransactionDatabase& db, std::span<const AttributeCondition> antecedent,
                       std::span<const AttributeCondition> consequent, const FitnessWeights& weights) {
    RuleQuality quality;
    std::tie(quality.support, quality.confidence) = support_confidence(db, antecedent, consequent);
    quality.inclusion = inclusion(antecedent.size(), consequent.size(), db.feature_count());
    quality.fitness = fitness(quality.support, quality.confidence, quality.inclusion, weights);
    return quality;
}

}  // namespace narm
