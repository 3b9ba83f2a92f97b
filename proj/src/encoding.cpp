#include "narm/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace narm {

GenomeLayout::GenomeLayout(std::span<const FeatureDescriptor> features) {
    blocks_.reserve(features.size());
    std::size_t offset = 0;
    for (const FeatureDescriptor& feature : features) {
        const std::size_t length = feature.type == FeatureType::Categorical ? 3 : 4;
        blocks_.push_back({offset, length});
        offset += length;
    }
    dimension_ = offset;
}

std::vector<std::size_t> build_permutation(const Genome& genome, const GenomeLayout& layout) {
    std::vector<std::size_t> order(layout.feature_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ga = genome[layout.block(a).offset];
        const double gb = genome[layout.block(b).offset];
        return ga < gb || (ga == gb && a < b);
    });
    return order;
}

std::string decode_categorical(const FeatureDescriptor& feature, double gene) {
    const auto& domain = feature.categories();
    const std::size_t size = domain.size();
    const std::size_t index =
        std::min(static_cast<std::size_t>(std::floor(gene * static_cast<double>(size))), size - 1);
    return domain[index];
}

ConditionPayload decode_interval(const FeatureDescriptor& feature, double lo_gene, double hi_gene) {
    const double a = std::min(lo_gene, hi_gene);
    const double b = std::max(lo_gene, hi_gene);
    if (feature.type == FeatureType::Numerical) {
        const IntBounds bounds = feature.int_bounds();
        // Width computed in double space; spans near the int64 range would
        // overflow both the subtraction and a naive cast of the offset.
        const double width = static_cast<double>(bounds.hi) - static_cast<double>(bounds.lo);
        const auto decode_bound = [&](double gene) -> std::int64_t {
            const double offset = std::floor(width * gene);
            if (offset <= 0) {
                return bounds.lo;
            }
            if (offset >= width) {
                return bounds.hi;
            }
            const auto shifted = static_cast<std::uint64_t>(bounds.lo) + static_cast<std::uint64_t>(offset);
            return std::clamp(static_cast<std::int64_t>(shifted), bounds.lo, bounds.hi);
        };
        return IntegerInterval{decode_bound(a), decode_bound(b)};
    }
    const RealBounds bounds = feature.real_bounds();
    const double width = bounds.hi - bounds.lo;
    RealInterval interval;
    interval.lo = std::clamp(bounds.lo + width * a, bounds.lo, bounds.hi);
    interval.hi = std::clamp(bounds.lo + width * b, bounds.lo, bounds.hi);
    return interval;
}

std::size_t decode_cut(double gene, std::size_t feature_count) {
    const std::size_t slots = feature_count - 1;
    const std::size_t raw = static_cast<std::size_t>(std::floor(gene * static_cast<double>(slots)));
    return std::min(raw, slots - 1) + 1;
}

std::optional<CandidateRule> decode(const Genome& genome, const GenomeLayout& layout,
                                    std::span<const FeatureDescriptor> features, Rng& rng) {
    if (genome.size() != layout.genome_length()) {
        throw EncodingError("genome length " + std::to_string(genome.size()) + " does not match layout length " +
                            std::to_string(layout.genome_length()));
    }
    const std::size_t m = features.size();

    CandidateRule rule;
    rule.permutation = build_permutation(genome, layout);

    // One threshold draw per feature per decode, consumed in feature order.
    rule.enabled.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const GeneBlock& block = layout.block(j);
        const double threshold_gene = genome[block.offset + block.length - 1];
        rule.enabled[j] = threshold_enabled(threshold_gene, rng.uniform01());
    }

    rule.cut = decode_cut(genome[layout.dimension()], m);

    for (std::size_t position = 0; position < m; ++position) {
        const std::size_t j = rule.permutation[position];
        if (!rule.enabled[j]) {
            continue;
        }
        const FeatureDescriptor& feature = features[j];
        const GeneBlock& block = layout.block(j);
        AttributeCondition condition;
        condition.feature = j;
        if (feature.type == FeatureType::Categorical) {
            condition.payload = CategoricalEquals{decode_categorical(feature, genome[block.offset + 1])};
        } else {
            condition.payload = decode_interval(feature, genome[block.offset + 1], genome[block.offset + 2]);
        }
        (position < rule.cut ? rule.antecedent : rule.consequent).push_back(std::move(condition));
    }

    if (rule.antecedent.empty() || rule.consequent.empty()) {
        return std::nullopt;
    }
    return rule;
}

}  // namespace narm
