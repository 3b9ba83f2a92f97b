#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "narm/condition.hpp"
#include "narm/dataset.hpp"
#include "narm/rng.hpp"

namespace narm {

// Candidate solution: a real vector of length D+1 with every gene in [0, 1].
using Genome = std::vector<double>;

class EncodingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Gene block of one feature inside the genome. Categorical features use
// three genes (ordering, value, threshold); numerical and real-valued
// features use four (ordering, lower bound, upper bound, threshold).
struct GeneBlock {
    std::size_t offset{};
    std::size_t length{};
};

class GenomeLayout {
public:
    explicit GenomeLayout(std::span<const FeatureDescriptor> features);

    std::size_t feature_count() const { return blocks_.size(); }
    std::size_t dimension() const { return dimension_; }            // D
    std::size_t genome_length() const { return dimension_ + 1; }    // trailing gene = cut gene
    const GeneBlock& block(std::size_t feature) const { return blocks_[feature]; }

private:
    std::vector<GeneBlock> blocks_;
    std::size_t dimension_{};
};

struct AttributeCondition {
    std::size_t feature{};
    ConditionPayload payload;

    bool operator==(const AttributeCondition&) const = default;
};

// Decoded phenotype. `cut` is the number of leading permutation slots that
// belong to the antecedent, so enabled features at permutation positions
// [0, cut) form X and positions [cut, m) form Y.
struct CandidateRule {
    std::vector<std::size_t> permutation;  // feature indices, antecedent side first
    std::vector<bool> enabled;             // indexed by feature
    std::size_t cut{};                     // in [1, m-1]
    std::vector<AttributeCondition> antecedent;
    std::vector<AttributeCondition> consequent;
};

// Orders features by their ordering gene, ascending, ties by feature index.
std::vector<std::size_t> build_permutation(const Genome& genome, const GenomeLayout& layout);

// Picks domain entry floor(gene * |domain|) + 1 (1-based), clamped at gene = 1.
std::string decode_categorical(const FeatureDescriptor& feature, double gene);

// Maps two genes onto an interval inside the feature domain. The smaller
// gene drives the lower bound. Numerical features truncate to integers;
// real-valued features do not truncate.
ConditionPayload decode_interval(const FeatureDescriptor& feature, double lo_gene, double hi_gene);

// A feature takes part in the rule iff the uniform draw falls below its
// threshold gene.
inline bool threshold_enabled(double threshold_gene, double draw) { return draw < threshold_gene; }

// Cut position floor(gene * (m-1)) + 1, clamped to m-1 at gene = 1.
std::size_t decode_cut(double gene, std::size_t feature_count);

// Full genotype-phenotype mapping. Consumes exactly one uniform draw per
// feature (in feature order) for the threshold gates. Returns nullopt when
// either rule side ends up empty.
std::optional<CandidateRule> decode(const Genome& genome, const GenomeLayout& layout,
                                    std::span<const FeatureDescriptor> features, Rng& rng);

}  // namespace narm
