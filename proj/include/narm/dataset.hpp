#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace narm {

enum class FeatureType { Categorical, Numerical, RealValued };

struct IntBounds {
    std::int64_t lo{};
    std::int64_t hi{};
    bool operator==(const IntBounds&) const = default;
};

struct RealBounds {
    double lo{};
    double hi{};
    bool operator==(const RealBounds&) const = default;
};

// Categorical domains keep first-appearance order; numeric domains are the
// exact column min/max.
using Domain = std::variant<std::vector<std::string>, IntBounds, RealBounds>;

struct FeatureDescriptor {
    std::string name;
    FeatureType type{FeatureType::Categorical};
    Domain domain;

    const std::vector<std::string>& categories() const { return std::get<std::vector<std::string>>(domain); }
    const IntBounds& int_bounds() const { return std::get<IntBounds>(domain); }
    const RealBounds& real_bounds() const { return std::get<RealBounds>(domain); }

    bool operator==(const FeatureDescriptor&) const = default;
};

// One table cell; monostate marks a value absent from the transaction.
struct AttributeValue {
    std::variant<std::monostate, std::string, std::int64_t, double> value;

    bool present() const { return value.index() != 0; }

    bool operator==(const AttributeValue&) const = default;
};

using TransactionRow = std::vector<AttributeValue>;

class DatasetError : public std::runtime_error {
public:
    enum class Kind { EmptyFile, HeaderOnly, RaggedRow, TooFewFeatures, EmptyColumn, FileNotFound };

    DatasetError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Immutable N x m grid of typed attribute values. Safe to share across
// threads once constructed.
class TransactionDatabase {
public:
    TransactionDatabase(std::vector<FeatureDescriptor> features, std::vector<TransactionRow> rows);

    const std::vector<FeatureDescriptor>& features() const { return features_; }
    const std::vector<TransactionRow>& rows() const { return rows_; }
    std::size_t feature_count() const { return features_.size(); }
    std::size_t row_count() const { return rows_.size(); }

private:
    std::vector<FeatureDescriptor> features_;
    std::vector<TransactionRow> rows_;
};

// Context-based typing over the present (non-missing) tokens of one column:
// Numerical when every token is an integer, RealValued when every token is a
// finite decimal and at least one is not an integer, Categorical otherwise.
FeatureType infer_feature_type(std::span<const std::string> present_tokens);

Domain compute_domain(FeatureType type, std::span<const std::string> present_tokens);

// First line = comma-separated feature names, every further non-blank line
// one transaction. Empty tokens are missing cells.
TransactionDatabase parse_dataset(std::string_view text);

TransactionDatabase load_dataset(const std::filesystem::path& path);

// Period 1 loads `path` as given; period k > 1 loads <stem>1<ext> ... <stem>k<ext>.
std::vector<TransactionDatabase> load_periods(const std::filesystem::path& tdbase_path, int period);

}  // namespace narm
