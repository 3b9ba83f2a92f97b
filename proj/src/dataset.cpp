#include "narm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace narm {

namespace {

std::string_view trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

bool parse_int_token(std::string_view token, std::int64_t& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto result = std::from_chars(first, last, out);
    return result.ec == std::errc() && result.ptr == last;
}

bool parse_real_token(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto result = std::from_chars(first, last, out);
    return result.ec == std::errc() && result.ptr == last && std::isfinite(out);
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string_view raw =
            comma == std::string_view::npos ? line.substr(start) : line.substr(start, comma - start);
        fields.emplace_back(trim(raw));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::vector<std::string> non_blank_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        const std::string_view raw =
            nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
        if (!trim(raw).empty()) {
            lines.emplace_back(raw);
        }
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
    return lines;
}

}  // namespace

TransactionDatabase::TransactionDatabase(std::vector<FeatureDescriptor> features,
                                         std::vector<TransactionRow> rows)
    : features_(std::move(features)), rows_(std::move(rows)) {
    if (features_.size() < 2) {
        throw DatasetError(DatasetError::Kind::TooFewFeatures,
                           "a transaction database needs at least 2 features, got " +
                               std::to_string(features_.size()));
    }
    if (rows_.empty()) {
        throw DatasetError(DatasetError::Kind::HeaderOnly, "a transaction database needs at least 1 row");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != features_.size()) {
            throw DatasetError(DatasetError::Kind::RaggedRow,
                               "row " + std::to_string(i + 1) + " has " + std::to_string(rows_[i].size()) +
                                   " cells, expected " + std::to_string(features_.size()));
        }
    }
}

FeatureType infer_feature_type(std::span<const std::string> present_tokens) {
    bool all_int = true;
    bool all_real = true;
    for (const auto& token : present_tokens) {
        std::int64_t i;
        double d;
        if (!parse_int_token(token, i)) {
            all_int = false;
            if (!parse_real_token(token, d)) {
                all_real = false;
                break;
            }
        }
    }
    if (all_int) {
        return FeatureType::Numerical;
    }
    return all_real ? FeatureType::RealValued : FeatureType::Categorical;
}

Domain compute_domain(FeatureType type, std::span<const std::string> present_tokens) {
    switch (type) {
        case FeatureType::Numerical: {
            IntBounds bounds;
            bool first = true;
            for (const auto& token : present_tokens) {
                std::int64_t v = 0;
                parse_int_token(token, v);
                bounds.lo = first ? v : std::min(bounds.lo, v);
                bounds.hi = first ? v : std::max(bounds.hi, v);
                first = false;
            }
            return bounds;
        }
        case FeatureType::RealValued: {
            RealBounds bounds;
            bool first = true;
            for (const auto& token : present_tokens) {
                double v = 0;
                parse_real_token(token, v);
                bounds.lo = first ? v : std::min(bounds.lo, v);
                bounds.hi = first ? v : std::max(bounds.hi, v);
                first = false;
            }
            return bounds;
        }
        case FeatureType::Categorical:
            break;
    }
    std::vector<std::string> values;
    std::unordered_set<std::string_view> seen;
    for (const auto& token : present_tokens) {
        if (seen.insert(token).second) {
            values.push_back(token);
        }
    }
    return values;
}

TransactionDatabase parse_dataset(std::string_view text) {
    const std::vector<std::string> lines = non_blank_lines(text);
    if (lines.empty()) {
        throw DatasetError(DatasetError::Kind::EmptyFile, "dataset is empty");
    }

    std::vector<std::string> names = split_fields(lines.front());
    const std::size_t m = names.size();
    if (m < 2) {
        throw DatasetError(DatasetError::Kind::TooFewFeatures,
                           "dataset header declares " + std::to_string(m) + " feature(s), need at least 2");
    }
    if (lines.size() == 1) {
        throw DatasetError(DatasetError::Kind::HeaderOnly, "dataset has a header but no transactions");
    }

    std::vector<std::vector<std::string>> raw_rows;
    raw_rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != m) {
            throw DatasetError(DatasetError::Kind::RaggedRow,
                               "transaction " + std::to_string(i) + " has " + std::to_string(fields.size()) +
                                   " cells, expected " + std::to_string(m));
        }
        raw_rows.push_back(std::move(fields));
    }

    std::vector<FeatureDescriptor> features(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::string> present;
        present.reserve(raw_rows.size());
        for (const auto& row : raw_rows) {
            if (!row[j].empty()) {
                present.push_back(row[j]);
            }
        }
        if (present.empty()) {
            throw DatasetError(DatasetError::Kind::EmptyColumn,
                               "column '" + names[j] + "' has no present values");
        }
        features[j].name = std::move(names[j]);
        features[j].type = infer_feature_type(present);
        features[j].domain = compute_domain(features[j].type, present);
    }

    std::vector<TransactionRow> rows;
    rows.reserve(raw_rows.size());
    for (auto& raw : raw_rows) {
        TransactionRow row(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (raw[j].empty()) {
                continue;  // missing cell
            }
            switch (features[j].type) {
                case FeatureType::Numerical: {
                    std::int64_t v = 0;
                    parse_int_token(raw[j], v);
                    row[j].value = v;
                    break;
                }
                case FeatureType::RealValued: {
                    double v = 0;
                    parse_real_token(raw[j], v);
                    row[j].value = v;
                    break;
                }
                case FeatureType::Categorical:
                    row[j].value = std::move(raw[j]);
                    break;
            }
        }
        rows.push_back(std::move(row));
    }

    return {std::move(features), std::move(rows)};
}

TransactionDatabase load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DatasetError(DatasetError::Kind::FileNotFound, "cannot open dataset '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str());
}

std::vector<TransactionDatabase> load_periods(const std::filesystem::path& tdbase_path, int period) {
    if (period < 1) {
        throw std::invalid_argument("period must be >= 1");
    }
    std::vector<TransactionDatabase> databases;
    if (period == 1) {
        databases.push_back(load_dataset(tdbase_path));
        return databases;
    }
    const std::string stem = tdbase_path.stem().string();
    const std::string ext = tdbase_path.extension().string();
    for (int i = 1; i <= period; ++i) {
        std::filesystem::path numbered = tdbase_path;
        numbered.replace_filename(stem + std::to_string(i) + ext);
        databases.push_back(load_dataset(numbered));
    }
    return databases;
}

}  // namespace narm
