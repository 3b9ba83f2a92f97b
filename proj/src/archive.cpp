#include "narm/archive.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace narm {

namespace {

std::string format_quality(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

// Canonical identity of a rule: both condition sets, order-insensitive.
std::string structural_key(const Rule& rule) {
    std::string key;
    auto append_side = [&key](const std::vector<RuleCondition>& side) {
        std::vector<std::string> texts;
        texts.reserve(side.size());
        for (const RuleCondition& condition : side) {
            texts.push_back(condition_text(condition));
        }
        std::sort(texts.begin(), texts.end());
        for (const std::string& text : texts) {
            key += text;
            key += '\x1f';
        }
    };
    append_side(rule.antecedent);
    key += "=>";
    append_side(rule.consequent);
    return key;
}

bool parse_double_field(std::string_view field, double& out) {
    auto result = std::from_chars(field.data(), field.data() + field.size(), out);
    return result.ec == std::errc() && result.ptr == field.data() + field.size() && std::isfinite(out);
}

bool parse_int_field(std::string_view field, std::int64_t& out) {
    auto result = std::from_chars(field.data(), field.data() + field.size(), out);
    return result.ec == std::errc() && result.ptr == field.data() + field.size();
}

std::vector<std::string_view> split_on(std::string_view text, std::string_view separator) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(separator, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + separator.size();
    }
    return parts;
}

RuleCondition parse_condition(std::string_view text, std::size_t line_number) {
    const auto fail = [&](const std::string& reason) -> ArchiveError {
        return {ArchiveError::Kind::Format,
                "line " + std::to_string(line_number) + ": " + reason + " in condition '" +
                    std::string(text) + "'",
                line_number};
    };

    if (text.find(" <= ") != std::string_view::npos) {
        const auto parts = split_on(text, " <= ");
        if (parts.size() != 3 || parts[1].empty()) {
            throw fail("expected 'lo <= feature <= hi'");
        }
        RuleCondition condition;
        condition.feature = std::string(parts[1]);
        std::int64_t ilo = 0;
        std::int64_t ihi = 0;
        if (parse_int_field(parts[0], ilo) && parse_int_field(parts[2], ihi)) {
            if (ilo > ihi) {
                throw fail("interval bounds out of order");
            }
            condition.payload = IntegerInterval{ilo, ihi};
            return condition;
        }
        double rlo = 0;
        double rhi = 0;
        if (!parse_double_field(parts[0], rlo) || !parse_double_field(parts[2], rhi)) {
            throw fail("unparsable interval bound");
        }
        if (rlo > rhi) {
            throw fail("interval bounds out of order");
        }
        condition.payload = RealInterval{rlo, rhi};
        return condition;
    }

    const std::size_t eq = text.find(" = ");
    if (eq == std::string_view::npos || eq == 0 || eq + 3 >= text.size()) {
        throw fail("expected 'feature = value'");
    }
    RuleCondition condition;
    condition.feature = std::string(text.substr(0, eq));
    condition.payload = CategoricalEquals{std::string(text.substr(eq + 3))};
    return condition;
}

std::vector<RuleCondition> parse_side(std::string_view text, std::size_t line_number) {
    std::vector<RuleCondition> side;
    for (std::string_view part : split_on(text, " & ")) {
        side.push_back(parse_condition(part, line_number));
    }
    return side;
}

}  // namespace

std::string condition_label(const RuleCondition& condition) {
    return condition.feature + "_" + payload_attribute(condition.payload);
}

std::string condition_text(const RuleCondition& condition) {
    if (const auto* cat = std::get_if<CategoricalEquals>(&condition.payload)) {
        return condition.feature + " = " + cat->value;
    }
    if (const auto* ii = std::get_if<IntegerInterval>(&condition.payload)) {
        return std::to_string(ii->lo) + " <= " + condition.feature + " <= " + std::to_string(ii->hi);
    }
    const auto& ri = std::get<RealInterval>(condition.payload);
    return format_real(ri.lo) + " <= " + condition.feature + " <= " + format_real(ri.hi);
}

std::vector<std::string> Rule::labels() const {
    std::set<std::string> unique;
    for (const RuleCondition& condition : antecedent) {
        unique.insert(condition_label(condition));
    }
    for (const RuleCondition& condition : consequent) {
        unique.insert(condition_label(condition));
    }
    return {unique.begin(), unique.end()};
}

Rule make_rule(const CandidateRule& candidate, std::span<const FeatureDescriptor> features,
               const RuleQuality& quality) {
    Rule rule;
    rule.quality = quality;
    rule.antecedent.reserve(candidate.antecedent.size());
    for (const AttributeCondition& condition : candidate.antecedent) {
        rule.antecedent.push_back({features[condition.feature].name, condition.payload});
    }
    rule.consequent.reserve(candidate.consequent.size());
    for (const AttributeCondition& condition : candidate.consequent) {
        rule.consequent.push_back({features[condition.feature].name, condition.payload});
    }
    return rule;
}

std::vector<Rule> filter_rules(std::span<const Rule> rules, double min_support, double min_confidence) {
    std::vector<Rule> kept;
    for (const Rule& rule : rules) {
        if (rule.quality.support >= min_support && rule.quality.confidence >= min_confidence) {
            kept.push_back(rule);
        }
    }
    return kept;
}

Archive Archive::from_rules(std::vector<Rule> rules) {
    Archive archive;
    archive.rules_ = std::move(rules);
    for (const Rule& rule : archive.rules_) {
        archive.best_fitness_ = std::max(archive.best_fitness_, rule.quality.fitness);
        archive.structural_keys_.insert(structural_key(rule));
    }
    return archive;
}

bool Archive::consider(Rule rule) {
    if (!(rule.quality.fitness > best_fitness_)) {
        return false;
    }
    std::string key = structural_key(rule);
    if (!structural_keys_.insert(std::move(key)).second) {
        return false;
    }
    best_fitness_ = rule.quality.fitness;
    rules_.push_back(std::move(rule));
    return true;
}

const Rule& Archive::best_rule() const {
    if (rules_.empty()) {
        throw std::logic_error("best_rule() called on an empty archive");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < rules_.size(); ++i) {
        if (rules_[i].quality.fitness > rules_[best].quality.fitness) {
            best = i;
        }
    }
    return rules_[best];
}

std::string Archive::serialize() const {
    std::string out = "# antecedent => consequent\tsupport\tconfidence\tfitness\n";
    for (const Rule& rule : rules_) {
        std::string line;
        for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
            if (i > 0) {
                line += " & ";
            }
            line += condition_text(rule.antecedent[i]);
        }
        line += " => ";
        for (std::size_t i = 0; i < rule.consequent.size(); ++i) {
            if (i > 0) {
                line += " & ";
            }
            line += condition_text(rule.consequent[i]);
        }
        line += '\t' + format_quality(rule.quality.support);
        line += '\t' + format_quality(rule.quality.confidence);
        line += '\t' + format_quality(rule.quality.fitness);
        out += line;
        out += '\n';
    }
    return out;
}

void Archive::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ArchiveError(ArchiveError::Kind::Io, "cannot write archive '" + path.string() + "'");
    }
    out << serialize();
    if (!out) {
        throw ArchiveError(ArchiveError::Kind::Io, "failed while writing archive '" + path.string() + "'");
    }
}

Archive Archive::parse(std::string_view text) {
    std::vector<Rule> rules;
    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
        ++line_number;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }

        const auto fields = split_on(line, "\t");
        if (fields.size() != 4) {
            throw ArchiveError(ArchiveError::Kind::Format,
                               "line " + std::to_string(line_number) + ": expected 4 tab-separated fields, got " +
                                   std::to_string(fields.size()),
                               line_number);
        }
        const auto sides = split_on(fields[0], " => ");
        if (sides.size() != 2 || sides[0].empty() || sides[1].empty()) {
            throw ArchiveError(ArchiveError::Kind::Format,
                               "line " + std::to_string(line_number) + ": expected 'antecedent => consequent'",
                               line_number);
        }

        Rule rule;
        rule.antecedent = parse_side(sides[0], line_number);
        rule.consequent = parse_side(sides[1], line_number);
        double values[3];
        for (int i = 0; i < 3; ++i) {
            if (!parse_double_field(fields[i + 1], values[i]) || values[i] < 0 || values[i] > 1) {
                throw ArchiveError(ArchiveError::Kind::Format,
                                   "line " + std::to_string(line_number) + ": bad measure value '" +
                                       std::string(fields[i + 1]) + "'",
                                   line_number);
            }
        }
        rule.quality.support = values[0];
        rule.quality.confidence = values[1];
        rule.quality.fitness = values[2];
        rule.quality.inclusion = 0.0;  // not serialized
        rules.push_back(std::move(rule));
    }
    return from_rules(std::move(rules));
}

Archive Archive::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArchiveError(ArchiveError::Kind::Io, "cannot open archive '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

}  // namespace narm
