#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "narm/archive.hpp"

namespace narm {

struct FlowLink {
    std::string source;
    std::string target;
    double weight{};

    bool operator==(const FlowLink&) const = default;
};

// Edge list of a flow (Sankey) diagram: antecedent labels flow into
// consequent labels, weighted by rule support.
struct FlowExport {
    std::vector<std::string> nodes;
    std::vector<FlowLink> links;
};

class VisualGuideError : public std::runtime_error {
public:
    enum class Kind { EmptyArchive, NotImplemented, Io };

    VisualGuideError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Jaccard index of the two rules' label sets (antecedent and consequent
// labels pooled).
double rule_similarity(const Rule& a, const Rule& b);

// The best-fitness rule plus the map_size-1 rules most similar to it, ties
// broken by higher fitness then insertion order. Result is headed by the
// reference rule and holds min(map_size, archive size) rules.
std::vector<Rule> select_similar(const Archive& archive, std::size_t map_size);

// One link per (antecedent label, consequent label) pair per rule, weight =
// rule support; duplicate links merge by weight sum, zero-weight links are
// dropped, links sort by (source, target).
FlowExport build_flow(std::span<const Rule> rules);

// Header "source,target,value", one comma-separated row per link, weights at
// 4 decimals.
std::string render_flow(const FlowExport& flow);

void emit_flow(std::span<const Rule> rules, const std::filesystem::path& path);

}  // namespace narm
