#include "narm/visualguide.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

namespace narm {

namespace {

std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace

double rule_similarity(const Rule& a, const Rule& b) {
    const std::vector<std::string> la = a.labels();
    const std::vector<std::string> lb = b.labels();
    const std::size_t common = intersection_size(la, lb);
    const std::size_t total = la.size() + lb.size() - common;
    return total == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(total);
}

std::vector<Rule> select_similar(const Archive& archive, std::size_t map_size) {
    if (archive.empty()) {
        throw VisualGuideError(VisualGuideError::Kind::EmptyArchive,
                               "cannot select rules from an empty archive");
    }
    if (map_size < 1) {
        throw std::invalid_argument("map size must be >= 1");
    }

    const auto& rules = archive.rules();
    std::size_t reference = 0;
    for (std::size_t i = 1; i < rules.size(); ++i) {
        if (rules[i].quality.fitness > rules[reference].quality.fitness) {
            reference = i;
        }
    }

    std::vector<std::size_t> candidates;
    std::vector<double> similarity(rules.size(), 0.0);
    candidates.reserve(rules.size() - 1);
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i != reference) {
            similarity[i] = rule_similarity(rules[reference], rules[i]);
            candidates.push_back(i);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (similarity[a] != similarity[b]) {
            return similarity[a] > similarity[b];
        }
        if (rules[a].quality.fitness != rules[b].quality.fitness) {
            return rules[a].quality.fitness > rules[b].quality.fitness;
        }
        return a < b;
    });

    std::vector<Rule> selected;
    selected.reserve(std::min(map_size, rules.size()));
    selected.push_back(rules[reference]);
    for (std::size_t k = 0; k + 1 < map_size && k < candidates.size(); ++k) {
        selected.push_back(rules[candidates[k]]);
    }
    return selected;
}

FlowExport build_flow(std::span<const Rule> rules) {
    if (rules.empty()) {
        throw VisualGuideError(VisualGuideError::Kind::EmptyArchive, "no rules to export");
    }
    std::map<std::pair<std::string, std::string>, double> weights;
    for (const Rule& rule : rules) {
        for (const RuleCondition& source : rule.antecedent) {
            for (const RuleCondition& target : rule.consequent) {
                weights[{condition_label(source), condition_label(target)}] += rule.quality.support;
            }
        }
    }

    FlowExport flow;
    std::map<std::string, bool> nodes;
    for (const auto& [edge, weight] : weights) {
        if (weight <= 0) {
            continue;
        }
        flow.links.push_back({edge.first, edge.second, weight});
        nodes[edge.first] = true;
        nodes[edge.second] = true;
    }
    flow.nodes.reserve(nodes.size());
    for (const auto& [label, _] : nodes) {
        flow.nodes.push_back(label);
    }
    return flow;
}

std::string render_flow(const FlowExport& flow) {
    std::string out = "source,target,value\n";
    char buf[32];
    for (const FlowLink& link : flow.links) {
        std::snprintf(buf, sizeof(buf), "%.4f", link.weight);
        out += link.source + "," + link.target + "," + buf + "\n";
    }
    return out;
}

void emit_flow(std::span<const Rule> rules, const std::filesystem::path& path) {
    const FlowExport flow = build_flow(rules);
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw VisualGuideError(VisualGuideError::Kind::Io, "cannot write flow export '" + path.string() + "'");
    }
    out << render_flow(flow);
    if (!out) {
        throw VisualGuideError(VisualGuideError::Kind::Io,
                               "failed while writing flow export '" + path.string() + "'");
    }
}

}  // namespace narm
