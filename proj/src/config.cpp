#include "narm/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <vector>

#include "narm/condition.hpp"

namespace narm {

namespace {

using Kind = ConfigError::Kind;

std::string_view trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

struct KeyValue {
    std::string key;
    std::string value;
};

struct Block {
    std::vector<KeyValue> entries;

    const std::string* find(const std::string& key) const {
        for (const auto& entry : entries) {
            if (entry.key == key) {
                return &entry.value;
            }
        }
        return nullptr;
    }
};

int parse_int_value(const std::string& key, const std::string& value) {
    int out = 0;
    auto result = std::from_chars(value.data(), value.data() + value.size(), out);
    if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
        throw ConfigError(Kind::Type, "non-numeric value '" + value + "' for key '" + key + "'");
    }
    return out;
}

double parse_float_value(const std::string& key, const std::string& value) {
    double out = 0;
    auto result = std::from_chars(value.data(), value.data() + value.size(), out);
    if (result.ec != std::errc() || result.ptr != value.data() + value.size() || !std::isfinite(out)) {
        throw ConfigError(Kind::Type, "non-numeric value '" + value + "' for key '" + key + "'");
    }
    return out;
}

bool is_known_block(const std::string& name) {
    return name == "Problem" || name == "DE_PARAM" || name == "PSO_PARAM" || name == "FLOW_PARAM";
}

// One key = value per line inside a block; the block may carry extra keys
// only from its own table.
void reject_unknown_keys(const std::string& block_name, const Block& block,
                         std::initializer_list<const char*> known) {
    for (const auto& entry : block.entries) {
        bool found = false;
        for (const char* key : known) {
            if (entry.key == key) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError(Kind::UnknownKey,
                              "unknown key '" + entry.key + "' in block " + block_name);
        }
    }
}

const std::string& require_key(const std::string& block_name, const Block& block, const char* key) {
    const std::string* value = block.find(key);
    if (value == nullptr) {
        throw ConfigError(Kind::MissingKey, "block " + block_name + " is missing key '" + key + "'");
    }
    return *value;
}

void read_weights(const Block& block, double& alpha, double& beta, double& gamma) {
    if (const auto* v = block.find("ALPHA")) {
        alpha = parse_float_value("ALPHA", *v);
    }
    if (const auto* v = block.find("BETA")) {
        beta = parse_float_value("BETA", *v);
    }
    if (const auto* v = block.find("GAMMA")) {
        gamma = parse_float_value("GAMMA", *v);
    }
}

void check_range(bool ok, const std::string& message) {
    if (!ok) {
        throw ConfigError(Kind::Range, message);
    }
}

void check_weights(const char* block, double alpha, double beta, double gamma) {
    check_range(alpha >= 0 && beta >= 0 && gamma >= 0,
                std::string(block) + ": ALPHA/BETA/GAMMA must be >= 0");
    check_range(alpha + beta + gamma > 0, std::string(block) + ": ALPHA+BETA+GAMMA must be > 0");
}

// Distinct non-target samples needed by each DE strategy variant, plus the
// target itself.
int minimum_population(int strategy) {
    static constexpr int samples[] = {2, 3, 2, 4, 5};
    return std::max(4, samples[(strategy - 1) % 5] + 1);
}

std::string render_double(double value) { return format_real(value); }

}  // namespace

Setup parse_setup(std::string_view text) {
    // Effective lines: trimmed, with blank and '%' comment lines dropped.
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        const std::string_view raw =
            nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
        const std::string_view line = trim(raw);
        if (!line.empty() && line.front() != '%') {
            lines.emplace_back(line);
        }
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }

    std::map<std::string, Block> blocks;
    std::map<std::string, std::string> selectors;

    std::size_t i = 0;
    while (i < lines.size()) {
        const std::string& line = lines[i];
        if (line == "{" || line == "}") {
            throw ConfigError(Kind::Syntax, "unexpected '" + line + "' at top level");
        }
        if (const std::size_t eq = line.find('='); eq != std::string::npos) {
            std::string key(trim(std::string_view(line).substr(0, eq)));
            std::string value(trim(std::string_view(line).substr(eq + 1)));
            if (key != "Algorithm" && key != "Visualisation") {
                throw ConfigError(Kind::UnknownKey, "unknown top-level key '" + key + "'");
            }
            if (!selectors.emplace(key, value).second) {
                throw ConfigError(Kind::Syntax, "duplicate selector '" + key + "'");
            }
            ++i;
            continue;
        }

        // Block header; '{' may be attached or on the following line.
        std::string name = line;
        bool brace_open = false;
        if (name.back() == '{') {
            name = std::string(trim(std::string_view(name).substr(0, name.size() - 1)));
            brace_open = true;
        }
        if (!is_known_block(name)) {
            throw ConfigError(Kind::UnknownBlock, "unrecognized block '" + name + "'");
        }
        ++i;
        if (!brace_open) {
            if (i >= lines.size() || lines[i] != "{") {
                throw ConfigError(Kind::Syntax, "expected '{' after block '" + name + "'");
            }
            ++i;
        }
        Block block;
        bool closed = false;
        while (i < lines.size()) {
            const std::string& entry = lines[i];
            if (entry == "}") {
                closed = true;
                ++i;
                break;
            }
            const std::size_t eq = entry.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(Kind::Syntax,
                                  "malformed line '" + entry + "' in block " + name +
                                      "; expected 'key = value'");
            }
            KeyValue kv;
            kv.key = std::string(trim(std::string_view(entry).substr(0, eq)));
            kv.value = std::string(trim(std::string_view(entry).substr(eq + 1)));
            if (block.find(kv.key) != nullptr) {
                throw ConfigError(Kind::Syntax, "duplicate key '" + kv.key + "' in block " + name);
            }
            block.entries.push_back(std::move(kv));
            ++i;
        }
        if (!closed) {
            throw ConfigError(Kind::Syntax, "block '" + name + "' is missing its closing '}'");
        }
        if (!blocks.emplace(name, std::move(block)).second) {
            throw ConfigError(Kind::Syntax, "duplicate block '" + name + "'");
        }
    }

    Setup setup;

    if (const auto it = selectors.find("Algorithm"); it != selectors.end()) {
        if (it->second == "NONE") {
            setup.algorithm = AlgorithmChoice::None;
        } else if (it->second == "DE") {
            setup.algorithm = AlgorithmChoice::DE;
        } else if (it->second == "PSO") {
            setup.algorithm = AlgorithmChoice::PSO;
        } else {
            throw ConfigError(Kind::Syntax, "Algorithm must be NONE, DE or PSO, got '" + it->second + "'");
        }
    }
    if (const auto it = selectors.find("Visualisation"); it != selectors.end()) {
        if (it->second == "NONE") {
            setup.visualization = VisualChoice::None;
        } else if (it->second == "FLOW") {
            setup.visualization = VisualChoice::Flow;
        } else if (it->second == "METRO") {
            setup.visualization = VisualChoice::Metro;
        } else {
            throw ConfigError(Kind::Syntax,
                              "Visualisation must be NONE, FLOW or METRO, got '" + it->second + "'");
        }
    }
    if (setup.algorithm == AlgorithmChoice::None && setup.visualization == VisualChoice::None) {
        throw ConfigError(Kind::NothingToDo,
                          "Algorithm = NONE and Visualisation = NONE leave nothing to do");
    }

    const auto problem_it = blocks.find("Problem");
    if (problem_it == blocks.end()) {
        throw ConfigError(Kind::MissingBlock, "setup is missing the Problem block");
    }
    {
        const Block& block = problem_it->second;
        reject_unknown_keys("Problem", block, {"Tdbase_name", "Rule_name", "Out_name", "Period"});
        setup.problem.tdbase_name = require_key("Problem", block, "Tdbase_name");
        setup.problem.out_name = require_key("Problem", block, "Out_name");
        if (const auto* v = block.find("Rule_name")) {
            setup.problem.rule_name = *v;
        }
        if (const auto* v = block.find("Period")) {
            setup.problem.period = parse_int_value("Period", *v);
        }
    }

    if (const auto it = blocks.find("DE_PARAM"); it != blocks.end()) {
        const Block& block = it->second;
        reject_unknown_keys("DE_PARAM", block,
                            {"DE_NP", "DE_FES", "DE_RUNS", "DE_F", "DE_CR", "DE_STRATEGY", "ALPHA",
                             "BETA", "GAMMA"});
        DEParams params;
        params.np = parse_int_value("DE_NP", require_key("DE_PARAM", block, "DE_NP"));
        params.fes = parse_int_value("DE_FES", require_key("DE_PARAM", block, "DE_FES"));
        params.runs = parse_int_value("DE_RUNS", require_key("DE_PARAM", block, "DE_RUNS"));
        params.f = parse_float_value("DE_F", require_key("DE_PARAM", block, "DE_F"));
        params.cr = parse_float_value("DE_CR", require_key("DE_PARAM", block, "DE_CR"));
        params.strategy = parse_int_value("DE_STRATEGY", require_key("DE_PARAM", block, "DE_STRATEGY"));
        read_weights(block, params.alpha, params.beta, params.gamma);
        setup.de_params = params;
    }
    if (const auto it = blocks.find("PSO_PARAM"); it != blocks.end()) {
        const Block& block = it->second;
        reject_unknown_keys("PSO_PARAM", block,
                            {"PSO_NP", "PSO_FES", "PSO_RUNS", "PSO_W", "PSO_C1", "PSO_C2", "ALPHA",
                             "BETA", "GAMMA"});
        PSOParams params;
        params.np = parse_int_value("PSO_NP", require_key("PSO_PARAM", block, "PSO_NP"));
        params.fes = parse_int_value("PSO_FES", require_key("PSO_PARAM", block, "PSO_FES"));
        params.runs = parse_int_value("PSO_RUNS", require_key("PSO_PARAM", block, "PSO_RUNS"));
        params.w = parse_float_value("PSO_W", require_key("PSO_PARAM", block, "PSO_W"));
        params.c1 = parse_float_value("PSO_C1", require_key("PSO_PARAM", block, "PSO_C1"));
        params.c2 = parse_float_value("PSO_C2", require_key("PSO_PARAM", block, "PSO_C2"));
        read_weights(block, params.alpha, params.beta, params.gamma);
        setup.pso_params = params;
    }
    if (const auto it = blocks.find("FLOW_PARAM"); it != blocks.end()) {
        const Block& block = it->second;
        reject_unknown_keys("FLOW_PARAM", block, {"FLOW_M"});
        FlowParams params;
        params.m = parse_int_value("FLOW_M", require_key("FLOW_PARAM", block, "FLOW_M"));
        setup.flow_params = params;
    }

    if (setup.algorithm == AlgorithmChoice::DE && !setup.de_params) {
        throw ConfigError(Kind::MissingBlock, "Algorithm = DE requires a DE_PARAM block");
    }
    if (setup.algorithm == AlgorithmChoice::PSO && !setup.pso_params) {
        throw ConfigError(Kind::MissingBlock, "Algorithm = PSO requires a PSO_PARAM block");
    }
    if (setup.visualization == VisualChoice::Flow && !setup.flow_params) {
        throw ConfigError(Kind::MissingBlock, "Visualisation = FLOW requires a FLOW_PARAM block");
    }

    return setup;
}

const Setup& validate_setup(const Setup& setup) {
    check_range(setup.problem.period >= 1, "Period must be >= 1");
    if (setup.de_params) {
        const DEParams& p = *setup.de_params;
        check_range(p.strategy >= 1 && p.strategy <= 10, "DE_STRATEGY must be in [1, 10]");
        check_range(p.np >= minimum_population(p.strategy),
                    "DE_NP must be >= " + std::to_string(minimum_population(p.strategy)) +
                        " for strategy " + std::to_string(p.strategy));
        check_range(p.fes >= p.np, "DE_FES must be >= DE_NP");
        check_range(p.runs >= 1, "DE_RUNS must be >= 1");
        check_range(p.f > 0 && p.f <= 2, "DE_F must be in (0, 2]");
        check_range(p.cr >= 0 && p.cr <= 1, "DE_CR must be in [0, 1]");
        check_weights("DE_PARAM", p.alpha, p.beta, p.gamma);
    }
    if (setup.pso_params) {
        const PSOParams& p = *setup.pso_params;
        check_range(p.np >= 2, "PSO_NP must be >= 2");
        check_range(p.fes >= p.np, "PSO_FES must be >= PSO_NP");
        check_range(p.runs >= 1, "PSO_RUNS must be >= 1");
        check_range(p.w >= 0, "PSO_W must be >= 0");
        check_range(p.c1 >= 0, "PSO_C1 must be >= 0");
        check_range(p.c2 >= 0, "PSO_C2 must be >= 0");
        check_weights("PSO_PARAM", p.alpha, p.beta, p.gamma);
    }
    if (setup.flow_params) {
        check_range(setup.flow_params->m >= 1, "FLOW_M must be >= 1");
    }
    return setup;
}

std::string render_setup(const Setup& setup) {
    std::string out;
    out += "Problem\n{\n";
    out += "Tdbase_name = " + setup.problem.tdbase_name + "\n";
    if (!setup.problem.rule_name.empty()) {
        out += "Rule_name = " + setup.problem.rule_name + "\n";
    }
    out += "Out_name = " + setup.problem.out_name + "\n";
    out += "Period = " + std::to_string(setup.problem.period) + "\n";
    out += "}\n";

    switch (setup.algorithm) {
        case AlgorithmChoice::None:
            out += "Algorithm = NONE\n";
            break;
        case AlgorithmChoice::DE:
            out += "Algorithm = DE\n";
            break;
        case AlgorithmChoice::PSO:
            out += "Algorithm = PSO\n";
            break;
    }
    if (setup.de_params) {
        const DEParams& p = *setup.de_params;
        out += "DE_PARAM\n{\n";
        out += "DE_NP = " + std::to_string(p.np) + "\n";
        out += "DE_FES = " + std::to_string(p.fes) + "\n";
        out += "DE_RUNS = " + std::to_string(p.runs) + "\n";
        out += "DE_F = " + render_double(p.f) + "\n";
        out += "DE_CR = " + render_double(p.cr) + "\n";
        out += "DE_STRATEGY = " + std::to_string(p.strategy) + "\n";
        if (p.alpha != 1.0) out += "ALPHA = " + render_double(p.alpha) + "\n";
        if (p.beta != 1.0) out += "BETA = " + render_double(p.beta) + "\n";
        if (p.gamma != 1.0) out += "GAMMA = " + render_double(p.gamma) + "\n";
        out += "}\n";
    }
    if (setup.pso_params) {
        const PSOParams& p = *setup.pso_params;
        out += "PSO_PARAM\n{\n";
        out += "PSO_NP = " + std::to_string(p.np) + "\n";
        out += "PSO_FES = " + std::to_string(p.fes) + "\n";
        out += "PSO_RUNS = " + std::to_string(p.runs) + "\n";
        out += "PSO_W = " + render_double(p.w) + "\n";
        out += "PSO_C1 = " + render_double(p.c1) + "\n";
        out += "PSO_C2 = " + render_double(p.c2) + "\n";
        if (p.alpha != 1.0) out += "ALPHA = " + render_double(p.alpha) + "\n";
        if (p.beta != 1.0) out += "BETA = " + render_double(p.beta) + "\n";
        if (p.gamma != 1.0) out += "GAMMA = " + render_double(p.gamma) + "\n";
        out += "}\n";
    }

    switch (setup.visualization) {
        case VisualChoice::None:
            out += "Visualisation = NONE\n";
            break;
        case VisualChoice::Flow:
            out += "Visualisation = FLOW\n";
            break;
        case VisualChoice::Metro:
            out += "Visualisation = METRO\n";
            break;
    }
    if (setup.flow_params) {
        out += "FLOW_PARAM\n{\n";
        out += "FLOW_M = " + std::to_string(setup.flow_params->m) + "\n";
        out += "}\n";
    }
    return out;
}

}  // namespace narm
