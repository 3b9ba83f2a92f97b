#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace narm {

enum class AlgorithmChoice { None, DE, PSO };
enum class VisualChoice { None, Flow, Metro };

struct ProblemSpec {
    std::string tdbase_name;
    std::string rule_name;  // optional offline rule archive; empty = none
    std::string out_name;
    int period{1};

    bool operator==(const ProblemSpec&) const = default;
};

struct DEParams {
    int np{};
    int fes{};
    int runs{};
    double f{};
    double cr{};
    int strategy{};
    double alpha{1.0};
    double beta{1.0};
    double gamma{1.0};

    bool operator==(const DEParams&) const = default;
};

struct PSOParams {
    int np{};
    int fes{};
    int runs{};
    double w{};
    double c1{};
    double c2{};
    double alpha{1.0};
    double beta{1.0};
    double gamma{1.0};

    bool operator==(const PSOParams&) const = default;
};

struct FlowParams {
    int m{};

    bool operator==(const FlowParams&) const = default;
};

struct Setup {
    ProblemSpec problem;
    AlgorithmChoice algorithm{AlgorithmChoice::None};
    std::optional<DEParams> de_params;
    std::optional<PSOParams> pso_params;
    VisualChoice visualization{VisualChoice::None};
    std::optional<FlowParams> flow_params;

    bool operator==(const Setup&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    enum class Kind {
        Syntax,
        UnknownKey,
        UnknownBlock,
        MissingKey,
        MissingBlock,
        Type,
        Range,
        NothingToDo,
    };

    ConfigError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Parses the block-structured setup grammar:
//
//   % comment
//   Problem
//   {
//   Tdbase_name = <path>
//   Rule_name = <path>
//   Out_name = <path>
//   Period = <int>
//   }
//   Algorithm = NONE | DE | PSO
//   DE_PARAM { DE_NP DE_FES DE_RUNS DE_F DE_CR DE_STRATEGY [ALPHA BETA GAMMA] }
//   PSO_PARAM { PSO_NP PSO_FES PSO_RUNS PSO_W PSO_C1 PSO_C2 [ALPHA BETA GAMMA] }
//   Visualisation = NONE | FLOW | METRO
//   FLOW_PARAM { FLOW_M = <int> }
//
// The opening brace may sit on the block-name line or on the next line.
// Keys are case-sensitive; block order is irrelevant. Unknown keys inside a
// recognized block and unrecognized blocks are rejected.
Setup parse_setup(std::string_view text);

// Checks every numeric-range invariant and returns the argument unchanged.
// Throws ConfigError{Range} naming the offending key.
const Setup& validate_setup(const Setup& setup);

// Canonical text form; parse_setup(render_setup(s)) == s.
std::string render_setup(const Setup& setup);

}  // namespace narm
