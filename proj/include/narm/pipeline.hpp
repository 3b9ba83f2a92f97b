#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace narm {

inline constexpr std::string_view kVersion = "0.1.0";

struct CliOptions {
    bool show_version{false};
    std::optional<std::string> setup_path;
    std::uint64_t seed{1};
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flags: -v | -s<file> (attached) | -s <file> (detached) | --seed <int>.
// Exactly one mode (version or setup) must be selected.
CliOptions parse_cli(std::span<const std::string> args);

std::string version_banner();

// Flow exports land next to the archive output: out/Abalone.txt ->
// out/Abalone_flow.csv.
std::filesystem::path flow_output_path(const std::filesystem::path& out_name);

// Full pipeline for one setup file: parse + validate the setup, load the
// period databases, optionally load the offline archive, mine when an
// algorithm is selected, save the archive, then run the visual guide.
// Progress goes to err; results go to files only.
void run_setup(const std::string& setup_path, std::uint64_t seed, std::ostream& err);

// Exit codes: 0 success, 1 pipeline error, 2 usage error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace narm
