#include "narm/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include "narm/archive.hpp"
#include "narm/config.hpp"
#include "narm/dataset.hpp"
#include "narm/solver.hpp"
#include "narm/visualguide.hpp"

namespace narm {

namespace {

std::uint64_t parse_seed(const std::string& value) {
    std::uint64_t out = 0;
    auto result = std::from_chars(value.data(), value.data() + value.size(), out);
    if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
        throw UsageError("--seed expects a non-negative integer, got '" + value + "'");
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open setup file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

CliOptions parse_cli(std::span<const std::string> args) {
    CliOptions options;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg == "-v") {
            options.show_version = true;
        } else if (arg == "--seed") {
            if (i + 1 >= args.size()) {
                throw UsageError("--seed expects a value");
            }
            options.seed = parse_seed(args[++i]);
        } else if (arg == "-s") {
            if (i + 1 >= args.size()) {
                throw UsageError("-s expects a setup file");
            }
            options.setup_path = args[++i];
        } else if (arg.starts_with("-s")) {
            options.setup_path = arg.substr(2);
        } else {
            throw UsageError("unknown argument '" + arg + "'");
        }
    }
    if (options.show_version && options.setup_path) {
        throw UsageError("choose either -v or -s<file>, not both");
    }
    if (!options.show_version && !options.setup_path) {
        throw UsageError("no mode selected; pass -v or -s<file>");
    }
    return options;
}

std::string version_banner() {
    std::string out;
    out += "narmkit ";
    out += kVersion;
    out += "\nnumerical association rule mining with population-based optimizers\n";
    out += "\n";
    out += "usage:\n";
    out += "  narmkit -v\n";
    out += "  narmkit -s<setup-file> [--seed <n>]\n";
    out += "\n";
    out += "options:\n";
    out += "  -v            print version and option summary\n";
    out += "  -s<file>      run the pipeline described by the setup file\n";
    out += "                (attached -sarm.set or detached -s arm.set)\n";
    out += "  --seed <n>    seed for the random stream (default 1)\n";
    return out;
}

std::filesystem::path flow_output_path(const std::filesystem::path& out_name) {
    std::filesystem::path flow = out_name;
    flow.replace_filename(out_name.stem().string() + "_flow.csv");
    return flow;
}

void run_setup(const std::string& setup_path, std::uint64_t seed, std::ostream& err) {
    const Setup setup = validate_setup(parse_setup(read_file(setup_path)));

    const std::vector<TransactionDatabase> databases =
        load_periods(setup.problem.tdbase_name, setup.problem.period);
    for (std::size_t i = 0; i < databases.size(); ++i) {
        err << "loaded " << setup.problem.tdbase_name << " period " << (i + 1) << ": "
            << databases[i].row_count() << " transactions, " << databases[i].feature_count()
            << " features\n";
    }

    Archive archive;
    if (!setup.problem.rule_name.empty() && std::filesystem::exists(setup.problem.rule_name)) {
        archive = Archive::load(setup.problem.rule_name);
        err << "loaded " << archive.size() << " offline rules from " << setup.problem.rule_name << "\n";
    }

    if (setup.algorithm != AlgorithmChoice::None) {
        // Mining operates on the first period's database.
        const TransactionDatabase& db = databases.front();
        std::unique_ptr<Solver> solver;
        int runs = 0;
        std::size_t budget = 0;
        if (setup.algorithm == AlgorithmChoice::DE) {
            solver = std::make_unique<DifferentialEvolution>(db, *setup.de_params, seed);
            runs = setup.de_params->runs;
            budget = static_cast<std::size_t>(setup.de_params->fes);
        } else {
            solver = std::make_unique<ParticleSwarm>(db, *setup.pso_params, seed);
            runs = setup.pso_params->runs;
            budget = static_cast<std::size_t>(setup.pso_params->fes);
        }
        for (int run = 0; run < runs; ++run) {
            const SolverRun result = solver->evolve(run, budget, archive);
            char best[32];
            std::snprintf(best, sizeof(best), "%.4f", result.best_fitness);
            err << "run " << run << ": best fitness " << best << ", archive " << archive.size()
                << " rules (" << result.evaluations_used << " evaluations)\n";
        }
    }

    archive.save(setup.problem.out_name);
    err << "wrote " << setup.problem.out_name << " (" << archive.size() << " rules)\n";

    if (setup.visualization == VisualChoice::Flow) {
        const std::vector<Rule> selected =
            select_similar(archive, static_cast<std::size_t>(setup.flow_params->m));
        const std::filesystem::path flow_path = flow_output_path(setup.problem.out_name);
        emit_flow(selected, flow_path);
        err << "wrote " << flow_path.string() << " (" << selected.size() << " rules)\n";
    } else if (setup.visualization == VisualChoice::Metro) {
        throw VisualGuideError(VisualGuideError::Kind::NotImplemented,
                               "METRO visualization is not implemented; use FLOW or NONE");
    }
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CliOptions options;
    try {
        options = parse_cli(args);
    } catch (const UsageError& error) {
        err << "usage error: " << error.what() << "\n\n" << version_banner();
        return 2;
    }

    if (options.show_version) {
        out << version_banner();
        return 0;
    }

    try {
        run_setup(*options.setup_path, options.seed, err);
    } catch (const std::exception& error) {
        err << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace narm
