#include "narm/solver.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace narm {

namespace {

constexpr double clamp01(double value) { return std::clamp(value, 0.0, 1.0); }

// Distinct non-target sample count per strategy variant (best/1, rand/1,
// rand-to-best/1, best/2, rand/2).
constexpr std::array<std::size_t, 5> kSampleCounts = {2, 3, 2, 4, 5};

}  // namespace

double RuleEvaluator::evaluate(const Genome& genome, Rng& rng, Archive& archive) const {
    const auto candidate = decode(genome, layout_, db_->features(), rng);
    if (!candidate) {
        return 0.0;
    }
    const RuleQuality quality = score_rule(*db_, candidate->antecedent, candidate->consequent, weights_);
    archive.consider(make_rule(*candidate, db_->features(), quality));
    return quality.fitness;
}

Population initialize_population(std::size_t np, std::size_t genome_length, Rng& rng) {
    Population population;
    population.genomes.resize(np);
    population.energies.assign(np, 0.0);
    for (Genome& genome : population.genomes) {
        genome.resize(genome_length);
        for (double& gene : genome) {
            gene = rng.uniform01();
        }
    }
    return population;
}

Genome de_generate_trial(const std::vector<Genome>& population, const Genome& best_genome,
                         std::size_t target, int strategy, double f, double cr, Rng& rng) {
    if (strategy < 1 || strategy > 10) {
        throw std::invalid_argument("DE strategy must be in [1, 10]");
    }
    const int variant = (strategy - 1) % 5;
    const bool exponential = strategy <= 5;
    const std::size_t np = population.size();
    const std::size_t sample_count = kSampleCounts[static_cast<std::size_t>(variant)];
    if (np < sample_count + 1) {
        throw std::invalid_argument("population too small for DE strategy " + std::to_string(strategy));
    }

    std::array<std::size_t, 5> r{};
    for (std::size_t k = 0; k < sample_count; ++k) {
        bool fresh = false;
        while (!fresh) {
            r[k] = rng.below(np);
            fresh = r[k] != target;
            for (std::size_t prev = 0; fresh && prev < k; ++prev) {
                fresh = r[k] != r[prev];
            }
        }
    }

    const Genome& base = population[target];
    auto mutant = [&](std::size_t n) {
        switch (variant) {
            case 0:
                return best_genome[n] + f * (population[r[0]][n] - population[r[1]][n]);
            case 1:
                return population[r[0]][n] + f * (population[r[1]][n] - population[r[2]][n]);
            case 2:
                return base[n] + f * (best_genome[n] - base[n]) +
                       f * (population[r[0]][n] - population[r[1]][n]);
            case 3:
                return best_genome[n] + f * (population[r[0]][n] + population[r[1]][n] -
                                             population[r[2]][n] - population[r[3]][n]);
            default:
                return population[r[4]][n] + f * (population[r[0]][n] + population[r[1]][n] -
                                                  population[r[2]][n] - population[r[3]][n]);
        }
    };

    const std::size_t length = base.size();
    Genome trial = base;
    if (exponential) {
        std::size_t n = rng.below(length);
        std::size_t copied = 0;
        do {
            trial[n] = clamp01(mutant(n));
            n = (n + 1) % length;
            ++copied;
        } while (copied < length && rng.uniform01() < cr);
    } else {
        const std::size_t forced = rng.below(length);
        for (std::size_t n = 0; n < length; ++n) {
            const double u = rng.uniform01();
            if (n == forced || u < cr) {
                trial[n] = clamp01(mutant(n));
            }
        }
    }
    return trial;
}

void pso_step_particle(Genome& position, Genome& velocity, const Genome& personal_best,
                       const Genome& global_best, double w, double c1, double c2, Rng& rng) {
    for (std::size_t n = 0; n < position.size(); ++n) {
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        double v = w * velocity[n] + c1 * u1 * (personal_best[n] - position[n]) +
                   c2 * u2 * (global_best[n] - position[n]);
        v = std::clamp(v, -1.0, 1.0);
        velocity[n] = v;
        position[n] = clamp01(position[n] + v);
    }
}

void pso_step(std::vector<Genome>& positions, std::vector<Genome>& velocities,
              const std::vector<Genome>& personal_bests, const Genome& global_best,
              double w, double c1, double c2, Rng& rng) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        pso_step_particle(positions[i], velocities[i], personal_bests[i], global_best, w, c1, c2, rng);
    }
}

DifferentialEvolution::DifferentialEvolution(const TransactionDatabase& db, const DEParams& params,
                                             std::uint64_t seed)
    : Solver(db, {params.alpha, params.beta, params.gamma}, seed), params_(params) {}

SolverRun DifferentialEvolution::evolve(int run_index, std::size_t max_evaluations, Archive& archive) {
    Rng rng(base_seed_ + static_cast<std::uint64_t>(run_index));
    const std::size_t np = static_cast<std::size_t>(params_.np);

    SolverRun run;
    run.run_index = run_index;
    run.seed = base_seed_ + static_cast<std::uint64_t>(run_index);
    run.max_evaluations = max_evaluations;
    run.best_history.reserve(max_evaluations);

    Population population = initialize_population(np, evaluator_.layout().genome_length(), rng);

    double best = -1.0;
    auto evaluate = [&](const Genome& genome) {
        const double energy = evaluator_.evaluate(genome, rng, archive);
        ++run.evaluations_used;
        if (energy > best) {
            best = energy;
            run.best_genome = genome;
        }
        run.best_history.push_back(best);
        return energy;
    };

    for (std::size_t i = 0; i < np && run.evaluations_used < max_evaluations; ++i) {
        population.energies[i] = evaluate(population.genomes[i]);
    }

    while (run.evaluations_used < max_evaluations) {
        for (std::size_t i = 0; i < np && run.evaluations_used < max_evaluations; ++i) {
            Genome trial = de_generate_trial(population.genomes, run.best_genome, i, params_.strategy,
                                             params_.f, params_.cr, rng);
            const double energy = evaluate(trial);
            if (energy >= population.energies[i]) {  // trial wins ties
                population.genomes[i] = std::move(trial);
                population.energies[i] = energy;
            }
        }
    }

    run.best_fitness = std::max(best, 0.0);
    return run;
}

ParticleSwarm::ParticleSwarm(const TransactionDatabase& db, const PSOParams& params, std::uint64_t seed)
    : Solver(db, {params.alpha, params.beta, params.gamma}, seed), params_(params) {}

SolverRun ParticleSwarm::evolve(int run_index, std::size_t max_evaluations, Archive& archive) {
    Rng rng(base_seed_ + static_cast<std::uint64_t>(run_index));
    const std::size_t np = static_cast<std::size_t>(params_.np);
    const std::size_t length = evaluator_.layout().genome_length();

    SolverRun run;
    run.run_index = run_index;
    run.seed = base_seed_ + static_cast<std::uint64_t>(run_index);
    run.max_evaluations = max_evaluations;
    run.best_history.reserve(max_evaluations);

    Population swarm = initialize_population(np, length, rng);
    std::vector<Genome> velocities(np, Genome(length, 0.0));

    double best = -1.0;
    auto evaluate = [&](const Genome& genome) {
        const double energy = evaluator_.evaluate(genome, rng, archive);
        ++run.evaluations_used;
        if (energy > best) {
            best = energy;
            run.best_genome = genome;
        }
        run.best_history.push_back(best);
        return energy;
    };

    for (std::size_t i = 0; i < np && run.evaluations_used < max_evaluations; ++i) {
        swarm.energies[i] = evaluate(swarm.genomes[i]);
    }
    std::vector<Genome> personal_bests = swarm.genomes;
    std::vector<double> personal_energies = swarm.energies;

    // run.best_genome doubles as the global best; it is updated inside
    // evaluate as soon as an improvement is seen.
    while (run.evaluations_used < max_evaluations) {
        for (std::size_t i = 0; i < np && run.evaluations_used < max_evaluations; ++i) {
            pso_step_particle(swarm.genomes[i], velocities[i], personal_bests[i], run.best_genome,
                              params_.w, params_.c1, params_.c2, rng);
            const double energy = evaluate(swarm.genomes[i]);
            swarm.energies[i] = energy;
            if (energy > personal_energies[i]) {
                personal_energies[i] = energy;
                personal_bests[i] = swarm.genomes[i];
            }
        }
    }

    run.best_fitness = std::max(best, 0.0);
    return run;
}

}  // namespace narm
