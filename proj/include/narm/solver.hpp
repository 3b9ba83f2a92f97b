#pragma once

#include <cstdint>
#include <vector>

#include "narm/archive.hpp"
#include "narm/config.hpp"
#include "narm/dataset.hpp"
#include "narm/encoding.hpp"
#include "narm/metrics.hpp"
#include "narm/rng.hpp"

namespace narm {

struct Population {
    std::vector<Genome> genomes;
    std::vector<double> energies;
};

struct SolverRun {
    int run_index{};
    std::uint64_t seed{};
    std::size_t max_evaluations{};
    std::size_t evaluations_used{};
    Genome best_genome;
    double best_fitness{};
    std::vector<double> best_history;  // best-so-far after each evaluation
};

// decode -> score -> archive offer. Infeasible genomes score 0 and are never
// offered to the archive.
class RuleEvaluator {
public:
    RuleEvaluator(const TransactionDatabase& db, const FitnessWeights& weights)
        : db_(&db), layout_(db.features()), weights_(weights) {}

    double evaluate(const Genome& genome, Rng& rng, Archive& archive) const;

    const GenomeLayout& layout() const { return layout_; }

private:
    const TransactionDatabase* db_;
    GenomeLayout layout_;
    FitnessWeights weights_;
};

// np genomes with every gene drawn uniformly from [0, 1); energies are
// zeroed and assigned by the caller's evaluation sweep.
Population initialize_population(std::size_t np, std::size_t genome_length, Rng& rng);

// Classic ten-strategy DE trial generation. Strategies 1-5 are the
// exponential-crossover family (best/1, rand/1, rand-to-best/1, best/2,
// rand/2), strategies 6-10 their binomial counterparts. At least one gene is
// always taken from the mutant; every gene is clamped to [0, 1].
//
// Draw protocol (fixed, part of the reproducibility contract): the distinct
// sample indices first (rejection sampling via Rng::below), then the
// crossover start/forced index, then one uniform per crossover decision; a
// binomial pass draws one uniform per gene, including the forced one.
Genome de_generate_trial(const std::vector<Genome>& population, const Genome& best_genome,
                         std::size_t target, int strategy, double f, double cr, Rng& rng);

// Velocity/position update of one particle:
//   v <- clamp(w*v + c1*u1*(pbest - x) + c2*u2*(gbest - x), -1, 1)
//   x <- clamp(x + v, 0, 1)
// with fresh u1, u2 per gene (drawn in that order).
void pso_step_particle(Genome& position, Genome& velocity, const Genome& personal_best,
                       const Genome& global_best, double w, double c1, double c2, Rng& rng);

// Whole-swarm sweep of pso_step_particle, in particle order.
void pso_step(std::vector<Genome>& positions, std::vector<Genome>& velocities,
              const std::vector<Genome>& personal_bests, const Genome& global_best,
              double w, double c1, double c2, Rng& rng);

// Common solver contract: construction binds the problem, evolve launches
// one run. Runs reseed as base seed + run index and stop exactly when the
// evaluation budget is spent, mid-generation if needed.
class Solver {
public:
    Solver(const TransactionDatabase& db, const FitnessWeights& weights, std::uint64_t seed)
        : evaluator_(db, weights), base_seed_(seed) {}

    virtual ~Solver() = default;

    virtual SolverRun evolve(int run_index, std::size_t max_evaluations, Archive& archive) = 0;

    const RuleEvaluator& evaluator() const { return evaluator_; }

protected:
    RuleEvaluator evaluator_;
    std::uint64_t base_seed_;
};

class DifferentialEvolution final : public Solver {
public:
    DifferentialEvolution(const TransactionDatabase& db, const DEParams& params, std::uint64_t seed);

    SolverRun evolve(int run_index, std::size_t max_evaluations, Archive& archive) override;

private:
    DEParams params_;
};

class ParticleSwarm final : public Solver {
public:
    ParticleSwarm(const TransactionDatabase& db, const PSOParams& params, std::uint64_t seed);

    SolverRun evolve(int run_index, std::size_t max_evaluations, Archive& archive) override;

private:
    PSOParams params_;
};

}  // namespace narm
