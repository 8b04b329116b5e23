// Copyright 2026 The CBGP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cbgp/evolve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace cbgp {

namespace {

// Stream labels for derive_seed.
constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kTestStream = 2;
constexpr std::uint64_t kInitStream = 3;
constexpr std::uint64_t kChildStream = 4;

}  // namespace

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  auto n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

std::vector<Case> training_cases(const Problem& problem, std::uint64_t seed, std::size_t n) {
  Rng rng(derive_seed(seed, {kTrainStream}));
  return generate_cases(problem, n, rng);
}

std::vector<Case> test_cases(const Problem& problem, std::uint64_t seed, std::size_t n) {
  Rng rng(derive_seed(seed, {kTestStream}));
  return generate_cases(problem, n, rng);
}

void validate(const EvolutionConfig& c) {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (c.population_size == 0) fail("population_size must be positive");
  if (!(c.umad_rate > 0.0 && c.umad_rate < 1.0)) fail("umad_rate must lie in (0, 1)");
  if (c.min_genome_size == 0 || c.max_genome_size < c.min_genome_size) {
    fail("genome size range must satisfy 1 <= min <= max");
  }
  if (c.train_cases == 0) fail("train_cases must be positive");
  if (c.limits.max_steps == 0 || c.limits.max_collection_size == 0) fail("limits must be positive");
  if (!(c.penalty > 0.0) || !std::isfinite(c.penalty)) fail("penalty must be positive and finite");
  if (c.threads == 0) fail("threads must be positive");
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      auto i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t lexicase_select(std::span<const Individual> population, Rng& rng) {
  if (population.empty()) throw std::invalid_argument("lexicase on an empty population");
  std::vector<std::size_t> candidates(population.size());
  std::iota(candidates.begin(), candidates.end(), 0);
  const std::size_t n_cases = population[0].errors.size();
  std::vector<std::size_t> cases(n_cases);
  std::iota(cases.begin(), cases.end(), 0);
  // Cases are drawn lazily; a partial Fisher-Yates shuffle.
  for (std::size_t k = 0; k < n_cases && candidates.size() > 1; ++k) {
    std::swap(cases[k], cases[k + rng.index(n_cases - k)]);
    const std::size_t c = cases[k];
    double best = population[candidates[0]].errors[c];
    for (auto i : candidates) best = std::min(best, population[i].errors[c]);
    std::erase_if(candidates, [&](std::size_t i) { return population[i].errors[c] != best; });
  }
  return candidates.size() == 1 ? candidates[0] : candidates[rng.index(candidates.size())];
}

Genome umad(const Genome& genome, double rate, const GeneticSource& source, Rng& rng) {
  Genome grown;
  grown.reserve(genome.size() + genome.size() / 4 + 2);
  if (genome.empty()) {
    if (rng.bernoulli(rate)) grown.push_back(source.sample(rng));
  }
  for (const auto& gene : genome) {
    if (rng.bernoulli(rate)) {
      Gene added = source.sample(rng);
      if (rng.bernoulli(0.5)) {
        grown.push_back(std::move(added));
        grown.push_back(gene);
      } else {
        grown.push_back(gene);
        grown.push_back(std::move(added));
      }
    } else {
      grown.push_back(gene);
    }
  }
  const double p_delete = rate / (1.0 + rate);
  Genome out;
  out.reserve(grown.size());
  for (auto& gene : grown) {
    if (!rng.bernoulli(p_delete)) out.push_back(std::move(gene));
  }
  return out;
}

std::vector<double> case_errors(const std::optional<Ast>& program, const Problem& problem,
                                std::span<const Case> cases, const EvalLimits& limits,
                                double penalty) {
  std::vector<double> errors(cases.size(), penalty);
  if (!program) return errors;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EvalResult r = eval(*program, cases[i].inputs, limits);
    if (!r.ok()) continue;
    double e = score(problem.metric, r.value(), cases[i].expected);
    errors[i] = std::isfinite(e) ? std::min(e, penalty) : penalty;
  }
  return errors;
}

Individual evaluate(Genome genome, const Problem& problem, std::span<const Case> cases,
                    const EvalLimits& limits, double penalty) {
  Individual ind;
  CompileTrace trace = compile_traced(genome, problem.signature);
  ind.genome = std::move(genome);
  ind.program = std::move(trace.program);
  ind.compiled = std::move(trace.stack);
  ind.errors = case_errors(ind.program, problem, cases, limits, penalty);
  ind.total_error = std::accumulate(ind.errors.begin(), ind.errors.end(), 0.0);
  return ind;
}

EvolutionResult run_evolution(const EvolutionConfig& config, const Problem& problem,
                              const GenerationObserver& observer) {
  validate(config);
  const std::vector<Case> train = training_cases(problem, config.seed, config.train_cases);
  const GeneticSource source =
      build_genetic_source(problem.source_spec(), FunctionRegistry::standard(), config.weights);

  std::vector<Genome> genomes(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    if (i < config.seed_genomes.size()) {
      genomes[i] = config.seed_genomes[i];
    } else {
      Rng rng(derive_seed(config.seed, {kInitStream, i}));
      genomes[i] = random_genome(source, config.min_genome_size, config.max_genome_size, rng);
    }
  }

  EvolutionResult result;
  std::vector<Individual> population(config.population_size);
  for (std::size_t gen = 0;; ++gen) {
    parallel_for(population.size(), config.threads, [&](std::size_t i) {
      population[i] = evaluate(std::move(genomes[i]), problem, train, config.limits, config.penalty);
    });

    GenerationStats stats;
    stats.generation = gen;
    std::vector<double> totals;
    double length = 0.0;
    for (const auto& ind : population) {
      totals.push_back(ind.total_error);
      length += static_cast<double>(ind.genome.size());
    }
    stats.best_total_error = *std::min_element(totals.begin(), totals.end());
    stats.median_total_error = median(totals);
    stats.mean_genome_length = length / static_cast<double>(population.size());
    result.generations.push_back(stats);
    if (observer) observer(stats, population);

    auto solved = std::find_if(population.begin(), population.end(), [](const Individual& ind) {
      return ind.program && ind.total_error == 0.0;
    });
    if (solved != population.end()) {
      auto test = test_cases(problem, config.seed, config.test_cases);
      auto errors = case_errors(solved->program, problem, test, config.limits, config.penalty);
      double test_error = std::accumulate(errors.begin(), errors.end(), 0.0);
      result.success = test_error == 0.0;
      result.solution_generation = gen;
      result.solution_genome = solved->genome;
      result.solution_program = to_source(*solved->program);
      result.solution_test_error = test_error;
      return result;
    }
    if (gen >= config.max_generations) return result;

    parallel_for(population.size(), config.threads, [&](std::size_t i) {
      Rng rng(derive_seed(config.seed, {kChildStream, gen, i}));
      const auto& parent = population[lexicase_select(population, rng)];
      genomes[i] = umad(parent.genome, config.umad_rate, source, rng);
    });
  }
}

}  // namespace cbgp
