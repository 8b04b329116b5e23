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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbgp/compiler.hpp"
#include "cbgp/genome.hpp"
#include "cbgp/interp.hpp"
#include "cbgp/problems.hpp"
#include "cbgp/rng.hpp"

namespace cbgp {

struct Individual {
  Genome genome;
  std::optional<Ast> program;
  /// Every AST left on the compile stack, program included.
  std::vector<Ast> compiled;
  std::vector<double> errors;
  double total_error = 0.0;
};

struct EvolutionConfig {
  std::size_t population_size = 1000;
  std::size_t max_generations = 300;
  double umad_rate = 0.1;
  std::size_t min_genome_size = 50;
  std::size_t max_genome_size = 250;
  std::size_t train_cases = 200;
  std::size_t test_cases = 2000;
  std::uint64_t seed = 1;
  EvalLimits limits;
  double penalty = kDefaultPenalty;
  SourceWeights weights;
  /// Worker threads for fitness evaluation.
  std::size_t threads = 1;
  /// Placed at the front of the initial population.
  std::vector<Genome> seed_genomes;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const EvolutionConfig& config);

/// Index of the individual chosen by lexicase selection: cases are visited in
/// random order, keeping only the candidates with the lowest error on each,
/// and remaining ties are broken uniformly.
std::size_t lexicase_select(std::span<const Individual> population, Rng& rng);

/// Uniform mutation by addition and deletion. Each gene gains a new
/// neighbour (before or after, by coin flip) with probability `rate`; then
/// each gene is deleted with probability rate / (1 + rate). An empty genome
/// has a single insertion point.
Genome umad(const Genome& genome, double rate, const GeneticSource& source, Rng& rng);

/// Compiles once and scores every case. Faulting cases and uncompilable
/// genomes get `penalty`; metric values are clamped to it.
Individual evaluate(Genome genome, const Problem& problem, std::span<const Case> cases,
                    const EvalLimits& limits, double penalty);

/// Error vector of an already compiled program.
std::vector<double> case_errors(const std::optional<Ast>& program, const Problem& problem,
                                std::span<const Case> cases, const EvalLimits& limits,
                                double penalty);

struct GenerationStats {
  std::size_t generation = 0;
  double best_total_error = 0.0;
  double median_total_error = 0.0;
  double mean_genome_length = 0.0;
};

struct EvolutionResult {
  bool success = false;
  /// Generation of the first individual with zero training error.
  std::optional<std::size_t> solution_generation;
  std::optional<Genome> solution_genome;
  std::optional<std::string> solution_program;
  /// Total error of the training solution on the unseen test cases.
  std::optional<double> solution_test_error;
  std::vector<GenerationStats> generations;
};

/// Called once per generation after evaluation.
using GenerationObserver =
    std::function<void(const GenerationStats&, std::span<const Individual>)>;

EvolutionResult run_evolution(const EvolutionConfig& config, const Problem& problem,
                              const GenerationObserver& observer = {});

/// Training and test cases of a run with the given seed.
std::vector<Case> training_cases(const Problem& problem, std::uint64_t seed, std::size_t n);
std::vector<Case> test_cases(const Problem& problem, std::uint64_t seed, std::size_t n);

/// Median of a sample; 0 for an empty one.
double median(std::vector<double> xs);

/// Runs `fn(i)` for every i in [0, n) on up to `threads` threads.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace cbgp
