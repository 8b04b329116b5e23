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
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cbgp/evolve.hpp"

namespace cbgp {

/// Occurrence counts keyed by canonical type.
class TypeTally {
 public:
  void add(const Type& t, std::uint64_t n = 1);
  /// One occurrence per node of `ast`.
  void add_nodes(const Ast& ast);
  void merge(const TypeTally& other);

  std::size_t unique() const { return counts_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(const Type& t) const;
  /// Number of types occurring at least `threshold` times.
  std::size_t at_least(std::uint64_t threshold) const;
  /// Rendered type -> count, ordered by rendering.
  std::map<std::string, std::uint64_t> rendered() const;

 private:
  std::unordered_map<Type, std::uint64_t, TypeHash> counts_;
  std::uint64_t total_ = 0;
};

/// Tallies every node of every AST each individual left on its compile stack.
void tally_types(TypeTally& tally, std::span<const Individual> population);

struct RunResult {
  std::string problem;
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<std::size_t> solution_generation;
  std::optional<std::string> solution_text;
  std::optional<std::string> solution_genome;
  std::vector<GenerationStats> generations_log;
  TypeTally type_tally;
  EvolutionConfig config;
};

nlohmann::json to_json(const RunResult& r);

// ---------------------------------------------------------------------------
// Configuration

nlohmann::json config_to_json(const EvolutionConfig& c);
/// Overrides fields of `base` present in `j`. Throws std::invalid_argument on
/// unknown keys or malformed values.
EvolutionConfig config_from_json(const nlohmann::json& j, EvolutionConfig base = {});

struct ExperimentConfig {
  std::vector<std::string> problems;
  std::size_t runs_per_problem = 100;
  std::uint64_t base_seed = 1;
  /// Concurrent runs.
  std::size_t parallelism = 1;
  std::uint64_t type_threshold = 1000;
  EvolutionConfig evolution;
};

/// Keys: problems, runs_per_problem, seed, parallelism, type_threshold, plus
/// every evolution key at top level.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

/// Seed of run `index` of `problem` in an experiment.
std::uint64_t run_seed(std::uint64_t base_seed, std::string_view problem, std::size_t index);

// ---------------------------------------------------------------------------
// Runs

/// One evolutionary run with type tallying. When `log` is set, one JSON line
/// per generation is written to it, including wall-clock milliseconds.
RunResult run_one(const Problem& problem, const EvolutionConfig& config,
                  std::ostream* log = nullptr);

struct ProblemSummary {
  std::string problem;
  std::size_t runs = 0;
  std::size_t completed = 0;
  std::size_t successes = 0;
  double types_median = 0.0;
  double types_at_least_median = 0.0;
};

struct ExperimentReport {
  std::uint64_t type_threshold = 1000;
  std::vector<ProblemSummary> problems;
  /// Host-level failures, one message per failed run.
  std::vector<std::string> failures;
};

std::string report_csv(const ExperimentReport& r);
std::string report_markdown(const ExperimentReport& r);

/// Executes every run on a pool of `parallelism` workers. With a non-empty
/// `out_dir`, writes runs/<problem>-<i>.json, logs/<problem>-<i>.jsonl,
/// report.csv and report.md under it.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir = {},
                                std::ostream* progress = nullptr);

// ---------------------------------------------------------------------------
// Verification

enum class VerifyStatus { Pass, CompileFailed, TypecheckFailed, CaseErrors };

std::string_view to_string(VerifyStatus s);

struct VerifyReport {
  VerifyStatus status = VerifyStatus::Pass;
  std::optional<std::string> program;
  std::string detail;
  /// Total train + test error per seed.
  std::vector<std::pair<std::uint64_t, double>> seed_errors;

  bool passed() const { return status == VerifyStatus::Pass; }
};

/// Recompiles, re-typechecks, and scores on fresh train and test cases per
/// seed, using the same case streams as run_evolution with that seed.
VerifyReport verify_solution(const Problem& problem, const Genome& genome,
                             std::span<const std::uint64_t> seeds,
                             std::size_t n_train = 200, std::size_t n_test = 2000,
                             const EvalLimits& limits = {});

}  // namespace cbgp
