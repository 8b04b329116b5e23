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

#include "cbgp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

namespace cbgp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Type tally

void TypeTally::add(const Type& t, std::uint64_t n) {
  counts_[t.has_vars() ? canonicalize(t) : t] += n;
  total_ += n;
}

void TypeTally::add_nodes(const Ast& ast) {
  for_each_node(ast, [&](const AstNode& node) { add(node.type); });
}

void TypeTally::merge(const TypeTally& other) {
  for (const auto& [t, n] : other.counts_) add(t, n);
}

std::uint64_t TypeTally::count(const Type& t) const {
  auto it = counts_.find(canonicalize(t));
  return it == counts_.end() ? 0 : it->second;
}

std::size_t TypeTally::at_least(std::uint64_t threshold) const {
  return static_cast<std::size_t>(std::count_if(
      counts_.begin(), counts_.end(), [&](const auto& kv) { return kv.second >= threshold; }));
}

std::map<std::string, std::uint64_t> TypeTally::rendered() const {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [t, n] : counts_) out[to_string(t)] += n;
  return out;
}

void tally_types(TypeTally& tally, std::span<const Individual> population) {
  for (const auto& ind : population) {
    for (const auto& ast : ind.compiled) tally.add_nodes(ast);
  }
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

json weights_to_json(const SourceWeights& w) {
  return json{{"per_entry", w.per_entry},
              {"function", w.function},
              {"input", w.input},
              {"constant", w.constant},
              {"erc", w.erc},
              {"apply", w.apply},
              {"abstraction", w.abstraction},
              {"let", w.let},
              {"local", w.local},
              {"max_abstraction_arity", w.max_abstraction_arity},
              {"local_indices", w.local_indices}};
}

[[noreturn]] void bad_key(const std::string& where, const std::string& key) {
  throw std::invalid_argument(fmt::format("unknown {} key '{}'", where, key));
}

SourceWeights weights_from_json(const json& j, SourceWeights w) {
  for (const auto& [key, v] : j.items()) {
    if (key == "per_entry") w.per_entry = v.get<bool>();
    else if (key == "function") w.function = v.get<double>();
    else if (key == "input") w.input = v.get<double>();
    else if (key == "constant") w.constant = v.get<double>();
    else if (key == "erc") w.erc = v.get<double>();
    else if (key == "apply") w.apply = v.get<double>();
    else if (key == "abstraction") w.abstraction = v.get<double>();
    else if (key == "let") w.let = v.get<double>();
    else if (key == "local") w.local = v.get<double>();
    else if (key == "max_abstraction_arity") w.max_abstraction_arity = v.get<std::uint32_t>();
    else if (key == "local_indices") w.local_indices = v.get<std::uint32_t>();
    else bad_key("weights", key);
  }
  return w;
}

}  // namespace

json config_to_json(const EvolutionConfig& c) {
  json seeds = json::array();
  for (const auto& g : c.seed_genomes) seeds.push_back(serialize_genome(g));
  return json{{"population_size", c.population_size},
              {"max_generations", c.max_generations},
              {"umad_rate", c.umad_rate},
              {"genome_size", {c.min_genome_size, c.max_genome_size}},
              {"train_cases", c.train_cases},
              {"test_cases", c.test_cases},
              {"seed", c.seed},
              {"limits",
               {{"max_steps", c.limits.max_steps},
                {"max_collection_size", c.limits.max_collection_size}}},
              {"penalty", c.penalty},
              {"weights", weights_to_json(c.weights)},
              {"threads", c.threads},
              {"seed_genomes", seeds}};
}

EvolutionConfig config_from_json(const json& j, EvolutionConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "population_size") c.population_size = v.get<std::size_t>();
      else if (key == "max_generations") c.max_generations = v.get<std::size_t>();
      else if (key == "umad_rate") c.umad_rate = v.get<double>();
      else if (key == "genome_size") {
        auto range = v.get<std::vector<std::size_t>>();
        if (range.size() != 2) throw std::invalid_argument("genome_size must be [min, max]");
        c.min_genome_size = range[0];
        c.max_genome_size = range[1];
      } else if (key == "train_cases") c.train_cases = v.get<std::size_t>();
      else if (key == "test_cases") c.test_cases = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "limits") {
        for (const auto& [lk, lv] : v.items()) {
          if (lk == "max_steps") c.limits.max_steps = lv.get<std::uint64_t>();
          else if (lk == "max_collection_size") c.limits.max_collection_size = lv.get<std::size_t>();
          else bad_key("limits", lk);
        }
      } else if (key == "penalty") c.penalty = v.get<double>();
      else if (key == "weights") c.weights = weights_from_json(v, c.weights);
      else if (key == "threads") c.threads = v.get<std::size_t>();
      else if (key == "seed_genomes") {
        c.seed_genomes.clear();
        for (const auto& g : v) c.seed_genomes.push_back(parse_genome(g.get<std::string>()));
      } else bad_key("config", key);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("malformed config: {}", e.what()));
  }
  return c;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig e;
  json rest = json::object();
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "problems") e.problems = v.get<std::vector<std::string>>();
      else if (key == "runs_per_problem") e.runs_per_problem = v.get<std::size_t>();
      else if (key == "seed") e.base_seed = v.get<std::uint64_t>();
      else if (key == "parallelism") e.parallelism = v.get<std::size_t>();
      else if (key == "type_threshold") e.type_threshold = v.get<std::uint64_t>();
      else rest[key] = v;
    }
  } catch (const json::exception& ex) {
    throw std::invalid_argument(fmt::format("malformed config: {}", ex.what()));
  }
  e.evolution = config_from_json(rest);
  return e;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view problem, std::size_t index) {
  // FNV-1a keeps seeds stable across standard library implementations.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : problem) h = (h ^ ch) * 0x100000001b3ULL;
  return derive_seed(base_seed, {h, index});
}

// ---------------------------------------------------------------------------
// Runs

json to_json(const RunResult& r) {
  json gens = json::array();
  for (const auto& g : r.generations_log) {
    gens.push_back({{"generation", g.generation},
                    {"best_total_error", g.best_total_error},
                    {"median_total_error", g.median_total_error},
                    {"mean_genome_length", g.mean_genome_length}});
  }
  auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
  return json{{"problem", r.problem},
              {"seed", r.seed},
              {"success", r.success},
              {"solution_generation", opt(r.solution_generation)},
              {"solution_text", opt(r.solution_text)},
              {"solution_genome", opt(r.solution_genome)},
              {"generations_log", gens},
              {"unique_types", r.type_tally.unique()},
              {"type_tally", r.type_tally.rendered()},
              {"config", config_to_json(r.config)}};
}

RunResult run_one(const Problem& problem, const EvolutionConfig& config, std::ostream* log) {
  RunResult r;
  r.problem = problem.name;
  r.seed = config.seed;
  r.config = config;
  const auto start = std::chrono::steady_clock::now();
  auto observer = [&](const GenerationStats& s, std::span<const Individual> population) {
    tally_types(r.type_tally, population);
    if (!log) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    *log << json{{"generation", s.generation},
                 {"best_total_error", s.best_total_error},
                 {"median_total_error", s.median_total_error},
                 {"mean_genome_length", s.mean_genome_length},
                 {"unique_types", r.type_tally.unique()},
                 {"wall_ms", ms}}
                .dump()
         << '\n';
  };
  EvolutionResult evo = run_evolution(config, problem, observer);
  r.success = evo.success;
  r.solution_generation = evo.solution_generation;
  r.solution_text = evo.solution_program;
  if (evo.solution_genome) r.solution_genome = serialize_genome(*evo.solution_genome);
  r.generations_log = std::move(evo.generations);

  if (r.success) {
    const std::uint64_t seeds[] = {config.seed};
    auto check = verify_solution(problem, *evo.solution_genome, seeds, config.train_cases,
                                 config.test_cases, config.limits);
    if (!check.passed()) {
      throw std::logic_error(fmt::format("{} seed {}: solution failed re-verification: {}",
                                         problem.name, config.seed, check.detail));
    }
  }
  return r;
}

namespace {

std::string format_median(double x) {
  return x == std::floor(x) ? fmt::format("{:.0f}", x) : fmt::format("{:.1f}", x);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
}

}  // namespace

std::string report_csv(const ExperimentReport& r) {
  std::string out = fmt::format("problem,succ,types_median,types_ge_{}_median\n", r.type_threshold);
  for (const auto& p : r.problems) {
    out += fmt::format("{},{},{},{}\n", p.problem, p.successes, format_median(p.types_median),
                       format_median(p.types_at_least_median));
  }
  return out;
}

std::string report_markdown(const ExperimentReport& r) {
  std::string out = fmt::format("| Problem | Succ | Runs | Types | Types >= {} |\n",
                                r.type_threshold);
  out += "|---|---:|---:|---:|---:|\n";
  for (const auto& p : r.problems) {
    out += fmt::format("| {} | {} | {} | {} | {} |\n", p.problem, p.successes, p.completed,
                       format_median(p.types_median), format_median(p.types_at_least_median));
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir, std::ostream* progress) {
  validate(config.evolution);
  if (config.parallelism == 0) throw std::invalid_argument("parallelism must be positive");
  for (const auto& name : config.problems) find_problem(name);

  struct Job {
    std::string problem;
    std::size_t index;
  };
  std::vector<Job> jobs;
  if (config.runs_per_problem > 0) {
    for (const auto& name : config.problems) {
      for (std::size_t i = 0; i < config.runs_per_problem; ++i) jobs.push_back({name, i});
    }
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir / "runs");
    std::filesystem::create_directories(out_dir / "logs");
  }

  struct Outcome {
    bool ok = false;
    bool success = false;
    double unique = 0.0;
    double at_least = 0.0;
    std::string error;
  };
  std::vector<Outcome> outcomes(jobs.size());
  std::mutex progress_mutex;

  parallel_for(jobs.size(), config.parallelism, [&](std::size_t k) {
    const Job& job = jobs[k];
    EvolutionConfig evo = config.evolution;
    evo.seed = run_seed(config.base_seed, job.problem, job.index);
    if (config.parallelism > 1) evo.threads = 1;
    const std::string stem = fmt::format("{}-{}", job.problem, job.index);
    Outcome& o = outcomes[k];
    try {
      std::ofstream log;
      if (!out_dir.empty()) log.open(out_dir / "logs" / (stem + ".jsonl"), std::ios::binary);
      RunResult r = run_one(find_problem(job.problem), evo, out_dir.empty() ? nullptr : &log);
      if (!out_dir.empty()) write_file(out_dir / "runs" / (stem + ".json"), to_json(r).dump(2) + "\n");
      o.ok = true;
      o.success = r.success;
      o.unique = static_cast<double>(r.type_tally.unique());
      o.at_least = static_cast<double>(r.type_tally.at_least(config.type_threshold));
    } catch (const std::exception& e) {
      o.error = fmt::format("{}: {}", stem, e.what());
    }
    if (progress) {
      std::lock_guard lock(progress_mutex);
      *progress << fmt::format("{} {}\n", stem,
                               !o.ok ? "FAILED: " + o.error : (o.success ? "success" : "no solution"));
    }
  });

  ExperimentReport report;
  report.type_threshold = config.type_threshold;
  for (const auto& name : config.problems) {
    if (config.runs_per_problem == 0) break;
    ProblemSummary s;
    s.problem = name;
    std::vector<double> unique, at_least;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      if (jobs[k].problem != name) continue;
      ++s.runs;
      const Outcome& o = outcomes[k];
      if (!o.ok) {
        report.failures.push_back(o.error);
        continue;
      }
      ++s.completed;
      s.successes += o.success ? 1 : 0;
      unique.push_back(o.unique);
      at_least.push_back(o.at_least);
    }
    s.types_median = median(unique);
    s.types_at_least_median = median(at_least);
    report.problems.push_back(s);
  }
  if (!out_dir.empty()) {
    write_file(out_dir / "report.csv", report_csv(report));
    write_file(out_dir / "report.md", report_markdown(report));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Verification

std::string_view to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Pass: return "pass";
    case VerifyStatus::CompileFailed: return "compile-failed";
    case VerifyStatus::TypecheckFailed: return "typecheck-failed";
    case VerifyStatus::CaseErrors: return "case-errors";
  }
  return "?";
}

VerifyReport verify_solution(const Problem& problem, const Genome& genome,
                             std::span<const std::uint64_t> seeds, std::size_t n_train,
                             std::size_t n_test, const EvalLimits& limits) {
  VerifyReport rep;
  auto program = compile(genome, problem.signature);
  if (!program) {
    rep.status = VerifyStatus::CompileFailed;
    rep.detail = "compilation produced no program";
    return rep;
  }
  rep.program = to_source(*program);

  std::vector<TypeVar> sig_vars;
  for (const auto& t : problem.signature.inputs) {
    for (auto v : free_vars(t)) sig_vars.push_back(v);
  }
  for (auto v : free_vars(problem.signature.output)) sig_vars.push_back(v);
  try {
    Type inferred = typecheck(*program, problem.signature.inputs);
    if (!unify(inferred, problem.signature.output, RigidVars(sig_vars))) {
      rep.status = VerifyStatus::TypecheckFailed;
      rep.detail = fmt::format("inferred {} does not match output {}", to_string(inferred),
                               to_string(problem.signature.output));
      return rep;
    }
  } catch (const TypeError& e) {
    rep.status = VerifyStatus::TypecheckFailed;
    rep.detail = e.what();
    return rep;
  }

  for (auto seed : seeds) {
    double total = 0.0;
    std::size_t failing = 0;
    for (const auto& cases : {training_cases(problem, seed, n_train),
                              test_cases(problem, seed, n_test)}) {
      auto errors = case_errors(program, problem, cases, limits, kDefaultPenalty);
      for (double e : errors) {
        total += e;
        failing += e != 0.0 ? 1 : 0;
      }
    }
    rep.seed_errors.emplace_back(seed, total);
    if (failing > 0 && rep.status == VerifyStatus::Pass) {
      rep.status = VerifyStatus::CaseErrors;
      rep.detail = fmt::format("seed {}: {} of {} cases wrong, total error {}", seed, failing,
                               n_train + n_test, total);
    }
  }
  return rep;
}

}  // namespace cbgp
