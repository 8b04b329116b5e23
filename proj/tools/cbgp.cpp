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

// Command-line front end: run, experiment, verify, catalog, gen-cases.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "cbgp/runner.hpp"

namespace fs = std::filesystem;
using namespace cbgp;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

// Flags shared by `run` and `experiment`; unset ones leave the config alone.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> population;
  std::optional<std::size_t> generations;
  std::optional<double> umad_rate;
  std::optional<std::size_t> train_cases;
  std::optional<std::size_t> test_cases;
  std::optional<std::size_t> threads;
  std::string config;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON config file");
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--population", population, "Population size");
    app->add_option("--generations", generations, "Maximum generations");
    app->add_option("--umad-rate", umad_rate, "UMAD addition rate");
    app->add_option("--train-cases", train_cases, "Training cases per run");
    app->add_option("--test-cases", test_cases, "Unseen test cases per run");
    app->add_option("--threads", threads, "Evaluation threads per run");
  }

  void apply(EvolutionConfig& c) const {
    if (population) c.population_size = *population;
    if (generations) c.max_generations = *generations;
    if (umad_rate) c.umad_rate = *umad_rate;
    if (train_cases) c.train_cases = *train_cases;
    if (test_cases) c.test_cases = *test_cases;
    if (threads) c.threads = *threads;
  }
};

int cmd_run(const std::string& problem_name, const Overrides& o, const std::string& out_dir) {
  EvolutionConfig c;
  if (!o.config.empty()) {
    auto j = nlohmann::json::parse(read_file(o.config));
    j.erase("problems");
    j.erase("runs_per_problem");
    j.erase("parallelism");
    j.erase("type_threshold");
    c = config_from_json(j);
  }
  o.apply(c);
  if (o.seed) c.seed = *o.seed;
  const Problem& problem = find_problem(problem_name);

  std::ofstream log;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    log.open(fs::path(out_dir) / "log.jsonl", std::ios::binary);
  }
  RunResult r = run_one(problem, c, out_dir.empty() ? nullptr : &log);
  if (!out_dir.empty()) {
    write_output((fs::path(out_dir) / "run.json").string(), to_json(r).dump(2) + "\n");
  }
  fmt::print("problem: {}\nseed: {}\nsuccess: {}\ngenerations: {}\nunique types: {}\n", r.problem,
             r.seed, r.success, r.generations_log.size(), r.type_tally.unique());
  if (r.solution_text) fmt::print("solution: {}\n", *r.solution_text);
  return 0;
}

int cmd_experiment(const std::vector<std::string>& problems, std::optional<std::size_t> runs,
                   std::optional<std::size_t> parallelism, const Overrides& o,
                   const std::string& out_dir) {
  ExperimentConfig e;
  if (!o.config.empty()) e = experiment_config_from_json(nlohmann::json::parse(read_file(o.config)));
  if (!problems.empty()) e.problems = problems;
  if (runs) e.runs_per_problem = *runs;
  if (parallelism) e.parallelism = *parallelism;
  if (o.seed) e.base_seed = *o.seed;
  o.apply(e.evolution);
  if (e.problems.empty()) {
    for (const auto& p : all_problems()) e.problems.push_back(p.name);
  }
  ExperimentReport report = run_experiment(e, out_dir, &std::cerr);
  std::cout << report_markdown(report);
  for (const auto& f : report.failures) std::cerr << "warning: run failed: " << f << '\n';
  const std::size_t total = e.problems.size() * e.runs_per_problem;
  return total > 0 && report.failures.size() == total ? 1 : 0;
}

int cmd_verify(const std::string& problem_name, const std::string& genome_path,
               std::vector<std::uint64_t> seeds, std::size_t n_train, std::size_t n_test) {
  const Problem& problem = find_problem(problem_name);
  Genome genome = genome_path.empty() ? problem.reference() : parse_genome(read_file(genome_path));
  if (seeds.empty()) seeds = {1, 2, 3, 4, 5};
  VerifyReport rep = verify_solution(problem, genome, seeds, n_train, n_test);
  fmt::print("status: {}\n", to_string(rep.status));
  if (rep.program) fmt::print("program: {}\n", *rep.program);
  for (const auto& [seed, err] : rep.seed_errors) fmt::print("seed {}: total error {}\n", seed, err);
  if (!rep.detail.empty()) fmt::print("detail: {}\n", rep.detail);
  return rep.passed() ? 0 : 1;
}

int cmd_gen_cases(const std::string& problem_name, std::uint64_t seed, std::size_t count,
                  const std::string& split, const std::string& out) {
  const Problem& problem = find_problem(problem_name);
  auto cases = split == "test" ? test_cases(problem, seed, count)
                               : training_cases(problem, seed, count);
  std::string text;
  for (const auto& c : cases) text += case_to_json_line(c) + "\n";
  write_output(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Code-building genetic programming with polymorphic types"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one evolutionary search");
  std::string run_problem, run_out;
  Overrides run_o;
  run->add_option("--problem", run_problem, "Benchmark problem")->required();
  run->add_option("--out-dir", run_out, "Directory for run.json and log.jsonl");
  run_o.attach(run);

  auto* exp = app.add_subcommand("experiment", "Run many searches and report");
  std::vector<std::string> exp_problems;
  std::optional<std::size_t> exp_runs, exp_par;
  std::string exp_out;
  Overrides exp_o;
  exp->add_option("--problem", exp_problems, "Problems (repeatable; default all)");
  exp->add_option("--runs", exp_runs, "Runs per problem");
  exp->add_option("--parallelism", exp_par, "Concurrent runs");
  exp->add_option("--out-dir", exp_out, "Directory for run files and reports");
  exp_o.attach(exp);

  auto* ver = app.add_subcommand("verify", "Re-check a genome on fresh cases");
  std::string ver_problem, ver_genome;
  std::vector<std::uint64_t> ver_seeds;
  std::size_t ver_train = 200, ver_test = 2000;
  ver->add_option("--problem", ver_problem, "Benchmark problem")->required();
  ver->add_option("--genome", ver_genome, "Genome file, '-' for stdin (default: reference)");
  ver->add_option("--seed", ver_seeds, "Case seeds (repeatable; default 1..5)");
  ver->add_option("--train-cases", ver_train, "Training cases per seed");
  ver->add_option("--test-cases", ver_test, "Test cases per seed");

  auto* cat = app.add_subcommand("catalog", "Print the function catalog as Markdown");
  std::string cat_out;
  cat->add_option("--out", cat_out, "Output file (default stdout)");

  auto* gen = app.add_subcommand("gen-cases", "Dump generated cases as JSON lines");
  std::string gen_problem, gen_out, gen_split = "train";
  std::uint64_t gen_seed = 1;
  std::size_t gen_count = 200;
  gen->add_option("--problem", gen_problem, "Benchmark problem")->required();
  gen->add_option("--seed", gen_seed, "Run seed");
  gen->add_option("--count", gen_count, "Number of cases");
  gen->add_option("--split", gen_split, "train or test")->check(CLI::IsMember({"train", "test"}));
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_problem, run_o, run_out);
    if (*exp) return cmd_experiment(exp_problems, exp_runs, exp_par, exp_o, exp_out);
    if (*ver) return cmd_verify(ver_problem, ver_genome, ver_seeds, ver_train, ver_test);
    if (*cat) {
      write_output(cat_out, catalog_markdown(FunctionRegistry::standard()));
      return 0;
    }
    if (*gen) return cmd_gen_cases(gen_problem, gen_seed, gen_count, gen_split, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
