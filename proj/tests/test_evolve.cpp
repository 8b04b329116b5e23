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

#include <doctest.h>

#include <cmath>

#include "cbgp/evolve.hpp"

using namespace cbgp;

namespace {

Individual with_errors(std::vector<double> e) {
  Individual ind;
  ind.errors = std::move(e);
  for (double x : ind.errors) ind.total_error += x;
  return ind;
}

GeneticSource tiny_source() {
  GeneticSource src;
  src.add(ApplyGene{}, 1.0);
  return src;
}

}  // namespace

TEST_SUITE("evolve") {

TEST_CASE("lexicase on a single individual") {
  std::vector<Individual> pop{with_errors({3, 4})};
  Rng rng(1);
  for (int i = 0; i < 10; ++i) CHECK(lexicase_select(pop, rng) == 0);
}

TEST_CASE("a dominating individual is always selected") {
  Rng rng(2);
  std::vector<Individual> pop{with_errors({2, 2, 2}), with_errors({1, 1, 1}),
                              with_errors({1, 3, 5}), with_errors({5, 1, 2})};
  for (int i = 0; i < 10000; ++i) REQUIRE(lexicase_select(pop, rng) == 1);
  // Weak dominance with a tie on some cases.
  std::vector<Individual> weak{with_errors({0, 1}), with_errors({0, 2}), with_errors({1, 1})};
  for (int i = 0; i < 10000; ++i) REQUIRE(lexicase_select(weak, rng) == 0);
}

TEST_CASE("symmetric individuals split evenly") {
  // Either case order leaves exactly one survivor, so each wins half the time.
  std::vector<Individual> pop{with_errors({0, 1}), with_errors({1, 0})};
  Rng rng(3);
  const int n = 100000;
  int a = 0;
  for (int i = 0; i < n; ++i) a += lexicase_select(pop, rng) == 0 ? 1 : 0;
  CHECK(static_cast<double>(a) / n == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("ties after all cases are broken uniformly") {
  std::vector<Individual> pop{with_errors({1, 1}), with_errors({1, 1}), with_errors({1, 1}),
                              with_errors({2, 0})};
  Rng rng(4);
  std::vector<int> hits(4);
  const int n = 90000;
  for (int i = 0; i < n; ++i) ++hits[lexicase_select(pop, rng)];
  // Case 0 first (p=1/2): uniform over the three ties. Case 1 first: individual 3.
  for (int k = 0; k < 3; ++k) CHECK(hits[k] / double(n) == doctest::Approx(1.0 / 6).epsilon(0.05));
  CHECK(hits[3] / double(n) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("scaling every error vector leaves selections unchanged") {
  Rng gen(5);
  std::vector<Individual> pop, scaled;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> e;
    for (int c = 0; c < 10; ++c) e.push_back(static_cast<double>(gen.index(4)));
    std::vector<double> s = e;
    for (auto& x : s) x *= 7.5;
    pop.push_back(with_errors(e));
    scaled.push_back(with_errors(s));
  }
  Rng a(6), b(6);
  for (int i = 0; i < 5000; ++i) REQUIRE(lexicase_select(pop, a) == lexicase_select(scaled, b));
}

TEST_CASE("umad at a negligible rate copies the parent") {
  Genome g(100, Gene{LetGene{}});
  Rng rng(7);
  auto src = tiny_source();
  int unchanged = 0;
  for (int i = 0; i < 1000; ++i) unchanged += umad(g, 1e-9, src, rng) == g ? 1 : 0;
  CHECK(unchanged == 1000);
}

TEST_CASE("umad preserves expected length") {
  Genome g(100, Gene{LetGene{}});
  Rng rng(8);
  auto src = tiny_source();
  double total = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) total += static_cast<double>(umad(g, 0.1, src, rng).size());
  CHECK(total / n >= 97);
  CHECK(total / n <= 103);
}

TEST_CASE("umad on an empty genome has one insertion point") {
  // Gains a gene with probability r and keeps it with probability 1/(1+r).
  Rng rng(9);
  auto src = tiny_source();
  const double r = 0.5;
  const int n = 100000;
  int nonempty = 0;
  for (int i = 0; i < n; ++i) {
    auto out = umad({}, r, src, rng);
    CHECK(out.size() <= 1);
    nonempty += out.empty() ? 0 : 1;
  }
  CHECK(static_cast<double>(nonempty) / n == doctest::Approx(r / (1 + r)).epsilon(0.03));
}

TEST_CASE("umad keeps the order of surviving genes") {
  Genome g;
  for (std::uint32_t i = 0; i < 50; ++i) g.push_back(InputGene{i});
  Rng rng(10);
  auto src = tiny_source();
  for (int t = 0; t < 200; ++t) {
    auto out = umad(g, 0.3, src, rng);
    std::int64_t last = -1;
    for (const auto& gene : out) {
      if (const auto* in = std::get_if<InputGene>(&gene)) {
        CHECK(static_cast<std::int64_t>(in->index) > last);
        last = in->index;
      }
    }
  }
}

TEST_CASE("evaluate") {
  const Problem& p = find_problem("count-true");
  Rng rng(11);
  auto cases = generate_cases(p, 50, rng);

  auto none = evaluate(parse_genome("APPLY"), p, cases, EvalLimits{}, 1e6);
  CHECK_FALSE(none.program);
  for (double e : none.errors) CHECK(e == 1e6);

  auto ref = evaluate(p.reference(), p, cases, EvalLimits{}, 1e6);
  CHECK(ref.total_error == 0.0);
  CHECK(ref.errors.size() == cases.size());

  // Constant 0 is exactly right on the cases whose expected count is 0.
  std::vector<Case> mixed;
  auto zero = Value::vector({});
  auto pred = make_family_function("positive", {});
  for (int i = 0; i < 10; ++i) {
    std::vector<Value> xs;
    for (int k = 0; k < 3; ++k) xs.push_back(Value::integer(i % 2 == 0 ? -1 - k : 1 + k));
    mixed.push_back({{Value::vector(xs), pred}, Value::integer(i % 2 == 0 ? 0 : 3)});
  }
  auto half = evaluate(parse_genome("LIT Int 0"), p, mixed, EvalLimits{}, 1e6);
  for (int i = 0; i < 10; ++i) CHECK(half.errors[i] == (i % 2 == 0 ? 0.0 : 3.0));
}

TEST_CASE("metric values are clamped to the penalty") {
  const Problem& p = find_problem("sum-2D");
  std::vector<Case> cases{{{Value::vector({})}, Value::integer(0)}};
  auto ind = evaluate(parse_genome("LIT Int 99999999"), p, cases, EvalLimits{}, 1000.0);
  CHECK(ind.errors[0] == 1000.0);
}

TEST_CASE("a population seeded with a solution succeeds at generation 0") {
  const Problem& p = find_problem("time-sheet");
  EvolutionConfig c;
  c.population_size = 20;
  c.max_generations = 5;
  c.seed_genomes = {p.reference()};
  auto r = run_evolution(c, p);
  CHECK(r.success);
  CHECK(r.solution_generation == std::optional<std::size_t>(0));
  CHECK(r.solution_test_error == std::optional<double>(0.0));
}

TEST_CASE("zero generations without a solution fails") {
  const Problem& p = find_problem("time-sheet");
  EvolutionConfig c;
  c.population_size = 10;
  c.max_generations = 0;
  c.seed_genomes = {parse_genome("LIT Int 0")};
  auto r = run_evolution(c, p);
  CHECK_FALSE(r.success);
  CHECK(r.generations.size() == 1);
}

TEST_CASE("runs are reproducible, thread-count independent, and keep the population size") {
  const Problem& p = find_problem("sum-2-vals");
  EvolutionConfig c;
  c.population_size = 40;
  c.max_generations = 4;
  c.seed = 99;
  std::vector<std::size_t> sizes;
  auto observe = [&](const GenerationStats&, std::span<const Individual> pop) {
    sizes.push_back(pop.size());
    for (const auto& ind : pop) {
      CHECK(ind.errors.size() == c.train_cases);
      for (double e : ind.errors) CHECK((std::isfinite(e) && e >= 0.0));
      if (!ind.program) {
        for (double e : ind.errors) CHECK(e == c.penalty);
      }
    }
  };
  auto a = run_evolution(c, p, observe);
  c.threads = 3;
  auto b = run_evolution(c, p);
  REQUIRE(a.generations.size() == b.generations.size());
  for (std::size_t i = 0; i < a.generations.size(); ++i) {
    CHECK(a.generations[i].best_total_error == b.generations[i].best_total_error);
    CHECK(a.generations[i].mean_genome_length == b.generations[i].mean_genome_length);
  }
  CHECK(a.solution_program == b.solution_program);
  for (auto s : sizes) CHECK(s == 40);
}

TEST_CASE("config validation") {
  EvolutionConfig c;
  c.umad_rate = 0.0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.min_genome_size = 10;
  c.max_genome_size = 5;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.population_size = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  CHECK_NOTHROW(validate(EvolutionConfig{}));
}

}  // TEST_SUITE
