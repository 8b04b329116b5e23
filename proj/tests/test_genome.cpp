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

#include <algorithm>
#include <set>

#include "cbgp/genome.hpp"
#include "cbgp/problems.hpp"
#include "cbgp/stdlib.hpp"

using namespace cbgp;

namespace {

std::set<std::string> function_names(const GeneticSource& src) {
  std::set<std::string> out;
  for (const auto& e : src.entries()) {
    if (const auto* g = std::get_if<Gene>(&e.item)) {
      if (const auto* f = std::get_if<FnGene>(g)) out.insert(f->name);
    }
  }
  return out;
}

template <class G>
std::size_t count_kind(const GeneticSource& src) {
  return static_cast<std::size_t>(std::count_if(src.entries().begin(), src.entries().end(), [](const auto& e) {
    const auto* g = std::get_if<Gene>(&e.item);
    return g != nullptr && std::holds_alternative<G>(*g);
  }));
}

}  // namespace

TEST_SUITE("genome") {

TEST_CASE("gene text format round-trips") {
  Genome g = {
      LiteralGene{Value::integer(-5), Type::integer()},
      LiteralGene{Value::floating(0.1), Type::floating()},
      LiteralGene{Value::boolean(true), Type::boolean()},
      LiteralGene{Value::character('"'), Type::character()},
      LiteralGene{Value::string("a b\n"), Type::string()},
      InputGene{2},
      FnGene{"map-vector"},
      ApplyGene{},
      AbstractionGene{3},
      LetGene{},
      LocalGene{4},
  };
  Genome back = parse_genome(serialize_genome(g));
  REQUIRE(back.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == g[i]);

  CHECK(to_string(Gene{InputGene{0}}) == "IN 0");
  CHECK(to_string(Gene{AbstractionGene{1}}) == "FN-ABS 1");
  CHECK(to_string(Gene{LiteralGene{Value::integer(5), Type::integer()}}) == "LIT Int 5");
  CHECK(parse_genome("# comment\n\nAPPLY\n").size() == 1);
}

TEST_CASE("malformed genes are rejected") {
  for (const char* bad : {"FROB", "IN", "IN -1", "FN-ABS 0", "FN-ABS 4", "LIT Int x",
                          "LIT Vector[Int] 1", "VAR z", "LIT Char \"ab\""}) {
    CHECK_THROWS_AS(parse_gene(bad), std::invalid_argument);
  }
}

TEST_CASE("weighted sampling follows the 9:1 ratio") {
  GeneticSource src;
  src.add(ApplyGene{}, 9.0);
  src.add(LetGene{}, 1.0);
  Rng rng(5);
  const int n = 100000;
  int apply = 0;
  for (int i = 0; i < n; ++i) apply += std::holds_alternative<ApplyGene>(src.sample(rng)) ? 1 : 0;
  double ratio = static_cast<double>(apply) / (n - apply);
  CHECK(ratio == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("non-positive weights are rejected") {
  GeneticSource src;
  CHECK_THROWS_AS(src.add(ApplyGene{}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(src.add(ApplyGene{}, -1.0), std::invalid_argument);
}

TEST_CASE("random genome sizes") {
  auto src = build_genetic_source(find_problem("sum-2D").source_spec(), FunctionRegistry::standard());
  Rng rng(6);
  CHECK(random_genome(src, 1, 1, rng).size() == 1);

  double total = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    auto g = random_genome(src, 50, 250, rng);
    CHECK(g.size() >= 50);
    CHECK(g.size() <= 250);
    total += static_cast<double>(g.size());
  }
  // Uniform on [50,250]: mean 150, sd about 58, so the sample mean has sd 0.58.
  CHECK(total / n >= 145);
  CHECK(total / n <= 155);

  Rng a(77), b(77);
  auto ga = random_genome(src, 50, 250, a);
  auto gb = random_genome(src, 50, 250, b);
  CHECK(serialize_genome(ga) == serialize_genome(gb));
}

TEST_CASE("source for an Int problem") {
  const auto& reg = FunctionRegistry::standard();
  SourceSpec spec;
  spec.input_count = 2;
  spec.ground_types = {Ground::Int};
  auto names = function_names(build_genetic_source(spec, reg));
  CHECK_FALSE(names.count("char-in?"));
  CHECK(names.count("int-add"));
  for (const auto& e : reg.catalog()) {
    if (e.polymorphic()) CHECK(names.count(e.name));
  }
}

TEST_CASE("source with no ground types") {
  const auto& reg = FunctionRegistry::standard();
  SourceSpec spec;
  spec.input_count = 1;
  auto src = build_genetic_source(spec, reg);
  auto names = function_names(src);
  std::set<std::string> poly;
  for (const auto& e : reg.catalog()) {
    if (e.polymorphic()) poly.insert(e.name);
  }
  CHECK(names == poly);
  CHECK(count_kind<InputGene>(src) == 1);
  CHECK(count_kind<ApplyGene>(src) == 1);
  CHECK(count_kind<LetGene>(src) == 1);
  CHECK(count_kind<AbstractionGene>(src) == 3);
  CHECK(count_kind<LocalGene>(src) == 6);
  CHECK(count_kind<LiteralGene>(src) == 0);
}

TEST_CASE("sum-2-vals source holds the String and Int functions") {
  const auto& reg = FunctionRegistry::standard();
  const auto& p = find_problem("sum-2-vals");
  auto names = function_names(build_genetic_source(p.source_spec(), reg));
  std::set<std::string> expected;
  for (const auto& e : reg.catalog()) {
    bool tagged = std::any_of(e.tags.begin(), e.tags.end(),
                              [](Ground g) { return g == Ground::String || g == Ground::Int; });
    if (e.polymorphic() || tagged) expected.insert(e.name);
  }
  CHECK(names == expected);
  CHECK(names.count("int-add"));
  CHECK(names.count("str-length"));
}

TEST_CASE("uniform per-entry weighting") {
  SourceWeights w;
  w.per_entry = true;
  auto src = build_genetic_source(find_problem("count-true").source_spec(),
                                  FunctionRegistry::standard(), w);
  // Non-structural entries weigh 1; each structural kind weighs 1 in total.
  double structural = 0.0;
  for (const auto& e : src.entries()) {
    const auto* g = std::get_if<Gene>(&e.item);
    bool is_structural = g != nullptr && (std::holds_alternative<ApplyGene>(*g) ||
                                          std::holds_alternative<AbstractionGene>(*g) ||
                                          std::holds_alternative<LetGene>(*g) ||
                                          std::holds_alternative<LocalGene>(*g));
    if (is_structural) {
      structural += e.weight;
    } else {
      CHECK(e.weight == 1.0);
    }
  }
  CHECK(structural == doctest::Approx(4.0));
}

TEST_CASE("default ERC distributions") {
  Rng rng(8);
  auto ints = ErcGenerator::standard(Ground::Int);
  auto strs = ErcGenerator::standard(Ground::String);
  auto chars = ErcGenerator::standard(Ground::Char);
  auto floats = ErcGenerator::standard(Ground::Float);
  for (int i = 0; i < 2000; ++i) {
    auto x = ints.sample(rng).as_int();
    CHECK(x >= -100);
    CHECK(x <= 100);
    auto s = strs.sample(rng).as_string();
    CHECK(s.size() <= 12);
    for (char c : s) CHECK((c >= 'a' && c <= 'z'));
    char c = chars.sample(rng).as_char();
    CHECK((c >= 32 && c <= 126));
    double f = floats.sample(rng).as_float();
    CHECK(f >= -100.0);
    CHECK(f <= 100.0);
  }
}

TEST_CASE("ERC genes draw a fresh value per occurrence") {
  GeneticSource src;
  src.add_erc(ErcGenerator::standard(Ground::Int), 1.0);
  Rng rng(9);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 100; ++i) {
    auto g = src.sample(rng);
    REQUIRE(std::holds_alternative<LiteralGene>(g));
    seen.insert(std::get<LiteralGene>(g).value.as_int());
  }
  CHECK(seen.size() > 30);
}

}  // TEST_SUITE
