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

#include "cbgp/compiler.hpp"
#include "cbgp/interp.hpp"
#include "cbgp/problems.hpp"

using namespace cbgp;

namespace {

Type T(std::string_view s) { return parse_type(s); }

const FunctionEntry& fn(const char* name) { return FunctionRegistry::standard().lookup(name); }

Ast lit(std::int64_t x) { return make_literal(Value::integer(x), T("Int")); }

}  // namespace

TEST_SUITE("interp") {

TEST_CASE("addition of inputs") {
  Ast ast = make_apply(make_builtin(fn("int-add"), T("(Int,Int)->Int")),
                       {make_input(0, T("Int")), make_input(1, T("Int"))}, T("Int"));
  std::vector<Value> in{Value::integer(2), Value::integer(3)};
  auto r = eval(ast, in, EvalLimits{});
  REQUIRE(r.ok());
  CHECK(r.value() == Value::integer(5));
}

TEST_CASE("missing map key faults") {
  Ast ast = make_apply(make_builtin(fn("map-get"), T("(Map[String,Int],String)->Int")),
                       {make_input(0, T("Map[String,Int]")),
                        make_literal(Value::string("absent"), T("String"))},
                       T("Int"));
  std::vector<Value> in{Value::map({{Value::string("k"), Value::integer(1)}})};
  auto r = eval(ast, in, EvalLimits{});
  REQUIRE_FALSE(r.ok());
  CHECK(r.fault().kind == FaultKind::PartialFunction);
}

TEST_CASE("resource limits") {
  Ast big = make_apply(make_builtin(fn("range"), T("(Int)->Vector[Int]")), {lit(1'000'000'000)},
                       T("Vector[Int]"));
  auto r = eval(big, {}, EvalLimits{500'000, 100'000});
  REQUIRE_FALSE(r.ok());
  CHECK(r.fault().kind == FaultKind::SizeLimit);

  Ast mid = make_apply(make_builtin(fn("range"), T("(Int)->Vector[Int]")), {lit(1000)},
                       T("Vector[Int]"));
  r = eval(mid, {}, EvalLimits{100, 100'000});
  REQUIRE_FALSE(r.ok());
  CHECK(r.fault().kind == FaultKind::StepLimit);
  CHECK(eval(mid, {}, EvalLimits{}).ok());
}

TEST_CASE("closures capture their defining environment") {
  // (let [x1 1] (let [x2 (fn [a3] x1)] (let [x1 2] (x2 0))))
  LocalBinding x_outer{1, "x1", T("Int")};
  LocalBinding a{3, "a3", T("Int")};
  LocalBinding f{2, "x2", T("(Int)->Int")};
  LocalBinding x_inner{1, "x1", T("Int")};
  Ast lam = make_abstraction({a}, make_local(x_outer));
  Ast call = make_apply(make_local(f), {lit(0)}, T("Int"));
  Ast inner = make_let(x_inner, lit(2), call);
  Ast ast = make_let(x_outer, lit(1), make_let(f, lam, inner));
  auto r = eval(ast, {}, EvalLimits{});
  REQUIRE(r.ok());
  CHECK(r.value() == Value::integer(1));
}

TEST_CASE("evaluation is deterministic") {
  const Problem& p = find_problem("time-sheet");
  auto ast = compile(p.reference(), p.signature);
  REQUIRE(ast);
  Rng rng(3);
  for (const auto& c : generate_cases(p, 50, rng)) {
    auto a = eval(*ast, c.inputs, EvalLimits{});
    auto b = eval(*ast, c.inputs, EvalLimits{});
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.value() == b.value());
  }
}

TEST_CASE("float keys: negative zero and NaN") {
  Value s = Value::set({Value::floating(0.0), Value::floating(-0.0), Value::floating(NAN),
                        Value::floating(NAN)});
  CHECK(s.items().size() == 2);
  CHECK(Value::floating(NAN) == Value::floating(NAN));
}

TEST_CASE("debug rendering") {
  CHECK(render(Value::map({{Value::string("k"), Value::integer(1)}})) == "{\"k\" 1}");
  CHECK(render(Value::vector({Value::integer(1), Value::integer(2)})) == "[1 2]");
  CHECK(render(Value::set({Value::integer(2), Value::integer(1)})) == "#{1 2}");
}

TEST_CASE("compiled programs never violate their runtime shapes") {
  Rng rng(41);
  int evaluated = 0;
  for (const char* name : {"sum-2D", "count-true", "get-vals-of-key", "simple-encryption"}) {
    const Problem& p = find_problem(name);
    auto src = build_genetic_source(p.source_spec(), FunctionRegistry::standard());
    auto cases = generate_cases(p, 5, rng);
    for (int i = 0; i < 300; ++i) {
      auto ast = compile(random_genome(src, 50, 250, rng), p.signature);
      if (!ast) continue;
      for (const auto& c : cases) {
        auto r = eval(*ast, c.inputs, EvalLimits{}, EvalOptions{true});
        if (r.ok()) {
          ++evaluated;
          CHECK(conforms(r.value(), p.signature.output));
        }
      }
    }
  }
  CHECK(evaluated > 100);
}

}  // TEST_SUITE
