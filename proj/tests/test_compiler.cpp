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

#include "cbgp/compiler.hpp"
#include "cbgp/interp.hpp"
#include "cbgp/problems.hpp"

using namespace cbgp;

namespace {

Type T(std::string_view s) { return parse_type(s); }

std::optional<std::string> compiled(const char* genome, const Signature& sig) {
  auto ast = compile(parse_genome(genome), sig);
  if (!ast) return std::nullopt;
  return to_source(*ast);
}

Value run(const char* genome, const Signature& sig, std::vector<Value> inputs) {
  auto ast = compile(parse_genome(genome), sig);
  REQUIRE(ast);
  auto r = eval(*ast, inputs, EvalLimits{});
  REQUIRE(r.ok());
  return r.value();
}

RigidVars rigid_of(const Signature& sig) {
  std::vector<TypeVar> vs;
  for (const auto& t : sig.inputs) {
    for (auto v : free_vars(t)) vs.push_back(v);
  }
  for (auto v : free_vars(sig.output)) vs.push_back(v);
  return RigidVars(vs);
}

}  // namespace

TEST_SUITE("compiler") {

TEST_CASE("single literal") {
  CHECK(compiled("LIT Int 5", {{}, T("Int")}) == "5");
  CHECK_FALSE(compiled("LIT Int 5", {{}, T("String")}));
  CHECK_FALSE(compile(Genome{}, {{}, T("Int")}));
}

TEST_CASE("exact-arity application takes arguments from the top of the stack") {
  Signature sig{{T("Int"), T("Int")}, T("Int")};
  CHECK(compiled("IN 0\nIN 1\nFN int-sub\nAPPLY", sig) == "(int-sub input2 input1)");
  CHECK(run("IN 0\nIN 1\nFN int-sub\nAPPLY", sig, {Value::integer(2), Value::integer(3)}) ==
        Value::integer(1));
}

TEST_CASE("unsatisfiable genes are skipped") {
  Signature sig{{}, T("Int")};
  CHECK(compiled("LIT Int 5\nFN int-add\nAPPLY", sig) == "5");
  CHECK(compiled("APPLY\nLET\nVAR 3\nIN 0\nFN no-such-fn\nLIT Int 5", sig) == "5");
}

TEST_CASE("sum-2D oracle genome") {
  Signature sig{{T("Vector[Vector[Int]]")}, T("Int")};
  const char* g = "IN 0\nFN reverse\nFN mapcat\nAPPLY\nFN int-add\nFN reduce-vector\nAPPLY";
  CHECK(compiled(g, sig) == "(reduce-vector int-add (mapcat reverse input1))");
  auto v = Value::vector({Value::vector({Value::integer(1), Value::integer(2)}),
                          Value::vector({Value::integer(3), Value::integer(4)})});
  CHECK(run(g, sig, {v}) == Value::integer(10));
}

TEST_CASE("abstraction closes at the next abstraction gene") {
  Signature sig{{T("Int")}, T("Int")};
  const char* g = "IN 0\nFN-ABS 1\nVAR 0\nVAR 0\nFN int-add\nAPPLY\nFN-ABS 1\nAPPLY";
  CHECK(compiled(g, sig) == "((fn [a1] (int-add a1 a1)) input1)");
  CHECK(run(g, sig, {Value::integer(4)}) == Value::integer(8));
}

TEST_CASE("abstraction without a body is skipped") {
  Signature sig{{T("Int")}, T("Int")};
  CHECK(compiled("IN 0\nFN-ABS 2", sig) == "input1");
}

TEST_CASE("let binds the popped expression") {
  Signature sig{{}, T("Int")};
  const char* g = "LIT Int 5\nLET\nVAR 0\nVAR 0\nFN int-add\nAPPLY";
  CHECK(compiled(g, sig) == "(let [x1 5] (int-add x1 x1))");
  CHECK(run(g, sig, {}) == Value::integer(10));
  // Without a body the bound expression is restored.
  CHECK(compiled("LIT Int 5\nLET", sig) == "5");
}

TEST_CASE("rigid signature variables are not specialised") {
  Signature sig{{T("Vector[v0]")}, T("v0")};
  CHECK(compiled("IN 0\nFN first\nAPPLY", sig) == "(first input1)");
  CHECK_FALSE(compiled("IN 0\nFN first\nAPPLY\nLIT Int 1\nFN int-add\nAPPLY", sig) ==
              std::optional<std::string>("(int-add (first input1) 1)"));
}

TEST_CASE("traced compilation exposes the whole stack") {
  Signature sig{{T("Int")}, T("Int")};
  auto trace = compile_traced(parse_genome("LIT String \"a\"\nIN 0\nLIT Boolean true"), sig);
  REQUIRE(trace.program);
  CHECK(to_source(*trace.program) == "input1");
  CHECK(trace.stack.size() == 3);
}

TEST_CASE("typecheck examples") {
  FunctionEntry identity{"identity", Scheme::close(T("(v0)->v0")), {}, "", 1, nullptr};
  Ast five = make_literal(Value::integer(5), T("Int"));
  Ast call = make_apply(make_builtin(identity, T("(Int)->Int")), {five}, T("Int"));
  CHECK(typecheck(call, {}) == T("Int"));

  LocalBinding x{1, "a1", Type::var(0)};
  Ast lam = make_abstraction({x}, make_local(x));
  CHECK(to_string(canonicalize(typecheck(lam, {}))) == "(v0)->v0");

  const auto& get = FunctionRegistry::standard().lookup("map-get");
  std::vector<Type> inputs{T("Map[String,Int]")};
  Ast lookup = make_apply(make_builtin(get, T("(Map[String,Int],String)->Int")),
                          {make_input(0, inputs[0]), make_literal(Value::string("k"), T("String"))},
                          T("Int"));
  CHECK(typecheck(lookup, inputs) == T("Int"));
}

TEST_CASE("typecheck rejects ill-typed trees") {
  const auto& add = FunctionRegistry::standard().lookup("int-add");
  Ast bad = make_apply(make_builtin(add, T("(Int,Int)->Int")),
                       {make_literal(Value::integer(1), T("Int")),
                        make_literal(Value::string("x"), T("String"))},
                       T("Int"));
  CHECK_THROWS_AS(typecheck(bad, {}), TypeError);
  LocalBinding x{1, "a1", T("Int")};
  CHECK_THROWS_AS(typecheck(make_local(x), {}), TypeError);
  CHECK_THROWS_AS(typecheck(make_input(3, T("Int")), {}), TypeError);
}

TEST_CASE("is_instance") {
  CHECK(is_instance(T("(Int)->Int"), T("(v0)->v0")));
  CHECK_FALSE(is_instance(T("(Int)->String"), T("(v0)->v0")));
  CHECK_FALSE(is_instance(T("(v0)->v0"), T("(Int)->Int")));
  CHECK(is_instance(T("Vector[v3]"), T("v0")));
}

TEST_CASE("random genomes compile to well-typed, closed, deterministic programs") {
  Rng rng(21);
  int programs = 0;
  for (const char* name : {"sum-2D", "count-true", "time-sheet", "min-key"}) {
    const Problem& p = find_problem(name);
    auto src = build_genetic_source(p.source_spec(), FunctionRegistry::standard());
    auto rigid = rigid_of(p.signature);
    for (int i = 0; i < 500; ++i) {
      Genome g = random_genome(src, 50, 250, rng);
      auto ast = compile(g, p.signature);
      auto again = compile(g, p.signature);
      REQUIRE(ast.has_value() == again.has_value());
      if (!ast) continue;
      ++programs;
      CHECK(to_source(*ast) == to_source(*again));
      CHECK((*ast)->free_locals.empty());
      Type t = typecheck(*ast, p.signature.inputs);
      CHECK(unify(t, p.signature.output, rigid));
      CHECK(is_instance((*ast)->type, t, rigid));
    }
  }
  CHECK(programs > 200);
}

TEST_CASE("a leading unsatisfiable apply changes nothing") {
  Rng rng(22);
  const Problem& p = find_problem("sum-2D");
  auto src = build_genetic_source(p.source_spec(), FunctionRegistry::standard());
  for (int i = 0; i < 300; ++i) {
    Genome g = random_genome(src, 50, 250, rng);
    Genome h = g;
    h.insert(h.begin(), ApplyGene{});
    auto a = compile(g, p.signature);
    auto b = compile(h, p.signature);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(to_source(*a) == to_source(*b));
  }
}

}  // TEST_SUITE
