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

#include <fstream>
#include <set>
#include <sstream>

#include "cbgp/interp.hpp"
#include "cbgp/stdlib.hpp"
#include "support.hpp"

using namespace cbgp;

namespace {

Type T(std::string_view s) { return parse_type(s); }

const FunctionRegistry& reg() { return FunctionRegistry::standard(); }

// Result of a call, with faults folded into a comparable string.
std::string outcome(const Value& fn, std::vector<Value> args) {
  EvalContext ctx(EvalLimits{});
  try {
    return render(call(fn, args, ctx));
  } catch (const RuntimeFault& f) {
    return "fault:" + std::string(to_string(f.kind));
  }
}

FaultKind fault_of(const char* name, std::vector<Value> args) {
  EvalContext ctx(EvalLimits{});
  try {
    call(reg().lookup(name).value, args, ctx);
  } catch (const RuntimeFault& f) {
    return f.kind;
  }
  FAIL("expected a fault from " << name);
  return FaultKind::StepLimit;
}

Value call_named(const char* name, std::vector<Value> args) {
  EvalContext ctx(EvalLimits{});
  return call(reg().lookup(name).value, args, ctx);
}

Value ints(std::initializer_list<std::int64_t> xs) {
  std::vector<Value> v;
  for (auto x : xs) v.push_back(Value::integer(x));
  return Value::vector(std::move(v));
}

}  // namespace

TEST_SUITE("stdlib") {

TEST_CASE("lookup") {
  CHECK(canonicalize(reg().lookup("map-get").scheme.body) == T("(Map[v0,v1],v0)->v1"));
  CHECK_THROWS_AS(reg().lookup("no-such-fn"), UnknownFunction);
  // Deliberately absent from the function set.
  CHECK(reg().find("identity") == nullptr);
}

TEST_CASE("catalog shape") {
  auto cat = reg().catalog();
  std::size_t int_tagged = 0, poly = 0;
  std::set<std::string> names;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto& e = cat[i];
    if (i > 0) CHECK(cat[i - 1].name < e.name);
    names.insert(e.name);
    CHECK(e.scheme.is_closed());
    CHECK(e.polymorphic() == !free_vars(e.scheme.body).empty());
    for (auto v : e.scheme.bound) CHECK(occurs(v, e.scheme.body));
    CHECK(e.tags == grounds_in(e.scheme.body));
    if (std::find(e.tags.begin(), e.tags.end(), Ground::Int) != e.tags.end()) ++int_tagged;
    poly += e.polymorphic() ? 1 : 0;
    CHECK(e.arity == (e.scheme.body.is_fn() ? e.scheme.body.params().size() : 0));
  }
  CHECK(names.size() == cat.size());
  CHECK(int_tagged >= 20);
  CHECK(static_cast<double>(poly) >= 0.6 * static_cast<double>(cat.size()));
  CHECK(catalog_markdown(reg()) == catalog_markdown(reg()));
  for (Ground g : {Ground::Boolean, Ground::Int, Ground::Float, Ground::Char, Ground::String}) {
    CHECK(std::any_of(cat.begin(), cat.end(), [&](const FunctionEntry& e) {
      return std::find(e.tags.begin(), e.tags.end(), g) != e.tags.end();
    }));
  }
}

TEST_CASE("required families are present") {
  for (const char* n :
       {"map-vector", "filter-vector", "reduce-vector", "fold-vector", "map-set", "filter-set",
        "reduce-set", "fold-set", "map-map", "filter-map", "reduce-map", "fold-map", "comp",
        "partial1-of-2", "partial1-of-3", "partial2-of-3", "map-to-vector", "vector-to-map",
        "set-union", "set-intersection", "set-difference", "set-contains?", "set-insert",
        "set-size", "set-to-vector", "vector-to-set", "map-get", "map-get-or-default",
        "map-contains-key?", "keys", "vals", "assoc", "group-by", "sort-by", "tuple",
        "tuple-first", "tuple-second", "nth", "index-of", "first", "last", "length", "reverse",
        "range", "sort", "concat", "mapcat", "take", "drop", "int-add", "int-sub", "int-mult",
        "<", "float-add", "and", "or", "not", "join-chars", "str-concat", "str-length",
        "substring", "letter?", "char-upper"}) {
    CHECK_MESSAGE(reg().find(n) != nullptr, n);
  }
  auto map_vector = canonicalize(reg().lookup("map-vector").scheme.body);
  CHECK(map_vector == T("((v0)->v1,Vector[v0])->Vector[v1]"));
  CHECK(canonicalize(reg().lookup("comp").scheme.body) == T("((v0)->v1,(v1)->v2)->(v0)->v2"));
  CHECK(canonicalize(reg().lookup("partial1-of-2").scheme.body) ==
        T("((v0,v1)->v2,v0)->(v1)->v2"));
  CHECK(canonicalize(reg().lookup("map-to-vector").scheme.body) ==
        T("(Map[v0,v1])->Vector[Tuple[v0,v1]]"));
}

TEST_CASE("partial and total semantics") {
  CHECK(fault_of("first", {Value::vector({})}) == FaultKind::PartialFunction);
  CHECK(fault_of("map-get", {Value::map({}), Value::integer(1)}) == FaultKind::PartialFunction);
  CHECK(fault_of("int-quot", {Value::integer(1), Value::integer(0)}) == FaultKind::ArithmeticFault);
  CHECK(fault_of("int-mod", {Value::integer(1), Value::integer(0)}) == FaultKind::ArithmeticFault);
  CHECK(fault_of("int-add", {Value::integer(INT64_MAX), Value::integer(1)}) ==
        FaultKind::ArithmeticFault);
  Value add = reg().lookup("int-add").value;
  CHECK(fault_of("reduce-vector", {add, Value::vector({})}) == FaultKind::PartialFunction);
  CHECK(call_named("fold-vector", {add, Value::integer(7), Value::vector({})}) == Value::integer(7));
  CHECK(call_named("index-of", {ints({4, 5}), Value::integer(9)}) == Value::integer(-1));
  CHECK(call_named("index-of", {ints({4, 5}), Value::integer(5)}) == Value::integer(1));
  CHECK(call_named("reduce-vector", {add, ints({1, 2, 3})}) == Value::integer(6));
  CHECK(call_named("mapcat", {reg().lookup("reverse").value,
                              Value::vector({ints({1, 2}), ints({3})})}) == ints({2, 1, 3}));
}

TEST_CASE("scheme conformance on random monomorphic instantiations") {
  Rng rng(31);
  VariableSupply fresh(0);
  for (const auto& e : reg().catalog()) {
    for (int trial = 0; trial < 1000; ++trial) {
      Type t = testing::ground_out(instantiate(e.scheme, fresh), rng);
      if (e.arity == 0) {
        CHECK(conforms(e.value, t));
        break;
      }
      std::vector<Value> args;
      for (const auto& p : t.params()) args.push_back(testing::random_value(p, rng));
      EvalContext ctx(EvalLimits{});
      try {
        Value out = call(e.value, args, ctx);
        if (!conforms(out, t.ret())) {
          FAIL_CHECK(e.name << " returned " << render(out) << " for " << to_string(t));
        }
      } catch (const RuntimeFault&) {
        // Faults are values of the language.
      } catch (const std::exception& ex) {
        FAIL_CHECK(e.name << " leaked a host exception: " << ex.what());
      }
    }
  }
}

TEST_CASE("comp law") {
  Rng rng(32);
  VariableSupply fresh(0);
  std::vector<const FunctionEntry*> unary;
  for (const auto& e : reg().catalog()) {
    if (e.arity == 1) unary.push_back(&e);
  }
  const Value comp = reg().lookup("comp").value;
  int checked = 0;
  for (int trial = 0; trial < 20000 && checked < 2000; ++trial) {
    const auto* f = unary[rng.index(unary.size())];
    const auto* g = unary[rng.index(unary.size())];
    Type tf = instantiate(f->scheme, fresh);
    Type tg = instantiate(g->scheme, fresh);
    auto s = unify(tf.ret(), tg.params()[0]);
    if (!s) continue;
    Type x_type = testing::ground_out(apply(*s, tf.params()[0]), rng);
    Value x = testing::random_value(x_type, rng);
    EvalContext ctx(EvalLimits{});
    std::string composed;
    try {
      std::vector<Value> fg{f->value, g->value};
      composed = outcome(call(comp, fg, ctx), {x});
    } catch (const RuntimeFault&) {
      continue;
    }
    std::string direct;
    EvalContext ctx2(EvalLimits{});
    try {
      std::vector<Value> xs{x};
      Value fx = call(f->value, xs, ctx2);
      direct = outcome(g->value, {fx});
    } catch (const RuntimeFault& fault) {
      direct = "fault:" + std::string(to_string(fault.kind));
    }
    CHECK_MESSAGE(composed == direct, f->name << " then " << g->name << " on " << render(x));
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("partial law") {
  Rng rng(33);
  VariableSupply fresh(0);
  const Value partial = reg().lookup("partial1-of-2").value;
  int checked = 0;
  for (const auto& e : reg().catalog()) {
    if (e.arity != 2) continue;
    for (int trial = 0; trial < 20; ++trial) {
      Type t = testing::ground_out(instantiate(e.scheme, fresh), rng);
      Value a = testing::random_value(t.params()[0], rng);
      Value b = testing::random_value(t.params()[1], rng);
      EvalContext ctx(EvalLimits{});
      std::vector<Value> fa{e.value, a};
      Value bound = call(partial, fa, ctx);
      CHECK_MESSAGE(outcome(bound, {b}) == outcome(e.value, {a, b}), e.name);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("catalog document is current") {
  std::ifstream in(std::string(CBGP_SOURCE_DIR) + "/docs/stdlib.md", std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK_MESSAGE(ss.str() == catalog_markdown(reg()),
                "docs/stdlib.md is stale; regenerate with `cbgp catalog --out docs/stdlib.md`");
}

}  // TEST_SUITE
