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

#include <set>

#include "cbgp/stdlib.hpp"
#include "cbgp/types.hpp"
#include "support.hpp"

using namespace cbgp;

namespace {

Type T(std::string_view s) { return parse_type(s); }
Type V(TypeVar v) { return Type::var(v); }

bool range_mentions_domain(const Substitution& s) {
  for (const auto& [v, t] : s.bindings()) {
    for (const auto& [w, _] : s.bindings()) {
      if (occurs(w, t)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("typesys") {

TEST_CASE("unify examples") {
  auto s = unify(V(0), T("Int"));
  REQUIRE(s);
  CHECK(apply(*s, V(0)) == T("Int"));

  s = unify(T("Vector[v0]"), T("Vector[Int]"));
  REQUIRE(s);
  CHECK(apply(*s, V(0)) == T("Int"));

  s = unify(T("Map[v0,v1]"), T("Map[String,v0]"));
  REQUIRE(s);
  CHECK(apply(*s, V(0)) == T("String"));
  CHECK(apply(*s, V(1)) == T("String"));

  CHECK_FALSE(unify(V(0), T("Vector[v0]")));
  CHECK_FALSE(unify(T("Int"), T("String")));
  CHECK_FALSE(unify(T("Vector[Int]"), T("Set[Int]")));
  CHECK_FALSE(unify(T("(Int)->Int"), T("(Int,Int)->Int")));
}

TEST_CASE("rigid variables only unify with themselves") {
  RigidVars rigid({0});
  CHECK_FALSE(unify(V(0), T("Int"), rigid));
  CHECK(unify(V(0), V(0), rigid));
  auto s = unify(V(1), V(0), rigid);
  REQUIRE(s);
  CHECK(apply(*s, V(1)) == V(0));
}

TEST_CASE("apply examples") {
  Substitution s{{0, T("Int")}};
  CHECK(apply(s, T("(v0)->v0")) == T("(Int)->Int"));
  CHECK(apply(Substitution{}, T("Set[v1]")) == T("Set[v1]"));
  Substitution s2{{0, T("Vector[v1]")}};
  CHECK(apply(s2, T("Tuple[v0,v1]")) == T("Tuple[Vector[v1],v1]"));
}

TEST_CASE("compose examples") {
  Substitution b_int{{1, T("Int")}};
  Substitution a_b{{0, V(1)}};
  CHECK(apply(compose(b_int, a_b), V(0)) == T("Int"));

  Substitution s{{0, T("Vector[v2]")}, {1, T("Int")}};
  CHECK(compose(Substitution{}, s) == s);
  CHECK(compose(s, Substitution{}) == s);

  Substitution a_int{{0, T("Int")}};
  Substitution b_vec{{1, T("Vector[v0]")}};
  CHECK(apply(compose(a_int, b_vec), V(1)) == T("Vector[Int]"));
}

TEST_CASE("instantiate examples") {
  VariableSupply fresh(7);
  Type id = instantiate(Scheme::close(T("(v0)->v0")), fresh);
  REQUIRE(id.is_fn());
  CHECK(id.params()[0].is_var());
  CHECK(id.params()[0] == id.ret());
  CHECK(id.ret().var_id() >= 7);

  const auto& get = FunctionRegistry::standard().lookup("map-get").scheme;
  Type g = instantiate(get, fresh);
  REQUIRE(g.is_fn());
  REQUIRE(g.params().size() == 2);
  CHECK(g.params()[0].ctor() == Ctor::Map);
  CHECK(g.params()[0].args()[0] == g.params()[1]);
  CHECK(g.params()[0].args()[1] == g.ret());
  CHECK(g.params()[1] != g.ret());

  CHECK(instantiate(Scheme::close(T("Int")), fresh) == T("Int"));
}

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize(T("(v5)->v5")) == canonicalize(T("(v9)->v9")));
  CHECK(to_string(canonicalize(T("(v5)->v5"))) == "(v0)->v0");
  CHECK(to_string(canonicalize(T("Map[v3,v0]"))) == "Map[v0,v1]");
  CHECK(canonicalize(T("Int")) == T("Int"));
}

TEST_CASE("rendering round-trips through the parser") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Type t = testing::random_type(rng, 4, 4);
    CHECK(parse_type(to_string(t)) == t);
  }
  CHECK(to_string(T("(Int,Int)->Boolean")) == "(Int,Int)->Boolean");
  CHECK_THROWS_AS(parse_type("Vector[Int"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("Frob"), std::invalid_argument);
}

TEST_CASE("unifier soundness, occurs check and idempotence on random pairs") {
  Rng rng(1);
  int unified = 0;
  for (int i = 0; i < 20000; ++i) {
    Type a = testing::random_type(rng, 3, 3);
    Type b = testing::random_type(rng, 3, 3);
    auto s = unify(a, b);
    if (!s) continue;
    ++unified;
    CHECK(apply(*s, a) == apply(*s, b));
    CHECK_FALSE(range_mentions_domain(*s));
    CHECK(apply(*s, apply(*s, a)) == apply(*s, a));
  }
  CHECK(unified > 100);
}

TEST_CASE("unify(t, apply(s, t)) always succeeds") {
  Rng rng(2);
  for (int i = 0; i < 5000; ++i) {
    Type t = testing::random_type(rng, 3, 4);
    Substitution s = testing::random_substitution(rng, 4);
    auto u = unify(t, apply(s, t));
    REQUIRE(u);
    CHECK(apply(*u, t) == apply(*u, apply(s, t)));
  }
}

TEST_CASE("composition law on random substitutions") {
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    Substitution s1 = testing::random_substitution(rng, 4);
    Substitution s2 = testing::random_substitution(rng, 4);
    Type t = testing::random_type(rng, 3, 4);
    CHECK(apply(compose(s1, s2), t) == apply(s1, apply(s2, t)));
  }
}

TEST_CASE("canonicalize is idempotent and renaming-invariant") {
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    Type t = testing::random_type(rng, 4, 4);
    Type c = canonicalize(t);
    CHECK(canonicalize(c) == c);
    // Shift every variable by a constant and reverse their order.
    Substitution rename;
    for (auto v : free_vars(t)) rename.bind(v, V(1000 - v));
    CHECK(canonicalize(apply(rename, t)) == c);
  }
}

TEST_CASE("successive instantiations of every stdlib scheme are disjoint") {
  VariableSupply fresh(0);
  for (const auto& e : FunctionRegistry::standard().catalog()) {
    Type a = instantiate(e.scheme, fresh);
    Type b = instantiate(e.scheme, fresh);
    auto va = free_vars(a);
    auto vb = free_vars(b);
    std::set<TypeVar> sa(va.begin(), va.end());
    for (auto v : vb) CHECK_FALSE(sa.count(v));
    CHECK(va.size() == e.scheme.bound.size());
    CHECK(canonicalize(a) == canonicalize(b));
  }
}

}  // TEST_SUITE
