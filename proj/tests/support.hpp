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

// Shared generators for property tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cbgp/interp.hpp"
#include "cbgp/rng.hpp"
#include "cbgp/stdlib.hpp"
#include "cbgp/types.hpp"
#include "cbgp/value.hpp"

namespace cbgp::testing {

/// Random type over variables v0..v(max_var-1) (no variables when max_var is 0).
inline Type random_type(Rng& rng, int depth, TypeVar max_var) {
  const std::size_t leaf_kinds = max_var > 0 ? 2 : 1;
  if (depth <= 0 || rng.index(3) == 0) {
    if (rng.index(leaf_kinds) == 1) return Type::var(static_cast<TypeVar>(rng.index(max_var)));
    return Type::ground(static_cast<Ground>(rng.index(5)));
  }
  auto sub = [&] { return random_type(rng, depth - 1, max_var); };
  switch (rng.index(7)) {
    case 0: return Type::vector(sub());
    case 1: return Type::set(sub());
    case 2: return Type::map(sub(), sub());
    case 3: return Type::tuple(sub(), sub());
    case 4: return Type::fn({sub()}, sub());
    case 5: return Type::fn({sub(), sub()}, sub());
    default: return Type::fn({sub(), sub(), sub()}, sub());
  }
}

/// Random substitution over v0..v(max_var-1) whose ranges avoid those variables.
inline Substitution random_substitution(Rng& rng, TypeVar max_var) {
  Substitution s;
  for (TypeVar v = 0; v < max_var; ++v) {
    if (rng.bernoulli(0.5)) {
      // Ranges use variables from a disjoint block so bindings stay acyclic.
      Type t = apply(s, random_type(rng, 2, 0));
      if (rng.bernoulli(0.3)) t = Type::vector(Type::var(100 + v));
      s.bind(v, t);
    }
  }
  return s;
}

/// Monomorphic instance of `t`: every variable becomes a random small type.
inline Type ground_out(const Type& t, Rng& rng) {
  Substitution s;
  for (auto v : free_vars(t)) {
    Type g = Type::ground(static_cast<Ground>(rng.index(5)));
    if (rng.index(5) == 0) g = Type::vector(Type::integer());
    s.bind(v, g);
  }
  return apply(s, t);
}

Value random_value(const Type& t, Rng& rng);

/// A deterministic function of its arguments returning values of `ret`.
inline Value hash_function(std::vector<Type> params, Type ret, std::uint64_t salt) {
  auto n = params.size();
  return make_native_function(
      "hashed", n, [ret, salt](std::span<const Value> args, EvalContext&) {
        std::uint64_t h = salt;
        for (const auto& a : args) {
          for (char c : render(a)) h = mix64(h ^ static_cast<unsigned char>(c));
        }
        Rng rng(h);
        return random_value(ret, rng);
      });
}

inline Value random_value(const Type& t, Rng& rng) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return Value::integer(rng.uniform_int(-5, 5));
    case Type::Kind::Ground:
      switch (t.ground_type()) {
        case Ground::Boolean: return Value::boolean(rng.bernoulli(0.5));
        case Ground::Int:
          if (rng.index(50) == 0) return Value::integer(INT64_MAX - rng.uniform_int(0, 3));
          return Value::integer(rng.uniform_int(-20, 20));
        case Ground::Float: return Value::floating(rng.uniform_real(-20, 20));
        case Ground::Char: return Value::character(static_cast<char>(rng.uniform_int(32, 126)));
        case Ground::String: {
          std::string s;
          auto n = rng.index(6);
          for (std::size_t i = 0; i < n; ++i) s += static_cast<char>(rng.uniform_int(97, 101));
          return Value::string(s);
        }
      }
      break;
    case Type::Kind::Constructed:
      break;
  }
  auto args = t.args();
  auto n = rng.index(5);
  switch (t.ctor()) {
    case Ctor::Vector: {
      std::vector<Value> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(random_value(args[0], rng));
      return Value::vector(std::move(xs));
    }
    case Ctor::Set: {
      std::vector<Value> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(random_value(args[0], rng));
      return Value::set(std::move(xs));
    }
    case Ctor::Map: {
      std::vector<std::pair<Value, Value>> es;
      for (std::size_t i = 0; i < n; ++i) {
        es.emplace_back(random_value(args[0], rng), random_value(args[1], rng));
      }
      return Value::map(std::move(es));
    }
    case Ctor::Tuple:
      return Value::tuple(random_value(args[0], rng), random_value(args[1], rng));
    default: {
      auto params = t.params();
      return hash_function({params.begin(), params.end()}, t.ret(), rng.next());
    }
  }
}

}  // namespace cbgp::testing
