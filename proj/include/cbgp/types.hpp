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

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cbgp {

/// The five ground types.
enum class Ground : std::uint8_t { Boolean, Int, Float, Char, String };

inline constexpr std::array<Ground, 5> kAllGrounds = {
    Ground::Boolean, Ground::Int, Ground::Float, Ground::Char, Ground::String};

std::string_view to_string(Ground g);

/// Throws std::invalid_argument for names outside the ground-type set.
Ground parse_ground(std::string_view name);

/// Type constructors. Function constructors take their return type last.
enum class Ctor : std::uint8_t { Vector, Set, Map, Tuple, Fn1, Fn2, Fn3 };

std::size_t arity(Ctor c);
std::string_view to_string(Ctor c);

using TypeVar = std::uint32_t;

/// An immutable, structurally shared type term.
///
/// A type is a ground type, a type variable, or a constructor applied to
/// exactly `arity(ctor)` argument types. Copies share the underlying node.
class Type {
 public:
  enum class Kind : std::uint8_t { Ground, Var, Constructed };

  static Type ground(Ground g);
  static Type var(TypeVar v);
  /// Throws std::invalid_argument when `args.size() != arity(c)`.
  static Type make(Ctor c, std::vector<Type> args);

  static Type boolean() { return ground(Ground::Boolean); }
  static Type integer() { return ground(Ground::Int); }
  static Type floating() { return ground(Ground::Float); }
  static Type character() { return ground(Ground::Char); }
  static Type string() { return ground(Ground::String); }
  static Type vector(Type elem);
  static Type set(Type elem);
  static Type map(Type key, Type value);
  static Type tuple(Type first, Type second);
  /// Throws std::invalid_argument unless 1 <= params.size() <= 3.
  static Type fn(std::vector<Type> params, Type ret);

  Kind kind() const;
  bool is_ground() const { return kind() == Kind::Ground; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_constructed() const { return kind() == Kind::Constructed; }
  bool is_fn() const;

  Ground ground_type() const;
  TypeVar var_id() const;
  Ctor ctor() const;
  std::span<const Type> args() const;

  /// Parameter types of a function type.
  std::span<const Type> params() const;
  /// Return type of a function type.
  const Type& ret() const;

  bool has_vars() const;
  std::size_t hash() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  /// Structural total order, used for deterministic containers.
  friend bool operator<(const Type& a, const Type& b);

  bool same_node(const Type& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

/// Renders e.g. `Int`, `Vector[Int]`, `Map[v0,Int]`, `(Int,Int)->Boolean`.
std::string to_string(const Type& t);

/// Inverse of to_string. Variables are written `v<digits>`.
/// Throws std::invalid_argument on malformed input.
Type parse_type(std::string_view text);

/// Variables in first-occurrence order of a left-to-right traversal.
std::vector<TypeVar> free_vars(const Type& t);
bool occurs(TypeVar v, const Type& t);
/// Ground types mentioned anywhere in `t`.
std::vector<Ground> grounds_in(const Type& t);

/// Variables that unification must treat as opaque constants.
///
/// Polymorphic problem signatures quantify over their variables; inside the
/// program body those variables are rigid and never bound.
class RigidVars {
 public:
  RigidVars() = default;
  explicit RigidVars(std::vector<TypeVar> vars);
  bool contains(TypeVar v) const;
  bool empty() const { return vars_.empty(); }
  std::span<const TypeVar> vars() const { return vars_; }

 private:
  std::vector<TypeVar> vars_;  // sorted, unique
};

/// An idempotent mapping from type variables to types.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<TypeVar, Type>> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Type* find(TypeVar v) const;
  std::span<const std::pair<TypeVar, Type>> bindings() const {
    return bindings_;
  }

  /// Binds `v` to `t`, rewriting existing ranges so the result stays
  /// idempotent. `t` must already be normalized under this substitution
  /// and `v` must be unbound. Returns false on an occurs-check violation.
  bool bind(TypeVar v, const Type& t);

  friend bool operator==(const Substitution& a, const Substitution& b);
  friend Substitution compose(const Substitution& s1, const Substitution& s2);

 private:
  std::vector<std::pair<TypeVar, Type>> bindings_;  // sorted by var
};

Type apply(const Substitution& s, const Type& t);

/// apply(compose(s1, s2), t) == apply(s1, apply(s2, t)).
Substitution compose(const Substitution& s1, const Substitution& s2);

/// Most general unifier, or nullopt when none exists.
std::optional<Substitution> unify(const Type& a, const Type& b,
                                  const RigidVars& rigid = {});

/// Extends `s` with the most general unifier of apply(s,a) and apply(s,b).
/// Leaves `s` untouched and returns false when unification fails.
bool unify_into(Substitution& s, const Type& a, const Type& b,
                const RigidVars& rigid = {});

/// Monotone supply of fresh variable ids.
class VariableSupply {
 public:
  explicit VariableSupply(TypeVar first = 0) : next_(first) {}
  TypeVar fresh() { return next_++; }
  TypeVar peek() const { return next_; }

 private:
  TypeVar next_;
};

/// A universally quantified type `forall vars. body`.
struct Scheme {
  std::vector<TypeVar> bound;
  Type body;

  /// Quantifies over every free variable of `body`.
  static Scheme close(Type body);
  bool is_polymorphic() const { return !bound.empty(); }
  bool is_closed() const;
};

std::string to_string(const Scheme& s);

Type instantiate(const Scheme& s, VariableSupply& fresh);

/// Renames variables to 0,1,2,... in first-occurrence order.
Type canonicalize(const Type& t);

}  // namespace cbgp
