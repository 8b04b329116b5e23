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

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cbgp/types.hpp"

namespace cbgp {

enum class FaultKind : std::uint8_t {
  StepLimit,
  SizeLimit,
  PartialFunction,
  ArithmeticFault
};

std::string_view to_string(FaultKind k);

/// A runtime failure of an evolved program. Thrown inside the interpreter
/// and returned as data from `eval`; it never escapes to callers.
struct RuntimeFault {
  FaultKind kind;
  std::string detail;
};

[[noreturn]] void fault(FaultKind kind, std::string detail);

struct Char {
  char c;
  friend auto operator<=>(Char, Char) = default;
};

class Value;
class Function;
class EvalContext;
using FunctionPtr = std::shared_ptr<const Function>;

struct VectorData {
  std::vector<Value> items;
};
/// Items sorted ascending and duplicate-free.
struct SetData {
  std::vector<Value> items;
};
/// Entries sorted by key; keys duplicate-free.
struct MapData {
  std::vector<std::pair<Value, Value>> entries;
};
struct TupleData;

/// A runtime value of the object language.
class Value {
 public:
  enum class Kind : std::uint8_t {
    Bool,
    Int,
    Float,
    Char,
    String,
    Vector,
    Set,
    Map,
    Tuple,
    Function
  };

  static Value boolean(bool b) { return Value(Repr(std::in_place_index<0>, b)); }
  static Value integer(std::int64_t i) {
    return Value(Repr(std::in_place_index<1>, i));
  }
  static Value floating(double d) {
    return Value(Repr(std::in_place_index<2>, d));
  }
  static Value character(char c) {
    return Value(Repr(std::in_place_index<3>, Char{c}));
  }
  static Value string(std::string s) {
    return Value(Repr(std::in_place_index<4>, std::move(s)));
  }
  static Value vector(std::vector<Value> items);
  /// Sorts and removes duplicates. Throws RuntimeFault on function items.
  static Value set(std::vector<Value> items);
  /// `items` must already be sorted and duplicate-free.
  static Value set_sorted(std::vector<Value> items);
  /// Later entries win on duplicate keys.
  static Value map(std::vector<std::pair<Value, Value>> entries);
  /// `entries` must already be sorted by unique keys.
  static Value map_sorted(std::vector<std::pair<Value, Value>> entries);
  static Value tuple(Value first, Value second);
  static Value function(FunctionPtr fn);

  Kind kind() const { return static_cast<Kind>(repr_.index()); }

  bool as_bool() const { return std::get<0>(repr_); }
  std::int64_t as_int() const { return std::get<1>(repr_); }
  double as_float() const { return std::get<2>(repr_); }
  char as_char() const { return std::get<3>(repr_).c; }
  const std::string& as_string() const { return std::get<4>(repr_); }
  /// Items of a vector or set.
  std::span<const Value> items() const;
  std::span<const std::pair<Value, Value>> entries() const;
  const Value& first() const;
  const Value& second() const;
  const Function& as_function() const { return *std::get<9>(repr_); }
  const FunctionPtr& function_ptr() const { return std::get<9>(repr_); }

  /// Structural equality. Throws RuntimeFault when functions are compared.
  friend bool operator==(const Value& a, const Value& b);

 private:
  using Repr =
      std::variant<bool, std::int64_t, double, Char, std::string,
                   std::shared_ptr<const VectorData>,
                   std::shared_ptr<const SetData>,
                   std::shared_ptr<const MapData>,
                   std::shared_ptr<const TupleData>, FunctionPtr>;
  explicit Value(Repr r) : repr_(std::move(r)) {}

  Repr repr_;
};

struct TupleData {
  Value first;
  Value second;
};

/// Total structural order over non-function values. Floats order -0 with
/// +0 and place every NaN above all other floats, equal to each other.
/// Throws RuntimeFault(PartialFunction) when a function is reached.
std::strong_ordering compare(const Value& a, const Value& b);

/// Callable runtime value: builtins, closures, and input functions.
class Function {
 public:
  virtual ~Function() = default;
  virtual std::size_t arity() const = 0;
  virtual Value call(std::span<const Value> args, EvalContext& ctx) const = 0;
  virtual std::string describe() const = 0;
};

/// Literal syntax for logs: `[1 2]`, `#{1 2}`, `{"k" 1}`, `<1 "a">`.
std::string render(const Value& v);

/// Whether `v` has the shape of `t`. Type variables match anything.
bool conforms(const Value& v, const Type& t);

}  // namespace cbgp
