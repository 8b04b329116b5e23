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

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cbgp/types.hpp"
#include "cbgp/value.hpp"

namespace cbgp {

class EvalContext;

using BuiltinImpl = Value (*)(std::span<const Value> args, EvalContext& ctx);

/// A typed function available to evolved programs.
struct FunctionEntry {
  std::string name;
  Scheme scheme;
  /// Ground types mentioned by the scheme; empty for purely generic entries.
  std::vector<Ground> tags;
  std::string doc;
  /// Parameter count; 0 for constants such as `empty-vector`.
  std::size_t arity = 0;
  BuiltinImpl impl = nullptr;
  /// The callable value for functions, the constant itself otherwise.
  Value value = Value::boolean(false);

  bool polymorphic() const { return scheme.is_polymorphic(); }
};

class UnknownFunction : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Immutable name -> entry table. Entries have stable addresses.
class FunctionRegistry {
 public:
  /// The built-in function set, constructed once.
  static const FunctionRegistry& standard();

  /// Throws UnknownFunction.
  const FunctionEntry& lookup(std::string_view name) const;
  const FunctionEntry* find(std::string_view name) const;
  /// All entries sorted by name.
  std::span<const FunctionEntry> catalog() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  FunctionRegistry(const FunctionRegistry&) = delete;
  FunctionRegistry& operator=(const FunctionRegistry&) = delete;

 private:
  FunctionRegistry();

  std::vector<FunctionEntry> entries_;
  std::unordered_map<std::string_view, std::size_t> index_;
};

/// Markdown table of the registry (name, scheme, tags, description).
std::string catalog_markdown(const FunctionRegistry& registry);

/// Wraps a native implementation as a function value of the given arity.
Value make_native_function(std::string name, std::size_t arity,
                           std::function<Value(std::span<const Value>, EvalContext&)> impl);

}  // namespace cbgp
