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

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cbgp/types.hpp"
#include "cbgp/value.hpp"

namespace cbgp {

struct FunctionEntry;

/// A lambda parameter or let-bound variable.
struct LocalBinding {
  std::uint32_t id;
  std::string name;
  Type type;
};

enum class VarKind : std::uint8_t { Input, Local, Builtin };

struct LiteralNode {
  Value value;
};

struct VarNode {
  VarKind kind;
  /// Input position or local id; unused for builtins.
  std::uint32_t index = 0;
  std::string name;
  const FunctionEntry* builtin = nullptr;
};

struct AstNode;
using Ast = std::shared_ptr<const AstNode>;

struct ApplyNode {
  Ast fn;
  std::vector<Ast> args;
};

struct AbstractionNode {
  std::vector<LocalBinding> params;
  Ast body;
};

struct LetNode {
  LocalBinding var;
  Ast bound;
  Ast body;
};

/// A typed program tree node. Every node carries its inferred type.
struct AstNode {
  Type type;
  std::variant<LiteralNode, VarNode, ApplyNode, AbstractionNode, LetNode> node;
  /// Sorted ids of local variables referenced but not bound below this node.
  std::vector<std::uint32_t> free_locals;
};

Ast make_literal(Value value, Type type);
Ast make_input(std::uint32_t index, Type type);
Ast make_local(const LocalBinding& binding);
Ast make_builtin(const FunctionEntry& entry, Type type);
Ast make_apply(Ast fn, std::vector<Ast> args, Type type);
Ast make_abstraction(std::vector<LocalBinding> params, Ast body);
Ast make_let(LocalBinding var, Ast bound, Ast body);

/// Display name of the i-th program input (1-based, `input1`).
std::string input_name(std::uint32_t index);

/// Parenthesized functional rendering, e.g.
/// `(reduce-vector int-add (mapcat reverse input1))`.
std::string to_source(const Ast& ast);

/// Rebuilds `ast` with `f` applied to every node type (and binding type).
Ast map_types(const Ast& ast, const std::function<Type(const Type&)>& f);

/// Pre-order traversal.
void for_each_node(const Ast& ast, const std::function<void(const AstNode&)>& f);

std::size_t count_nodes(const Ast& ast);

}  // namespace cbgp
