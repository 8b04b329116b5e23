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

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbgp/ast.hpp"
#include "cbgp/genome.hpp"
#include "cbgp/stdlib.hpp"
#include "cbgp/types.hpp"

namespace cbgp {

/// Input and output types of a program. Type variables occurring here are
/// universally quantified over the whole program and stay rigid inside it.
struct Signature {
  std::vector<Type> inputs;
  Type output = Type::boolean();
};

struct CompileTrace {
  /// The selected program, if any stacked AST matched the output type.
  std::optional<Ast> program;
  /// Every AST left on the stack after the last gene, bottom first, with the
  /// final substitution applied. Includes the program.
  std::vector<Ast> stack;
};

/// Stack-based compilation. Genes whose constraints cannot be met are
/// skipped. Never throws for any genome over `registry`.
std::optional<Ast> compile(const Genome& genome, const Signature& sig,
                           const FunctionRegistry& registry = FunctionRegistry::standard());

CompileTrace compile_traced(const Genome& genome, const Signature& sig,
                            const FunctionRegistry& registry = FunctionRegistry::standard());

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent bottom-up inference of the most general type of `ast`, with
/// inputs typed by `inputs` (their variables rigid), builtins instantiated
/// from their schemes, and monomorphic `let`. Throws TypeError.
Type typecheck(const Ast& ast, std::span<const Type> inputs);

/// Whether `specific` can be obtained from `general` by substituting
/// variables of `general` only (`rigid` stays fixed in both).
bool is_instance(const Type& specific, const Type& general, const RigidVars& rigid = {});

}  // namespace cbgp
