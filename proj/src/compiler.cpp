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

#include "cbgp/compiler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <unordered_map>

namespace cbgp {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

TypeVar max_var(std::span<const Type> types) {
  TypeVar m = 0;
  for (const auto& t : types) {
    for (auto v : free_vars(t)) m = std::max(m, v);
  }
  return m;
}

RigidVars signature_vars(const Signature& sig) {
  std::vector<TypeVar> vars;
  for (const auto& t : sig.inputs) {
    auto fv = free_vars(t);
    vars.insert(vars.end(), fv.begin(), fv.end());
  }
  auto fv = free_vars(sig.output);
  vars.insert(vars.end(), fv.begin(), fv.end());
  return RigidVars(std::move(vars));
}

struct StackEntry {
  std::uint64_t id;
  Ast ast;
};

/// Scope opened by an abstraction or let gene. Scopes do not nest: the next
/// abstraction or let closes the open one first.
struct Scope {
  bool is_let = false;
  std::vector<LocalBinding> vars;
  /// The bound expression of a let, removed from the stack while open.
  std::optional<StackEntry> bound;
};

class Compiler {
 public:
  Compiler(const Signature& sig, const FunctionRegistry& registry)
      : sig_(sig),
        registry_(registry),
        rigid_(signature_vars(sig)),
        supply_(initial_var(sig)) {}

  CompileTrace run(const Genome& genome) {
    for (const auto& gene : genome) step(gene);
    close_scope();
    return finish();
  }

 private:
  static TypeVar initial_var(const Signature& sig) {
    std::vector<Type> all = sig.inputs;
    all.push_back(sig.output);
    return max_var(all) + 1;
  }

  Type current(const Ast& ast) const { return apply(subst_, ast->type); }

  void push(Ast ast) { stack_.push_back(StackEntry{next_entry_++, std::move(ast)}); }

  void step(const Gene& gene) {
    std::visit(Overloaded{
                   [&](const LiteralGene& g) { push(make_literal(g.value, g.type)); },
                   [&](const InputGene& g) {
                     if (g.index < sig_.inputs.size()) {
                       push(make_input(g.index, sig_.inputs[g.index]));
                     }
                   },
                   [&](const FnGene& g) {
                     if (const auto* e = registry_.find(g.name)) {
                       push(make_builtin(*e, instantiate(e->scheme, supply_)));
                     }
                   },
                   [&](const ApplyGene&) { apply_gene(); },
                   [&](const AbstractionGene& g) { open_abstraction(g.arity); },
                   [&](const LetGene&) { open_let(); },
                   [&](const LocalGene& g) {
                     if (scope_ && !scope_->vars.empty()) {
                       push(make_local(scope_->vars[g.index % scope_->vars.size()]));
                     }
                   },
               },
               gene);
  }

  void apply_gene() {
    // Topmost function-typed AST.
    std::size_t f = stack_.size();
    Type fn_type = Type::boolean();
    while (f > 0) {
      fn_type = current(stack_[f - 1].ast);
      if (fn_type.is_fn()) break;
      --f;
    }
    if (f == 0) return;
    const std::size_t fn_pos = f - 1;

    // Fill each parameter with the topmost unused AST that unifies with it,
    // accumulating bindings in `delta` on top of the current substitution.
    Substitution delta;
    std::vector<std::size_t> chosen;
    for (const auto& param : fn_type.params()) {
      bool filled = false;
      for (std::size_t i = stack_.size(); i-- > 0;) {
        if (i == fn_pos || std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
          continue;
        }
        if (unify_into(delta, param, current(stack_[i].ast), rigid_)) {
          chosen.push_back(i);
          filled = true;
          break;
        }
      }
      if (!filled) return;
    }

    std::vector<Ast> args;
    args.reserve(chosen.size());
    for (auto i : chosen) args.push_back(stack_[i].ast);
    Ast app = make_apply(stack_[fn_pos].ast, std::move(args), fn_type.ret());
    subst_ = compose(delta, subst_);

    std::vector<std::size_t> removed = chosen;
    removed.push_back(fn_pos);
    std::sort(removed.begin(), removed.end());
    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
      stack_.erase(stack_.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    push(std::move(app));
  }

  LocalBinding fresh_local(const char* prefix, Type type) {
    auto id = next_local_++;
    return LocalBinding{id, fmt::format("{}{}", prefix, id), std::move(type)};
  }

  void open_abstraction(std::uint32_t arity) {
    close_scope();
    if (arity == 0) return;
    Scope s;
    for (std::uint32_t i = 0; i < arity; ++i) {
      s.vars.push_back(fresh_local("a", Type::var(supply_.fresh())));
    }
    scope_ = std::move(s);
  }

  void open_let() {
    close_scope();
    if (stack_.empty()) return;
    Scope s;
    s.is_let = true;
    s.bound = std::move(stack_.back());
    stack_.pop_back();
    s.vars.push_back(fresh_local("x", s.bound->ast->type));
    scope_ = std::move(s);
  }

  /// The body is the topmost AST referring to the scope's variables. Every
  /// other AST referring to them is discarded with the scope.
  void close_scope() {
    if (!scope_) return;
    Scope s = std::move(*scope_);
    scope_.reset();

    std::optional<Ast> body;
    for (std::size_t i = stack_.size(); i-- > 0;) {
      if (!stack_[i].ast->free_locals.empty()) {
        body = stack_[i].ast;
        break;
      }
    }
    if (!body) {
      if (s.is_let) {
        auto pos = std::lower_bound(
            stack_.begin(), stack_.end(), s.bound->id,
            [](const StackEntry& e, std::uint64_t id) { return e.id < id; });
        stack_.insert(pos, std::move(*s.bound));
      }
      return;
    }
    std::erase_if(stack_, [](const StackEntry& e) { return !e.ast->free_locals.empty(); });
    if (s.is_let) {
      push(make_let(std::move(s.vars.front()), s.bound->ast, *body));
    } else {
      push(make_abstraction(std::move(s.vars), *body));
    }
  }

  CompileTrace finish() {
    CompileTrace trace;
    std::optional<std::size_t> out;
    for (std::size_t i = stack_.size(); i-- > 0;) {
      Substitution delta;
      if (unify_into(delta, current(stack_[i].ast), sig_.output, rigid_)) {
        subst_ = compose(delta, subst_);
        out = i;
        break;
      }
    }
    auto resolve = [this](const Type& t) { return apply(subst_, t); };
    trace.stack.reserve(stack_.size());
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      trace.stack.push_back(map_types(stack_[i].ast, resolve));
      if (out && *out == i) trace.program = trace.stack.back();
    }
    return trace;
  }

  const Signature& sig_;
  const FunctionRegistry& registry_;
  RigidVars rigid_;
  VariableSupply supply_;
  Substitution subst_;
  std::vector<StackEntry> stack_;
  std::optional<Scope> scope_;
  std::uint64_t next_entry_ = 0;
  std::uint32_t next_local_ = 1;
};

// ---------------------------------------------------------------------------
// Type checking oracle

Type literal_type(const Value& v, const Type& annotated) {
  switch (v.kind()) {
    case Value::Kind::Bool:
      return Type::boolean();
    case Value::Kind::Int:
      return Type::integer();
    case Value::Kind::Float:
      return Type::floating();
    case Value::Kind::Char:
      return Type::character();
    case Value::Kind::String:
      return Type::string();
    default:
      return annotated;
  }
}

class Checker {
 public:
  explicit Checker(std::span<const Type> inputs)
      : inputs_(inputs), rigid_(collect_vars(inputs)), supply_(max_var(inputs) + (1u << 30)) {}

  Type check(const Ast& ast) { return apply(subst_, infer(*ast)); }

 private:
  static RigidVars collect_vars(std::span<const Type> inputs) {
    std::vector<TypeVar> vars;
    for (const auto& t : inputs) {
      auto fv = free_vars(t);
      vars.insert(vars.end(), fv.begin(), fv.end());
    }
    return RigidVars(std::move(vars));
  }

  void unify_or_throw(const Type& a, const Type& b, const AstNode& where) {
    if (!unify_into(subst_, a, b, rigid_)) {
      throw TypeError(fmt::format("cannot unify {} with {} at a {} node",
                                  to_string(apply(subst_, a)), to_string(apply(subst_, b)),
                                  where.node.index() == 2 ? "apply" : "binding"));
    }
  }

  Type infer(const AstNode& n) {
    return std::visit(
        Overloaded{
            [&](const LiteralNode& lit) { return literal_type(lit.value, n.type); },
            [&](const VarNode& var) -> Type {
              switch (var.kind) {
                case VarKind::Input:
                  if (var.index >= inputs_.size()) {
                    throw TypeError(fmt::format("input {} out of range", var.index));
                  }
                  return inputs_[var.index];
                case VarKind::Local: {
                  auto it = locals_.find(var.index);
                  if (it == locals_.end()) {
                    throw TypeError(fmt::format("unbound local {}", var.name));
                  }
                  return it->second;
                }
                case VarKind::Builtin:
                  if (var.builtin == nullptr) throw TypeError("builtin without entry");
                  return instantiate(var.builtin->scheme, supply_);
              }
              throw TypeError("bad variable kind");
            },
            [&](const ApplyNode& app) {
              Type fn = infer(*app.fn);
              std::vector<Type> args;
              for (const auto& a : app.args) args.push_back(infer(*a));
              if (args.empty() || args.size() > 3) throw TypeError("bad application arity");
              Type ret = Type::var(supply_.fresh());
              unify_or_throw(fn, Type::fn(std::move(args), ret), n);
              return ret;
            },
            [&](const AbstractionNode& abs) {
              if (abs.params.empty() || abs.params.size() > 3) {
                throw TypeError("bad abstraction arity");
              }
              std::vector<Type> params;
              for (const auto& p : abs.params) {
                Type t = Type::var(supply_.fresh());
                if (!locals_.emplace(p.id, t).second) throw TypeError("shadowed local");
                params.push_back(t);
              }
              Type body = infer(*abs.body);
              for (const auto& p : abs.params) locals_.erase(p.id);
              return Type::fn(std::move(params), body);
            },
            [&](const LetNode& let) {
              Type bound = infer(*let.bound);
              if (!locals_.emplace(let.var.id, bound).second) throw TypeError("shadowed local");
              Type body = infer(*let.body);
              locals_.erase(let.var.id);
              return body;
            },
        },
        n.node);
  }

  std::span<const Type> inputs_;
  RigidVars rigid_;
  VariableSupply supply_;
  Substitution subst_;
  std::unordered_map<std::uint32_t, Type> locals_;
};

}  // namespace

CompileTrace compile_traced(const Genome& genome, const Signature& sig,
                            const FunctionRegistry& registry) {
  return Compiler(sig, registry).run(genome);
}

std::optional<Ast> compile(const Genome& genome, const Signature& sig,
                           const FunctionRegistry& registry) {
  return compile_traced(genome, sig, registry).program;
}

Type typecheck(const Ast& ast, std::span<const Type> inputs) {
  return Checker(inputs).check(ast);
}

bool is_instance(const Type& specific, const Type& general, const RigidVars& rigid) {
  // Rename the general type's flexible variables apart, then unify with every
  // variable of the specific type held fixed.
  std::vector<TypeVar> flexible;
  for (auto v : free_vars(general)) {
    if (!rigid.contains(v)) flexible.push_back(v);
  }
  std::array<Type, 2> both{specific, general};
  VariableSupply supply(max_var(both) + 1);
  Type renamed = instantiate(Scheme{flexible, general}, supply);
  std::vector<TypeVar> fixed(rigid.vars().begin(), rigid.vars().end());
  auto fv = free_vars(specific);
  fixed.insert(fixed.end(), fv.begin(), fv.end());
  return unify(renamed, specific, RigidVars(std::move(fixed))).has_value();
}

}  // namespace cbgp
