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

#include "cbgp/ast.hpp"

#include <algorithm>

#include "cbgp/stdlib.hpp"

namespace cbgp {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void merge_into(std::vector<std::uint32_t>& out,
                const std::vector<std::uint32_t>& more) {
  if (more.empty()) return;
  std::vector<std::uint32_t> merged;
  merged.reserve(out.size() + more.size());
  std::set_union(out.begin(), out.end(), more.begin(), more.end(),
                 std::back_inserter(merged));
  out = std::move(merged);
}

void remove_ids(std::vector<std::uint32_t>& ids,
                const std::vector<std::uint32_t>& bound) {
  std::erase_if(ids, [&](std::uint32_t id) {
    return std::find(bound.begin(), bound.end(), id) != bound.end();
  });
}

void render(const AstNode& n, std::string& out) {
  std::visit(
      Overloaded{
          [&](const LiteralNode& lit) { out += render(lit.value); },
          [&](const VarNode& var) { out += var.name; },
          [&](const ApplyNode& app) {
            out += '(';
            render(*app.fn, out);
            for (const auto& a : app.args) {
              out += ' ';
              render(*a, out);
            }
            out += ')';
          },
          [&](const AbstractionNode& abs) {
            out += "(fn [";
            for (std::size_t i = 0; i < abs.params.size(); ++i) {
              if (i > 0) out += ' ';
              out += abs.params[i].name;
            }
            out += "] ";
            render(*abs.body, out);
            out += ')';
          },
          [&](const LetNode& let) {
            out += "(let [" + let.var.name + ' ';
            render(*let.bound, out);
            out += "] ";
            render(*let.body, out);
            out += ')';
          },
      },
      n.node);
}

}  // namespace

Ast make_literal(Value value, Type type) {
  return std::make_shared<const AstNode>(
      AstNode{std::move(type), LiteralNode{std::move(value)}, {}});
}

std::string input_name(std::uint32_t index) {
  return "input" + std::to_string(index + 1);
}

Ast make_input(std::uint32_t index, Type type) {
  return std::make_shared<const AstNode>(AstNode{
      std::move(type), VarNode{VarKind::Input, index, input_name(index)}, {}});
}

Ast make_local(const LocalBinding& binding) {
  return std::make_shared<const AstNode>(
      AstNode{binding.type, VarNode{VarKind::Local, binding.id, binding.name},
              {binding.id}});
}

Ast make_builtin(const FunctionEntry& entry, Type type) {
  return std::make_shared<const AstNode>(AstNode{
      std::move(type), VarNode{VarKind::Builtin, 0, entry.name, &entry}, {}});
}

Ast make_apply(Ast fn, std::vector<Ast> args, Type type) {
  std::vector<std::uint32_t> free = fn->free_locals;
  for (const auto& a : args) merge_into(free, a->free_locals);
  return std::make_shared<const AstNode>(AstNode{
      std::move(type), ApplyNode{std::move(fn), std::move(args)},
      std::move(free)});
}

Ast make_abstraction(std::vector<LocalBinding> params, Ast body) {
  std::vector<Type> param_types;
  std::vector<std::uint32_t> ids;
  for (const auto& p : params) {
    param_types.push_back(p.type);
    ids.push_back(p.id);
  }
  Type type = Type::fn(std::move(param_types), body->type);
  std::vector<std::uint32_t> free = body->free_locals;
  remove_ids(free, ids);
  return std::make_shared<const AstNode>(
      AstNode{std::move(type), AbstractionNode{std::move(params), std::move(body)},
              std::move(free)});
}

Ast make_let(LocalBinding var, Ast bound, Ast body) {
  std::vector<std::uint32_t> free = body->free_locals;
  remove_ids(free, {var.id});
  merge_into(free, bound->free_locals);
  Type type = body->type;
  return std::make_shared<const AstNode>(AstNode{
      std::move(type), LetNode{std::move(var), std::move(bound), std::move(body)},
      std::move(free)});
}

std::string to_source(const Ast& ast) {
  std::string out;
  render(*ast, out);
  return out;
}

Ast map_types(const Ast& ast, const std::function<Type(const Type&)>& f) {
  const AstNode& n = *ast;
  auto rebind = [&](const LocalBinding& b) {
    return LocalBinding{b.id, b.name, f(b.type)};
  };
  return std::visit(
      Overloaded{
          [&](const LiteralNode& lit) {
            return make_literal(lit.value, f(n.type));
          },
          [&](const VarNode& var) -> Ast {
            return std::make_shared<const AstNode>(
                AstNode{f(n.type), var, n.free_locals});
          },
          [&](const ApplyNode& app) {
            std::vector<Ast> args;
            for (const auto& a : app.args) args.push_back(map_types(a, f));
            return make_apply(map_types(app.fn, f), std::move(args), f(n.type));
          },
          [&](const AbstractionNode& abs) {
            std::vector<LocalBinding> params;
            for (const auto& p : abs.params) params.push_back(rebind(p));
            return make_abstraction(std::move(params), map_types(abs.body, f));
          },
          [&](const LetNode& let) {
            return make_let(rebind(let.var), map_types(let.bound, f),
                            map_types(let.body, f));
          },
      },
      n.node);
}

void for_each_node(const Ast& ast,
                   const std::function<void(const AstNode&)>& f) {
  f(*ast);
  std::visit(Overloaded{
                 [](const LiteralNode&) {},
                 [](const VarNode&) {},
                 [&](const ApplyNode& app) {
                   for_each_node(app.fn, f);
                   for (const auto& a : app.args) for_each_node(a, f);
                 },
                 [&](const AbstractionNode& abs) { for_each_node(abs.body, f); },
                 [&](const LetNode& let) {
                   for_each_node(let.bound, f);
                   for_each_node(let.body, f);
                 },
             },
             ast->node);
}

std::size_t count_nodes(const Ast& ast) {
  std::size_t n = 0;
  for_each_node(ast, [&](const AstNode&) { ++n; });
  return n;
}

}  // namespace cbgp
