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

#include "cbgp/interp.hpp"

#include <fmt/format.h>

#include <cassert>
#include <new>

#include "cbgp/stdlib.hpp"

namespace cbgp {

namespace {

struct EnvFrame;
using Env = std::shared_ptr<const EnvFrame>;
using Inputs = std::shared_ptr<const std::vector<Value>>;

struct EnvFrame {
  std::uint32_t id;
  Value value;
  Env parent;
};

/// Inline storage for up to three evaluated arguments.
class ArgBuffer {
 public:
  ArgBuffer() = default;
  ArgBuffer(const ArgBuffer&) = delete;
  ArgBuffer& operator=(const ArgBuffer&) = delete;
  ~ArgBuffer() {
    for (std::size_t i = 0; i < size_; ++i) slot(i)->~Value();
  }

  void push(Value v) {
    assert(size_ < 3);
    new (slot(size_)) Value(std::move(v));
    ++size_;
  }

  std::span<const Value> span() const {
    return {std::launder(reinterpret_cast<const Value*>(storage_)), size_};
  }

 private:
  Value* slot(std::size_t i) {
    return std::launder(reinterpret_cast<Value*>(storage_ + i * sizeof(Value)));
  }

  alignas(Value) unsigned char storage_[3 * sizeof(Value)];
  std::size_t size_ = 0;
};

Value eval_node(const Ast& ast, const Env& env, const Inputs& inputs,
                EvalContext& ctx);

class Closure final : public Function {
 public:
  Closure(Ast abstraction, Env env, Inputs inputs)
      : abstraction_(std::move(abstraction)),
        node_(std::get<AbstractionNode>(abstraction_->node)),
        env_(std::move(env)),
        inputs_(std::move(inputs)) {}

  std::size_t arity() const override { return node_.params.size(); }

  Value call(std::span<const Value> args, EvalContext& ctx) const override {
    Env env = env_;
    for (std::size_t i = 0; i < node_.params.size(); ++i) {
      env = std::make_shared<const EnvFrame>(
          EnvFrame{node_.params[i].id, args[i], std::move(env)});
    }
    return eval_node(node_.body, env, inputs_, ctx);
  }

  std::string describe() const override { return to_source(abstraction_); }

 private:
  Ast abstraction_;
  const AbstractionNode& node_;
  Env env_;
  Inputs inputs_;
};

const Value& lookup_local(const Env& env, std::uint32_t id) {
  for (const EnvFrame* f = env.get(); f != nullptr; f = f->parent.get()) {
    if (f->id == id) return f->value;
  }
  throw std::logic_error(fmt::format("unbound local variable {}", id));
}

Value eval_node(const Ast& ast, const Env& env, const Inputs& inputs,
                EvalContext& ctx) {
  const AstNode& n = *ast;
  switch (n.node.index()) {
    case 0:
      return std::get<LiteralNode>(n.node).value;
    case 1: {
      const auto& var = std::get<VarNode>(n.node);
      switch (var.kind) {
        case VarKind::Input:
          return (*inputs)[var.index];
        case VarKind::Local:
          return lookup_local(env, var.index);
        case VarKind::Builtin:
          return var.builtin->value;
      }
      break;
    }
    case 2: {
      const auto& app = std::get<ApplyNode>(n.node);
      const auto* callee = std::get_if<VarNode>(&app.fn->node);
      ArgBuffer args;
      Value result = Value::boolean(false);
      if (callee != nullptr && callee->kind == VarKind::Builtin) {
        for (const auto& a : app.args) args.push(eval_node(a, env, inputs, ctx));
        ctx.step();
        result = callee->builtin->impl(args.span(), ctx);
      } else {
        Value fn = eval_node(app.fn, env, inputs, ctx);
        for (const auto& a : app.args) args.push(eval_node(a, env, inputs, ctx));
        result = call(fn, args.span(), ctx);
      }
      if (ctx.check_shapes() && !conforms(result, n.type)) {
        throw ShapeError(fmt::format("value {} does not conform to {} in {}",
                                     render(result), to_string(n.type),
                                     to_source(ast)));
      }
      return result;
    }
    case 3:
      return Value::function(std::make_shared<const Closure>(ast, env, inputs));
    case 4: {
      const auto& let = std::get<LetNode>(n.node);
      Value bound = eval_node(let.bound, env, inputs, ctx);
      Env inner = std::make_shared<const EnvFrame>(
          EnvFrame{let.var.id, std::move(bound), env});
      return eval_node(let.body, inner, inputs, ctx);
    }
  }
  throw std::logic_error("malformed AST node");
}

}  // namespace

Value call(const Value& fn, std::span<const Value> args, EvalContext& ctx) {
  const Function& f = fn.as_function();
  if (f.arity() != args.size()) {
    throw std::logic_error(fmt::format("{} called with {} arguments",
                                       f.describe(), args.size()));
  }
  ctx.step();
  return f.call(args, ctx);
}

EvalResult eval(const Ast& ast, std::span<const Value> inputs,
                const EvalLimits& limits, EvalOptions options) {
  EvalContext ctx(limits, options.check_shapes);
  auto shared_inputs =
      std::make_shared<const std::vector<Value>>(inputs.begin(), inputs.end());
  try {
    return eval_node(ast, nullptr, shared_inputs, ctx);
  } catch (RuntimeFault& f) {
    return std::move(f);
  }
}

}  // namespace cbgp
