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
#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cbgp/ast.hpp"
#include "cbgp/value.hpp"

namespace cbgp {

struct EvalLimits {
  std::uint64_t max_steps = 500'000;
  std::size_t max_collection_size = 100'000;
};

/// Raised when a value's runtime shape disagrees with its static type.
/// Only produced with shape checking enabled; indicates an unsound program.
class ShapeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-evaluation resource accounting shared by the interpreter and the
/// builtin implementations.
class EvalContext {
 public:
  explicit EvalContext(EvalLimits limits, bool check_shapes = false)
      : limits_(limits), check_shapes_(check_shapes) {}

  /// Charges `n` steps; throws RuntimeFault(StepLimit) past the budget.
  void step(std::uint64_t n = 1) {
    steps_ += n;
    if (steps_ > limits_.max_steps) {
      fault(FaultKind::StepLimit, "step budget exhausted");
    }
  }

  /// Accounts for a collection of `n` produced elements.
  void produce(std::size_t n) {
    if (n > limits_.max_collection_size) {
      fault(FaultKind::SizeLimit, "collection too large");
    }
    step(n);
  }

  std::uint64_t steps() const { return steps_; }
  const EvalLimits& limits() const { return limits_; }
  bool check_shapes() const { return check_shapes_; }

 private:
  EvalLimits limits_;
  bool check_shapes_;
  std::uint64_t steps_ = 0;
};

/// Invokes a function value, charging one step.
Value call(const Value& fn, std::span<const Value> args, EvalContext& ctx);

class EvalResult {
 public:
  EvalResult(Value v) : repr_(std::move(v)) {}  // NOLINT
  EvalResult(RuntimeFault f) : repr_(std::move(f)) {}  // NOLINT

  bool ok() const { return repr_.index() == 0; }
  const Value& value() const { return std::get<0>(repr_); }
  const RuntimeFault& fault() const { return std::get<1>(repr_); }

 private:
  std::variant<Value, RuntimeFault> repr_;
};

struct EvalOptions {
  /// Verify every application result against its node type.
  bool check_shapes = false;
};

/// Call-by-value evaluation with lexical closures. Deterministic; faults are
/// returned, never thrown. A ShapeError propagates (it is a host bug).
EvalResult eval(const Ast& ast, std::span<const Value> inputs,
                const EvalLimits& limits, EvalOptions options = {});

}  // namespace cbgp
