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

#include "cbgp/stdlib.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "cbgp/interp.hpp"

namespace cbgp {

namespace {

using Args = std::span<const Value>;

// ---------------------------------------------------------------------------
// Function values

class NativeFunction final : public Function {
 public:
  explicit NativeFunction(const FunctionEntry* entry) : entry_(entry) {}
  std::size_t arity() const override { return entry_->arity; }
  Value call(Args args, EvalContext& ctx) const override {
    return entry_->impl(args, ctx);
  }
  std::string describe() const override { return entry_->name; }

 private:
  const FunctionEntry* entry_;
};

class LambdaFunction final : public Function {
 public:
  LambdaFunction(std::string name, std::size_t arity,
                 std::function<Value(Args, EvalContext&)> impl)
      : name_(std::move(name)), arity_(arity), impl_(std::move(impl)) {}
  std::size_t arity() const override { return arity_; }
  Value call(Args args, EvalContext& ctx) const override {
    return impl_(args, ctx);
  }
  std::string describe() const override { return name_; }

 private:
  std::string name_;
  std::size_t arity_;
  std::function<Value(Args, EvalContext&)> impl_;
};

/// Binds a prefix of a function's arguments.
class PartialFunction final : public Function {
 public:
  PartialFunction(Value fn, std::vector<Value> bound)
      : fn_(std::move(fn)), bound_(std::move(bound)) {}
  std::size_t arity() const override {
    return fn_.as_function().arity() - bound_.size();
  }
  Value call(Args args, EvalContext& ctx) const override {
    std::vector<Value> all = bound_;
    all.insert(all.end(), args.begin(), args.end());
    return cbgp::call(fn_, all, ctx);
  }
  std::string describe() const override {
    std::string out = "partial " + fn_.as_function().describe();
    for (const auto& b : bound_) out += " " + render(b);
    return out;
  }

 private:
  Value fn_;
  std::vector<Value> bound_;
};

/// `first` then `second`: x -> second(first(x)).
class ComposedFunction final : public Function {
 public:
  ComposedFunction(Value first, Value second)
      : first_(std::move(first)), second_(std::move(second)) {}
  std::size_t arity() const override { return first_.as_function().arity(); }
  Value call(Args args, EvalContext& ctx) const override {
    Value mid = cbgp::call(first_, args, ctx);
    return cbgp::call(second_, std::span<const Value>(&mid, 1), ctx);
  }
  std::string describe() const override {
    return "comp " + first_.as_function().describe() + " " +
           second_.as_function().describe();
  }

 private:
  Value first_;
  Value second_;
};

class FlippedFunction final : public Function {
 public:
  explicit FlippedFunction(Value fn) : fn_(std::move(fn)) {}
  std::size_t arity() const override { return 2; }
  Value call(Args args, EvalContext& ctx) const override {
    std::array<Value, 2> swapped{args[1], args[0]};
    return cbgp::call(fn_, swapped, ctx);
  }
  std::string describe() const override {
    return "flip " + fn_.as_function().describe();
  }

 private:
  Value fn_;
};

class ConstantFunction final : public Function {
 public:
  explicit ConstantFunction(Value v) : v_(std::move(v)) {}
  std::size_t arity() const override { return 1; }
  Value call(Args, EvalContext&) const override { return v_; }
  std::string describe() const override { return "constantly " + render(v_); }

 private:
  Value v_;
};

// ---------------------------------------------------------------------------
// Helpers

Value call1(const Value& f, const Value& x, EvalContext& ctx) {
  return cbgp::call(f, std::span<const Value>(&x, 1), ctx);
}

Value call2(const Value& f, const Value& x, const Value& y, EvalContext& ctx) {
  std::array<Value, 2> args{x, y};
  return cbgp::call(f, args, ctx);
}

bool less(const Value& a, const Value& b) {
  return compare(a, b) == std::strong_ordering::less;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fault(FaultKind::ArithmeticFault, "int overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fault(FaultKind::ArithmeticFault, "int overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fault(FaultKind::ArithmeticFault, "int overflow");
  return r;
}

double checked_float(double x) {
  if (std::isnan(x)) fault(FaultKind::ArithmeticFault, "float result is NaN");
  return x;
}

Value vec(std::vector<Value> items, EvalContext& ctx) {
  ctx.produce(items.size());
  return Value::vector(std::move(items));
}

Value str(std::string s, EvalContext& ctx) {
  ctx.produce(s.size());
  return Value::string(std::move(s));
}

Value make_set(std::vector<Value> items, EvalContext& ctx) {
  ctx.produce(items.size());
  return Value::set(std::move(items));
}

Value make_map(std::vector<std::pair<Value, Value>> entries, EvalContext& ctx) {
  ctx.produce(entries.size());
  return Value::map(std::move(entries));
}

std::vector<Value> to_vector(Args items) {
  return std::vector<Value>(items.begin(), items.end());
}

/// Index of `key` in a sorted entry list, or npos.
std::size_t find_key(std::span<const std::pair<Value, Value>> entries,
                     const Value& key) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const auto& e, const Value& k) { return less(e.first, k); });
  if (it == entries.end() || !(it->first == key)) return std::string::npos;
  return static_cast<std::size_t>(it - entries.begin());
}

bool set_contains(Args items, const Value& x) {
  return std::binary_search(items.begin(), items.end(), x, less);
}

std::int64_t size_of(std::size_t n) { return static_cast<std::int64_t>(n); }

std::size_t clamp_count(std::int64_t n, std::size_t size) {
  if (n <= 0) return 0;
  return std::min(static_cast<std::size_t>(n), size);
}

const Value& nonempty_first(Args items, const char* what) {
  if (items.empty()) fault(FaultKind::PartialFunction, std::string(what) + " of empty collection");
  return items.front();
}

Value reduce_items(const Value& f, Args items, EvalContext& ctx) {
  Value acc = nonempty_first(items, "reduce");
  for (std::size_t i = 1; i < items.size(); ++i) acc = call2(f, acc, items[i], ctx);
  return acc;
}

Value fold_items(const Value& f, Value acc, Args items, EvalContext& ctx) {
  for (const auto& x : items) acc = call2(f, acc, x, ctx);
  return acc;
}

std::vector<Value> map_items(const Value& f, Args items, EvalContext& ctx) {
  ctx.produce(items.size());
  std::vector<Value> out;
  out.reserve(items.size());
  for (const auto& x : items) out.push_back(call1(f, x, ctx));
  return out;
}

std::vector<Value> filter_items(const Value& f, Args items, EvalContext& ctx,
                                bool keep) {
  std::vector<Value> out;
  for (const auto& x : items) {
    if (call1(f, x, ctx).as_bool() == keep) out.push_back(x);
  }
  return out;
}

Value entry_tuple(const std::pair<Value, Value>& e) {
  return Value::tuple(e.first, e.second);
}

char ascii_upper(char c) {
  return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}
char ascii_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::size_t checked_index(std::int64_t i, std::size_t size) {
  if (i < 0 || static_cast<std::uint64_t>(i) >= size) {
    fault(FaultKind::PartialFunction, fmt::format("index {} out of range", i));
  }
  return static_cast<std::size_t>(i);
}

// ---------------------------------------------------------------------------
// Definitions

struct Def {
  const char* name;
  const char* type;
  const char* doc;
  BuiltinImpl impl;
};

#define CBGP_FN +[](Args a, EvalContext& ctx) -> Value
#define CBGP_UNUSED_CTX (void)ctx

std::vector<Def> vector_defs() {
  return {
      {"map-vector", "((v0)->v1,Vector[v0])->Vector[v1]",
       "Applies a function to every element.",
       CBGP_FN { return Value::vector(map_items(a[0], a[1].items(), ctx)); }},
      {"filter-vector", "((v0)->Boolean,Vector[v0])->Vector[v0]",
       "Keeps the elements satisfying a predicate.",
       CBGP_FN { return Value::vector(filter_items(a[0], a[1].items(), ctx, true)); }},
      {"remove-vector", "((v0)->Boolean,Vector[v0])->Vector[v0]",
       "Drops the elements satisfying a predicate.",
       CBGP_FN { return Value::vector(filter_items(a[0], a[1].items(), ctx, false)); }},
      {"reduce-vector", "((v0,v0)->v0,Vector[v0])->v0",
       "Left fold seeded with the first element; faults when empty.",
       CBGP_FN { return reduce_items(a[0], a[1].items(), ctx); }},
      {"fold-vector", "((v1,v0)->v1,v1,Vector[v0])->v1",
       "Left fold from an initial accumulator.",
       CBGP_FN { return fold_items(a[0], a[1], a[2].items(), ctx); }},
      {"mapcat", "((v0)->Vector[v1],Vector[v0])->Vector[v1]",
       "Maps each element to a vector and concatenates the results.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[1].items()) {
           Value part = call1(a[0], x, ctx);
           ctx.produce(out.size() + part.items().size());
           out.insert(out.end(), part.items().begin(), part.items().end());
         }
         return Value::vector(std::move(out));
       }},
      {"first", "(Vector[v0])->v0", "First element; faults when empty.",
       CBGP_FN { CBGP_UNUSED_CTX; return nonempty_first(a[0].items(), "first"); }},
      {"last", "(Vector[v0])->v0", "Last element; faults when empty.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         nonempty_first(a[0].items(), "last");
         return a[0].items().back();
       }},
      {"rest", "(Vector[v0])->Vector[v0]", "All but the first element.",
       CBGP_FN {
         auto xs = a[0].items();
         return vec(xs.empty() ? std::vector<Value>{} : to_vector(xs.subspan(1)), ctx);
       }},
      {"butlast", "(Vector[v0])->Vector[v0]", "All but the last element.",
       CBGP_FN {
         auto xs = a[0].items();
         return vec(xs.empty() ? std::vector<Value>{}
                               : to_vector(xs.first(xs.size() - 1)),
                    ctx);
       }},
      {"nth", "(Vector[v0],Int)->v0", "Element at an index; faults out of range.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto xs = a[0].items();
         return xs[checked_index(a[1].as_int(), xs.size())];
       }},
      {"index-of", "(Vector[v0],v0)->Int",
       "Index of the first equal element, or -1.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto xs = a[0].items();
         for (std::size_t i = 0; i < xs.size(); ++i) {
           if (xs[i] == a[1]) return Value::integer(size_of(i));
         }
         return Value::integer(-1);
       }},
      {"length", "(Vector[v0])->Int", "Number of elements.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(size_of(a[0].items().size())); }},
      {"reverse", "(Vector[v0])->Vector[v0]", "Elements in reverse order.",
       CBGP_FN {
         auto out = to_vector(a[0].items());
         std::reverse(out.begin(), out.end());
         return vec(std::move(out), ctx);
       }},
      {"sort", "(Vector[v0])->Vector[v0]", "Ascending stable sort.",
       CBGP_FN {
         auto out = to_vector(a[0].items());
         std::stable_sort(out.begin(), out.end(), less);
         return vec(std::move(out), ctx);
       }},
      {"sort-by", "((v0)->v1,Vector[v0])->Vector[v0]",
       "Stable sort by the key a function assigns to each element.",
       CBGP_FN {
         auto xs = a[1].items();
         auto keys = map_items(a[0], xs, ctx);
         std::vector<std::size_t> order(xs.size());
         for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
         std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
           return less(keys[i], keys[j]);
         });
         std::vector<Value> out;
         out.reserve(xs.size());
         for (auto i : order) out.push_back(xs[i]);
         return Value::vector(std::move(out));
       }},
      {"concat", "(Vector[v0],Vector[v0])->Vector[v0]", "Concatenation.",
       CBGP_FN {
         auto out = to_vector(a[0].items());
         ctx.produce(out.size() + a[1].items().size());
         out.insert(out.end(), a[1].items().begin(), a[1].items().end());
         return Value::vector(std::move(out));
       }},
      {"take", "(Vector[v0],Int)->Vector[v0]", "The first n elements.",
       CBGP_FN {
         auto xs = a[0].items();
         return vec(to_vector(xs.first(clamp_count(a[1].as_int(), xs.size()))), ctx);
       }},
      {"drop", "(Vector[v0],Int)->Vector[v0]", "All but the first n elements.",
       CBGP_FN {
         auto xs = a[0].items();
         return vec(to_vector(xs.subspan(clamp_count(a[1].as_int(), xs.size()))), ctx);
       }},
      {"conj-vector", "(Vector[v0],v0)->Vector[v0]", "Appends an element.",
       CBGP_FN {
         auto out = to_vector(a[0].items());
         out.push_back(a[1]);
         return vec(std::move(out), ctx);
       }},
      {"empty-vector", "Vector[v0]", "The empty vector.", nullptr},
      {"vector-of", "(v0)->Vector[v0]", "Single-element vector.",
       CBGP_FN { return vec({a[0]}, ctx); }},
      {"vector-contains?", "(Vector[v0],v0)->Boolean",
       "Whether an equal element is present.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         for (const auto& x : a[0].items()) {
           if (x == a[1]) return Value::boolean(true);
         }
         return Value::boolean(false);
       }},
      {"distinct", "(Vector[v0])->Vector[v0]",
       "Removes later duplicates, keeping first occurrences.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[0].items()) {
           if (std::none_of(out.begin(), out.end(), [&](const Value& y) { return y == x; })) {
             out.push_back(x);
           }
         }
         return vec(std::move(out), ctx);
       }},
      {"repeat", "(v0,Int)->Vector[v0]", "A vector of n copies.",
       CBGP_FN {
         auto n = a[1].as_int();
         if (n <= 0) return Value::vector({});
         ctx.produce(static_cast<std::uint64_t>(n) > ctx.limits().max_collection_size
                         ? ctx.limits().max_collection_size + 1
                         : static_cast<std::size_t>(n));
         return Value::vector(std::vector<Value>(static_cast<std::size_t>(n), a[0]));
       }},
      {"zip", "(Vector[v0],Vector[v1])->Vector[Tuple[v0,v1]]",
       "Pairs elements position-wise up to the shorter length.",
       CBGP_FN {
         auto xs = a[0].items();
         auto ys = a[1].items();
         std::vector<Value> out;
         for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
           out.push_back(Value::tuple(xs[i], ys[i]));
         }
         return vec(std::move(out), ctx);
       }},
      {"empty-vector?", "(Vector[v0])->Boolean", "Whether the vector is empty.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].items().empty()); }},
      {"group-by", "((v0)->v1,Vector[v0])->Map[v1,Vector[v0]]",
       "Groups elements by key, preserving order within each group.",
       CBGP_FN {
         auto xs = a[1].items();
         auto keys = map_items(a[0], xs, ctx);
         std::vector<std::pair<Value, std::vector<Value>>> groups;
         std::vector<std::size_t> order(xs.size());
         for (std::size_t i = 0; i < xs.size(); ++i) order[i] = i;
         std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
           return less(keys[i], keys[j]);
         });
         for (auto i : order) {
           if (groups.empty() || !(groups.back().first == keys[i])) {
             groups.emplace_back(keys[i], std::vector<Value>{});
           }
           groups.back().second.push_back(xs[i]);
         }
         std::vector<std::pair<Value, Value>> entries;
         for (auto& [k, members] : groups) {
           entries.emplace_back(k, Value::vector(std::move(members)));
         }
         return Value::map_sorted(std::move(entries));
       }},
      {"frequencies", "(Vector[v0])->Map[v0,Int]", "Occurrence count per element.",
       CBGP_FN {
         auto xs = to_vector(a[0].items());
         std::stable_sort(xs.begin(), xs.end(), less);
         std::vector<std::pair<Value, Value>> entries;
         for (const auto& x : xs) {
           if (!entries.empty() && entries.back().first == x) {
             entries.back().second = Value::integer(entries.back().second.as_int() + 1);
           } else {
             entries.emplace_back(x, Value::integer(1));
           }
         }
         ctx.produce(entries.size());
         return Value::map_sorted(std::move(entries));
       }},
      {"any?", "((v0)->Boolean,Vector[v0])->Boolean",
       "Whether some element satisfies the predicate.",
       CBGP_FN {
         for (const auto& x : a[1].items()) {
           if (call1(a[0], x, ctx).as_bool()) return Value::boolean(true);
         }
         return Value::boolean(false);
       }},
      {"every?", "((v0)->Boolean,Vector[v0])->Boolean",
       "Whether every element satisfies the predicate.",
       CBGP_FN {
         for (const auto& x : a[1].items()) {
           if (!call1(a[0], x, ctx).as_bool()) return Value::boolean(false);
         }
         return Value::boolean(true);
       }},
      {"remove-element", "(Vector[v0],v0)->Vector[v0]",
       "Drops every element equal to the given value.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[0].items()) {
           if (!(x == a[1])) out.push_back(x);
         }
         return vec(std::move(out), ctx);
       }},
      {"replace-element", "(Vector[v0],v0,v0)->Vector[v0]",
       "Replaces every occurrence of a value with another.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[0].items()) out.push_back(x == a[1] ? a[2] : x);
         return vec(std::move(out), ctx);
       }},
      {"assoc-nth", "(Vector[v0],Int,v0)->Vector[v0]",
       "Replaces the element at an index; faults out of range.",
       CBGP_FN {
         auto out = to_vector(a[0].items());
         out[checked_index(a[1].as_int(), out.size())] = a[2];
         return vec(std::move(out), ctx);
       }},
      {"take-while", "((v0)->Boolean,Vector[v0])->Vector[v0]",
       "Longest prefix satisfying the predicate.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[1].items()) {
           if (!call1(a[0], x, ctx).as_bool()) break;
           out.push_back(x);
         }
         return vec(std::move(out), ctx);
       }},
      {"drop-while", "((v0)->Boolean,Vector[v0])->Vector[v0]",
       "Drops the longest prefix satisfying the predicate.",
       CBGP_FN {
         auto xs = a[1].items();
         std::size_t i = 0;
         while (i < xs.size() && call1(a[0], xs[i], ctx).as_bool()) ++i;
         return vec(to_vector(xs.subspan(i)), ctx);
       }},
      {"vector-max", "(Vector[v0])->v0", "Largest element; faults when empty.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto xs = a[0].items();
         nonempty_first(xs, "vector-max");
         return *std::max_element(xs.begin(), xs.end(), less);
       }},
      {"vector-min", "(Vector[v0])->v0", "Smallest element; faults when empty.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto xs = a[0].items();
         nonempty_first(xs, "vector-min");
         return *std::min_element(xs.begin(), xs.end(), less);
       }},
      {"vector-to-set", "(Vector[v0])->Set[v0]", "Distinct elements as a set.",
       CBGP_FN { return make_set(to_vector(a[0].items()), ctx); }},
      {"set-to-vector", "(Set[v0])->Vector[v0]", "Set elements in ascending order.",
       CBGP_FN { return vec(to_vector(a[0].items()), ctx); }},
      {"map-to-vector", "(Map[v0,v1])->Vector[Tuple[v0,v1]]",
       "Entries as key-value tuples in key order.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& e : a[0].entries()) out.push_back(entry_tuple(e));
         return vec(std::move(out), ctx);
       }},
      {"vector-to-map", "(Vector[Tuple[v0,v1]])->Map[v0,v1]",
       "Builds a map from key-value tuples; later keys win.",
       CBGP_FN {
         std::vector<std::pair<Value, Value>> entries;
         for (const auto& t : a[0].items()) entries.emplace_back(t.first(), t.second());
         return make_map(std::move(entries), ctx);
       }},
  };
}

Value set_op(Args a, EvalContext& ctx, int op) {
  auto xs = a[0].items();
  auto ys = a[1].items();
  std::vector<Value> out;
  switch (op) {
    case 0:
      std::set_union(xs.begin(), xs.end(), ys.begin(), ys.end(),
                     std::back_inserter(out), less);
      break;
    case 1:
      std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(),
                            std::back_inserter(out), less);
      break;
    default:
      std::set_difference(xs.begin(), xs.end(), ys.begin(), ys.end(),
                          std::back_inserter(out), less);
      break;
  }
  ctx.produce(out.size());
  return Value::set_sorted(std::move(out));
}

std::vector<Def> set_defs() {
  return {
      {"map-set", "((v0)->v1,Set[v0])->Set[v1]",
       "Applies a function to every element, collecting a set.",
       CBGP_FN { return Value::set(map_items(a[0], a[1].items(), ctx)); }},
      {"filter-set", "((v0)->Boolean,Set[v0])->Set[v0]",
       "Keeps the elements satisfying a predicate.",
       CBGP_FN { return Value::set_sorted(filter_items(a[0], a[1].items(), ctx, true)); }},
      {"reduce-set", "((v0,v0)->v0,Set[v0])->v0",
       "Reduces elements in ascending order; faults when empty.",
       CBGP_FN { return reduce_items(a[0], a[1].items(), ctx); }},
      {"fold-set", "((v1,v0)->v1,v1,Set[v0])->v1",
       "Folds elements in ascending order from an initial accumulator.",
       CBGP_FN { return fold_items(a[0], a[1], a[2].items(), ctx); }},
      {"mapcat-set", "((v0)->Set[v1],Set[v0])->Set[v1]",
       "Union of the sets a function assigns to each element.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[1].items()) {
           Value part = call1(a[0], x, ctx);
           ctx.produce(out.size() + part.items().size());
           out.insert(out.end(), part.items().begin(), part.items().end());
         }
         return Value::set(std::move(out));
       }},
      {"set-union", "(Set[v0],Set[v0])->Set[v0]", "Set union.",
       CBGP_FN { return set_op(a, ctx, 0); }},
      {"set-intersection", "(Set[v0],Set[v0])->Set[v0]", "Set intersection.",
       CBGP_FN { return set_op(a, ctx, 1); }},
      {"set-difference", "(Set[v0],Set[v0])->Set[v0]",
       "Elements of the first set absent from the second.",
       CBGP_FN { return set_op(a, ctx, 2); }},
      {"set-contains?", "(Set[v0],v0)->Boolean", "Membership test.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(set_contains(a[0].items(), a[1])); }},
      {"set-insert", "(Set[v0],v0)->Set[v0]", "Adds an element.",
       CBGP_FN {
         auto out = to_vector(a[0].items());
         out.push_back(a[1]);
         return make_set(std::move(out), ctx);
       }},
      {"set-remove", "(Set[v0],v0)->Set[v0]", "Removes an element if present.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& x : a[0].items()) {
           if (!(x == a[1])) out.push_back(x);
         }
         ctx.produce(out.size());
         return Value::set_sorted(std::move(out));
       }},
      {"set-size", "(Set[v0])->Int", "Number of elements.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(size_of(a[0].items().size())); }},
      {"empty-set", "Set[v0]", "The empty set.", nullptr},
      {"set-subset?", "(Set[v0],Set[v0])->Boolean",
       "Whether the first set is contained in the second.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto xs = a[0].items();
         auto ys = a[1].items();
         return Value::boolean(std::includes(ys.begin(), ys.end(), xs.begin(), xs.end(), less));
       }},
      {"set-empty?", "(Set[v0])->Boolean", "Whether the set is empty.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].items().empty()); }},
      {"singleton-set", "(v0)->Set[v0]", "Single-element set.",
       CBGP_FN { return make_set({a[0]}, ctx); }},
  };
}

std::vector<Def> map_defs() {
  return {
      {"map-get", "(Map[v0,v1],v0)->v1", "Value under a key; faults when absent.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto i = find_key(a[0].entries(), a[1]);
         if (i == std::string::npos) fault(FaultKind::PartialFunction, "missing key");
         return a[0].entries()[i].second;
       }},
      {"map-get-or-default", "(Map[v0,v1],v0,v1)->v1",
       "Value under a key, or the default when absent.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto i = find_key(a[0].entries(), a[1]);
         return i == std::string::npos ? a[2] : a[0].entries()[i].second;
       }},
      {"map-contains-key?", "(Map[v0,v1],v0)->Boolean", "Whether a key is present.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::boolean(find_key(a[0].entries(), a[1]) != std::string::npos);
       }},
      {"keys", "(Map[v0,v1])->Vector[v0]", "Keys in ascending order.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& e : a[0].entries()) out.push_back(e.first);
         return vec(std::move(out), ctx);
       }},
      {"vals", "(Map[v0,v1])->Vector[v1]", "Values in key order.",
       CBGP_FN {
         std::vector<Value> out;
         for (const auto& e : a[0].entries()) out.push_back(e.second);
         return vec(std::move(out), ctx);
       }},
      {"assoc", "(Map[v0,v1],v0,v1)->Map[v0,v1]", "Sets the value under a key.",
       CBGP_FN {
         auto entries = std::vector<std::pair<Value, Value>>(a[0].entries().begin(),
                                                             a[0].entries().end());
         entries.emplace_back(a[1], a[2]);
         return make_map(std::move(entries), ctx);
       }},
      {"dissoc", "(Map[v0,v1],v0)->Map[v0,v1]", "Removes a key if present.",
       CBGP_FN {
         std::vector<std::pair<Value, Value>> out;
         for (const auto& e : a[0].entries()) {
           if (!(e.first == a[1])) out.push_back(e);
         }
         ctx.produce(out.size());
         return Value::map_sorted(std::move(out));
       }},
      {"map-size", "(Map[v0,v1])->Int", "Number of entries.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(size_of(a[0].entries().size())); }},
      {"empty-map", "Map[v0,v1]", "The empty map.", nullptr},
      {"merge", "(Map[v0,v1],Map[v0,v1])->Map[v0,v1]",
       "Union of entries; the second map wins on shared keys.",
       CBGP_FN {
         auto entries = std::vector<std::pair<Value, Value>>(a[0].entries().begin(),
                                                             a[0].entries().end());
         entries.insert(entries.end(), a[1].entries().begin(), a[1].entries().end());
         return make_map(std::move(entries), ctx);
       }},
      {"map-map", "((Tuple[v0,v1])->Tuple[v2,v3],Map[v0,v1])->Map[v2,v3]",
       "Maps each entry to a new key-value tuple.",
       CBGP_FN {
         std::vector<std::pair<Value, Value>> out;
         for (const auto& e : a[1].entries()) {
           Value t = call1(a[0], entry_tuple(e), ctx);
           out.emplace_back(t.first(), t.second());
         }
         return make_map(std::move(out), ctx);
       }},
      {"update-vals", "((v1)->v2,Map[v0,v1])->Map[v0,v2]",
       "Applies a function to every value.",
       CBGP_FN {
         std::vector<std::pair<Value, Value>> out;
         for (const auto& e : a[1].entries()) {
           out.emplace_back(e.first, call1(a[0], e.second, ctx));
         }
         ctx.produce(out.size());
         return Value::map_sorted(std::move(out));
       }},
      {"filter-map", "((Tuple[v0,v1])->Boolean,Map[v0,v1])->Map[v0,v1]",
       "Keeps the entries satisfying a predicate.",
       CBGP_FN {
         std::vector<std::pair<Value, Value>> out;
         for (const auto& e : a[1].entries()) {
           if (call1(a[0], entry_tuple(e), ctx).as_bool()) out.push_back(e);
         }
         return Value::map_sorted(std::move(out));
       }},
      {"reduce-map", "((Tuple[v0,v1],Tuple[v0,v1])->Tuple[v0,v1],Map[v0,v1])->Tuple[v0,v1]",
       "Reduces entries in key order; faults when empty.",
       CBGP_FN {
         std::vector<Value> tuples;
         for (const auto& e : a[1].entries()) tuples.push_back(entry_tuple(e));
         return reduce_items(a[0], tuples, ctx);
       }},
      {"fold-map", "((v2,Tuple[v0,v1])->v2,v2,Map[v0,v1])->v2",
       "Folds entries in key order from an initial accumulator.",
       CBGP_FN {
         std::vector<Value> tuples;
         for (const auto& e : a[2].entries()) tuples.push_back(entry_tuple(e));
         return fold_items(a[0], a[1], tuples, ctx);
       }},
      {"zipmap", "(Vector[v0],Vector[v1])->Map[v0,v1]",
       "Map from position-wise key and value vectors.",
       CBGP_FN {
         auto ks = a[0].items();
         auto vs = a[1].items();
         std::vector<std::pair<Value, Value>> out;
         for (std::size_t i = 0; i < std::min(ks.size(), vs.size()); ++i) {
           out.emplace_back(ks[i], vs[i]);
         }
         return make_map(std::move(out), ctx);
       }},
  };
}

std::vector<Def> tuple_and_fn_defs() {
  return {
      {"tuple", "(v0,v1)->Tuple[v0,v1]", "Pairs two values.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::tuple(a[0], a[1]); }},
      {"tuple-first", "(Tuple[v0,v1])->v0", "First component.",
       CBGP_FN { CBGP_UNUSED_CTX; return a[0].first(); }},
      {"tuple-second", "(Tuple[v0,v1])->v1", "Second component.",
       CBGP_FN { CBGP_UNUSED_CTX; return a[0].second(); }},
      {"tuple-swap", "(Tuple[v0,v1])->Tuple[v1,v0]", "Swaps the components.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::tuple(a[0].second(), a[0].first()); }},
      {"comp", "((v0)->v1,(v1)->v2)->(v0)->v2",
       "Composition: applies the first function, then the second.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(std::make_shared<ComposedFunction>(a[0], a[1]));
       }},
      {"comp2", "((v0,v1)->v2,(v2)->v3)->(v0,v1)->v3",
       "Composes a binary function with a unary one.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(std::make_shared<ComposedFunction>(a[0], a[1]));
       }},
      {"partial1-of-2", "((v0,v1)->v2,v0)->(v1)->v2",
       "Binds the first argument of a binary function.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(std::make_shared<PartialFunction>(a[0], std::vector<Value>{a[1]}));
       }},
      {"partial1-of-3", "((v0,v1,v2)->v3,v0)->(v1,v2)->v3",
       "Binds the first argument of a ternary function.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(std::make_shared<PartialFunction>(a[0], std::vector<Value>{a[1]}));
       }},
      {"partial2-of-3", "((v0,v1,v2)->v3,v0,v1)->(v2)->v3",
       "Binds the first two arguments of a ternary function.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(
             std::make_shared<PartialFunction>(a[0], std::vector<Value>{a[1], a[2]}));
       }},
      {"flip", "((v0,v1)->v2)->(v1,v0)->v2", "Swaps the arguments of a binary function.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(std::make_shared<FlippedFunction>(a[0]));
       }},
      {"constantly", "(v0)->(v1)->v0", "A unary function that ignores its argument.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::function(std::make_shared<ConstantFunction>(a[0]));
       }},
      {"=", "(v0,v0)->Boolean", "Structural equality.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0] == a[1]); }},
      {"not=", "(v0,v0)->Boolean", "Structural inequality.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(!(a[0] == a[1])); }},
      {"<", "(v0,v0)->Boolean", "Strictly less in the structural order.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(compare(a[0], a[1]) < 0); }},
      {"<=", "(v0,v0)->Boolean", "Less or equal in the structural order.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(compare(a[0], a[1]) <= 0); }},
      {">", "(v0,v0)->Boolean", "Strictly greater in the structural order.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(compare(a[0], a[1]) > 0); }},
      {">=", "(v0,v0)->Boolean", "Greater or equal in the structural order.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(compare(a[0], a[1]) >= 0); }},
      {"max", "(v0,v0)->v0", "The larger of two values.",
       CBGP_FN { CBGP_UNUSED_CTX; return less(a[0], a[1]) ? a[1] : a[0]; }},
      {"min", "(v0,v0)->v0", "The smaller of two values.",
       CBGP_FN { CBGP_UNUSED_CTX; return less(a[1], a[0]) ? a[1] : a[0]; }},
      {"if", "(Boolean,v0,v0)->v0", "Selects the second or third argument.",
       CBGP_FN { CBGP_UNUSED_CTX; return a[0].as_bool() ? a[1] : a[2]; }},
  };
}

std::vector<Def> int_defs() {
  return {
      {"int-add", "(Int,Int)->Int", "Addition; faults on overflow.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(checked_add(a[0].as_int(), a[1].as_int())); }},
      {"int-sub", "(Int,Int)->Int", "Subtraction; faults on overflow.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(checked_sub(a[0].as_int(), a[1].as_int())); }},
      {"int-mult", "(Int,Int)->Int", "Multiplication; faults on overflow.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(checked_mul(a[0].as_int(), a[1].as_int())); }},
      {"int-quot", "(Int,Int)->Int", "Truncating division; faults on zero divisor.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto x = a[0].as_int();
         auto y = a[1].as_int();
         if (y == 0) fault(FaultKind::ArithmeticFault, "division by zero");
         if (x == std::numeric_limits<std::int64_t>::min() && y == -1) {
           fault(FaultKind::ArithmeticFault, "int overflow");
         }
         return Value::integer(x / y);
       }},
      {"int-mod", "(Int,Int)->Int",
       "Floored modulus (sign of the divisor); faults on zero divisor.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto x = a[0].as_int();
         auto y = a[1].as_int();
         if (y == 0) fault(FaultKind::ArithmeticFault, "modulo by zero");
         if (y == -1) return Value::integer(0);
         auto r = x % y;
         if (r != 0 && ((r < 0) != (y < 0))) r += y;
         return Value::integer(r);
       }},
      {"int-inc", "(Int)->Int", "Adds one.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(checked_add(a[0].as_int(), 1)); }},
      {"int-dec", "(Int)->Int", "Subtracts one.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(checked_sub(a[0].as_int(), 1)); }},
      {"int-neg", "(Int)->Int", "Negation.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(checked_sub(0, a[0].as_int())); }},
      {"int-abs", "(Int)->Int", "Absolute value.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto x = a[0].as_int();
         return Value::integer(x < 0 ? checked_sub(0, x) : x);
       }},
      {"range", "(Int)->Vector[Int]", "The integers 0..n-1.",
       CBGP_FN {
         auto n = a[0].as_int();
         if (n <= 0) return Value::vector({});
         if (static_cast<std::uint64_t>(n) > ctx.limits().max_collection_size) {
           fault(FaultKind::SizeLimit, "range too large");
         }
         ctx.produce(static_cast<std::size_t>(n));
         std::vector<Value> out;
         out.reserve(static_cast<std::size_t>(n));
         for (std::int64_t i = 0; i < n; ++i) out.push_back(Value::integer(i));
         return Value::vector(std::move(out));
       }},
      {"range-between", "(Int,Int)->Vector[Int]", "The integers from a up to b-1.",
       CBGP_FN {
         auto lo = a[0].as_int();
         auto hi = a[1].as_int();
         if (hi <= lo) return Value::vector({});
         auto n = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
         if (n > ctx.limits().max_collection_size) {
           fault(FaultKind::SizeLimit, "range too large");
         }
         ctx.produce(static_cast<std::size_t>(n));
         std::vector<Value> out;
         for (auto i = lo; i < hi; ++i) out.push_back(Value::integer(i));
         return Value::vector(std::move(out));
       }},
      {"zero-int?", "(Int)->Boolean", "Whether the integer is zero.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_int() == 0); }},
      {"pos-int?", "(Int)->Boolean", "Whether the integer is positive.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_int() > 0); }},
      {"neg-int?", "(Int)->Boolean", "Whether the integer is negative.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_int() < 0); }},
      {"even?", "(Int)->Boolean", "Whether the integer is even.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_int() % 2 == 0); }},
      {"odd?", "(Int)->Boolean", "Whether the integer is odd.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_int() % 2 != 0); }},
      {"int->float", "(Int)->Float", "Converts to a float.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(static_cast<double>(a[0].as_int())); }},
      {"float->int", "(Float)->Int", "Floor to an integer; faults outside the Int range.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         double f = std::floor(a[0].as_float());
         if (!(f >= -9.2e18 && f <= 9.2e18)) fault(FaultKind::ArithmeticFault, "float out of Int range");
         return Value::integer(static_cast<std::int64_t>(f));
       }},
      {"int->char", "(Int)->Char", "ASCII character with code n mod 128.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto r = a[0].as_int() % 128;
         if (r < 0) r += 128;
         return Value::character(static_cast<char>(r));
       }},
      {"char->int", "(Char)->Int", "ASCII code of a character.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(static_cast<unsigned char>(a[0].as_char())); }},
      {"int->string", "(Int)->String", "Decimal rendering.",
       CBGP_FN { return str(std::to_string(a[0].as_int()), ctx); }},
  };
}

std::vector<Def> float_defs() {
  auto binary = [](double (*op)(double, double)) { return op; };
  (void)binary;
  return {
      {"float-add", "(Float,Float)->Float", "Addition.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(a[0].as_float() + a[1].as_float())); }},
      {"float-sub", "(Float,Float)->Float", "Subtraction.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(a[0].as_float() - a[1].as_float())); }},
      {"float-mult", "(Float,Float)->Float", "Multiplication.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(a[0].as_float() * a[1].as_float())); }},
      {"float-div", "(Float,Float)->Float", "Division; faults on a zero divisor.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         if (a[1].as_float() == 0.0) fault(FaultKind::ArithmeticFault, "division by zero");
         return Value::floating(checked_float(a[0].as_float() / a[1].as_float()));
       }},
      {"float-neg", "(Float)->Float", "Negation.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(-a[0].as_float()); }},
      {"float-abs", "(Float)->Float", "Absolute value.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(std::fabs(a[0].as_float())); }},
      {"float-inc", "(Float)->Float", "Adds one.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(a[0].as_float() + 1.0)); }},
      {"float-dec", "(Float)->Float", "Subtracts one.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(a[0].as_float() - 1.0)); }},
      {"sqrt", "(Float)->Float", "Square root; faults on negative input.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         if (a[0].as_float() < 0.0) fault(FaultKind::ArithmeticFault, "sqrt of negative");
         return Value::floating(checked_float(std::sqrt(a[0].as_float())));
       }},
      {"sin", "(Float)->Float", "Sine.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(std::sin(a[0].as_float()))); }},
      {"cos", "(Float)->Float", "Cosine.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::floating(checked_float(std::cos(a[0].as_float()))); }},
      {"zero-float?", "(Float)->Boolean", "Whether the float is zero.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_float() == 0.0); }},
  };
}

std::vector<Def> bool_defs() {
  return {
      {"and", "(Boolean,Boolean)->Boolean", "Logical conjunction.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_bool() && a[1].as_bool()); }},
      {"or", "(Boolean,Boolean)->Boolean", "Logical disjunction.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_bool() || a[1].as_bool()); }},
      {"not", "(Boolean)->Boolean", "Logical negation.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(!a[0].as_bool()); }},
  };
}

std::vector<Def> text_defs() {
  return {
      {"char-upper", "(Char)->Char", "Uppercase of an ASCII letter.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::character(ascii_upper(a[0].as_char())); }},
      {"char-lower", "(Char)->Char", "Lowercase of an ASCII letter.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::character(ascii_lower(a[0].as_char())); }},
      {"upper?", "(Char)->Boolean", "Whether the character is an uppercase letter.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(std::isupper(static_cast<unsigned char>(a[0].as_char())) != 0); }},
      {"lower?", "(Char)->Boolean", "Whether the character is a lowercase letter.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(std::islower(static_cast<unsigned char>(a[0].as_char())) != 0); }},
      {"digit?", "(Char)->Boolean", "Whether the character is a decimal digit.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(std::isdigit(static_cast<unsigned char>(a[0].as_char())) != 0); }},
      {"letter?", "(Char)->Boolean", "Whether the character is a letter.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(std::isalpha(static_cast<unsigned char>(a[0].as_char())) != 0); }},
      {"char->string", "(Char)->String", "One-character string.",
       CBGP_FN { return str(std::string(1, a[0].as_char()), ctx); }},
      {"first-char", "(String)->Char", "First character; faults when empty.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         if (a[0].as_string().empty()) fault(FaultKind::PartialFunction, "first-char of empty string");
         return Value::character(a[0].as_string().front());
       }},
      {"last-char", "(String)->Char", "Last character; faults when empty.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         if (a[0].as_string().empty()) fault(FaultKind::PartialFunction, "last-char of empty string");
         return Value::character(a[0].as_string().back());
       }},
      {"nth-char", "(String,Int)->Char", "Character at an index; faults out of range.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         const auto& s = a[0].as_string();
         return Value::character(s[checked_index(a[1].as_int(), s.size())]);
       }},
      {"index-of-char", "(String,Char)->Int", "Index of the first occurrence, or -1.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         auto i = a[0].as_string().find(a[1].as_char());
         return Value::integer(i == std::string::npos ? -1 : size_of(i));
       }},
      {"char-in?", "(String,Char)->Boolean", "Whether the string contains the character.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::boolean(a[0].as_string().find(a[1].as_char()) != std::string::npos);
       }},
      {"replace-char", "(String,Char,Char)->String", "Replaces every occurrence of a character.",
       CBGP_FN {
         auto s = a[0].as_string();
         std::replace(s.begin(), s.end(), a[1].as_char(), a[2].as_char());
         return str(std::move(s), ctx);
       }},
      {"conj-char", "(String,Char)->String", "Appends a character.",
       CBGP_FN { return str(a[0].as_string() + a[1].as_char(), ctx); }},
      {"string-to-chars", "(String)->Vector[Char]", "Characters of a string.",
       CBGP_FN {
         std::vector<Value> out;
         for (char c : a[0].as_string()) out.push_back(Value::character(c));
         return vec(std::move(out), ctx);
       }},
      {"join-chars", "(Vector[Char])->String", "String from characters.",
       CBGP_FN {
         std::string s;
         for (const auto& c : a[0].items()) s += c.as_char();
         return str(std::move(s), ctx);
       }},
      {"str-concat", "(String,String)->String", "Concatenation.",
       CBGP_FN { return str(a[0].as_string() + a[1].as_string(), ctx); }},
      {"str-length", "(String)->Int", "Number of characters.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::integer(size_of(a[0].as_string().size())); }},
      {"str-reverse", "(String)->String", "Characters in reverse order.",
       CBGP_FN {
         auto s = a[0].as_string();
         std::reverse(s.begin(), s.end());
         return str(std::move(s), ctx);
       }},
      {"substring", "(String,Int,Int)->String",
       "Characters from start up to end, with indices clamped.",
       CBGP_FN {
         const auto& s = a[0].as_string();
         auto start = clamp_count(a[1].as_int(), s.size());
         auto end = clamp_count(a[2].as_int(), s.size());
         return str(end <= start ? std::string() : s.substr(start, end - start), ctx);
       }},
      {"str-upper", "(String)->String", "Uppercases ASCII letters.",
       CBGP_FN {
         auto s = a[0].as_string();
         std::transform(s.begin(), s.end(), s.begin(), ascii_upper);
         return str(std::move(s), ctx);
       }},
      {"str-lower", "(String)->String", "Lowercases ASCII letters.",
       CBGP_FN {
         auto s = a[0].as_string();
         std::transform(s.begin(), s.end(), s.begin(), ascii_lower);
         return str(std::move(s), ctx);
       }},
      {"join", "(Vector[String])->String", "Concatenates strings.",
       CBGP_FN {
         std::string s;
         for (const auto& x : a[0].items()) {
           s += x.as_string();
           ctx.produce(s.size());
         }
         return Value::string(std::move(s));
       }},
      {"split-words", "(String)->Vector[String]", "Whitespace-separated tokens.",
       CBGP_FN {
         std::vector<Value> out;
         std::string cur;
         for (char c : a[0].as_string()) {
           if (std::isspace(static_cast<unsigned char>(c))) {
             if (!cur.empty()) out.push_back(Value::string(std::exchange(cur, {})));
           } else {
             cur += c;
           }
         }
         if (!cur.empty()) out.push_back(Value::string(cur));
         return vec(std::move(out), ctx);
       }},
      {"str-contains?", "(String,String)->Boolean", "Whether the second string occurs in the first.",
       CBGP_FN {
         CBGP_UNUSED_CTX;
         return Value::boolean(a[0].as_string().find(a[1].as_string()) != std::string::npos);
       }},
      {"empty-str?", "(String)->Boolean", "Whether the string is empty.",
       CBGP_FN { CBGP_UNUSED_CTX; return Value::boolean(a[0].as_string().empty()); }},
  };
}

#undef CBGP_FN
#undef CBGP_UNUSED_CTX

Value constant_for(std::string_view name) {
  if (name == "empty-vector") return Value::vector({});
  if (name == "empty-set") return Value::set_sorted({});
  return Value::map_sorted({});
}

}  // namespace

const FunctionRegistry& FunctionRegistry::standard() {
  static const FunctionRegistry registry;
  return registry;
}

FunctionRegistry::FunctionRegistry() {
  std::vector<Def> defs;
  for (auto group : {vector_defs(), set_defs(), map_defs(), tuple_and_fn_defs(),
                     int_defs(), float_defs(), bool_defs(), text_defs()}) {
    defs.insert(defs.end(), group.begin(), group.end());
  }
  std::sort(defs.begin(), defs.end(), [](const Def& x, const Def& y) {
    return std::string_view(x.name) < std::string_view(y.name);
  });
  entries_.reserve(defs.size());
  for (const auto& d : defs) {
    Scheme scheme = Scheme::close(parse_type(d.type));
    auto tags = grounds_in(scheme.body);
    std::size_t arity = scheme.body.is_fn() ? scheme.body.params().size() : 0;
    entries_.push_back(FunctionEntry{d.name, std::move(scheme), std::move(tags),
                                     d.doc, arity, d.impl});
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    if (!index_.emplace(e.name, i).second) {
      throw std::logic_error("duplicate builtin " + e.name);
    }
    if (e.impl == nullptr) {
      e.value = constant_for(e.name);
    } else {
      e.value = Value::function(std::make_shared<NativeFunction>(&e));
    }
  }
}

const FunctionEntry* FunctionRegistry::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const FunctionEntry& FunctionRegistry::lookup(std::string_view name) const {
  if (const auto* e = find(name)) return *e;
  throw UnknownFunction("unknown function '" + std::string(name) + "'");
}

std::string catalog_markdown(const FunctionRegistry& registry) {
  std::size_t poly = 0;
  for (const auto& e : registry.catalog()) poly += e.polymorphic() ? 1 : 0;
  std::string out;
  out += "# Function catalog\n\n";
  out += "Generated by `cbgp catalog`; do not edit by hand.\n\n";
  out += fmt::format("{} functions, {} polymorphic.\n\n", registry.size(), poly);
  out += "| Name | Scheme | Tags | Description |\n";
  out += "|---|---|---|---|\n";
  for (const auto& e : registry.catalog()) {
    std::string tags;
    for (auto g : e.tags) {
      if (!tags.empty()) tags += ", ";
      tags += to_string(g);
    }
    if (e.polymorphic()) tags = tags.empty() ? "polymorphic" : "polymorphic; " + tags;
    out += fmt::format("| `{}` | `{}` | {} | {} |\n", e.name, to_string(e.scheme),
                       tags, e.doc);
  }
  return out;
}

Value make_native_function(
    std::string name, std::size_t arity,
    std::function<Value(std::span<const Value>, EvalContext&)> impl) {
  return Value::function(
      std::make_shared<LambdaFunction>(std::move(name), arity, std::move(impl)));
}

}  // namespace cbgp
