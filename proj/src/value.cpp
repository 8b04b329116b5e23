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

#include "cbgp/value.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace cbgp {

std::string_view to_string(FaultKind k) {
  switch (k) {
    case FaultKind::StepLimit:
      return "StepLimit";
    case FaultKind::SizeLimit:
      return "SizeLimit";
    case FaultKind::PartialFunction:
      return "PartialFunction";
    case FaultKind::ArithmeticFault:
      return "ArithmeticFault";
  }
  return "?";
}

void fault(FaultKind kind, std::string detail) {
  throw RuntimeFault{kind, std::move(detail)};
}

namespace {

bool value_less(const Value& a, const Value& b) {
  return compare(a, b) == std::strong_ordering::less;
}

std::strong_ordering compare_floats(double x, double y) {
  bool nx = std::isnan(x);
  bool ny = std::isnan(y);
  if (nx || ny) {
    if (nx && ny) return std::strong_ordering::equal;
    return nx ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;  // covers -0 == +0
}

template <typename Range, typename Cmp>
std::strong_ordering compare_ranges(const Range& xs, const Range& ys,
                                    Cmp cmp) {
  std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = cmp(xs[i], ys[i]);
    if (c != std::strong_ordering::equal) return c;
  }
  return xs.size() <=> ys.size();
}

void render_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Bool:
      out += v.as_bool() ? "true" : "false";
      return;
    case Value::Kind::Int:
      out += std::to_string(v.as_int());
      return;
    case Value::Kind::Float: {
      auto s = fmt::format("{}", v.as_float());
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    case Value::Kind::Char:
      out += '\\';
      out += v.as_char();
      return;
    case Value::Kind::String:
      out += fmt::format("\"{}\"", v.as_string());
      return;
    case Value::Kind::Vector:
    case Value::Kind::Set: {
      out += v.kind() == Value::Kind::Set ? "#{" : "[";
      bool first = true;
      for (const auto& item : v.items()) {
        if (!first) out += ' ';
        first = false;
        render_into(item, out);
      }
      out += v.kind() == Value::Kind::Set ? "}" : "]";
      return;
    }
    case Value::Kind::Map: {
      out += '{';
      bool first = true;
      for (const auto& [k, x] : v.entries()) {
        if (!first) out += ", ";
        first = false;
        render_into(k, out);
        out += ' ';
        render_into(x, out);
      }
      out += '}';
      return;
    }
    case Value::Kind::Tuple:
      out += '<';
      render_into(v.first(), out);
      out += ' ';
      render_into(v.second(), out);
      out += '>';
      return;
    case Value::Kind::Function:
      out += "#fn<" + v.as_function().describe() + ">";
      return;
  }
}

}  // namespace

Value Value::vector(std::vector<Value> items) {
  return Value(Repr(std::in_place_index<5>,
                    std::make_shared<const VectorData>(
                        VectorData{std::move(items)})));
}

Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end(), value_less);
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return set_sorted(std::move(items));
}

Value Value::set_sorted(std::vector<Value> items) {
  return Value(Repr(std::in_place_index<6>,
                    std::make_shared<const SetData>(SetData{std::move(items)})));
}

Value Value::map(std::vector<std::pair<Value, Value>> entries) {
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const auto& x, const auto& y) { return value_less(x.first, y.first); });
  std::vector<std::pair<Value, Value>> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second = std::move(e.second);
    } else {
      out.push_back(std::move(e));
    }
  }
  return map_sorted(std::move(out));
}

Value Value::map_sorted(std::vector<std::pair<Value, Value>> entries) {
  return Value(Repr(std::in_place_index<7>,
                    std::make_shared<const MapData>(
                        MapData{std::move(entries)})));
}

Value Value::tuple(Value first, Value second) {
  return Value(Repr(std::in_place_index<8>,
                    std::make_shared<const TupleData>(
                        TupleData{std::move(first), std::move(second)})));
}

Value Value::function(FunctionPtr fn) {
  return Value(Repr(std::in_place_index<9>, std::move(fn)));
}

std::span<const Value> Value::items() const {
  if (repr_.index() == 5) return std::get<5>(repr_)->items;
  return std::get<6>(repr_)->items;
}

std::span<const std::pair<Value, Value>> Value::entries() const {
  return std::get<7>(repr_)->entries;
}

const Value& Value::first() const { return std::get<8>(repr_)->first; }
const Value& Value::second() const { return std::get<8>(repr_)->second; }

bool operator==(const Value& a, const Value& b) {
  return compare(a, b) == std::strong_ordering::equal;
}

std::strong_ordering compare(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) {
    if (a.kind() == Value::Kind::Function || b.kind() == Value::Kind::Function) {
      fault(FaultKind::PartialFunction, "functions are not comparable");
    }
    return a.kind() <=> b.kind();
  }
  switch (a.kind()) {
    case Value::Kind::Bool:
      return a.as_bool() <=> b.as_bool();
    case Value::Kind::Int:
      return a.as_int() <=> b.as_int();
    case Value::Kind::Float:
      return compare_floats(a.as_float(), b.as_float());
    case Value::Kind::Char:
      return static_cast<unsigned char>(a.as_char()) <=>
             static_cast<unsigned char>(b.as_char());
    case Value::Kind::String: {
      int c = a.as_string().compare(b.as_string());
      return c <=> 0;
    }
    case Value::Kind::Vector:
    case Value::Kind::Set:
      return compare_ranges(a.items(), b.items(), [](const Value& x, const Value& y) {
        return compare(x, y);
      });
    case Value::Kind::Map:
      return compare_ranges(a.entries(), b.entries(),
                            [](const auto& x, const auto& y) {
                              auto c = compare(x.first, y.first);
                              if (c != std::strong_ordering::equal) return c;
                              return compare(x.second, y.second);
                            });
    case Value::Kind::Tuple: {
      auto c = compare(a.first(), b.first());
      if (c != std::strong_ordering::equal) return c;
      return compare(a.second(), b.second());
    }
    case Value::Kind::Function:
      fault(FaultKind::PartialFunction, "functions are not comparable");
  }
  return std::strong_ordering::equal;
}

std::string render(const Value& v) {
  std::string out;
  render_into(v, out);
  return out;
}

bool conforms(const Value& v, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Var:
      return true;
    case Type::Kind::Ground:
      switch (t.ground_type()) {
        case Ground::Boolean:
          return v.kind() == Value::Kind::Bool;
        case Ground::Int:
          return v.kind() == Value::Kind::Int;
        case Ground::Float:
          return v.kind() == Value::Kind::Float;
        case Ground::Char:
          return v.kind() == Value::Kind::Char;
        case Ground::String:
          return v.kind() == Value::Kind::String;
      }
      return false;
    case Type::Kind::Constructed:
      break;
  }
  auto args = t.args();
  switch (t.ctor()) {
    case Ctor::Vector:
    case Ctor::Set: {
      auto want = t.ctor() == Ctor::Vector ? Value::Kind::Vector : Value::Kind::Set;
      if (v.kind() != want) return false;
      return std::all_of(v.items().begin(), v.items().end(),
                         [&](const Value& x) { return conforms(x, args[0]); });
    }
    case Ctor::Map:
      if (v.kind() != Value::Kind::Map) return false;
      return std::all_of(v.entries().begin(), v.entries().end(),
                         [&](const auto& e) {
                           return conforms(e.first, args[0]) &&
                                  conforms(e.second, args[1]);
                         });
    case Ctor::Tuple:
      return v.kind() == Value::Kind::Tuple && conforms(v.first(), args[0]) &&
             conforms(v.second(), args[1]);
    case Ctor::Fn1:
    case Ctor::Fn2:
    case Ctor::Fn3:
      return v.kind() == Value::Kind::Function &&
             v.as_function().arity() == args.size() - 1;
  }
  return false;
}

}  // namespace cbgp
