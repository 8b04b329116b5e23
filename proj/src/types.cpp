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

#include "cbgp/types.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <cctype>
#include <unordered_map>

namespace cbgp {

namespace {

constexpr std::array<std::string_view, 5> kGroundNames = {
    "Boolean", "Int", "Float", "Char", "String"};

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

std::string_view to_string(Ground g) {
  return kGroundNames[static_cast<std::size_t>(g)];
}

Ground parse_ground(std::string_view name) {
  for (std::size_t i = 0; i < kGroundNames.size(); ++i) {
    if (kGroundNames[i] == name) return static_cast<Ground>(i);
  }
  throw std::invalid_argument(
      fmt::format("unknown ground type '{}'", std::string(name)));
}

std::size_t arity(Ctor c) {
  switch (c) {
    case Ctor::Vector:
    case Ctor::Set:
      return 1;
    case Ctor::Map:
    case Ctor::Tuple:
    case Ctor::Fn1:
      return 2;
    case Ctor::Fn2:
      return 3;
    case Ctor::Fn3:
      return 4;
  }
  return 0;
}

std::string_view to_string(Ctor c) {
  switch (c) {
    case Ctor::Vector:
      return "Vector";
    case Ctor::Set:
      return "Set";
    case Ctor::Map:
      return "Map";
    case Ctor::Tuple:
      return "Tuple";
    case Ctor::Fn1:
      return "Fn1";
    case Ctor::Fn2:
      return "Fn2";
    case Ctor::Fn3:
      return "Fn3";
  }
  return "?";
}

struct Type::Node {
  Kind kind;
  Ground ground = Ground::Boolean;
  TypeVar var = 0;
  Ctor ctor = Ctor::Vector;
  std::vector<Type> args;
  std::size_t hash = 0;
  bool has_vars = false;
};

Type Type::ground(Ground g) {
  static const std::array<Type, 5> cache = [] {
    std::array<std::shared_ptr<const Node>, 5> nodes;
    for (std::size_t i = 0; i < 5; ++i) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::Ground;
      n->ground = static_cast<Ground>(i);
      n->hash = mix(0x51ed27, i);
      nodes[i] = std::move(n);
    }
    return std::array<Type, 5>{Type(nodes[0]), Type(nodes[1]),
                               Type(nodes[2]), Type(nodes[3]),
                               Type(nodes[4])};
  }();
  return cache[static_cast<std::size_t>(g)];
}

Type Type::var(TypeVar v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  n->hash = mix(0x7a11, v);
  n->has_vars = true;
  return Type(std::move(n));
}

Type Type::make(Ctor c, std::vector<Type> args) {
  if (args.size() != arity(c)) {
    throw std::invalid_argument(
        fmt::format("constructor {} expects {} arguments, got {}",
                    to_string(c), arity(c), args.size()));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constructed;
  n->ctor = c;
  std::size_t h = mix(0xc7, static_cast<std::size_t>(c));
  for (const auto& a : args) {
    h = mix(h, a.hash());
    n->has_vars = n->has_vars || a.has_vars();
  }
  n->hash = h;
  n->args = std::move(args);
  return Type(std::move(n));
}

Type Type::vector(Type elem) { return make(Ctor::Vector, {std::move(elem)}); }
Type Type::set(Type elem) { return make(Ctor::Set, {std::move(elem)}); }
Type Type::map(Type key, Type value) {
  return make(Ctor::Map, {std::move(key), std::move(value)});
}
Type Type::tuple(Type first, Type second) {
  return make(Ctor::Tuple, {std::move(first), std::move(second)});
}

Type Type::fn(std::vector<Type> params, Type ret) {
  Ctor c;
  switch (params.size()) {
    case 1:
      c = Ctor::Fn1;
      break;
    case 2:
      c = Ctor::Fn2;
      break;
    case 3:
      c = Ctor::Fn3;
      break;
    default:
      throw std::invalid_argument(
          fmt::format("function arity {} not in 1..3", params.size()));
  }
  params.push_back(std::move(ret));
  return make(c, std::move(params));
}

Type::Kind Type::kind() const { return node_->kind; }

bool Type::is_fn() const {
  if (node_->kind != Kind::Constructed) return false;
  auto c = node_->ctor;
  return c == Ctor::Fn1 || c == Ctor::Fn2 || c == Ctor::Fn3;
}

Ground Type::ground_type() const {
  assert(is_ground());
  return node_->ground;
}

TypeVar Type::var_id() const {
  assert(is_var());
  return node_->var;
}

Ctor Type::ctor() const {
  assert(is_constructed());
  return node_->ctor;
}

std::span<const Type> Type::args() const { return node_->args; }

std::span<const Type> Type::params() const {
  assert(is_fn());
  return std::span<const Type>(node_->args).first(node_->args.size() - 1);
}

const Type& Type::ret() const {
  assert(is_fn());
  return node_->args.back();
}

bool Type::has_vars() const { return node_->has_vars; }
std::size_t Type::hash() const { return node_->hash; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind) return false;
  switch (x.kind) {
    case Type::Kind::Ground:
      return x.ground == y.ground;
    case Type::Kind::Var:
      return x.var == y.var;
    case Type::Kind::Constructed:
      return x.ctor == y.ctor && x.args == y.args;
  }
  return false;
}

bool operator<(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind;
  switch (x.kind) {
    case Type::Kind::Ground:
      return x.ground < y.ground;
    case Type::Kind::Var:
      return x.var < y.var;
    case Type::Kind::Constructed:
      if (x.ctor != y.ctor) return x.ctor < y.ctor;
      return std::lexicographical_compare(x.args.begin(), x.args.end(),
                                          y.args.begin(), y.args.end());
  }
  return false;
}

namespace {

void render(const Type& t, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Ground:
      out += to_string(t.ground_type());
      return;
    case Type::Kind::Var:
      out += 'v';
      out += std::to_string(t.var_id());
      return;
    case Type::Kind::Constructed:
      break;
  }
  auto args = t.args();
  if (t.is_fn()) {
    out += '(';
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (i > 0) out += ',';
      render(args[i], out);
    }
    out += ")->";
    render(args.back(), out);
    return;
  }
  out += to_string(t.ctor());
  out += '[';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ',';
    render(args[i], out);
  }
  out += ']';
}

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  Type parse_all() {
    Type t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(std::string_view what) const {
    throw std::invalid_argument(fmt::format("cannot parse type '{}': {} at {}",
                                            std::string(text_), what, pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(fmt::format("expected '{}'", c));
  }

  std::string_view ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  Type parse() {
    if (accept('(')) {
      std::vector<Type> params;
      params.push_back(parse());
      while (accept(',')) params.push_back(parse());
      expect(')');
      expect('-');
      expect('>');
      if (params.size() > 3) fail("function arity above 3");
      return Type::fn(std::move(params), parse());
    }
    auto name = ident();
    if (name.size() > 1 && name[0] == 'v' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(c); })) {
      return Type::var(
          static_cast<TypeVar>(std::stoul(std::string(name.substr(1)))));
    }
    for (std::size_t i = 0; i < kGroundNames.size(); ++i) {
      if (kGroundNames[i] == name) return Type::ground(static_cast<Ground>(i));
    }
    Ctor c;
    if (name == "Vector") {
      c = Ctor::Vector;
    } else if (name == "Set") {
      c = Ctor::Set;
    } else if (name == "Map") {
      c = Ctor::Map;
    } else if (name == "Tuple") {
      c = Ctor::Tuple;
    } else {
      fail(fmt::format("unknown type name '{}'", std::string(name)));
    }
    expect('[');
    std::vector<Type> args;
    args.push_back(parse());
    while (accept(',')) args.push_back(parse());
    expect(']');
    if (args.size() != arity(c)) fail("wrong constructor arity");
    return Type::make(c, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_vars(const Type& t, std::vector<TypeVar>& out) {
  if (!t.has_vars()) return;
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_id()) == out.end()) {
      out.push_back(t.var_id());
    }
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

void collect_grounds(const Type& t, std::array<bool, 5>& seen) {
  if (t.is_ground()) {
    seen[static_cast<std::size_t>(t.ground_type())] = true;
    return;
  }
  for (const auto& a : t.args()) collect_grounds(a, seen);
}

/// Replaces variables through `lookup`; returns `t` itself when unchanged.
template <typename Lookup>
Type rewrite(const Type& t, const Lookup& lookup) {
  if (!t.has_vars()) return t;
  if (t.is_var()) {
    if (const Type* r = lookup(t.var_id())) return *r;
    return t;
  }
  auto args = t.args();
  std::vector<Type> out;
  bool changed = false;
  out.reserve(args.size());
  for (const auto& a : args) {
    out.push_back(rewrite(a, lookup));
    changed = changed || !out.back().same_node(a);
  }
  if (!changed) return t;
  return Type::make(t.ctor(), std::move(out));
}

bool unify_step(Substitution& s, const Type& a0, const Type& b0,
                const RigidVars& rigid) {
  Type a = apply(s, a0);
  Type b = apply(s, b0);
  if (a == b) return true;
  if (a.is_var() && !rigid.contains(a.var_id())) return s.bind(a.var_id(), b);
  if (b.is_var() && !rigid.contains(b.var_id())) return s.bind(b.var_id(), a);
  if (!a.is_constructed() || !b.is_constructed()) return false;
  if (a.ctor() != b.ctor()) return false;
  auto xs = a.args();
  auto ys = b.args();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!unify_step(s, xs[i], ys[i], rigid)) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const Type& t) {
  std::string out;
  render(t, out);
  return out;
}

Type parse_type(std::string_view text) { return TypeParser(text).parse_all(); }

std::vector<TypeVar> free_vars(const Type& t) {
  std::vector<TypeVar> out;
  collect_vars(t, out);
  return out;
}

bool occurs(TypeVar v, const Type& t) {
  if (!t.has_vars()) return false;
  if (t.is_var()) return t.var_id() == v;
  for (const auto& a : t.args()) {
    if (occurs(v, a)) return true;
  }
  return false;
}

std::vector<Ground> grounds_in(const Type& t) {
  std::array<bool, 5> seen{};
  collect_grounds(t, seen);
  std::vector<Ground> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<Ground>(i));
  }
  return out;
}

RigidVars::RigidVars(std::vector<TypeVar> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool RigidVars::contains(TypeVar v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

Substitution::Substitution(
    std::initializer_list<std::pair<TypeVar, Type>> bindings)
    : bindings_(bindings) {
  std::sort(bindings_.begin(), bindings_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
}

const Type* Substitution::find(TypeVar v) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), v,
      [](const auto& entry, TypeVar key) { return entry.first < key; });
  if (it == bindings_.end() || it->first != v) return nullptr;
  return &it->second;
}

bool Substitution::bind(TypeVar v, const Type& t) {
  if (t.is_var() && t.var_id() == v) return true;
  if (occurs(v, t)) return false;
  assert(find(v) == nullptr);
  auto single = [&](TypeVar x) -> const Type* { return x == v ? &t : nullptr; };
  for (auto& [var, range] : bindings_) {
    if (occurs(v, range)) range = rewrite(range, single);
  }
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), v,
      [](const auto& entry, TypeVar key) { return entry.first < key; });
  bindings_.insert(it, {v, t});
  return true;
}

bool operator==(const Substitution& a, const Substitution& b) {
  return a.bindings_ == b.bindings_;
}

Type apply(const Substitution& s, const Type& t) {
  if (s.empty()) return t;
  return rewrite(t, [&](TypeVar v) { return s.find(v); });
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  std::vector<std::pair<TypeVar, Type>> merged;
  merged.reserve(s1.size() + s2.size());
  for (const auto& [v, t] : s2.bindings()) {
    Type r = apply(s1, t);
    if (r.is_var() && r.var_id() == v) continue;
    merged.emplace_back(v, std::move(r));
  }
  for (const auto& [v, t] : s1.bindings()) {
    if (s2.find(v) == nullptr) merged.emplace_back(v, t);
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  out.bindings_ = std::move(merged);
  return out;
}

std::optional<Substitution> unify(const Type& a, const Type& b,
                                  const RigidVars& rigid) {
  Substitution s;
  if (!unify_step(s, a, b, rigid)) return std::nullopt;
  return s;
}

bool unify_into(Substitution& s, const Type& a, const Type& b,
                const RigidVars& rigid) {
  Substitution work = s;
  if (!unify_step(work, a, b, rigid)) return false;
  s = std::move(work);
  return true;
}

Scheme Scheme::close(Type body) {
  auto vars = free_vars(body);
  return Scheme{std::move(vars), std::move(body)};
}

bool Scheme::is_closed() const {
  for (auto v : free_vars(body)) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) return false;
  }
  return true;
}

std::string to_string(const Scheme& s) {
  if (s.bound.empty()) return to_string(s.body);
  std::string out = "forall";
  for (auto v : s.bound) out += fmt::format(" v{}", v);
  out += ". ";
  out += to_string(s.body);
  return out;
}

Type instantiate(const Scheme& s, VariableSupply& fresh) {
  if (s.bound.empty()) return s.body;
  std::vector<std::pair<TypeVar, Type>> renames;
  renames.reserve(s.bound.size());
  for (auto v : s.bound) renames.emplace_back(v, Type::var(fresh.fresh()));
  return rewrite(s.body, [&](TypeVar v) -> const Type* {
    for (const auto& [from, to] : renames) {
      if (from == v) return &to;
    }
    return nullptr;
  });
}

Type canonicalize(const Type& t) {
  auto order = free_vars(t);
  std::vector<Type> renamed;
  renamed.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    renamed.push_back(Type::var(static_cast<TypeVar>(i)));
  }
  return rewrite(t, [&](TypeVar v) -> const Type* {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] == v) return &renamed[i];
    }
    return nullptr;
  });
}

}  // namespace cbgp
