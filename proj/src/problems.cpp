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

#include "cbgp/problems.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace cbgp {

// ---------------------------------------------------------------------------
// Metrics

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::AbsDiff:
      return "abs-diff";
    case Metric::Levenshtein:
      return "levenshtein";
    case Metric::Jaccard:
      return "jaccard";
    case Metric::TupleAbsDiff:
      return "tuple-abs-diff";
    case Metric::ExactMatch:
      return "exact-match";
    case Metric::VectorEdit:
      return "vector-edit";
  }
  return "?";
}

namespace {

template <typename Seq>
std::size_t edit_distance(const Seq& a, const Seq& b) {
  // Two-row Wagner-Fischer.
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double as_number(const Value& v) {
  return v.kind() == Value::Kind::Int ? static_cast<double>(v.as_int()) : v.as_float();
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return edit_distance(a, b);
}

std::size_t sequence_edit_distance(std::span<const Value> a, std::span<const Value> b) {
  return edit_distance(a, b);
}

double jaccard_distance(std::span<const Value> a, std::span<const Value> b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = compare(a[i], b[j]);
    if (c == 0) {
      ++common;
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  double uni = static_cast<double>(a.size() + b.size() - common);
  return 1.0 - static_cast<double>(common) / uni;
}

namespace {

// Ints are subtracted exactly so that distinct values never score 0.
double abs_diff(const Value& a, const Value& b) {
  if (a.kind() == Value::Kind::Int && b.kind() == Value::Kind::Int) {
    auto d = static_cast<__int128>(a.as_int()) - static_cast<__int128>(b.as_int());
    return static_cast<double>(d < 0 ? -d : d);
  }
  return std::fabs(as_number(a) - as_number(b));
}

}  // namespace

double score(Metric m, const Value& actual, const Value& expected) {
  switch (m) {
    case Metric::AbsDiff:
      return abs_diff(actual, expected);
    case Metric::Levenshtein:
      return static_cast<double>(levenshtein(actual.as_string(), expected.as_string()));
    case Metric::Jaccard:
      return jaccard_distance(actual.items(), expected.items());
    case Metric::TupleAbsDiff:
      return abs_diff(actual.first(), expected.first()) +
             abs_diff(actual.second(), expected.second());
    case Metric::ExactMatch:
      return actual == expected ? 0.0 : 1.0;
    case Metric::VectorEdit:
      return static_cast<double>(sequence_edit_distance(actual.items(), expected.items()));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Function families

namespace {

class FamilyFunction final : public Function {
 public:
  FamilyFunction(FamilyDescription desc, std::function<Value(const Value&)> f)
      : desc_(std::move(desc)), f_(std::move(f)) {}
  std::size_t arity() const override { return 1; }
  Value call(std::span<const Value> args, EvalContext&) const override { return f_(args[0]); }
  std::string describe() const override {
    std::string out = desc_.family;
    for (const auto& p : desc_.params) out += " " + render(p);
    return out;
  }
  const FamilyDescription& description() const { return desc_; }

 private:
  FamilyDescription desc_;
  std::function<Value(const Value&)> f_;
};

constexpr int kFirstPrintable = 32;
constexpr int kPrintableCount = 95;

char shift_printable(char c, std::int64_t k) {
  auto code = static_cast<std::int64_t>(static_cast<unsigned char>(c)) - kFirstPrintable;
  auto r = (code + k) % kPrintableCount;
  if (r < 0) r += kPrintableCount;
  return static_cast<char>(r + kFirstPrintable);
}

std::function<Value(const Value&)> family_impl(const std::string& family,
                                              const std::vector<Value>& p) {
  auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw std::invalid_argument(
          fmt::format("family {} takes {} parameters, got {}", family, n, p.size()));
    }
  };
  auto pred = [](auto f) {
    return [f](const Value& x) { return Value::boolean(f(x)); };
  };
  auto uc = [](const Value& x) { return static_cast<unsigned char>(x.as_char()); };
  if (family == "positive") {
    need(0);
    return pred([](const Value& x) { return x.as_int() > 0; });
  }
  if (family == "negative") {
    need(0);
    return pred([](const Value& x) { return x.as_int() < 0; });
  }
  if (family == "even") {
    need(0);
    return pred([](const Value& x) { return x.as_int() % 2 == 0; });
  }
  if (family == "equals") {
    need(1);
    return pred([k = p[0]](const Value& x) { return x == k; });
  }
  if (family == "greater-than") {
    need(1);
    return pred([k = p[0]](const Value& x) { return compare(x, k) > 0; });
  }
  if (family == "less-than") {
    need(1);
    return pred([k = p[0]](const Value& x) { return compare(x, k) < 0; });
  }
  if (family == "longer-than") {
    need(1);
    return pred([k = p[0].as_int()](const Value& x) {
      return static_cast<std::int64_t>(x.as_string().size()) > k;
    });
  }
  if (family == "letter") {
    need(0);
    return pred([uc](const Value& x) { return std::isalpha(uc(x)) != 0; });
  }
  if (family == "digit") {
    need(0);
    return pred([uc](const Value& x) { return std::isdigit(uc(x)) != 0; });
  }
  if (family == "upper") {
    need(0);
    return pred([uc](const Value& x) { return std::isupper(uc(x)) != 0; });
  }
  if (family == "quadratic") {
    // a*(x-b)^2 + c
    need(3);
    return [a = p[0].as_int(), b = p[1].as_int(), c = p[2].as_int()](const Value& x) {
      auto d = x.as_int() - b;
      return Value::integer(a * d * d + c);
    };
  }
  if (family == "distance-to") {
    // -|x-k|
    need(1);
    return [k = p[0].as_int()](const Value& x) {
      auto d = x.as_int() - k;
      return Value::integer(d < 0 ? d : -d);
    };
  }
  if (family == "shift") {
    need(1);
    return [k = p[0].as_int()](const Value& x) {
      return Value::character(shift_printable(x.as_char(), k));
    };
  }
  if (family == "swap-case") {
    need(0);
    return [uc](const Value& x) {
      auto c = uc(x);
      if (std::isupper(c)) return Value::character(static_cast<char>(std::tolower(c)));
      if (std::islower(c)) return Value::character(static_cast<char>(std::toupper(c)));
      return x;
    };
  }
  if (family == "mirror") {
    // Reverses the printable range: ' ' <-> '~'.
    need(0);
    return [uc](const Value& x) {
      auto c = uc(x);
      if (c < kFirstPrintable || c >= kFirstPrintable + kPrintableCount) return x;
      return Value::character(static_cast<char>(2 * kFirstPrintable + kPrintableCount - 1 - c));
    };
  }
  throw std::invalid_argument("unknown function family '" + family + "'");
}

}  // namespace

Value make_family_function(const std::string& family, std::vector<Value> params) {
  auto impl = family_impl(family, params);
  return Value::function(std::make_shared<FamilyFunction>(
      FamilyDescription{family, std::move(params)}, std::move(impl)));
}

const FamilyDescription* family_of(const Value& fn) {
  if (fn.kind() != Value::Kind::Function) return nullptr;
  const auto* f = dynamic_cast<const FamilyFunction*>(&fn.as_function());
  return f == nullptr ? nullptr : &f->description();
}

// ---------------------------------------------------------------------------
// Generators

namespace {

using bounds::kMaxCollection;
using bounds::kMinCollection;

enum class Elem { Int, String, Char };

Value rand_int(Rng& rng) { return Value::integer(rng.uniform_int(bounds::kMinInt, bounds::kMaxInt)); }

std::string rand_key_string(Rng& rng) {
  auto n = rng.uniform_int(bounds::kMinKeyLength, bounds::kMaxKeyLength);
  std::string s;
  for (std::int64_t i = 0; i < n; ++i) s += static_cast<char>('a' + rng.index(26));
  return s;
}

char rand_printable_char(Rng& rng) {
  // '!'..'~': printable, no space.
  return static_cast<char>(33 + rng.index(94));
}

Elem rand_elem_type(Rng& rng) {
  switch (rng.index(3)) {
    case 0:
      return Elem::Int;
    case 1:
      return Elem::String;
    default:
      return Elem::Char;
  }
}

Value rand_elem(Elem t, Rng& rng) {
  switch (t) {
    case Elem::Int:
      return rand_int(rng);
    case Elem::String:
      return Value::string(rand_key_string(rng));
    case Elem::Char:
      return Value::character(rand_printable_char(rng));
  }
  return rand_int(rng);
}

std::size_t rand_size(Rng& rng) {
  return static_cast<std::size_t>(rng.uniform_int(kMinCollection, kMaxCollection));
}

std::vector<Value> rand_elems(Elem t, std::size_t n, Rng& rng) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(rand_elem(t, rng));
  return out;
}

/// `n` distinct elements.
std::vector<Value> distinct_elems(Elem t, std::size_t n, Rng& rng) {
  std::vector<Value> out;
  while (out.size() < n) {
    Value v = rand_elem(t, rng);
    if (std::none_of(out.begin(), out.end(), [&](const Value& x) { return x == v; })) {
      out.push_back(std::move(v));
    }
  }
  return out;
}

Value rand_predicate(Elem t, Rng& rng) {
  switch (t) {
    case Elem::Int:
      switch (rng.index(5)) {
        case 0:
          return make_family_function("positive", {});
        case 1:
          return make_family_function("negative", {});
        case 2:
          return make_family_function("even", {});
        case 3:
          return make_family_function("greater-than", {rand_int(rng)});
        default:
          return make_family_function("less-than", {rand_int(rng)});
      }
    case Elem::String:
      switch (rng.index(3)) {
        case 0:
          return make_family_function("longer-than", {Value::integer(rng.uniform_int(0, 6))});
        case 1:
          return make_family_function("greater-than", {rand_elem(t, rng)});
        default:
          return make_family_function("less-than", {rand_elem(t, rng)});
      }
    case Elem::Char:
      switch (rng.index(5)) {
        case 0:
          return make_family_function("letter", {});
        case 1:
          return make_family_function("digit", {});
        case 2:
          return make_family_function("upper", {});
        case 3:
          return make_family_function("greater-than", {rand_elem(t, rng)});
        default:
          return make_family_function("less-than", {rand_elem(t, rng)});
      }
  }
  return make_family_function("positive", {});
}

/// Host-side evaluation of a family function.
Value apply_family(const Value& fn, const Value& x) {
  const auto* d = family_of(fn);
  return family_impl(d->family, d->params)(x);
}

Value string_int_map(std::size_t n, Rng& rng, std::vector<Value>* keys_out) {
  auto keys = distinct_elems(Elem::String, n, rng);
  std::vector<std::pair<Value, Value>> entries;
  for (const auto& k : keys) entries.emplace_back(k, rand_int(rng));
  if (keys_out) *keys_out = keys;
  return Value::map(std::move(entries));
}

Value int_set(std::size_t n, std::int64_t range, Rng& rng) {
  std::vector<Value> items;
  for (std::size_t i = 0; i < n; ++i) items.push_back(Value::integer(rng.uniform_int(-range, range)));
  return Value::set(std::move(items));
}

// Each generator returns inputs and the oracle's expected output.

Case gen_area_of_rectangle(Rng& rng) {
  // Quarter-unit coordinates keep every product exact.
  auto coord = [&] {
    return static_cast<double>(rng.uniform_int(static_cast<std::int64_t>(bounds::kMinCoordinate * 4),
                                               static_cast<std::int64_t>(bounds::kMaxCoordinate * 4))) /
           4.0;
  };
  double x1, x2, y1, y2;
  do {
    x1 = coord();
    x2 = coord();
  } while (x1 == x2);
  do {
    y1 = coord();
    y2 = coord();
  } while (y1 == y2);
  double lx = std::min(x1, x2), ux = std::max(x1, x2);
  double ly = std::min(y1, y2), uy = std::max(y1, y2);
  return {{Value::tuple(Value::floating(ux), Value::floating(uy)),
           Value::tuple(Value::floating(lx), Value::floating(ly))},
          Value::floating((ux - lx) * (uy - ly))};
}

Case gen_centimeters_to_meters(Rng& rng) {
  auto cm = rng.uniform_int(0, bounds::kMaxCentimeters);
  return {{Value::integer(cm)}, Value::tuple(Value::integer(cm / 100), Value::integer(cm % 100))};
}

Case gen_count_true(Rng& rng) {
  Elem t = rand_elem_type(rng);
  auto xs = rand_elems(t, rand_size(rng), rng);
  Value pred = rand_predicate(t, rng);
  std::int64_t count = 0;
  for (const auto& x : xs) count += apply_family(pred, x).as_bool() ? 1 : 0;
  return {{Value::vector(std::move(xs)), pred}, Value::integer(count)};
}

Case gen_filter_bounds(Rng& rng) {
  Elem t = rand_elem_type(rng);
  // The bounds are distinct from each other and from every element, so
  // inclusive and strict comparisons agree.
  auto drawn = distinct_elems(t, rand_size(rng) + 2, rng);
  Value lo = drawn[drawn.size() - 2];
  Value hi = drawn[drawn.size() - 1];
  if (compare(hi, lo) < 0) std::swap(lo, hi);
  drawn.erase(drawn.end() - 2, drawn.end());
  std::vector<Value> kept;
  for (const auto& x : drawn) {
    if (compare(lo, x) <= 0 && compare(x, hi) <= 0) kept.push_back(x);
  }
  return {{Value::set(std::move(drawn)), lo, hi}, Value::set(std::move(kept))};
}

Case gen_first_index_of_true(Rng& rng) {
  for (;;) {
    Elem t = rand_elem_type(rng);
    auto xs = rand_elems(t, rand_size(rng), rng);
    Value pred = rand_predicate(t, rng);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (apply_family(pred, xs[i]).as_bool()) {
        return {{Value::vector(std::move(xs)), pred}, Value::integer(static_cast<std::int64_t>(i))};
      }
    }
  }
}

Case gen_get_vals_of_key(Rng& rng) {
  Value key = Value::string(rand_key_string(rng));
  std::vector<Value> maps, vals;
  auto n = rand_size(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Value> keys;
    Value m = string_int_map(rand_size(rng), rng, &keys);
    Value v = rand_int(rng);
    std::vector<std::pair<Value, Value>> entries(m.entries().begin(), m.entries().end());
    entries.emplace_back(key, v);  // last write wins
    maps.push_back(Value::map(std::move(entries)));
    vals.push_back(v);
  }
  return {{Value::vector(std::move(maps)), key}, Value::vector(std::move(vals))};
}

Case gen_max_applied_fn(Rng& rng) {
  for (;;) {
    auto x = rng.uniform_int(1, bounds::kMaxAppliedX);
    Value f = rng.bernoulli(0.5)
                  ? make_family_function("quadratic", {Value::integer(-rng.uniform_int(1, 5)),
                                                       Value::integer(rng.uniform_int(-10, 60)),
                                                       rand_int(rng)})
                  : make_family_function("distance-to", {Value::integer(rng.uniform_int(-10, 60))});
    std::int64_t best = 0;
    std::int64_t best_val = apply_family(f, Value::integer(0)).as_int();
    bool tie = false;
    for (std::int64_t i = 1; i < x; ++i) {
      auto v = apply_family(f, Value::integer(i)).as_int();
      if (v > best_val) {
        best = i;
        best_val = v;
        tie = false;
      } else if (v == best_val) {
        tie = true;
      }
    }
    if (!tie) return {{Value::integer(x), f}, Value::integer(best)};
  }
}

Case gen_min_key(Rng& rng) {
  for (;;) {
    Elem t = rand_elem_type(rng);
    auto keys = distinct_elems(t, rand_size(rng), rng);
    std::vector<std::pair<Value, Value>> entries;
    std::size_t arg = 0;
    std::int64_t lowest = 0;
    int ties = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      auto v = rng.uniform_int(bounds::kMinInt, bounds::kMaxInt);
      if (i == 0 || v < lowest) {
        lowest = v;
        arg = i;
        ties = 0;
      } else if (v == lowest) {
        ++ties;
      }
      entries.emplace_back(keys[i], Value::integer(v));
    }
    if (ties == 0) return {{Value::map(std::move(entries))}, keys[arg]};
  }
}

Case gen_set_cartesian_product(Rng& rng) {
  Value a = int_set(rand_size(rng), bounds::kSetElementRange, rng);
  Value b = int_set(rand_size(rng), bounds::kSetElementRange, rng);
  std::vector<Value> out;
  for (const auto& x : a.items()) {
    for (const auto& y : b.items()) out.push_back(Value::tuple(x, y));
  }
  return {{a, b}, Value::set(std::move(out))};
}

Case gen_set_symmetric_difference(Rng& rng) {
  Value a = int_set(rand_size(rng), bounds::kSetElementRange, rng);
  Value b = int_set(rand_size(rng), bounds::kSetElementRange, rng);
  std::set<std::int64_t> sa, sb;
  for (const auto& x : a.items()) sa.insert(x.as_int());
  for (const auto& x : b.items()) sb.insert(x.as_int());
  std::vector<Value> out;
  for (auto x : sa) {
    if (!sb.count(x)) out.push_back(Value::integer(x));
  }
  for (auto x : sb) {
    if (!sa.count(x)) out.push_back(Value::integer(x));
  }
  return {{a, b}, Value::set(std::move(out))};
}

Case gen_sets_with_element(Rng& rng) {
  auto target = rng.uniform_int(-bounds::kSetElementRange / 2, bounds::kSetElementRange / 2);
  std::vector<Value> sets, kept;
  auto n = rand_size(rng);
  for (std::size_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(rng.uniform_int(0, bounds::kMaxInnerVector));
    Value s = int_set(k, bounds::kSetElementRange / 2, rng);
    bool has = false;
    for (const auto& x : s.items()) has = has || x.as_int() == target;
    sets.push_back(s);
    if (has) kept.push_back(s);
  }
  return {{Value::set(std::move(sets)), Value::integer(target)}, Value::set(std::move(kept))};
}

Case gen_simple_encryption(Rng& rng) {
  Value f = Value::boolean(false);
  switch (rng.index(3)) {
    case 0:
      f = make_family_function("shift", {Value::integer(rng.uniform_int(1, kPrintableCount - 1))});
      break;
    case 1:
      f = make_family_function("swap-case", {});
      break;
    default:
      f = make_family_function("mirror", {});
      break;
  }
  auto n = rng.uniform_int(1, bounds::kMaxPlaintext);
  std::string plain, cipher;
  for (std::int64_t i = 0; i < n; ++i) {
    char c = static_cast<char>(kFirstPrintable + rng.index(kPrintableCount));
    plain += c;
    cipher += apply_family(f, Value::character(c)).as_char();
  }
  return {{Value::string(plain), f}, Value::string(cipher)};
}

Case sum_two_vals(Elem key_type, Rng& rng) {
  auto keys = distinct_elems(key_type, rand_size(rng), rng);
  std::vector<std::pair<Value, Value>> entries;
  std::vector<std::int64_t> vals;
  for (const auto& k : keys) {
    vals.push_back(rng.uniform_int(bounds::kMinInt, bounds::kMaxInt));
    entries.emplace_back(k, Value::integer(vals.back()));
  }
  auto i = rng.index(keys.size());
  auto j = rng.index(keys.size());
  return {{Value::map(std::move(entries)), keys[i], keys[j]}, Value::integer(vals[i] + vals[j])};
}

Case gen_sum_2_vals(Rng& rng) { return sum_two_vals(Elem::String, rng); }

Case gen_sum_2_vals_polymorphic(Rng& rng) { return sum_two_vals(rand_elem_type(rng), rng); }

Case gen_sum_2d(Rng& rng) {
  for (;;) {
    std::vector<Value> rows;
    std::int64_t total = 0;
    std::size_t count = 0;
    auto n = rand_size(rng);
    for (std::size_t i = 0; i < n; ++i) {
      auto k = static_cast<std::size_t>(rng.uniform_int(0, bounds::kMaxInnerVector));
      std::vector<Value> row;
      for (std::size_t j = 0; j < k; ++j) {
        auto v = rng.uniform_int(bounds::kMinInt, bounds::kMaxInt);
        total += v;
        row.push_back(Value::integer(v));
      }
      count += k;
      rows.push_back(Value::vector(std::move(row)));
    }
    // The sum of nothing is ill-defined for a reducing solution.
    if (count > 0) return {{Value::vector(std::move(rows))}, Value::integer(total)};
  }
}

Case gen_sum_vector_vals(Rng& rng) {
  std::vector<Value> keys;
  Value m = string_int_map(rand_size(rng), rng, &keys);
  std::map<std::string, std::int64_t> lookup;
  for (const auto& [k, v] : m.entries()) lookup[k.as_string()] = v.as_int();
  std::vector<Value> query;
  std::int64_t total = 0;
  auto n = rand_size(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const Value& k = keys[rng.index(keys.size())];
    query.push_back(k);
    total += lookup[k.as_string()];
  }
  return {{m, Value::vector(std::move(query))}, Value::integer(total)};
}

Case gen_time_sheet(Rng& rng) {
  auto names = distinct_elems(Elem::String, static_cast<std::size_t>(rng.uniform_int(1, 4)), rng);
  std::vector<Value> rows;
  std::map<std::string, std::int64_t> hours;
  auto n = rand_size(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const Value& who = names[rng.index(names.size())];
    auto h = rng.uniform_int(0, bounds::kMaxInt);
    hours[who.as_string()] += h;
    rows.push_back(Value::tuple(who, Value::integer(h)));
  }
  // Query a name that appears in the sheet.
  const Value& who = rows[rng.index(rows.size())].first();
  return {{Value::vector(std::move(rows)), who}, Value::integer(hours[who.as_string()])};
}

std::vector<ErcGenerator> standard_ercs(const std::vector<Ground>& grounds) {
  std::vector<ErcGenerator> out;
  for (auto g : grounds) out.push_back(ErcGenerator::standard(g));
  return out;
}

Problem make(std::string name, std::vector<std::string> inputs, std::string output,
             std::vector<Ground> grounds, Metric metric, std::function<Case(Rng&)> gen,
             std::string reference, std::vector<std::pair<Value, Type>> constants = {}) {
  Problem p;
  p.name = std::move(name);
  for (const auto& t : inputs) p.signature.inputs.push_back(parse_type(t));
  p.signature.output = parse_type(output);
  p.ercs = standard_ercs(grounds);
  p.ground_types = std::move(grounds);
  p.constants = std::move(constants);
  p.metric = metric;
  p.reference_genome = std::move(reference);
  p.generate = std::move(gen);
  return p;
}

std::vector<Problem> build_problems() {
  using G = Ground;
  std::vector<Problem> ps;
  ps.push_back(make("area-of-rectangle", {"Tuple[Float,Float]", "Tuple[Float,Float]"}, "Float",
                    {G::Float}, Metric::AbsDiff, gen_area_of_rectangle,
                    R"(IN 1
FN tuple-first
APPLY
IN 0
FN tuple-first
APPLY
FN float-sub
APPLY
IN 1
FN tuple-second
APPLY
IN 0
FN tuple-second
APPLY
FN float-sub
APPLY
FN float-mult
APPLY
)"));
  ps.push_back(make("centimeters-to-meters", {"Int"}, "Tuple[Int,Int]", {G::Int},
                    Metric::TupleAbsDiff, gen_centimeters_to_meters,
                    R"(LIT Int 100
IN 0
FN int-mod
APPLY
LIT Int 100
IN 0
FN int-quot
APPLY
FN tuple
APPLY
)",
                    {{Value::integer(100), Type::integer()}}));
  ps.push_back(make("count-true", {"Vector[v0]", "(v0)->Boolean"}, "Int",
                    {G::Int, G::Boolean}, Metric::AbsDiff, gen_count_true,
                    R"(IN 0
IN 1
FN filter-vector
APPLY
FN length
APPLY
)"));
  ps.push_back(make("filter-bounds", {"Set[v0]", "v0", "v0"}, "Set[v0]", {G::Boolean},
                    Metric::Jaccard, gen_filter_bounds,
                    R"(FN-ABS 1
IN 1
VAR 0
FN >=
APPLY
IN 2
VAR 0
FN <=
APPLY
FN and
APPLY
FN-ABS 1
IN 0
FN filter-set
APPLY
)"));
  ps.push_back(make("first-index-of-true", {"Vector[v0]", "(v0)->Boolean"}, "Int",
                    {G::Int, G::Boolean}, Metric::AbsDiff, gen_first_index_of_true,
                    R"(IN 0
IN 1
FN map-vector
APPLY
LIT Boolean true
FN index-of
APPLY
)",
                    {{Value::boolean(true), Type::boolean()}}));
  ps.push_back(make("get-vals-of-key", {"Vector[Map[String,Int]]", "String"}, "Vector[Int]",
                    {G::String, G::Int}, Metric::VectorEdit, gen_get_vals_of_key,
                    R"(FN-ABS 1
IN 1
VAR 0
FN map-get
APPLY
FN-ABS 1
IN 0
FN map-vector
APPLY
)"));
  ps.push_back(make("max-applied-fn", {"Int", "(Int)->Int"}, "Int", {G::Int}, Metric::AbsDiff,
                    gen_max_applied_fn,
                    R"(IN 0
FN range
APPLY
IN 1
FN sort-by
APPLY
FN last
APPLY
)"));
  ps.push_back(make("min-key", {"Map[v0,Int]"}, "v0", {G::Int}, Metric::ExactMatch, gen_min_key,
                    R"(IN 0
FN map-to-vector
APPLY
FN tuple-second
FN sort-by
APPLY
FN first
APPLY
FN tuple-first
APPLY
)"));
  ps.push_back(make("set-cartesian-product", {"Set[Int]", "Set[Int]"}, "Set[Tuple[Int,Int]]",
                    {G::Int}, Metric::Jaccard, gen_set_cartesian_product,
                    R"(FN-ABS 1
IN 1
VAR 0
FN tuple
FN partial1-of-2
APPLY
FN map-set
APPLY
FN-ABS 1
IN 0
FN mapcat-set
APPLY
)"));
  ps.push_back(make("set-symmetric-difference", {"Set[Int]", "Set[Int]"}, "Set[Int]", {G::Int},
                    Metric::Jaccard, gen_set_symmetric_difference,
                    R"(IN 0
IN 1
FN set-difference
APPLY
IN 1
IN 0
FN set-difference
APPLY
FN set-union
APPLY
)"));
  ps.push_back(make("sets-with-element", {"Set[Set[Int]]", "Int"}, "Set[Set[Int]]",
                    {G::Int, G::Boolean}, Metric::Jaccard, gen_sets_with_element,
                    R"(FN-ABS 1
IN 1
VAR 0
FN set-contains?
APPLY
FN-ABS 1
IN 0
FN filter-set
APPLY
)"));
  ps.push_back(make("simple-encryption", {"String", "(Char)->Char"}, "String",
                    {G::Char, G::String}, Metric::Levenshtein, gen_simple_encryption,
                    R"(IN 0
FN string-to-chars
APPLY
IN 1
FN map-vector
APPLY
FN join-chars
APPLY
)"));
  ps.push_back(make("sum-2-vals", {"Map[String,Int]", "String", "String"}, "Int",
                    {G::String, G::Int}, Metric::AbsDiff, gen_sum_2_vals,
                    R"(IN 1
IN 0
FN map-get
APPLY
IN 2
IN 0
FN map-get
APPLY
FN int-add
APPLY
)"));
  ps.push_back(make("sum-2-vals-polymorphic", {"Map[v0,Int]", "v0", "v0"}, "Int", {G::Int},
                    Metric::AbsDiff, gen_sum_2_vals_polymorphic,
                    R"(IN 1
IN 0
FN map-get
APPLY
IN 2
IN 0
FN map-get
APPLY
FN int-add
APPLY
)"));
  ps.push_back(make("sum-2D", {"Vector[Vector[Int]]"}, "Int", {G::Int}, Metric::AbsDiff,
                    gen_sum_2d,
                    R"(IN 0
FN reverse
FN mapcat
APPLY
FN int-add
FN reduce-vector
APPLY
)"));
  ps.push_back(make("sum-vector-vals", {"Map[String,Int]", "Vector[String]"}, "Int",
                    {G::String, G::Int}, Metric::AbsDiff, gen_sum_vector_vals,
                    R"(IN 1
IN 0
FN map-get
FN partial1-of-2
APPLY
FN map-vector
APPLY
FN int-add
FN reduce-vector
APPLY
)"));
  ps.push_back(make("time-sheet", {"Vector[Tuple[String,Int]]", "String"}, "Int",
                    {G::String, G::Int}, Metric::AbsDiff, gen_time_sheet,
                    R"(IN 0
FN tuple-first
FN group-by
APPLY
IN 1
FN map-get
APPLY
FN tuple-second
FN map-vector
APPLY
FN int-add
FN reduce-vector
APPLY
)"));
  std::sort(ps.begin(), ps.end(), [](const Problem& a, const Problem& b) { return a.name < b.name; });
  return ps;
}

}  // namespace

SourceSpec Problem::source_spec() const {
  SourceSpec s;
  s.input_count = signature.inputs.size();
  s.ground_types = ground_types;
  s.constants = constants;
  s.ercs = ercs;
  return s;
}

const std::vector<Problem>& all_problems() {
  static const std::vector<Problem> problems = build_problems();
  return problems;
}

const Problem& find_problem(std::string_view name) {
  for (const auto& p : all_problems()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::vector<Case> generate_cases(const Problem& problem, std::size_t n, Rng& rng) {
  std::vector<Case> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(problem.generate(rng));
  return out;
}

// ---------------------------------------------------------------------------
// JSON encoding

nlohmann::json value_to_json(const Value& v) {
  using nlohmann::json;
  switch (v.kind()) {
    case Value::Kind::Bool:
      return json{{"Boolean", v.as_bool()}};
    case Value::Kind::Int:
      return json{{"Int", v.as_int()}};
    case Value::Kind::Float:
      return json{{"Float", v.as_float()}};
    case Value::Kind::Char:
      return json{{"Char", std::string(1, v.as_char())}};
    case Value::Kind::String:
      return json{{"String", v.as_string()}};
    case Value::Kind::Vector:
    case Value::Kind::Set: {
      json items = json::array();
      for (const auto& x : v.items()) items.push_back(value_to_json(x));
      return json{{v.kind() == Value::Kind::Vector ? "Vector" : "Set", items}};
    }
    case Value::Kind::Map: {
      json entries = json::array();
      for (const auto& [k, x] : v.entries()) {
        entries.push_back(json::array({value_to_json(k), value_to_json(x)}));
      }
      return json{{"Map", entries}};
    }
    case Value::Kind::Tuple:
      return json{{"Tuple", json::array({value_to_json(v.first()), value_to_json(v.second())})}};
    case Value::Kind::Function: {
      const auto* d = family_of(v);
      if (d == nullptr) throw std::invalid_argument("only family functions are serializable");
      json params = json::array();
      for (const auto& p : d->params) params.push_back(value_to_json(p));
      return json{{"Fn", {{"family", d->family}, {"params", params}}}};
    }
  }
  throw std::invalid_argument("unserializable value");
}

Value value_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("bad value encoding");
  const auto& [tag, body] = *j.items().begin();
  try {
    if (tag == "Boolean") return Value::boolean(body.get<bool>());
    if (tag == "Int") return Value::integer(body.get<std::int64_t>());
    if (tag == "Float") return Value::floating(body.get<double>());
    if (tag == "Char") {
      auto s = body.get<std::string>();
      if (s.size() != 1) throw std::invalid_argument("bad Char");
      return Value::character(s[0]);
    }
    if (tag == "String") return Value::string(body.get<std::string>());
    if (tag == "Vector" || tag == "Set") {
      std::vector<Value> items;
      for (const auto& x : body) items.push_back(value_from_json(x));
      return tag == "Vector" ? Value::vector(std::move(items)) : Value::set(std::move(items));
    }
    if (tag == "Map") {
      std::vector<std::pair<Value, Value>> entries;
      for (const auto& e : body) entries.emplace_back(value_from_json(e.at(0)), value_from_json(e.at(1)));
      return Value::map(std::move(entries));
    }
    if (tag == "Tuple") return Value::tuple(value_from_json(body.at(0)), value_from_json(body.at(1)));
    if (tag == "Fn") {
      std::vector<Value> params;
      for (const auto& p : body.at("params")) params.push_back(value_from_json(p));
      return make_family_function(body.at("family").get<std::string>(), std::move(params));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad value encoding: ") + e.what());
  }
  throw std::invalid_argument("unknown value tag '" + tag + "'");
}

std::string case_to_json_line(const Case& c) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& v : c.inputs) inputs.push_back(value_to_json(v));
  nlohmann::json j{{"inputs", inputs}, {"expected", value_to_json(c.expected)}};
  return j.dump();
}

Case case_from_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad case line: ") + e.what());
  }
  Case c{{}, Value::boolean(false)};
  for (const auto& v : j.at("inputs")) c.inputs.push_back(value_from_json(v));
  c.expected = value_from_json(j.at("expected"));
  return c;
}

}  // namespace cbgp
