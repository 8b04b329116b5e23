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

#include "cbgp/genome.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace cbgp {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string printable_ascii() {
  std::string s;
  for (char c = ' '; c <= '~'; ++c) s += c;
  return s;
}

std::string lowercase() {
  std::string s;
  for (char c = 'a'; c <= 'z'; ++c) s += c;
  return s;
}

std::string format_literal(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool:
      return v.as_bool() ? "true" : "false";
    case Value::Kind::Int:
      return std::to_string(v.as_int());
    case Value::Kind::Float:
      return fmt::format("{:.17g}", v.as_float());
    case Value::Kind::Char:
      return nlohmann::json(std::string(1, v.as_char())).dump();
    case Value::Kind::String:
      return nlohmann::json(v.as_string()).dump();
    default:
      throw std::invalid_argument("literal genes hold ground values only");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Splits off the first whitespace-delimited token.
std::string_view next_token(std::string_view& s) {
  s = trim(s);
  auto end = s.find_first_of(" \t");
  auto tok = s.substr(0, end);
  s = end == std::string_view::npos ? std::string_view{} : trim(s.substr(end));
  return tok;
}

std::uint32_t parse_index(std::string_view s, std::string_view line) {
  std::uint32_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument(fmt::format("bad index in gene '{}'", line));
  }
  return out;
}

std::string parse_quoted(std::string_view s, std::string_view line) {
  try {
    auto j = nlohmann::json::parse(s);
    if (!j.is_string()) throw std::invalid_argument("not a string");
    return j.get<std::string>();
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("bad string literal in gene '{}'", line));
  }
}

Value parse_literal(Ground g, std::string_view s, std::string_view line) {
  auto bad = [&] {
    return std::invalid_argument(fmt::format("bad literal in gene '{}'", line));
  };
  switch (g) {
    case Ground::Boolean:
      if (s == "true") return Value::boolean(true);
      if (s == "false") return Value::boolean(false);
      throw bad();
    case Ground::Int: {
      std::int64_t x = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw bad();
      return Value::integer(x);
    }
    case Ground::Float: {
      std::string text(s);
      char* end = nullptr;
      double x = std::strtod(text.c_str(), &end);
      if (text.empty() || end != text.c_str() + text.size()) throw bad();
      return Value::floating(x);
    }
    case Ground::Char: {
      auto c = parse_quoted(s, line);
      if (c.size() != 1) throw bad();
      return Value::character(c[0]);
    }
    case Ground::String:
      return Value::string(parse_quoted(s, line));
  }
  throw bad();
}

}  // namespace

bool operator==(const Gene& a, const Gene& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const LiteralGene& x) {
            const auto& y = std::get<LiteralGene>(b);
            return x.type == y.type && x.value == y.value;
          },
          [&](const InputGene& x) { return x.index == std::get<InputGene>(b).index; },
          [&](const FnGene& x) { return x.name == std::get<FnGene>(b).name; },
          [](const ApplyGene&) { return true; },
          [&](const AbstractionGene& x) {
            return x.arity == std::get<AbstractionGene>(b).arity;
          },
          [](const LetGene&) { return true; },
          [&](const LocalGene& x) { return x.index == std::get<LocalGene>(b).index; },
      },
      a);
}

std::string to_string(const Gene& gene) {
  return std::visit(
      Overloaded{
          [](const LiteralGene& g) {
            return fmt::format("LIT {} {}", to_string(g.type), format_literal(g.value));
          },
          [](const InputGene& g) { return fmt::format("IN {}", g.index); },
          [](const FnGene& g) { return "FN " + g.name; },
          [](const ApplyGene&) { return std::string("APPLY"); },
          [](const AbstractionGene& g) { return fmt::format("FN-ABS {}", g.arity); },
          [](const LetGene&) { return std::string("LET"); },
          [](const LocalGene& g) { return fmt::format("VAR {}", g.index); },
      },
      gene);
}

Gene parse_gene(std::string_view line) {
  std::string_view rest = line;
  auto op = next_token(rest);
  auto no_operand = [&] {
    if (!rest.empty()) {
      throw std::invalid_argument(fmt::format("unexpected operand in gene '{}'", line));
    }
  };
  if (op == "LIT") {
    auto type_name = next_token(rest);
    Ground g = parse_ground(type_name);
    return LiteralGene{parse_literal(g, rest, line), Type::ground(g)};
  }
  if (op == "IN") return InputGene{parse_index(rest, line)};
  if (op == "FN") {
    if (rest.empty() || rest.find_first_of(" \t") != std::string_view::npos) {
      throw std::invalid_argument(fmt::format("bad function name in gene '{}'", line));
    }
    return FnGene{std::string(rest)};
  }
  if (op == "APPLY") {
    no_operand();
    return ApplyGene{};
  }
  if (op == "FN-ABS") {
    auto k = parse_index(rest, line);
    if (k < 1 || k > 3) {
      throw std::invalid_argument(fmt::format("abstraction arity must be 1..3 in '{}'", line));
    }
    return AbstractionGene{k};
  }
  if (op == "LET") {
    no_operand();
    return LetGene{};
  }
  if (op == "VAR") return LocalGene{parse_index(rest, line)};
  throw std::invalid_argument(fmt::format("unknown gene '{}'", line));
}

std::string serialize_genome(const Genome& genome) {
  std::string out;
  for (const auto& g : genome) {
    out += to_string(g);
    out += '\n';
  }
  return out;
}

Genome parse_genome(std::string_view text) {
  Genome genome;
  while (!text.empty()) {
    auto end = text.find('\n');
    auto line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      // A '#' inside a quoted literal is data, not a comment.
      if (line.find('"') == std::string_view::npos || hash < line.find('"')) {
        line = line.substr(0, hash);
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    genome.push_back(parse_gene(line));
  }
  return genome;
}

ErcGenerator ErcGenerator::standard(Ground g) {
  ErcGenerator e;
  e.ground = g;
  if (g == Ground::Char) e.alphabet = printable_ascii();
  if (g == Ground::String) e.alphabet = lowercase();
  return e;
}

Value ErcGenerator::sample(Rng& rng) const {
  switch (ground) {
    case Ground::Boolean:
      return Value::boolean(rng.bernoulli(0.5));
    case Ground::Int:
      return Value::integer(rng.uniform_int(int_min, int_max));
    case Ground::Float:
      return Value::floating(rng.uniform_real(float_min, float_max));
    case Ground::Char:
      return Value::character(alphabet[rng.index(alphabet.size())]);
    case Ground::String: {
      std::string s;
      while (s.size() < max_length && !rng.bernoulli(length_p)) {
        s += alphabet[rng.index(alphabet.size())];
      }
      return Value::string(std::move(s));
    }
  }
  throw std::logic_error("unknown ground type");
}

std::string ErcGenerator::describe() const {
  switch (ground) {
    case Ground::Boolean:
      return "ERC Boolean";
    case Ground::Int:
      return fmt::format("ERC Int [{}, {}]", int_min, int_max);
    case Ground::Float:
      return fmt::format("ERC Float [{}, {})", float_min, float_max);
    case Ground::Char:
      return fmt::format("ERC Char ({} symbols)", alphabet.size());
    case Ground::String:
      return fmt::format("ERC String (p={}, max {})", length_p, max_length);
  }
  return "ERC";
}

void GeneticSource::add(Gene gene, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("genetic source weights must be positive");
  }
  entries_.push_back(Entry{std::move(gene), weight});
  cumulative_.push_back(total_weight() + weight);
}

void GeneticSource::add_erc(ErcGenerator erc, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("genetic source weights must be positive");
  }
  if ((erc.ground == Ground::Char || erc.ground == Ground::String) && erc.alphabet.empty()) {
    throw std::invalid_argument("character ERC needs a non-empty alphabet");
  }
  entries_.push_back(Entry{std::move(erc), weight});
  cumulative_.push_back(total_weight() + weight);
}

Gene GeneticSource::sample(Rng& rng) const {
  if (entries_.empty()) throw std::logic_error("sampling from an empty genetic source");
  double x = rng.uniform01() * total_weight();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  auto i = std::min<std::size_t>(it - cumulative_.begin(), entries_.size() - 1);
  const auto& item = entries_[i].item;
  if (const auto* gene = std::get_if<Gene>(&item)) return *gene;
  const auto& erc = std::get<ErcGenerator>(item);
  return LiteralGene{erc.sample(rng), Type::ground(erc.ground)};
}

GeneticSource build_genetic_source(const SourceSpec& spec,
                                   const FunctionRegistry& registry,
                                   const SourceWeights& weights) {
  std::vector<Gene> functions;
  for (const auto& e : registry.catalog()) {
    bool include = e.polymorphic();
    for (auto g : e.tags) {
      if (std::find(spec.ground_types.begin(), spec.ground_types.end(), g) !=
          spec.ground_types.end()) {
        include = true;
      }
    }
    if (include) functions.push_back(FnGene{e.name});
  }
  std::vector<Gene> inputs;
  for (std::uint32_t i = 0; i < spec.input_count; ++i) inputs.push_back(InputGene{i});
  std::vector<Gene> constants;
  for (const auto& [v, t] : spec.constants) constants.push_back(LiteralGene{v, t});
  std::vector<Gene> abstractions;
  for (std::uint32_t k = 1; k <= weights.max_abstraction_arity; ++k) {
    abstractions.push_back(AbstractionGene{k});
  }
  std::vector<Gene> locals;
  for (std::uint32_t i = 0; i < weights.local_indices; ++i) locals.push_back(LocalGene{i});

  GeneticSource source;
  // Each kind either weighs `kind_weight` in total or 1 per entry (or per
  // structural gene kind in per-entry mode).
  auto add_all = [&](const std::vector<Gene>& genes, double kind_weight, bool structural) {
    if (genes.empty()) return;
    double each = weights.per_entry
                      ? (structural ? 1.0 / static_cast<double>(genes.size()) : 1.0)
                      : kind_weight / static_cast<double>(genes.size());
    if (each <= 0.0) return;
    for (const auto& g : genes) source.add(g, each);
  };
  add_all(functions, weights.function, false);
  add_all(inputs, weights.input, false);
  add_all(constants, weights.constant, false);
  if (!spec.ercs.empty()) {
    double each = weights.per_entry ? 1.0 : weights.erc / static_cast<double>(spec.ercs.size());
    if (each > 0.0) {
      for (const auto& e : spec.ercs) source.add_erc(e, each);
    }
  }
  add_all({ApplyGene{}}, weights.apply, true);
  add_all(abstractions, weights.abstraction, true);
  add_all({LetGene{}}, weights.let, true);
  add_all(locals, weights.local, true);
  return source;
}

Genome random_genome(const GeneticSource& source, std::size_t min_size,
                     std::size_t max_size, Rng& rng) {
  if (min_size > max_size) throw std::invalid_argument("genome size range is empty");
  auto n = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(min_size),
                                                    static_cast<std::int64_t>(max_size)));
  Genome genome;
  genome.reserve(n);
  for (std::size_t i = 0; i < n; ++i) genome.push_back(source.sample(rng));
  return genome;
}

}  // namespace cbgp
