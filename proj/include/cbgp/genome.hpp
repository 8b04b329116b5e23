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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cbgp/rng.hpp"
#include "cbgp/stdlib.hpp"
#include "cbgp/types.hpp"
#include "cbgp/value.hpp"

namespace cbgp {

struct LiteralGene {
  Value value;
  Type type;
};
struct InputGene {
  std::uint32_t index;
};
struct FnGene {
  std::string name;
};
struct ApplyGene {};
/// Opens a lambda with `arity` parameters of fresh type.
struct AbstractionGene {
  std::uint32_t arity;
};
struct LetGene {};
/// Reference into the innermost open scope, taken modulo its size.
struct LocalGene {
  std::uint32_t index;
};

using Gene = std::variant<LiteralGene, InputGene, FnGene, ApplyGene,
                          AbstractionGene, LetGene, LocalGene>;
using Genome = std::vector<Gene>;

bool operator==(const Gene& a, const Gene& b);

/// One line of the text format, e.g. `LIT Int 5`, `FN map-vector`, `FN-ABS 2`.
std::string to_string(const Gene& gene);
/// Throws std::invalid_argument on malformed input.
Gene parse_gene(std::string_view line);

/// One gene per line; blank lines and `#` comments are ignored on input.
std::string serialize_genome(const Genome& genome);
Genome parse_genome(std::string_view text);

/// Ephemeral random constant generator for one ground type.
struct ErcGenerator {
  Ground ground = Ground::Int;
  std::int64_t int_min = -100;
  std::int64_t int_max = 100;
  double float_min = -100.0;
  double float_max = 100.0;
  /// Characters drawn for Char and String constants.
  std::string alphabet;
  /// String length is geometric with this success probability.
  double length_p = 0.25;
  std::size_t max_length = 12;

  /// Default distribution for `g` (printable ASCII chars, lowercase strings).
  static ErcGenerator standard(Ground g);
  Value sample(Rng& rng) const;
  std::string describe() const;
};

/// A weighted pool of gene templates. ERC entries produce a fresh literal
/// every time they are drawn.
class GeneticSource {
 public:
  struct Entry {
    std::variant<Gene, ErcGenerator> item;
    double weight;
  };

  /// Throws std::invalid_argument unless `weight` is positive and finite.
  void add(Gene gene, double weight);
  void add_erc(ErcGenerator erc, double weight);

  Gene sample(Rng& rng) const;

  std::span<const Entry> entries() const { return entries_; }
  double total_weight() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::vector<double> cumulative_;
};

/// What a problem contributes to its genetic source.
struct SourceSpec {
  std::size_t input_count = 0;
  std::vector<Ground> ground_types;
  std::vector<std::pair<Value, Type>> constants;
  std::vector<ErcGenerator> ercs;
};

/// Relative weight of each gene kind. With `per_entry` set every source entry
/// (function, input, constant, ERC and each structural gene) weighs 1;
/// otherwise each kind's weight is split evenly among its entries.
struct SourceWeights {
  bool per_entry = false;
  double function = 0.40;
  double input = 0.15;
  double constant = 0.04;
  double erc = 0.04;
  double apply = 0.25;
  double abstraction = 0.05;
  double let = 0.02;
  double local = 0.05;
  /// Arities offered for abstraction genes.
  std::uint32_t max_abstraction_arity = 3;
  /// Local references draw an index uniformly from [0, local_indices).
  std::uint32_t local_indices = 6;
};

/// All polymorphic functions plus every monomorphic function tagged with at
/// least one of the problem's ground types, the inputs, constants, ERCs and
/// the structural genes.
GeneticSource build_genetic_source(const SourceSpec& spec,
                                   const FunctionRegistry& registry,
                                   const SourceWeights& weights = {});

/// Length uniform in [min_size, max_size]; genes drawn independently.
Genome random_genome(const GeneticSource& source, std::size_t min_size,
                     std::size_t max_size, Rng& rng);

}  // namespace cbgp
