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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cbgp/compiler.hpp"
#include "cbgp/genome.hpp"
#include "cbgp/rng.hpp"
#include "cbgp/value.hpp"

namespace cbgp {

// ---------------------------------------------------------------------------
// Error metrics

enum class Metric {
  AbsDiff,
  Levenshtein,
  Jaccard,
  TupleAbsDiff,
  ExactMatch,
  VectorEdit,
};

std::string_view to_string(Metric m);

std::size_t levenshtein(std::string_view a, std::string_view b);
/// Unit-cost insert/delete/substitute distance between value sequences.
std::size_t sequence_edit_distance(std::span<const Value> a, std::span<const Value> b);
/// 1 - |a ∩ b| / |a ∪ b| over sorted duplicate-free items; 0 for two empty sets.
double jaccard_distance(std::span<const Value> a, std::span<const Value> b);

/// Distance between an actual and an expected output of the same type.
double score(Metric m, const Value& actual, const Value& expected);

// ---------------------------------------------------------------------------
// Generator bounds

namespace bounds {
inline constexpr std::int64_t kMinCollection = 1;
inline constexpr std::int64_t kMaxCollection = 10;
inline constexpr std::int64_t kMaxInnerVector = 8;
inline constexpr std::int64_t kMinInt = -100;
inline constexpr std::int64_t kMaxInt = 100;
/// Set problems draw elements from a narrower range so sets overlap.
inline constexpr std::int64_t kSetElementRange = 20;
inline constexpr double kMinCoordinate = -100.0;
inline constexpr double kMaxCoordinate = 100.0;
inline constexpr std::int64_t kMinKeyLength = 1;
inline constexpr std::int64_t kMaxKeyLength = 8;
inline constexpr std::int64_t kMaxCentimeters = 10'000;
inline constexpr std::int64_t kMaxAppliedX = 49;
inline constexpr std::int64_t kMaxPlaintext = 20;
}  // namespace bounds

/// Error assigned to a case whose program faulted, or to every case of a
/// genome that compiled to nothing. Metric values are clamped to it.
inline constexpr double kDefaultPenalty = 1e6;

// ---------------------------------------------------------------------------
// Function-valued inputs

/// A member of a documented function family (e.g. `greater-than` with k=3),
/// serializable by name and parameters.
Value make_family_function(const std::string& family, std::vector<Value> params);

/// Family name and parameters of a function produced by make_family_function.
struct FamilyDescription {
  std::string family;
  std::vector<Value> params;
};
const FamilyDescription* family_of(const Value& fn);

// ---------------------------------------------------------------------------
// Problems

struct Case {
  std::vector<Value> inputs;
  Value expected;
};

struct Problem {
  std::string name;
  Signature signature;
  std::vector<Ground> ground_types;
  std::vector<std::pair<Value, Type>> constants;
  std::vector<ErcGenerator> ercs;
  Metric metric;
  /// Hand-written solution in the genome text format.
  std::string reference_genome;
  /// Draws inputs and computes the expected output with a host oracle.
  std::function<Case(Rng&)> generate;

  SourceSpec source_spec() const;
  Genome reference() const { return parse_genome(reference_genome); }
};

/// The 17 benchmark problems, sorted by name.
const std::vector<Problem>& all_problems();
/// Throws std::invalid_argument for an unknown name.
const Problem& find_problem(std::string_view name);

std::vector<Case> generate_cases(const Problem& problem, std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Case serialization (JSON lines)

nlohmann::json value_to_json(const Value& v);
/// Throws std::invalid_argument on malformed input.
Value value_from_json(const nlohmann::json& j);

std::string case_to_json_line(const Case& c);
Case case_from_json_line(std::string_view line);

}  // namespace cbgp
