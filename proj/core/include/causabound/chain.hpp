// Copyright 2026 The causabound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "causabound/transition.hpp"

namespace causabound {

/// A complete mediation chain X = M0 -> M1 -> ... -> Mn = Y, one law per
/// step. Never empty.
class Decomposition {
 public:
  explicit Decomposition(std::vector<TransitionMatrix> steps);

  /// n copies of the same step.
  static Decomposition homogeneous(const TransitionMatrix& step, std::size_t n);

  const std::vector<TransitionMatrix>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  const TransitionMatrix& operator[](std::size_t i) const { return steps_[i]; }

  /// Overall X -> Y law (left fold of compose).
  TransitionMatrix composed() const;

  /// prod_i (1 - |rho_i|): the decomposed upper limit on xi.
  double slack_cap() const;

 private:
  std::vector<TransitionMatrix> steps_;
};

enum class Mark : char { zero = '0', one = '1', unobserved = '?' };

/// Per-node observation record for X, M1..M(n-1), Y. Endpoints are always
/// observed. Text form is a string over {0, 1, ?}, e.g. "1?01".
class EvidencePattern {
 public:
  explicit EvidencePattern(std::vector<Mark> marks);

  static EvidencePattern parse(std::string_view text);
  /// x, then n-1 unobserved mediators, then y.
  static EvidencePattern endpoints_only(std::size_t steps, int x, int y);
  /// Every node observed with the given bit string (most significant = X).
  static EvidencePattern all_observed(const std::vector<int>& bits);

  std::string to_string() const;

  const std::vector<Mark>& marks() const noexcept { return marks_; }
  std::size_t nodes() const noexcept { return marks_.size(); }
  std::size_t steps() const noexcept { return marks_.size() - 1; }
  Mark operator[](std::size_t i) const { return marks_[i]; }
  bool observed(std::size_t i) const { return marks_[i] != Mark::unobserved; }
  int value(std::size_t i) const;  // 0 or 1; throws if unobserved
  int x() const { return value(0); }
  int y() const { return value(marks_.size() - 1); }

  friend bool operator==(const EvidencePattern&, const EvidencePattern&) = default;

 private:
  std::vector<Mark> marks_;
};

/// Stretch between two consecutive observed nodes; every inner node is
/// unobserved.
struct Segment {
  std::size_t start_index = 0;
  std::size_t end_index = 0;
  int start_value = 0;
  int end_value = 0;
  std::vector<TransitionMatrix> steps;

  TransitionMatrix composed() const;
  double slack_cap() const;
};

/// Throws ErrorKind::structural if the pattern does not have steps+1 nodes.
std::vector<Segment> segments(const Decomposition& chain, const EvidencePattern& evidence);

/// Relabel node i (swap 0 and 1): step i (into node i) has its columns
/// swapped, step i+1 (out of node i) its rows; marks[i] toggles.
void flip_node(std::vector<TransitionMatrix>& steps, std::vector<Mark>& marks, std::size_t node);

struct NormalizedChain {
  Decomposition chain;
  EvidencePattern evidence;
  std::vector<std::size_t> flipped_nodes;
};

/// Relabels nodes so that every step has tau_i > 0. Interior nodes are
/// flipped left to right; if the overall effect is negative, Y is
/// flipped as well (X never is). Throws ErrorKind::precondition when some
/// tau_i = 0.
NormalizedChain normalize_labels(const Decomposition& chain, const EvidencePattern& evidence);

}  // namespace causabound
