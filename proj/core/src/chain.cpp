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

#include "causabound/chain.hpp"

#include <cmath>
#include <sstream>

namespace causabound {

Decomposition::Decomposition(std::vector<TransitionMatrix> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) fail(ErrorKind::structural, "a decomposition needs at least one step");
}

Decomposition Decomposition::homogeneous(const TransitionMatrix& step, std::size_t n) {
  return Decomposition(std::vector<TransitionMatrix>(n, step));
}

TransitionMatrix Decomposition::composed() const {
  TransitionMatrix acc = steps_.front();
  for (std::size_t i = 1; i < steps_.size(); ++i) acc = compose(acc, steps_[i]);
  return acc;
}

double Decomposition::slack_cap() const {
  double cap = 1.0;
  for (const auto& s : steps_) cap *= 1.0 - std::fabs(s.rho());
  return cap;
}

EvidencePattern::EvidencePattern(std::vector<Mark> marks) : marks_(std::move(marks)) {
  if (marks_.size() < 2) {
    fail(ErrorKind::structural, "an evidence pattern needs at least the two endpoints");
  }
  if (marks_.front() == Mark::unobserved || marks_.back() == Mark::unobserved) {
    fail(ErrorKind::structural, "evidence pattern endpoints X and Y must be observed");
  }
}

EvidencePattern EvidencePattern::parse(std::string_view text) {
  std::vector<Mark> marks;
  marks.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0': marks.push_back(Mark::zero); break;
      case '1': marks.push_back(Mark::one); break;
      case '?': marks.push_back(Mark::unobserved); break;
      default:
        fail(ErrorKind::structural,
             "invalid character '" + std::string(1, c) + "' in evidence pattern \"" +
                 std::string(text) + "\" (expected 0, 1 or ?)");
    }
  }
  return EvidencePattern(std::move(marks));
}

EvidencePattern EvidencePattern::endpoints_only(std::size_t steps, int x, int y) {
  std::vector<Mark> marks(steps + 1, Mark::unobserved);
  marks.front() = x ? Mark::one : Mark::zero;
  marks.back() = y ? Mark::one : Mark::zero;
  return EvidencePattern(std::move(marks));
}

EvidencePattern EvidencePattern::all_observed(const std::vector<int>& bits) {
  std::vector<Mark> marks;
  marks.reserve(bits.size());
  for (int b : bits) marks.push_back(b ? Mark::one : Mark::zero);
  return EvidencePattern(std::move(marks));
}

std::string EvidencePattern::to_string() const {
  std::string out;
  out.reserve(marks_.size());
  for (Mark m : marks_) out.push_back(static_cast<char>(m));
  return out;
}

int EvidencePattern::value(std::size_t i) const {
  switch (marks_.at(i)) {
    case Mark::zero: return 0;
    case Mark::one: return 1;
    case Mark::unobserved: break;
  }
  fail(ErrorKind::precondition, "node " + std::to_string(i) + " is unobserved");
}

TransitionMatrix Segment::composed() const { return Decomposition(steps).composed(); }

double Segment::slack_cap() const { return Decomposition(steps).slack_cap(); }

std::vector<Segment> segments(const Decomposition& chain, const EvidencePattern& evidence) {
  if (evidence.nodes() != chain.size() + 1) {
    std::ostringstream os;
    os << "evidence pattern \"" << evidence.to_string() << "\" has " << evidence.nodes()
       << " nodes but the chain has " << chain.size() << " steps (needs "
       << chain.size() + 1 << ")";
    fail(ErrorKind::structural, os.str());
  }
  std::vector<Segment> out;
  Segment current;
  current.start_index = 0;
  current.start_value = evidence.x();
  for (std::size_t node = 1; node < evidence.nodes(); ++node) {
    current.steps.push_back(chain[node - 1]);
    if (evidence.observed(node)) {
      current.end_index = node;
      current.end_value = evidence.value(node);
      out.push_back(current);
      current = Segment{};
      current.start_index = node;
      current.start_value = evidence.value(node);
    }
  }
  return out;
}

void flip_node(std::vector<TransitionMatrix>& steps, std::vector<Mark>& marks, std::size_t node) {
  if (node > 0) {
    const auto& in = steps[node - 1];
    steps[node - 1] = TransitionMatrix(-in.tau(), -in.rho());
  }
  if (node < steps.size()) {
    const auto& out = steps[node];
    steps[node] = TransitionMatrix(-out.tau(), out.rho());
  }
  Mark& m = marks[node];
  if (m == Mark::zero) {
    m = Mark::one;
  } else if (m == Mark::one) {
    m = Mark::zero;
  }
}

NormalizedChain normalize_labels(const Decomposition& chain, const EvidencePattern& evidence) {
  if (evidence.nodes() != chain.size() + 1) {
    fail(ErrorKind::structural, "evidence pattern length does not match the chain");
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i].tau() == 0.0) {
      fail(ErrorKind::precondition,
           "step " + std::to_string(i + 1) + " has tau = 0; its sign cannot be normalized");
    }
  }
  std::vector<TransitionMatrix> steps = chain.steps();
  std::vector<Mark> marks = evidence.marks();
  std::vector<std::size_t> flipped;
  for (std::size_t node = 1; node <= steps.size(); ++node) {
    if (steps[node - 1].tau() < 0.0) {
      flip_node(steps, marks, node);
      flipped.push_back(node);
    }
  }
  return {Decomposition(std::move(steps)), EvidencePattern(std::move(marks)), std::move(flipped)};
}

}  // namespace causabound
